"""Series solutions, the integer recursion chain, Heun basis, the
inversion solvers, and the closed Legendre chain."""

import math
import random
from fractions import Fraction

import pytest

from thetakit import fuchs
from thetakit.errors import CuspProximityError, ResonanceError
from thetakit.jets import md_transport_residual
from thetakit.painleve import hauptmodul_x
from thetakit.rational import Poly, RationalFunc


def test_apery_coefficients_and_integrality():
    cs = fuchs.apery_coeffs(50)
    assert [int(c) for c in cs[:5]] == [1, 5, 73, 1445, 33001]
    assert all(c.denominator == 1 for c in cs)
    # the n = 1 step forces C_1 = 5 because the second-back term vanishes
    assert cs[1] == 5 * cs[0]


def test_perturbed_recursion_breaks_integrality():
    cs = [Fraction(1)]
    for n in range(1, 6):
        val = (35 * n ** 3 - 51 * n ** 2 + 27 * n - 5) * cs[n - 1]
        if n >= 2:
            val -= (n - 1) ** 3 * cs[n - 2]
        cs.append(val / n ** 3)
    assert any(c.denominator != 1 for c in cs[:4])


def test_frobenius_recovers_recursions():
    sol3 = fuchs.frobenius_series(fuchs.APERY_ODE3, 20)
    assert sol3.coefficients == tuple(fuchs.apery_coeffs(20))
    sol2 = fuchs.frobenius_series(fuchs.APERY_ODE2, 10)
    assert sol2.coefficients[1] == Fraction(5, 2)
    simple = fuchs.frobenius_series(fuchs.LinearODE.build([-1], [1]), 8)
    assert all(simple.coefficients[n] == Fraction(1, math.factorial(n))
               for n in range(9))
    # exponent mismatch: r y' - y = 0 has the single exponent 1, so the
    # analytic exponent-0 branch is obstructed
    with pytest.raises(ResonanceError):
        fuchs.frobenius_series(fuchs.LinearODE.build([-1], [0, 1]), 4)


def test_symmetric_square():
    rep = fuchs.symmetric_square_check(30)
    assert rep["square_residuals_zero"]
    assert rep["matches_integer_chain"]
    # scaling: linearity keeps the square a solution
    phi = fuchs.frobenius_series(fuchs.APERY_ODE2, 12)
    scaled = [3 * c for c in phi.coefficients]
    sq = fuchs.cauchy_square(scaled)
    assert all(r == 0 for r in fuchs.ode_series_residuals(fuchs.APERY_ODE3, sq))
    # mismatch probe: a shifted series fails the third-order recursion
    shifted = [Fraction(0)] + list(phi.coefficients[:-1])
    bad = [a * b for a, b in zip(phi.coefficients, shifted)]
    assert any(r != 0 for r in fuchs.ode_series_residuals(fuchs.APERY_ODE3, bad))


def test_normal_forms_and_substitutions():
    rep = fuchs.apery_normal_form_check(rng=random.Random(0))
    assert rep["exact_normal_form"]
    assert rep["substitution_residuals"][0] < 1e-12
    assert rep["substitution_residuals"][1] < 1e-12
    # first exceptional operator reduces exactly to its named normal form
    q1 = fuchs.pq_to_normal(fuchs.EXCEPTIONAL_HEUN_ODES["I"])
    lemn = RationalFunc(Fraction(-1, 2) * Poly([1, 0, 1]) ** 2,
                        (Poly([0, 1]) * Poly([-1, 0, 1])) ** 2)
    assert q1 == lemn
    # p = 0 gives Q = -2q
    assert fuchs.pq_to_normal(fuchs.LinearODE.build([1, 2], [0], [1])) \
        == RationalFunc(Poly([-2, -4]))
    # the 9-point operator becomes the Heun form under x = 1 - 9/s
    q3 = fuchs.pq_to_normal(fuchs.EXCEPTIONAL_HEUN_ODES["III"])
    sub = RationalFunc(Poly([-9, 1]), Poly([0, 1]))
    rng = random.Random(1)
    for _ in range(10):
        s0 = complex(rng.uniform(2, 8), rng.uniform(0.5, 2))
        assert abs(md_transport_residual(q3, fuchs.HEUN_Q, sub, s0)) < 1e-12
    with pytest.raises(ValueError):
        fuchs.pq_to_normal(fuchs.APERY_ODE3)


def test_heun_psi_constancy_and_ode():
    taus = [1j * t for t in (1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 0.9)]
    ratios = []
    for tau in taus:
        sj = fuchs.heun_s_jet(tau, 1)
        p1, p2 = fuchs.heun_psi(tau)
        assert abs(p2 - tau * p1) < 1e-15
        ratios.append(sj.d(1) / (p1 * p1))
    base = ratios[0]
    assert max(abs(r - base) / abs(base) for r in ratios) < 1e-9


def test_sk_closed_form_basis():
    import cmath

    import numpy as np

    from thetakit.thetafuncs import elliptic_K

    def closed_basis(tau):
        s = fuchs.heun_s_jet(tau, 0).value
        rs = cmath.sqrt(s)
        x = (3.0 / rs + 1.0) * (rs - 1.0) ** 3 / 16.0
        amp = (s * (s - 1.0) ** 2 * (s - 9.0) ** 2) ** 0.25
        return amp * elliptic_K("K", x), amp * elliptic_K("Kprime", x)

    taus = [1j * t for t in (1.0, 1.15, 1.3, 1.45, 1.6, 1.75, 1.9, 2.05)]
    rows = [closed_basis(t) + fuchs.heun_psi(t) for t in taus[:2]]
    mat = np.array([[rows[0][0], rows[0][1]], [rows[1][0], rows[1][1]]])
    c1 = np.linalg.solve(mat, np.array([rows[0][2], rows[1][2]]))
    for tau in taus[2:]:
        f1, f2 = closed_basis(tau)
        p1, _ = fuchs.heun_psi(tau)
        assert abs(c1[0] * f1 + c1[1] * f2 - p1) < 1e-7 * abs(p1)


def test_inversions():
    assert abs(fuchs.invert_x_to_tau(0.5) - 1j) < 1e-12
    x0 = 0.3 + 0.2j
    tau = fuchs.invert_x_to_tau(x0)
    assert abs(hauptmodul_x(tau, 0).value - x0) < 1e-11
    from thetakit.errors import ThetaKitError

    with pytest.raises(ThetaKitError):
        fuchs.invert_x_to_tau(1.0 + 1e-9)
    s_target = fuchs.heun_s_jet(1.3j, 0).value
    tau_s = fuchs.invert_s_to_tau(s_target, 1.5j)
    assert abs(fuchs.heun_s_jet(tau_s, 0).value - s_target) < 1e-11
    # second basin: a group translate of the first solution
    tau_s2 = fuchs.invert_s_to_tau(s_target, 1.3j - 2.0)
    assert abs(tau_s2 - (tau_s - 2.0)) < 1e-8
    with pytest.raises(CuspProximityError):
        fuchs.invert_s_to_tau(8.995, 1.5j)


def test_level2_basis_constancy():
    """udot/Psi1^2 with Psi1 = sqrt(u(u^2-1)) K'(u) is the constant 2i/pi."""
    import cmath

    from thetakit.jets import vartheta_jet
    from thetakit.thetafuncs import elliptic_K

    for tau in (0.9j, 1.2j, 1.7j):
        v3 = vartheta_jet(3, tau, 1)
        v4 = vartheta_jet(4, tau, 1)
        u = (v4 / v3) ** 2
        psi1 = cmath.sqrt(u.value * (u.value ** 2 - 1.0)) \
            * elliptic_K("K", 1.0 - u.value ** 2)
        assert abs(u.d(1) / (psi1 * psi1) - 2j / cmath.pi) < 1e-12


def test_ke_relations():
    for tau in (1.2j, 1.5j, 1j):
        rels = fuchs.ke_relations_check(tau)
        assert max(rels.values()) < 1e-9, rels
