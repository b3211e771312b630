"""The two solution families, their equation residuals, transformation
maps, closed differentials, and the curve-derived Fuchsian function."""

import math

import pytest

from thetakit import (BivarPoly, CriticalPointError, P6Params, PicardIndex,
                      hauptmodul_x, hitchin_y, hitchin_y_original,
                      meromorphic_derivative, okamoto, p6_residual, picard_y,
                      qxy_from_curve, wpform_residual)
from thetakit.painleve import (hitchin_wp_value, hitchin_ydot, picard_sqrt_jet,
                               picard_ydot, y_from_wp)

from oracles import k_agm

UY_QUARTIC = BivarPoly({(0, 4): 1, (1, 2): -6, (2, 1): 4, (1, 1): 4,
                        (2, 0): -3})


def test_hauptmodul_values_and_slope():
    # x(i) = 1/2: the complementary parameter at the square point, fixed by
    # the AGM symmetry K = K'
    assert abs(hauptmodul_x(1j, 0).value - 0.5) < 1e-14
    assert abs(k_agm(0.5) - k_agm(1 - 0.5)) == 0.0
    x = hauptmodul_x(1.2j, 2)
    from thetakit import vartheta

    v2 = vartheta(2, 1.2j)
    assert abs(x.d(1) + 1j * math.pi * x.value * v2 ** 4) < 1e-11
    # tau -> tau+1 swaps the two even constants: x -> x/(x-1)-free form 1/x
    # only after the quartic identity; numerically x(tau+1) = -x/(1-x)...
    # checked through the series-level swap x(tau+1) * xhat = ratio of the
    # swapped quartic constants
    from thetakit import vartheta as vt

    tau = 1.3j
    v3s = vt(3, tau + 1.0)
    v4s = vt(4, tau + 1.0)
    assert abs(abs(v3s / vt(4, tau)) - 1.0) < 1e-12
    assert abs(abs(v4s / vt(3, tau)) - 1.0) < 1e-12


def test_picard_curves():
    idx2 = PicardIndex(0, 1, 2)
    idx3 = PicardIndex(0, 1, 3)
    assert idx2.exceptional and not idx3.exceptional
    with pytest.raises(ValueError):
        PicardIndex(0, 1, 0)
    for tau in (1.2j, 0.3 + 1.0j, 1.7j):
        x = hauptmodul_x(tau, 0).value
        y2 = picard_y(idx2, tau, 0).value
        assert abs(y2 * y2 - x) < 1e-10
        y3 = picard_y(idx3, tau, 0).value
        assert abs(UY_QUARTIC(x, y3)) < 1e-9


def test_perfect_square_jet():
    idx = PicardIndex(0, 1, 3)
    for tau in (1.1j, 0.2 + 1.3j):
        y = picard_y(idx, tau, 5)
        r = picard_sqrt_jet(idx, tau, 5)
        assert (y - r * r).max_abs() < 1e-10


def test_hitchin_forms_agree():
    for (a, b, tau) in ((0.0, 1.0 / 6.0, 1.2j), (0.1, 0.0, 0.2 + 1.4j)):
        y = hitchin_y(a, b, tau, 0).value
        assert abs(y - hitchin_y_original(a, b, tau)) < 1e-8
        assert abs(y - y_from_wp(hitchin_wp_value(a, b, tau), tau)) < 1e-9
    from thetakit.errors import PoleProximityError

    with pytest.raises(PoleProximityError):
        hitchin_y_original(0.0, 0.0, 1.2j)


def test_p6_residual_conventions():
    """Exactly one delta convention annihilates each family."""
    tol = 1e-6
    for yfun, params in (
            (lambda t: picard_y(PicardIndex(0, 1, 3), t, 5),
             P6Params(0, 0, 0, 0)),
            (lambda t: hitchin_y(0.0, 1.0 / 6.0, t, 5),
             P6Params(0.125, 0.125, 0.125, 0.125))):
        res = {}
        for conv in ("delta-shift", "plain"):
            res[conv] = max(abs(p6_residual(hauptmodul_x(tau, 5), yfun(tau),
                                            params, conv))
                            for tau in (1.1j, 0.25 + 1.3j, 1.6j))
        assert res["delta-shift"] < tol
        assert res["plain"] > 1e-3
    with pytest.raises(ValueError):
        p6_residual(hauptmodul_x(1.2j, 5),
                    picard_y(PicardIndex(0, 1, 3), 1.2j, 5),
                    P6Params(), "nonsense")


def test_p6_power_law_probe():
    s = 0.37 + 0.11j
    x = hauptmodul_x(1.2j, 5)
    xv = x.value
    ders = []
    coef = 1.0 + 0j
    for k in range(6):
        ders.append(coef * xv ** (s - k))
        coef *= (s - k)
    y = x.compose_scalar(ders)
    good = abs(p6_residual(x, y, P6Params(0, 0, s * s / 2.0,
                                          (s - 1.0) ** 2 / 2.0),
                           "delta-shift"))
    assert good < 1e-8
    # the doubled-normalization parameter pair does not solve either form
    quoted = P6Params(0, 0, s * s, (s - 1.0) ** 2 - 0.5)
    assert abs(p6_residual(x, y, quoted, "delta-shift")) > 1e-3
    assert abs(p6_residual(x, y, quoted, "plain")) > 1e-3


def test_p6_singular_configuration_guards():
    x = hauptmodul_x(1.2j, 5)
    with pytest.raises(CriticalPointError):
        p6_residual(x, x, P6Params(), "plain")


def test_okamoto_pair():
    idx = PicardIndex(0, 1, 3)
    for tau in (1.2j, 0.3 + 1.1j):
        x = hauptmodul_x(tau, 6)
        p = picard_y(idx, tau, 6)
        h = hitchin_y(idx.A, idx.B, tau, 6)
        h_ok = okamoto("PtoH", x, p)
        assert abs(h_ok.value - h.value) < 1e-8
        p_rt = okamoto("HtoP", x.truncate(5), h_ok)
        assert abs(p_rt.value - p.value) < 1e-9
        # the level-3 birational pair
        assert abs(p.value - (1.0 - (x.value - 1.0) ** 2
                              / (h.value - 1.0) ** 2)) < 1e-9
        assert abs(h.value - (1.5 * x.value / p.value
                              - 0.5 * p.value)) < 1e-9
    with pytest.raises(ValueError):
        okamoto("sideways", x, p)


def test_closed_form_differentials():
    idx = PicardIndex(0, 1, 3)
    for tau in (1.2j, 1.5j, 0.2 + 1.0j, 0.4 + 1.3j, 1.8j):
        p = picard_y(idx, tau, 2)
        assert abs(picard_ydot(idx, tau) - p.d(1)) < 1e-9
        h = hitchin_y(idx.A, idx.B, tau, 2)
        assert abs(hitchin_ydot(idx.A, idx.B, tau) - h.d(1)) < 1e-9


def test_wpform_residuals():
    flat = wpform_residual(0.0, 1.0 / 6.0, P6Params(0, 0, 0, 0), 1.3j,
                           family="picard")
    assert abs(flat) < 1e-9
    curved = wpform_residual(0.0, 1.0 / 6.0,
                             P6Params(0.125, 0.125, 0.125, 0.125), 1.3j)
    assert abs(curved) < 1e-5
    broken = wpform_residual(0.0, 1.0 / 6.0,
                             P6Params(0.125, 0.125, 0.125, 0.125), 1.3j,
                             flip_branch=True)
    assert abs(broken) > 1e-2


def test_qxy_from_curve():
    idx = PicardIndex(0, 1, 3)
    for tau in (1.15j, 0.3 + 1.2j):
        x = hauptmodul_x(tau, 5)
        y = picard_y(idx, tau, 5)
        q = qxy_from_curve(UY_QUARTIC, x.value, y.value)
        assert abs(q - meromorphic_derivative(y)) < 1e-8
        yv = y.value
        num = (8.0 * x.value * (yv - 2.0) * (yv ** 2 - 9.0 * yv + 9.0) * yv
               + 16.0 * yv ** 6 + 27.0 * yv ** 5 + 95.0 * yv ** 4
               - 415.0 * yv ** 3 + 465.0 * yv ** 2 - 288.0 * yv + 108.0)
        den = yv ** 2 * (4.0 * yv - 3.0) * (yv + 3.0) ** 2 * (yv - 1.0) ** 3
        assert abs(q + num / den / 8.0) < 1e-10
    ident = BivarPoly({(1, 0): 1, (0, 1): -1})
    xv = 0.4 + 0.1j
    q = qxy_from_curve(ident, xv, xv)
    assert abs(q + 0.5 * (xv * xv - xv + 1.0)
               / (xv * xv * (xv - 1.0) ** 2)) < 1e-12
    with pytest.raises(ValueError):
        qxy_from_curve(UY_QUARTIC, 0.3, 0.9)  # off the curve
