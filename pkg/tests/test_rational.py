"""Exact rational machinery and the catalog file contract."""

from fractions import Fraction

import pytest

from thetakit.errors import CatalogError
from thetakit.rational import BivarPoly, Poly, RationalFunc, mobius


def test_poly_arithmetic_exact():
    p = Poly([1, -34, 1])
    q = Poly([0, 1])
    assert (p * q).coeffs == (Fraction(0), Fraction(1), Fraction(-34),
                              Fraction(1))
    assert p.derivative().coeffs == (Fraction(-34), Fraction(2))
    quo, rem = (p * q + Poly([7])).divmod(p)
    assert quo == q and rem == Poly([7])
    assert (p * q).gcd(p) == p.monic()
    assert p(Fraction(2)) == Fraction(-63)
    assert (p ** 2).degree == 4


def test_rational_reduction_and_ops():
    r = RationalFunc(Poly([0, 1, 1]), Poly([0, 1]))  # (x^2+x)/x -> x+1
    assert r.num == Poly([1, 1]) and r.den == Poly([1])
    s = RationalFunc(Poly([1]), Poly([1, 1]))
    total = r + s
    x = Fraction(3, 2)
    assert total(x) == (x + 1) + 1 / (x + 1)
    d = s.derivative()
    assert d(x) == -1 / (x + 1) ** 2
    comp = s.compose(RationalFunc(Poly([0, 0, 1])))  # 1/(x^2+1)
    assert comp(x) == 1 / (x * x + 1)
    assert mobius(1, 2, 3, 4)(Fraction(1)) == Fraction(3, 7)
    with pytest.raises(ZeroDivisionError):
        RationalFunc(Poly([1]), Poly([0]))


def test_bivar_partials_and_eval():
    f = BivarPoly({(2, 1): Fraction(3), (0, 4): 1, (1, 0): -2})
    assert f(Fraction(1), Fraction(2)) == 3 * 2 + 16 - 2
    fx = f.partial(1, 0)
    assert fx(Fraction(1), Fraction(2)) == 6 * 2 - 2
    fxy = f.partial(1, 1)
    assert fxy(Fraction(5), Fraction(7)) == 6 * 5
    assert f.partial(0, 3)(Fraction(0), Fraction(1)) == 24
    assert f.max_term_magnitude(1.0, 2.0) == 16.0


def test_catalog_checksum_contract(tmp_path):
    from thetakit.catalog import default_catalog_path, load_catalog

    good = default_catalog_path().read_text()
    entries = load_catalog()
    assert "k2" in entries and entries["k2"].Q is not None

    # checksum section missing
    stripped = good.split("[checksum]")[0]
    p1 = tmp_path / "no_checksum.txt"
    p1.write_text(stripped)
    with pytest.raises(CatalogError):
        load_catalog(p1)

    # tampered coefficient
    p2 = tmp_path / "tampered.txt"
    p2.write_text(good.replace("qnum: -1/2 1/2 -1/2", "qnum: -1/2 1/2 -1/3"))
    with pytest.raises(CatalogError):
        load_catalog(p2)

    # intact copy loads
    p3 = tmp_path / "copy.txt"
    p3.write_text(good)
    assert sorted(load_catalog(p3)) == sorted(entries)


def test_catalog_code_constants_match_file():
    """The rational constants embedded in code equal the checksummed data."""
    from thetakit import catalog as cat

    entries = cat.load_catalog()
    assert entries["icosa-T"].Q == cat.Q_ICOSA
    assert entries["tetra-T"].Q == cat.Q_TETRA
    assert entries["tetra-Tsq"].Q == cat.q_tetra_squared()
    assert entries["qz"].Q == cat.QZ
    assert entries["k2"].Q == cat.K2_Q
    from thetakit.fuchs import HEUN_Q, apery_klein_form

    assert entries["heun"].Q == HEUN_Q
    assert entries["apery-klein"].Q == apery_klein_form()
