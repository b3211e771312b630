"""Acceptance gate: the eleven headline criteria, each with its stated
tolerance and runtime budget, printing one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` (or rely on the same
checks through ``thetakit suite run all``)."""

import time

from thetakit.reports import Report
from thetakit.suites import SUITES, SuiteConfig

CFG = SuiteConfig(seed=0)

_results: dict[str, Report] = {}


def run(name: str) -> Report:
    if name not in _results:
        _results[name] = SUITES[name](CFG)
    return _results[name]


def criterion(number: int, label: str, started: float, budget: float,
              reports, residual_cap=None,
              exclude_notes=("negative control", "growth check")):
    elapsed = time.time() - started
    reports = reports if isinstance(reports, list) else [reports]
    failed = [c for r in reports for c in r.failed]
    worst = 0.0
    for r in reports:
        for c in r.checks:
            if any(c.note.startswith(p) for p in exclude_notes):
                continue
            if c.residual == c.residual:
                worst = max(worst, c.residual)
    ok = not failed and elapsed < budget
    if residual_cap is not None:
        ok = ok and worst <= residual_cap
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] criterion {number}: {label} "
          f"(worst residual {worst:.2e}, {elapsed:.2f}s of {budget:.0f}s)")
    assert not failed, failed
    if residual_cap is not None:
        assert worst <= residual_cap
    assert elapsed < budget
    return worst


def test_criterion_01_theta_foundations():
    t0 = time.time()
    rep = run("theta")
    # quartic identity, both eta relations, translation identities, and
    # quasi-periodicity all sit under 1e-11 on their grids
    criterion(1, "theta foundations on the 50-point grid", t0, 2.0, rep)
    for cid in ("jacobi-quartic", "eta-log-derivative", "eta-cubed",
                "quasi-period-1", "quasi-period-tau"):
        row = next(c for c in rep.checks if c.check_id == cid)
        assert row.residual < 1e-11


def test_criterion_02_ring_vs_oracle():
    t0 = time.time()
    rep = run("rings")
    criterion(2, "closed rings vs the termwise oracle (30 random "
              "configurations)", t0, 5.0, rep)
    for cid in ("ring-generators", "ring-moving"):
        row = next(c for c in rep.checks if c.check_id == cid)
        assert row.residual < 1e-8


def test_criterion_03_picard_hitchin_curves():
    t0 = time.time()
    rep = run("picard-curves")
    worst = criterion(3, "curve residuals on the standard grid", t0, 10.0,
                      rep, residual_cap=1e-8)
    assert worst < 1e-8


def test_criterion_04_painleve_residuals():
    t0 = time.time()
    rep = run("painleve")
    criterion(4, "equation residuals, probes, and transformation maps",
              t0, 10.0, rep)
    for fam in ("picard", "hitchin"):
        row = next(c for c in rep.checks if c.check_id == f"p6:{fam}")
        assert row.residual < 1e-6
        assert "vanishing: ['delta-shift']" in row.note  # exactly one
    assert next(c for c in rep.checks
                if c.check_id == "p6:power-law").residual < 1e-8
    assert next(c for c in rep.checks
                if c.check_id == "okamoto:cross").residual < 1e-8
    assert next(c for c in rep.checks
                if c.check_id == "okamoto:roundtrip").residual < 1e-8
    assert next(c for c in rep.checks
                if c.check_id == "okamoto:isomorphism").residual < 1e-9


def test_criterion_05_fuchsian_checks():
    t0 = time.time()
    rep = run("fuchsian")
    worst = criterion(5, "Fuchsian equations of every cataloged Hauptmodul",
                      t0, 10.0, rep, residual_cap=1e-8)
    assert worst < 1e-8
    forms = [c for c in rep.checks if c.check_id.endswith(":forms")]
    assert forms and all(f.residual == 0.0 for f in forms)


def test_criterion_06_modular_suite():
    t0 = time.time()
    rep = run("modular")
    criterion(6, "transformation laws, congruences, and tabulated groups",
              t0, 15.0, rep)
    assert next(c for c in rep.checks
                if c.check_id == "transformation-law").residual < 1e-9
    assert next(c for c in rep.checks
                if c.check_id == "aleph-eighth-root").residual == 0.0
    assert next(c for c in rep.checks
                if c.check_id == "level2-laws").residual < 1e-10
    for n in (3, 5):
        assert next(c for c in rep.checks
                    if c.check_id == f"group-invariance-N{n}").residual < 1e-8
    assert next(c for c in rep.checks
                if c.check_id == "cusp-cycle-product").residual == 0.0
    assert next(c for c in rep.checks
                if c.check_id == "tabulated-groups").residual < 1e-9
    assert next(c for c in rep.checks
                if c.check_id == "cusp-value-half").residual < 1e-5


def test_criterion_07_apery_chain():
    t0 = time.time()
    rep = run("apery")
    criterion(7, "integer chain, symmetric square, and normal form", t0,
              3.0, rep)
    assert next(c for c in rep.checks
                if c.check_id == "first-coefficients").residual == 0.0
    assert next(c for c in rep.checks
                if c.check_id == "symmetric-square").residual == 0.0
    for cid in ("substitution-1", "substitution-2"):
        assert next(c for c in rep.checks if c.check_id == cid).residual < 1e-12


def test_criterion_08_heun_inversion():
    t0 = time.time()
    rep = run("inversion")
    criterion(8, "basis constancy, closed form, round trips, and the "
              "Legendre chain", t0, 10.0, rep)
    assert next(c for c in rep.checks
                if c.check_id == "basis-normalization").residual < 1e-9
    assert next(c for c in rep.checks
                if c.check_id == "closed-form-basis").residual < 1e-7
    for cid in ("invert-x-roundtrip", "invert-s-roundtrip"):
        assert next(c for c in rep.checks if c.check_id == cid).residual < 1e-11
    assert next(c for c in rep.checks
                if c.check_id == "legendre-chain").residual < 1e-9
    prop4 = [c for c in rep.checks if c.check_id.startswith("prop4")]
    assert prop4 and max(c.residual for c in prop4) < 1e-9


def test_criterion_09_connections():
    t0 = time.time()
    rep_chazy = run("chazy")
    rep_conn = run("connections")
    criterion(9, "Chazy-type equations and the covariant identities", t0,
              30.0, [rep_chazy, rep_conn])
    assert next(c for c in rep_chazy.checks
                if c.check_id == "chazy-equation").residual < 1e-8
    assert next(c for c in rep_chazy.checks
                if c.check_id == "full-group-reference").residual < 1e-9
    assert next(c for c in rep_chazy.checks
                if c.check_id == "legendre-compact").residual < 1e-8
    assert next(c for c in rep_chazy.checks
                if c.check_id == "legendre-big-polynomial").residual < 1e-6
    assert next(c for c in rep_chazy.checks
                if c.check_id == "cubic-family-compact").residual < 1e-5
    assert next(c for c in rep_conn.checks
                if c.check_id == "elimination-identities").residual < 1e-8
    assert next(c for c in rep_conn.checks
                if c.check_id == "identities-off-uniformizing").residual < 1e-6


def test_criterion_10_tori():
    t0 = time.time()
    rep = run("toroidal")
    criterion(10, "exceptional-torus constants and the equations on tori",
              t0, 30.0, rep)
    assert next(c for c in rep.checks
                if c.check_id == "klein-invariant").residual < 1e-12
    assert next(c for c in rep.checks
                if c.check_id == "period-constant").residual < 1e-13
    assert next(c for c in rep.checks
                if c.check_id == "punctured-torus").residual < 1e-6
    assert next(c for c in rep.checks
                if c.check_id == "lemniscatic-companion").residual < 1e-6
    hyper = [c for c in rep.checks
             if c.check_id.startswith("hyperelliptic-reduction")]
    assert hyper and max(c.residual for c in hyper) < 1e-6
    cover = next(c for c in rep.checks
                 if c.check_id == "transcendental-cover")
    assert cover.residual < 1e-5
    assert "path-continuous: True" in cover.note


def test_criterion_11_negative_controls():
    t0 = time.time()
    missing = []
    weak = []
    for name in SUITES:
        rep = run(name)
        controls = [c for c in rep.checks
                    if c.note.startswith("negative control")]
        if not controls:
            missing.append(name)
        for c in controls:
            if not (c.residual > 1e-3 and c.passed):
                weak.append((name, c.check_id, c.residual))
    status = "PASS" if not missing and not weak else "FAIL"
    print(f"[{status}] criterion 11: every suite carries a broken probe "
          f"with residual above 1e-3 ({time.time() - t0:.2f}s)")
    assert not missing, f"suites without negative controls: {missing}"
    assert not weak, f"controls that failed to exceed the floor: {weak}"
