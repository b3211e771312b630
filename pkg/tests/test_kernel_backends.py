"""The compiled kernel and the pure-Python fallback must agree exactly
(same summation order, same stopping rule)."""

import pytest

import thetakit._series_py as pure

compiled = pytest.importorskip("thetakit._core")


CASES = [
    (0, 0, 0j, 0j, 1.0, 0.0, 1.1j, 0, 0),
    (1, 1, 0j, 0.2 + 0.1j, 1.0, 0.0, 0.3 + 0.9j, 0, 0),
    (1, 0, 1.0 / 6.0, 0j, 1.0, 0.0, 1.4j, 0, 5),
    (0, 1, 0.05 + 0.01j, 1.0 / 10.0, 1.0, 0.0, 0.2 + 1.2j, 2, 4),
    (0, 0, 0j, 0j, 3.0, 0.0, 1.2j, 0, 3),
    (1, 0, 0j, 0j, 0.5, 0.5, 1.3j, 0, 2),
]


@pytest.mark.parametrize("args", CASES)
def test_theta_sums_agree(args):
    a = compiled.theta_sums(*args, 1e-17, 3, 4096)
    b = pure.theta_sums(*args, 1e-17, 3, 4096)
    assert len(a) == len(b)
    for x, y in zip(a, b):
        assert abs(x - y) <= 1e-14 * max(1.0, abs(y))


@pytest.mark.parametrize("tau", [1.1j, 0.2 + 0.9j, 2.3j])
def test_dedekind_sums_agree(tau):
    a = compiled.dedekind_sums(tau, 5, 1e-17, 3, 4096)
    b = pure.dedekind_sums(tau, 5, 1e-17, 3, 4096)
    for x, y in zip(a, b):
        assert abs(x - y) <= 1e-14 * max(1.0, abs(y))


def test_both_backends_raise_nonconvergence():
    from thetakit.errors import NonConvergenceError

    for impl in (compiled, pure):
        with pytest.raises(NonConvergenceError) as err:
            impl.theta_sums(0, 0, 0j, 0j, 1.0, 0.0, 0.001j, 0, 0,
                            1e-17, 3, 16)
        assert err.value.partial is not None


def test_reduced_characteristics_enforced():
    for impl in (compiled, pure):
        with pytest.raises(ValueError):
            impl.theta_sums(2, 0, 0j, 0j, 1.0, 0.0, 1.1j, 0, 0, 1e-17, 3, 64)


def test_backend_selector_env(tmp_path):
    import subprocess
    import sys

    code = "import thetakit; print(thetakit.KERNEL_BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env={"THETAKIT_PURE": "1",
                                         "PATH": "/usr/bin:/bin"})
    assert out.stdout.strip() == "python"
