"""Kernel selection: compiled extension when present, pure Python otherwise.

Set ``THETAKIT_PURE=1`` in the environment to force the pure-Python kernel
(used by the benchmark and by tests that compare the two backends).
"""

import os

_impl = None
if os.environ.get("THETAKIT_PURE") != "1":
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = None
if _impl is None:
    from . import _series_py as _impl

theta_sums = _impl.theta_sums
dedekind_sums = _impl.dedekind_sums
BACKEND = _impl.BACKEND
