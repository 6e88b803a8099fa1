"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``IPSFORGE_PURE_PY=1`` to force the pure-Python kernel (used by the
benchmark to compare both backends on the same workload).
"""

import os

if os.environ.get("IPSFORGE_PURE_PY") == "1":
    from ipsforge import _gfcore_py as _impl
else:
    try:
        from ipsforge import _gfcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from ipsforge import _gfcore_py as _impl

BACKEND = _impl.BACKEND
vadd = _impl.vadd
vsub = _impl.vsub
vneg = _impl.vneg
vsmul = _impl.vsmul
vmul = _impl.vmul
vpow = _impl.vpow
vinv = _impl.vinv


def kernel_backend() -> str:
    """Name of the active kernel backend: ``cython`` or ``python``."""
    return BACKEND
