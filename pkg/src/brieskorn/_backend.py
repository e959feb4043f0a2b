"""Kernel backend selection.

The compiled Cython kernel is preferred; the pure-Python twin is the
fallback.  Set BRIESKORN_PURE=1 to force the fallback (used by the
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("BRIESKORN_PURE"):
    from brieskorn import _kernels_py as _impl
else:
    try:
        from brieskorn import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from brieskorn import _kernels_py as _impl

add_terms = _impl.add_terms
scale_monomial_mul = _impl.scale_monomial_mul
normal_form = _impl.normal_form
rref = _impl.rref


def backend_name() -> str:
    return _impl.BACKEND_NAME
