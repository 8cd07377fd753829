"""Kernel backend selection.

The compiled Cython kernels are used when the extension built; otherwise the
pure-Python twin takes over.  Set ``FERMIHAT_PURE=1`` to force the fallback
(useful for the backend-equivalence tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("FERMIHAT_PURE"):
    from fermihat import _kernels_py as _impl
else:
    try:
        from fermihat import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from fermihat import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME

normal_order_product = _impl.normal_order_product
multiply_terms = _impl.multiply_terms
apply_word = _impl.apply_word


def backend_name() -> str:
    """Name of the active kernel backend ("cython" or "python")."""
    return BACKEND
