"""Reduction kernel with a compiled core and a pure-Python fallback.

The compiled extension `_ckernel` implements the same term-level contract as
`_pykernel`; whichever is available is selected at import time.  Set
SCHUBREG_KERNEL=py or SCHUBREG_KERNEL=c to force a choice (forcing `c` when
the extension is missing raises, rather than silently falling back).
"""

from __future__ import annotations

import os

from . import _pykernel
from .orders import MAX_EXP, OrderPack, assert_exponent, divides, raw_lcm

_choice = os.environ.get("SCHUBREG_KERNEL", "auto")

if _choice == "py":
    _impl = _pykernel
elif _choice == "c":
    from . import _ckernel as _impl  # noqa: F401  (ImportError is the point)
else:
    try:
        from . import _ckernel as _impl
    except ImportError:
        _impl = _pykernel

normal_form = _impl.normal_form
s_polynomial = _impl.s_polynomial
content_normalize = _impl.content_normalize


def implementation_name() -> str:
    return _impl.IMPLEMENTATION


def set_implementation(name: str) -> str:
    """Swap the active kernel ("python" or "cython"); returns the old name.

    Used by the benchmark and the cross-validation tests.  Callers that want
    to honor the swap must invoke kernel functions through this module
    (kernel.normal_form), not through from-imports taken earlier.
    """
    global _impl, normal_form, s_polynomial, content_normalize
    if name == "python":
        new = _pykernel
    elif name == "cython":
        from . import _ckernel as new
    else:
        raise ValueError("unknown kernel %r" % name)
    old = _impl.IMPLEMENTATION
    _impl = new
    normal_form = new.normal_form
    s_polynomial = new.s_polynomial
    content_normalize = new.content_normalize
    return old


__all__ = [
    "MAX_EXP",
    "OrderPack",
    "assert_exponent",
    "divides",
    "raw_lcm",
    "normal_form",
    "s_polynomial",
    "content_normalize",
    "implementation_name",
    "set_implementation",
]
