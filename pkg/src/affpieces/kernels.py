"""Kernel backend selection.

The compiled extension is used when it imports and ``AFFPIECES_KERNELS`` is
not set to ``python``. Calls that overflow the compiled int64 bound are
redone with the pure-Python kernel, which uses arbitrary-precision ints.
"""
import os

from . import _kernels_py

_native = None
if os.environ.get("AFFPIECES_KERNELS", "").lower() != "python":
    try:
        from . import _kernels as _native
    except ImportError:
        _native = None

BACKEND = _native.BACKEND if _native is not None else _kernels_py.BACKEND

_NAMES = ("mat_mul", "right_reflect", "left_reflect", "right_descent_mask", "strip", "expand_layer")


def _checked(name):
    fast = getattr(_native, name)
    slow = getattr(_kernels_py, name)

    def call(*args):
        try:
            return fast(*args)
        except OverflowError:
            return slow(*args)

    call.__name__ = name
    call.__doc__ = slow.__doc__
    return call


if _native is not None:
    mat_mul, right_reflect, left_reflect, right_descent_mask, strip, expand_layer = (
        _checked(n) for n in _NAMES
    )
else:
    from ._kernels_py import (  # noqa: F401
        expand_layer,
        left_reflect,
        mat_mul,
        right_descent_mask,
        right_reflect,
        strip,
    )


def backends():
    """Available kernel modules keyed by name (for tests and benchmarks)."""
    out = {"python": _kernels_py}
    if _native is not None:
        out["cython"] = _native
    return out
