"""Select the group-law kernel at import time.

The compiled extension is used when it imports; set
``HIDDENTORSION_PURE_PYTHON=1`` to force the pure-Python kernel.
"""

import os

from . import _pykernel

BACKEND = "python"
_impl = _pykernel

if not os.environ.get("HIDDENTORSION_PURE_PYTHON"):
    try:
        from . import _ckernel as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernel

IDENTITY = _pykernel.IDENTITY
tower_mul = _impl.tower_mul
tower_inv = _impl.tower_inv
tower_pow = _impl.tower_pow
tower_commutator = _impl.tower_commutator
mul_many = _impl.mul_many
associativity_failures = _impl.associativity_failures


def backends():
    """Every importable kernel module, keyed by name."""
    out = {"python": _pykernel}
    try:
        from . import _ckernel

        out["cython"] = _ckernel
    except ImportError:
        pass
    return out
