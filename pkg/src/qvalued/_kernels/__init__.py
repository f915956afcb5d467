"""Kernel backend selection.

Numba-compiled kernels are used by default. Setting ``QVALUED_DISABLE_NUMBA=1``
(or running without numba installed) selects the pure-numpy implementations,
which follow the same contracts and tie-break rules.
"""
import logging
import os

from . import numpy_impl

logger = logging.getLogger(__name__)

_disabled = os.environ.get("QVALUED_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

if _disabled:
    _impl = numpy_impl
    BACKEND = "numpy"
else:
    try:
        from . import numba_impl as _impl
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        logger.warning("numba unavailable, falling back to numpy kernels")
        _impl = numpy_impl
        BACKEND = "numpy"

assignment = _impl.assignment
one_center = _impl.one_center
profile_solve = _impl.profile_solve
profile_sweep = _impl.profile_sweep
grid_min_stretch = _impl.grid_min_stretch


def backend_module(name):
    """Return the kernel module for ``name`` ("numba" or "numpy")."""
    if name == "numpy":
        return numpy_impl
    from . import numba_impl
    return numba_impl
