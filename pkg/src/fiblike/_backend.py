"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels take over with identical results.
"""

from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = ("cython", "python") if _compiled is not None else ("python",)


def get_kernels(name: str | None = None) -> ModuleType:
    """Return the kernel module for ``name`` (default: fastest available)."""
    if name is None:
        return _compiled if _compiled is not None else _pykernels
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; run `pip install -e .`")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


kernels = get_kernels()
BACKEND = "cython" if kernels is _compiled else "python"
