"""Backend selection for the hot kernels.

Two interchangeable implementations exist: numba-jitted loops
(``_kernels_numba``) and pure numpy (``_kernels_numpy``).  The default is
numba when importable; set ``PINNLAB_BACKEND=numpy`` to force the fallback,
or ``PINNLAB_BACKEND=numba`` to insist on the jitted path.  ``pinnlab bench``
compares the two.
"""

import os

from . import _kernels_numpy

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

_forced: str | None = None


def backend_name() -> str:
    """Resolve the active backend name ('numba' or 'numpy')."""
    if _forced is not None:
        return _forced
    env = os.environ.get("PINNLAB_BACKEND", "").strip().lower()
    if env == "numpy":
        return "numpy"
    if env == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("PINNLAB_BACKEND=numba but numba is not importable")
        return "numba"
    if env:
        raise RuntimeError(f"unknown PINNLAB_BACKEND value {env!r}")
    return "numba" if HAS_NUMBA else "numpy"


def set_backend(name: str | None) -> None:
    """Force a backend for this process (None restores env/default selection)."""
    global _forced
    if name is not None and name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    _forced = name


def get_kernels(name: str | None = None):
    """Return the kernel module for ``name`` (default: the active backend)."""
    name = name or backend_name()
    if name == "numpy":
        return _kernels_numpy
    if name == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        from . import _kernels_numba

        return _kernels_numba
    raise ValueError(f"unknown backend {name!r}")
