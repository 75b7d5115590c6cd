"""Select the compiled kernel when available, else the pure-Python one.

Set ``EQUISING_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

BACKEND = "python"
_impl = _kernel_py

if os.environ.get("EQUISING_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # not built
        _impl = _kernel_py

axpy = _impl.axpy
scaled = _impl.scaled
shifted = _impl.shifted
truncate = _impl.truncate


def use(backend: str) -> None:
    """Switch backend at run time (benchmarks and tests)."""
    global axpy, scaled, shifted, truncate, BACKEND
    if backend == "python":
        mod = _kernel_py
    elif backend == "cython":
        from . import _kernel as mod  # raises ImportError when not built
    else:
        raise ValueError(backend)
    axpy, scaled, shifted, truncate = mod.axpy, mod.scaled, mod.shifted, mod.truncate
    BACKEND = backend
