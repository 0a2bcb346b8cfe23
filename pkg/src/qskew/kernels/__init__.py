"""Hot pair-sum kernels with a compiled core and a numpy fallback.

The compiled extension (Cython) is preferred when it was built; the numpy
backend implements identical contracts and is always available. Selection:

  * ``QSKEW_KERNELS=compiled`` forces the extension (ImportError if absent),
  * ``QSKEW_KERNELS=numpy`` forces the fallback,
  * unset or ``auto`` picks the extension when importable.

Backends only differ in summation order, so results may differ by a few ulp;
everything downstream treats them as equivalent within 1e-12 relative.
"""

from __future__ import annotations

import os

from . import numpy_backend

try:
    from . import _fast as compiled_backend
except ImportError:  # extension not built; pure-python lane
    compiled_backend = None

_ENV_VAR = "QSKEW_KERNELS"


def available_backends() -> tuple[str, ...]:
    if compiled_backend is not None:
        return ("compiled", "numpy")
    return ("numpy",)


def get_backend(name: str | None = None):
    """Resolve a backend module by name, the environment, or auto-detection."""
    choice = name or os.environ.get(_ENV_VAR, "auto") or "auto"
    choice = choice.lower()
    if choice == "auto":
        return compiled_backend if compiled_backend is not None else numpy_backend
    if choice == "numpy":
        return numpy_backend
    if choice == "compiled":
        if compiled_backend is None:
            raise ImportError(
                "compiled kernels requested but the extension is not built; "
                "run `pip install -e . --no-build-isolation` with Cython available"
            )
        return compiled_backend
    raise ValueError(f"unknown kernel backend {choice!r}")


def backend_name(name: str | None = None) -> str:
    return get_backend(name).NAME
