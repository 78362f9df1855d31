"""Backend selection for the BFS kernels.

The compiled extension is preferred when importable; set GRAPHLIM_BACKEND to
"python" or "compiled" to force one (benchmarks use this to compare them).
"""

from __future__ import annotations

import os

from . import _ballkern_py

try:
    from . import _ballkern  # type: ignore[attr-defined]
except ImportError:
    _ballkern = None

_BACKENDS = {"python": _ballkern_py}
if _ballkern is not None:
    _BACKENDS["compiled"] = _ballkern


def available_backends() -> dict:
    return dict(_BACKENDS)


def get_backend(name: str | None = None):
    """Return the kernel module for `name` (default: env var, then best)."""
    if name is None:
        name = os.environ.get("GRAPHLIM_BACKEND")
    if name is None:
        return _BACKENDS.get("compiled", _ballkern_py)
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {sorted(_BACKENDS)}"
        ) from None


def backend_name() -> str:
    return "compiled" if get_backend() is _ballkern else "python"
