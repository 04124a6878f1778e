"""Backend selection for the digit-scanning kernels.

The compiled ``_core`` extension is used when it was built; otherwise the
pure-Python ``_pure`` module is loaded. Set ``DENSORBIT_PURE=1`` to force
the pure backend.
"""
import os

from . import _pure

try:
    from . import _core
except ImportError:
    _core = None

_force_pure = os.environ.get("DENSORBIT_PURE", "").lower() in ("1", "true", "yes")
_backend = _pure if _core is None or _force_pure else _core
BACKEND = "python" if _backend is _pure else "cython"

match_starts = _backend.match_starts
count_admissible = _backend.count_admissible


def backends():
    """Every importable backend, keyed by name."""
    out = {"python": _pure}
    if _core is not None:
        out["cython"] = _core
    return out
