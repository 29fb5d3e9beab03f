"""Selects the search kernel at import time.

The compiled ``_kernel`` extension is used when it was built; otherwise, or
when ``LSDOM_PURE=1`` is set, the pure-Python ``_pykernel`` takes over.
Both return identical results.
"""

from __future__ import annotations

import os

from . import _pykernel

FOUND = _pykernel.FOUND
EXHAUSTED = _pykernel.EXHAUSTED
LIMIT = _pykernel.LIMIT

try:
    from . import _kernel as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _pykernel}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled

if os.environ.get("LSDOM_PURE") == "1" or _compiled is None:
    _default = _pykernel
else:
    _default = _compiled

BACKEND = _default.NAME


def available() -> list[str]:
    return sorted(_BACKENDS)


def get(name: str | None = None):
    """Return the kernel module called ``name`` (default: the selected one)."""
    if name is None:
        return _default
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel {name!r} not available; have {available()}") from None


def search(*args, **kwargs):
    return _default.search(*args, **kwargs)
