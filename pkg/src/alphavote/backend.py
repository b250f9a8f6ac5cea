"""Selection between the compiled and pure-Python Monte Carlo kernels.

The compiled kernel is preferred when its extension module imported
successfully; otherwise the numpy fallback is used.  The environment
variable ``ALPHAVOTE_BACKEND`` forces the choice (``cython`` or
``python``); forcing ``cython`` when the extension is missing is an
error rather than a silent downgrade.

Both kernels draw from identical random streams, so switching backend
changes results only at the level of floating-point summation order.
"""

from __future__ import annotations

import os

from . import _mc_fallback

try:
    from . import _mc_kernel
except ImportError:
    _mc_kernel = None

_BY_NAME = {"python": _mc_fallback}
if _mc_kernel is not None:
    _BY_NAME["cython"] = _mc_kernel


def available_backends() -> tuple[str, ...]:
    """Names of the kernels importable in this installation."""
    return tuple(sorted(_BY_NAME))


def get_backend(name: str):
    """Kernel module by name ('cython' or 'python')."""
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(
            f"backend {name!r} is not available; "
            f"choose from {available_backends()}") from None


def _select_default():
    forced = os.environ.get("ALPHAVOTE_BACKEND")
    if forced:
        return get_backend(forced)
    return _mc_kernel if _mc_kernel is not None else _mc_fallback


_active = _select_default()


def active_backend():
    """The kernel module used by default for Monte Carlo runs."""
    return _active


def backend_name() -> str:
    return _active.name
