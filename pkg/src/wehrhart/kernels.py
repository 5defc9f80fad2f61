"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used.  Setting ``WEHRHART_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("WEHRHART_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

WIDTH = _impl.WIDTH
MASK = _impl.MASK
mul = _impl.mul
add_into = _impl.add_into
scale = _impl.scale
partial = _impl.partial
todd = _impl.todd
drop_var = _impl.drop_var
evaluate = _impl.evaluate


def available_backends():
    """Return ``{name: module}`` for every backend importable here."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
