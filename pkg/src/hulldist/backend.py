"""Kernel backend selection: compiled Cython module if available, NumPy otherwise.

Set HULLDIST_FORCE_PY=1 to force the fallback (used by the parity tests and
the benchmark).
"""

import os

from . import _kernels_py

_kernels = None
_name = None


def _select():
    global _kernels, _name
    if os.environ.get("HULLDIST_FORCE_PY", "") not in ("", "0"):
        _kernels, _name = _kernels_py, "python"
        return
    try:
        from . import _kernels_c

        _kernels, _name = _kernels_c, "compiled"
    except ImportError:
        _kernels, _name = _kernels_py, "python"


_select()


def kernels():
    return _kernels


def backend_name() -> str:
    return _name


def force(name: str):
    """Switch backends at runtime ('compiled' or 'python'); raises if unavailable."""
    global _kernels, _name
    if name == "python":
        _kernels, _name = _kernels_py, "python"
    elif name == "compiled":
        from . import _kernels_c

        _kernels, _name = _kernels_c, "compiled"
    else:
        raise ValueError(f"unknown backend {name!r}")
