"""Kernel selection.

The compiled extension is used when it imports; set ``SLITPLANE_PURE=1`` to
force the pure-Python kernels.  ``use()`` switches at runtime (tests and the
benchmark run both).
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

kernels = _kernels_py if (_compiled is None or os.environ.get("SLITPLANE_PURE")) else _compiled


def available():
    names = ["python"]
    if _compiled is not None:
        names.append("compiled")
    return names


def use(name):
    """Select the kernel backend by name ("python" or "compiled")."""
    global kernels
    if name == "python":
        kernels = _kernels_py
    elif name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        kernels = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    return kernels
