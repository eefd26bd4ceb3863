"""Select the elimination kernel: compiled if available, else pure Python.

Set ``OMEGALAB_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKEND = "python"
rref = _kernels_py.rref


def available_backends():
    return ["compiled", "python"] if _compiled is not None else ["python"]


def set_backend(name: str) -> None:
    global BACKEND, rref
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        rref = _compiled.rref
    elif name == "python":
        rref = _kernels_py.rref
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


if _compiled is not None and os.environ.get("OMEGALAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    set_backend("compiled")
