"""Backend selection for the numerical kernels.

The compiled extension is used when importable; set ``NESTEDIK_PURE=1`` to
force the pure-Python implementation.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("NESTEDIK_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

theta = _impl.theta
theta_many = _impl.theta_many
dfs_contract = _impl.dfs_contract
multiplicative_theta = _impl.multiplicative_theta

MODEL_CODES = {"rational": 0, "trigonometric": 1, "elliptic": 2}


def backend(name):
    """Return the kernel module for ``"python"`` or ``"cython"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
