"""Selects the compiled tour kernel when available.

Set ``ANTCOVER_PURE_PYTHON=1`` to force the pure-Python implementation.
"""
import os

from . import _pykernel

BACKEND = "python"
construct_tour = _pykernel.construct_tour

if not os.environ.get("ANTCOVER_PURE_PYTHON"):
    try:
        from ._ckernel import construct_tour  # noqa: F811
    except ImportError:
        pass
    else:
        BACKEND = "cython"
