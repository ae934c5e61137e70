"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``REPSHIFT_PURE=1`` to force the pure-Python kernels.
"""

import os

from . import _kernels_py

if os.environ.get("REPSHIFT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

enumerate_homs = _impl.enumerate_homs
eval_word = _impl.eval_word
