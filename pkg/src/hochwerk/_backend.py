"""Select the elimination kernel at import time.

The compiled int64 kernel is used when it was built and
``HOCHWERK_PURE_PYTHON`` is unset; it falls back to the Python kernel for a
single call whenever an intermediate value leaves the int64 range.
"""

import logging
import os

from . import _elim_py

log = logging.getLogger(__name__)

_compiled = None
if not os.environ.get("HOCHWERK_PURE_PYTHON"):
    try:
        from . import _elim_c as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def echelon(rows, ncols, keep=True):
    if _compiled is not None:
        rows = rows if isinstance(rows, list) else list(rows)
        try:
            return _compiled.echelon(rows, ncols, keep)
        except OverflowError:
            log.debug("int64 overflow in compiled kernel, retrying with Python ints")
    return _elim_py.echelon(rows, ncols, keep)
