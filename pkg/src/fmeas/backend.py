"""Selects the tuple-walk kernel at import time.

The compiled extension is preferred when it imports; otherwise the
pure-Python fallback takes over with identical semantics.  Set
FMEAS_BACKEND=pure or FMEAS_BACKEND=compiled to force one side
(forcing the compiled side raises if the extension is missing).
"""

from __future__ import annotations

import os

from . import _fallback

_forced = os.environ.get("FMEAS_BACKEND", "").strip().lower()

if _forced in ("", "auto"):
    try:
        from . import _speedups as _active

        BACKEND = "compiled"
    except ImportError:
        _active = _fallback
        BACKEND = "pure"
elif _forced == "pure":
    _active = _fallback
    BACKEND = "pure"
elif _forced == "compiled":
    from . import _speedups as _active

    BACKEND = "compiled"
else:
    raise RuntimeError(
        "FMEAS_BACKEND must be 'pure', 'compiled', or 'auto', not %r" % _forced
    )

walk_product = _active.walk_product
