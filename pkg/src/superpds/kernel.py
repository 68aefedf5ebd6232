"""Select the term kernel at import time.

The compiled Cython kernel is preferred when it is installed; the pure
Python twin is the fallback.  Set SUPERPDS_KERNEL=py or =c to force one
(forcing ``c`` raises if the extension is missing).
"""

from __future__ import annotations

import os

_choice = os.environ.get("SUPERPDS_KERNEL", "auto").lower()

if _choice not in ("auto", "c", "py"):
    raise ValueError("SUPERPDS_KERNEL must be auto, c or py, not %r" % (_choice,))

if _choice == "py":
    from . import _terms_py as _impl

    IMPLEMENTATION = "python"
else:
    try:
        from . import _terms_cy as _impl  # type: ignore[attr-defined]

        IMPLEMENTATION = "cython"
    except ImportError:
        if _choice == "c":
            raise
        from . import _terms_py as _impl

        IMPLEMENTATION = "python"

merge_sign = _impl.merge_sign
add_terms = _impl.add_terms
neg_terms = _impl.neg_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms
derive_terms = _impl.derive_terms
parity_split = _impl.parity_split
poisson_terms = _impl.poisson_terms
moyal_terms = _impl.moyal_terms
