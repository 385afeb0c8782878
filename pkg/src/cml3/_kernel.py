"""Kernel backend selection.

The compiled extension (``cml3._fastcore``) is used when it was built;
otherwise the pure-Python reference (``cml3._purecore``) takes over.  Set
``CML3_BACKEND=pure`` or ``CML3_BACKEND=fast`` to force one of the two.
Both backends implement identical semantics on identical data.
"""

import os

from ._purecore import (  # noqa: F401  (shared helpers, backend independent)
    DER_BITS,
    DER_MASK,
    MAX_BASE,
    MAX_DER,
    key_from_syms,
    pack_sym,
    sym_base,
    sym_der,
    syms_from_key,
)

_requested = os.environ.get("CML3_BACKEND", "").strip().lower()
if _requested not in ("", "fast", "pure"):
    raise ImportError(f"unknown CML3_BACKEND: {_requested!r}")

if _requested == "pure":
    from . import _purecore as _impl

    BACKEND = "pure"
else:
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]

        BACKEND = "fast"
    except ImportError:
        if _requested == "fast":
            raise
        from . import _purecore as _impl

        BACKEND = "pure"

wedge_terms = _impl.wedge_terms
derive_terms = _impl.derive_terms
assoc_step = _impl.assoc_step
cmul_terms = _impl.cmul_terms
