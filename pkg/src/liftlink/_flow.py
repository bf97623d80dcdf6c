"""Backend selection for the flow kernel.

Prefers the compiled extension, falls back to the pure-Python twin.
Set ``LIFTLINK_NO_EXT=1`` to force the fallback (used by the parity tests
and the benchmark).
"""

import os

if os.environ.get("LIFTLINK_NO_EXT"):
    from . import _flowpy as _impl

    BACKEND = "python"
else:
    try:
        from . import _flowcore as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _flowpy as _impl

        BACKEND = "python"

unit_flow = _impl.unit_flow


def backend_name():
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return BACKEND
