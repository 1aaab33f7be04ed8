"""Engine backend selection: compiled extension if available, pure otherwise.

Set OWFLAB_PURE=1 to force the pure-Python backend (used by the tests to
cross-check the two implementations, and by the benchmark).
"""

from __future__ import annotations

import os

from . import _engine_py as pure

STEP_UNIQUE = pure.STEP_UNIQUE
STEP_STUCK = pure.STEP_STUCK
STEP_AMBIGUOUS = pure.STEP_AMBIGUOUS
STEP_OVERFLOW = pure.STEP_OVERFLOW
CLOSE_TERMINAL = pure.CLOSE_TERMINAL
CLOSE_AMBIGUOUS = pure.CLOSE_AMBIGUOUS
CLOSE_BUDGET = pure.CLOSE_BUDGET
CLOSE_OVERFLOW = pure.CLOSE_OVERFLOW

if os.environ.get("OWFLAB_PURE"):
    active = pure
else:
    try:
        from . import _speedups as active  # type: ignore[no-redef]
    except ImportError:
        active = pure

backend_name = active.backend_name
st_find_matches = active.st_find_matches
st_step = active.st_step
st_closure = active.st_closure
pcp_applications = active.pcp_applications
pcp_step = active.pcp_step
pcp_closure = active.pcp_closure
