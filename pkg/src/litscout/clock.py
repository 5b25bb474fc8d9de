"""Wall-clock indirection so stored timestamps can be pinned in tests
and when building deterministic fixture projects (LITSCOUT_FIXED_NOW)."""

from __future__ import annotations

import os
from datetime import datetime, timezone

FIXED_NOW_ENV = "LITSCOUT_FIXED_NOW"


def now_iso() -> str:
    fixed = os.environ.get(FIXED_NOW_ENV)
    if fixed:
        return fixed
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
