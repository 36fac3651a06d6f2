"""Runtime knobs."""

from __future__ import annotations

import os


def max_threads() -> int:
    """Parallelism cap: LATTIKA_THREADS if set, else the hardware count."""
    raw = os.environ.get("LATTIKA_THREADS", "")
    if raw.strip():
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1
