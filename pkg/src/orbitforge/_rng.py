"""Deterministic named random streams.

All randomness in the package flows from one user-facing seed.  Each
(seed, name, index...) combination owns an independent stream, so sampling
loops give identical results whether run serially or in parallel, and
results do not depend on PYTHONHASHSEED.
"""

from __future__ import annotations

import hashlib
import random


def stream(seed: int, *names) -> random.Random:
    """Return a Random seeded from ``seed`` and a path of stream names."""
    tag = repr((int(seed),) + tuple(names)).encode()
    digest = hashlib.sha256(tag).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))
