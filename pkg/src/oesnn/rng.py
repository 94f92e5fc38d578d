"""Deterministic random-stream splitting.

Every random draw in the package flows from a single 64-bit scenario seed.
Substreams are derived with a counter-based generator (Philox) keyed by the
seed plus a stable path of labels, so each consumer gets an independent
stream whose output does not depend on the order in which other streams
are used.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _key_part(part) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    if isinstance(part, (int, np.integer)):
        return int(part) & 0xFFFFFFFF
    raise TypeError(f"substream path parts must be str or int, got {type(part).__name__}")


def substream(seed: int, *path) -> np.random.Generator:
    """Independent generator for ``(seed, path)``.

    Same arguments always produce the same stream; distinct paths produce
    statistically independent streams.
    """
    key = tuple(_key_part(p) for p in path)
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))
