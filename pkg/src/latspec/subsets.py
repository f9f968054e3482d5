"""Exhaustive or seeded-sample iteration over subsets, plus vectorised subset folds."""

from __future__ import annotations

import random
from typing import Iterator

import numpy as np

LOW_BITS = 20


def subset_masks(k: int, rng: random.Random, exhaustive_limit: int, samples: int = 2000) -> Iterator[int]:
    """All ``2**k`` masks when ``k <= exhaustive_limit``, else ``samples`` seeded draws plus both extremes."""
    if k <= exhaustive_limit:
        yield from range(1 << k)
        return
    yield 0
    yield (1 << k) - 1
    for _ in range(samples):
        yield rng.getrandbits(k)


def fold_table(values: np.ndarray, table: np.ndarray, identity: int) -> np.ndarray:
    """``out[mask]`` is the fold of ``table`` over ``values[i]`` for the bits ``i`` of ``mask``."""
    out = np.array([identity], dtype=np.int32)
    for v in values:
        out = np.concatenate([out, table[out, v]])
    return out


def fold_and(values: np.ndarray, identity: int) -> np.ndarray:
    out = np.array([identity], dtype=np.int64)
    for v in values:
        out = np.concatenate([out, out & np.int64(v)])
    return out


def split(n: int) -> tuple[int, int]:
    lo = min(n, LOW_BITS)
    return lo, n - lo
