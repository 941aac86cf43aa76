"""Binary symmetric channel with counter-based randomness.

Every transmission is keyed by ``(seed, index)``: the flip mask for a given
index never depends on which other indices were drawn before it, so trials
can run in any order or in parallel and still reproduce bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bits import BitWord

# Second Philox key word, separating channel noise from other keyed streams.
CHANNEL_STREAM = 0
SAMPLE_STREAM = 1


def keyed_rng(seed: int, index: int, stream: int = CHANNEL_STREAM) -> np.random.Generator:
    """Generator for counter block ``index`` under key ``(seed, stream)``."""
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, stream], dtype=np.uint64)
    counter = np.array([0, 0, index, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


@dataclass(frozen=True)
class BscChannel:
    p: float
    seed: int = 0

    def __post_init__(self) -> None:
        # p = 0 is the noiseless limit, kept for tests and sanity sweeps
        if not 0 <= self.p < 0.5:
            raise ValueError(f"crossover probability must lie in [0, 1/2), got {self.p}")

    def flips(self, n: int, index: int = 0) -> BitWord:
        return (keyed_rng(self.seed, index).random(n) < self.p).astype(np.uint8)

    def transmit(self, word: BitWord, index: int = 0) -> BitWord:
        word = np.asarray(word, dtype=np.uint8)
        return word ^ self.flips(word.size, index)


def capacity(p: float) -> float:
    """BSC capacity 1 - h(p) in bits per channel use."""
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return 1 + p * math.log2(p) + (1 - p) * math.log2(1 - p)
