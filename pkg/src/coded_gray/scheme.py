"""Common machinery for robust Gray codes built by interpolating between
milestone words.

A scheme fixes 2**k milestone words and, for each transition j -> j + 1,
an ordered list of M distinct positions whose flips walk milestone j to
milestone j + 1 one bit at a time. Milestone j encodes the integer
``mu(j) = (j - 1) * M + 1`` and ``m = mu(2**k)``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod

import numpy as np

from .bits import BitWord, hamming


class RobustGrayScheme(ABC):
    name: str = "scheme"
    #: number of Gray bits, so there are 2**k milestones
    k: int
    #: word length
    N: int
    #: milestone step (flips per transition)
    M: int

    @property
    def n_milestones(self) -> int:
        return 1 << self.k

    @property
    def m(self) -> int:
        return (self.n_milestones - 1) * self.M + 1

    def mu(self, j: int) -> int:
        return (j - 1) * self.M + 1

    def _check_j(self, j: int, *, transition: bool = False) -> None:
        hi = self.n_milestones - 1 if transition else self.n_milestones
        if not 1 <= j <= hi:
            raise ValueError(f"milestone index {j} outside [1, {hi}]")

    @abstractmethod
    def milestone_word(self, j: int) -> BitWord:
        """The word encoding mu(j)."""

    @abstractmethod
    def schedule_positions(self, j: int) -> np.ndarray:
        """The M flip positions of transition j, in flip order."""

    @abstractmethod
    def estimate_milestone(self, word: BitWord) -> int:
        """Coarse guess of the milestone index near which ``word`` sits."""

    def transition(self, j: int) -> tuple[BitWord, np.ndarray]:
        """Milestone word j together with its flip schedule."""
        return self.milestone_word(j), self.schedule_positions(j)

    def locate(self, x: int) -> tuple[int, int]:
        """Transition index j and number of flips r so that x = mu(j) + r."""
        if not 1 <= x <= self.m:
            raise ValueError(f"x={x} outside [1, {self.m}]")
        j, r = divmod(x - 1, self.M)
        return j + 1, r

    def encode(self, x: int) -> BitWord:
        j, r = self.locate(x)
        if not r:
            return self.milestone_word(j).copy()
        word, pos = self.transition(j)
        word = word.copy()
        word[pos[:r]] ^= 1
        return word

    def window(self, j_hat: int) -> tuple[int, int]:
        """Milestone range searched around a coarse estimate."""
        return max(j_hat - 1, 1), min(j_hat + 1, self.n_milestones)

    def window_distances(self, word: BitWord, j_lo: int, j_hi: int) -> np.ndarray:
        """Distance from ``word`` to encode(x) for every x in [mu(j_lo), mu(j_hi)].

        Only the left milestone is compared in full; each later candidate
        differs from its predecessor in one flipped position, which moves
        the distance by +1 (the flip breaks an agreement) or -1.
        """
        if j_lo == j_hi:
            return np.array([hamming(word, self.milestone_word(j_lo))])
        steps = []
        for j in range(j_lo, j_hi):
            milestone, pos = self.transition(j)
            if j == j_lo:
                start = hamming(word, milestone)
            steps.append(np.where(word[pos] == milestone[pos], 1, -1))
        walk = np.concatenate([[start], np.concatenate(steps)])
        return np.cumsum(walk)

    def decode_near(self, word: BitWord, j_hat: int) -> int:
        j_lo, j_hi = self.window(j_hat)
        dist = self.window_distances(word, j_lo, j_hi)
        # argmin returns the first minimiser, i.e. the smallest x
        return self.mu(j_lo) + int(np.argmin(dist))

    def decode(self, word: BitWord) -> int:
        word = np.asarray(word, dtype=np.uint8)
        if word.shape != (self.N,):
            raise ValueError(f"word must have {self.N} bits, got {word.shape}")
        return self.decode_near(word, self.estimate_milestone(word))

    @property
    def rate(self) -> float:
        return math.log2(self.m) / self.N
