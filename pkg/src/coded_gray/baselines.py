"""The two earlier interpolation constructions, over the same staircase code.

``RepetitionGrayCode`` keeps four copies of the codeword and rewrites one
copy at a time. ``BufferedGrayCode`` keeps two copies framed by three
constant buffers whose values show which copy is being rewritten.
Both share the window-argmin final stage with the coded Gray code.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .bits import BitWord
from .codes import StaircaseCode, build_staircase, make_inner_code
from .gray import gray_index, gray_word, ruler_capped
from .rgc import CodeLayout, classify_buffer
from .scheme import RobustGrayScheme


class _CopiesScheme(RobustGrayScheme):
    def __init__(self, C: StaircaseCode):
        self.C = C
        self.k = C.k

    @classmethod
    def build(cls, kB: int, nB: int, s: int, seed: int = 0):
        return cls(build_staircase(make_inner_code(kB, nB, seed), s))

    def codeword(self, j: int) -> BitWord:
        return self.C.encode(gray_word(j, self.k))

    def _coarse(self, copy: BitWord) -> int:
        return gray_index(self.C.decode(copy))


class RepetitionGrayCode(_CopiesScheme):
    """Milestone j is four copies of the j-th codeword."""

    name = "lp4"
    copies = 4

    def __init__(self, C: StaircaseCode):
        super().__init__(C)
        self.N = self.copies * C.n
        self.M = self.copies * C.inner.nB

    def milestone_word(self, j: int) -> BitWord:
        self._check_j(j)
        return np.tile(self.codeword(j), self.copies)

    def schedule_positions(self, j: int) -> np.ndarray:
        self._check_j(j, transition=True)
        row = self.C.support(ruler_capped(j, self.k))
        return np.concatenate([q * self.C.n + row for q in range(self.copies)])

    def estimate_milestone(self, word: BitWord) -> int:
        """Plurality vote over the four decoded copies.

        At most one copy is mid-rewrite, so the two copies on one side
        agree. Ties prefer the right pair (still the old codeword during
        the first half), then the left pair.
        """
        n = self.C.n
        votes = [self._coarse(word[q * n:(q + 1) * n]) for q in range(self.copies)]
        counts = Counter(votes)
        best = max(counts.values())
        for a, b in ((2, 3), (0, 1)):
            if votes[a] == votes[b] and counts[votes[a]] == best:
                return votes[a]
        return next(v for v in reversed(votes) if counts[v] == best)


class BufferedGrayCode(_CopiesScheme):
    """Milestone j is ``buf | c^j | buf | c^j | buf`` with all-zero buffers
    for even j and all-one buffers for odd j."""

    name = "fw"

    def __init__(self, C: StaircaseCode, buf_len: int | None = None):
        super().__init__(C)
        self.buf_len = C.inner.nB if buf_len is None else buf_len
        if self.buf_len < 1:
            raise ValueError("buffer length must be positive")
        b, n = self.buf_len, C.n
        self.seg_offsets = (0, b, b + n, 2 * b + n, 2 * b + 2 * n)
        self.N = 3 * b + 2 * n
        self.M = 3 * b + 2 * C.inner.nB

    def milestone_word(self, j: int) -> BitWord:
        self._check_j(j)
        buf = np.full(self.buf_len, j & 1, dtype=np.uint8)
        c = self.codeword(j)
        return np.concatenate([buf, c, buf, c, buf])

    def schedule_positions(self, j: int) -> np.ndarray:
        self._check_j(j, transition=True)
        off = self.seg_offsets
        buf = np.arange(self.buf_len)
        row = self.C.support(ruler_capped(j, self.k))
        return np.concatenate([off[0] + buf, off[1] + row, off[2] + buf, off[3] + row, off[4] + buf])

    def estimate_milestone(self, word: BitWord) -> int:
        """Decode the copy that is not framed by disagreeing buffers."""
        off, b, n = self.seg_offsets, self.buf_len, self.C.n
        v1, v2, v3 = (classify_buffer(word[o:o + b])[1] for o in (off[0], off[2], off[4]))
        first = word[off[1]:off[1] + n]
        second = word[off[3]:off[3] + n]
        if v1 != v2 and v2 == v3:
            return self._coarse(second)
        return self._coarse(first)


SCHEMES = ("lp4", "fw", "coded-gray")


def make_scheme(name: str, kB: int, nB: int, s: int, seed: int = 0) -> RobustGrayScheme:
    C = build_staircase(make_inner_code(kB, nB, seed), s)
    if name == "lp4":
        return RepetitionGrayCode(C)
    if name == "fw":
        return BufferedGrayCode(C)
    if name == "coded-gray":
        return CodeLayout(C)
    raise ValueError(f"unknown scheme {name!r}; expected one of {SCHEMES}")
