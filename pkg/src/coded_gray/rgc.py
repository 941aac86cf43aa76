"""The coded Gray code.

Word layout (segment lengths in brackets)::

    c-part [(s+1)nB] | buf1 [nB] | backup1 [len] | buf2 [nB] | backup2 [len] | buf3 [nB]

At milestone j the c-part is the staircase codeword of the j-th Gray word,
and both backup segments carry the encoded (row index, backup bits) pair
that the next transition needs for rollback. Even j uses all-zero buffers
and a plain second backup; odd j uses all-one buffers and a complemented
second backup, so consecutive milestones are exactly M bits apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .bits import BitWord
from .codes import (
    BackupCodec,
    Confidence,
    StaircaseCode,
    build_staircase,
    make_inner_code,
)
from .gray import gray_index, gray_word, ruler_capped
from .scheme import RobustGrayScheme

BufferLabel = Literal["zero", "one", "mixed"]

SEGMENTS = ("c", "buf1", "backup1", "buf2", "backup2", "buf3")


def classify_buffer(bits: BitWord) -> tuple[BufferLabel, int]:
    """Label a buffer by its fraction of ones (thresholds 1/3 and 2/3) and
    return its majority bit, with an exact half counting as 1."""
    n = len(bits)
    ones = int(np.count_nonzero(bits))
    if 3 * ones < n:
        label: BufferLabel = "zero"
    elif 3 * ones > 2 * n:
        label = "one"
    else:
        label = "mixed"
    return label, int(2 * ones >= n)


@dataclass(frozen=True)
class MilestoneWord:
    j: int
    word: BitWord
    parity: Literal["even", "odd"]


@dataclass(frozen=True)
class FlipSchedule:
    j: int
    positions: np.ndarray
    #: cumulative flip counts at the end of each of the six phases
    phase_ends: tuple[int, ...]

    def phase(self, name: str) -> np.ndarray:
        i = SEGMENTS.index(name)
        lo = self.phase_ends[i - 1] if i else 0
        return self.positions[lo:self.phase_ends[i]]


@dataclass(frozen=True)
class _State:
    c: BitWord
    rho: int
    beta: BitWord
    backup: BitWord


class CodeLayout(RobustGrayScheme):
    name = "coded-gray"

    def __init__(self, C: StaircaseCode):
        self.C = C
        self.bc = BackupCodec(C.inner, C.k)
        self.k = C.k
        self.buf_len = C.inner.nB
        lengths = (C.n, self.buf_len, self.bc.length, self.buf_len, self.bc.length, self.buf_len)
        offsets = np.concatenate([[0], np.cumsum(lengths)])
        self.seg_offsets = tuple(int(o) for o in offsets[:-1])
        self.N = int(offsets[-1])
        self.M = C.inner.nB + 3 * self.buf_len + self.bc.length

    @classmethod
    def build(cls, kB: int, nB: int, s: int, seed: int = 0) -> CodeLayout:
        return cls(build_staircase(make_inner_code(kB, nB, seed), s))

    def __repr__(self) -> str:
        inner = self.C.inner
        return f"CodeLayout(kB={inner.kB}, nB={inner.nB}, s={self.C.s}, N={self.N}, M={self.M})"

    def segment(self, word: BitWord, name: str) -> BitWord:
        i = SEGMENTS.index(name)
        lo = self.seg_offsets[i]
        hi = self.seg_offsets[i + 1] if i + 1 < len(SEGMENTS) else self.N
        return word[lo:hi]

    def _state(self, j: int) -> _State:
        c = self.C.encode(gray_word(j, self.k))
        rho = ruler_capped(j, self.k)
        beta = c[self.C.support(rho)]
        return _State(c, rho, beta, self.bc.encode(rho, beta))

    def _assemble(self, j: int, st: _State) -> BitWord:
        fill = j & 1
        buf = np.full(self.buf_len, fill, dtype=np.uint8)
        second = st.backup ^ fill
        return np.concatenate([st.c, buf, st.backup, buf, second, buf])

    def milestone(self, j: int) -> MilestoneWord:
        self._check_j(j)
        return MilestoneWord(j, self._assemble(j, self._state(j)), "odd" if j & 1 else "even")

    def milestone_word(self, j: int) -> BitWord:
        return self.milestone(j).word

    def flip_schedule(self, j: int) -> FlipSchedule:
        self._check_j(j, transition=True)
        return self._schedule(j, self._state(j), self._state(j + 1))

    def _schedule(self, j: int, old: _State, new: _State) -> FlipSchedule:
        off = self.seg_offsets
        buf = np.arange(self.buf_len)
        # backup2 flips its parity mask each transition, so it changes
        # exactly where the two encoded backups agree
        same = old.backup == new.backup
        phases = (
            self.C.support(old.rho),
            off[1] + buf,
            off[2] + np.flatnonzero(~same),
            off[3] + buf,
            off[4] + np.flatnonzero(same),
            off[5] + buf,
        )
        ends = tuple(int(e) for e in np.cumsum([len(p) for p in phases]))
        return FlipSchedule(j, np.concatenate(phases), ends)

    def schedule_positions(self, j: int) -> np.ndarray:
        return self.flip_schedule(j).positions

    def transition(self, j: int) -> tuple[BitWord, np.ndarray]:
        self._check_j(j, transition=True)
        old = self._state(j)
        sched = self._schedule(j, old, self._state(j + 1))
        return self._assemble(j, old), sched.positions

    def select_backup(self, word: BitWord) -> tuple[int, BitWord, Confidence]:
        """Pick the backup copy not under interpolation and decode it.

        With buffer majorities (v1, v2, v3): a disagreement between buf2 and
        buf3 means backup2 is mid-update, so backup1 is read plain. Otherwise
        backup2 is read, complemented when buf3 says the parity is odd.
        """
        v1, v2, v3 = (classify_buffer(self.segment(word, b))[1] for b in ("buf1", "buf2", "buf3"))
        first = self.segment(word, "backup1")
        second = self.segment(word, "backup2")
        if v2 != v3:
            return self.bc.decode(first)
        rho, beta, conf = self.bc.decode(second ^ v3)
        if v1 == v2 and conf == "forced":
            alt = self.bc.decode(first)
            if alt[2] == "clean":
                return alt
        return rho, beta, conf

    def roll(self, c: BitWord, rho: int, beta: BitWord) -> BitWord:
        """Overwrite the support of row ``rho`` of A with the backup bits."""
        out = np.array(c, dtype=np.uint8)
        out[self.C.support(rho)] = beta
        return out

    def estimate_milestone(self, word: BitWord) -> int:
        rho, beta, _ = self.select_backup(word)
        c_hat = self.roll(self.segment(word, "c"), rho, beta)
        return gray_index(self.C.decode(c_hat))


def classify_buffers(layout: CodeLayout, word: BitWord) -> tuple[tuple[BufferLabel, int], ...]:
    return tuple(classify_buffer(layout.segment(word, b)) for b in ("buf1", "buf2", "buf3"))
