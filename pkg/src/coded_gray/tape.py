"""Scatter encoded counters onto a shared random tape and read them back.

Each feature's codeword is written to its own pseudorandom set of tape
cells. Cells nobody wrote hold fair random bits; cells where writers
disagree also get a fair random bit. The decoder only sees the cells of
the queried feature, so collisions and empty cells act like channel noise.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Hashable, Mapping

import numpy as np

from .bits import BitWord
from .scheme import RobustGrayScheme

_FILL_TAG = 0x7A9E_F111


def _feature_key(index: Hashable) -> int:
    if isinstance(index, (int, np.integer)) and index >= 0:
        return int(index)
    digest = hashlib.blake2b(repr(index).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def positions_for(seed: int, index: Hashable, N: int, T: int) -> np.ndarray:
    """N distinct tape cells for feature ``index``, fixed by (seed, index)."""
    if N > T:
        raise ValueError(f"cannot place {N} bits on a tape of {T} cells")
    rng = np.random.default_rng([seed, _feature_key(index)])
    return rng.choice(T, size=N, replace=False)


@dataclass(frozen=True, eq=False)
class Tape:
    cells: BitWord
    seed: int
    scheme: RobustGrayScheme

    @property
    def T(self) -> int:
        return self.cells.size

    def query(self, index: Hashable) -> int:
        return query(self, index)


def default_tape_length(scheme: RobustGrayScheme, n_entries: int) -> int:
    return 8 * max(n_entries, 1) * scheme.N


def build_tape(
    entries: Mapping[Hashable, int],
    scheme: RobustGrayScheme,
    T: int | None = None,
    seed: int = 0,
    *,
    randomize_agreeing: bool = False,
) -> Tape:
    """Superimpose the encodings of ``entries`` on a tape of T cells.

    With ``randomize_agreeing`` every multiply-written cell gets a random
    bit; by default only cells whose writers disagree do.
    """
    if T is None:
        T = default_tape_length(scheme, len(entries))
    if T < scheme.N:
        raise ValueError(f"tape length {T} shorter than word length {scheme.N}")
    ones = np.zeros(T, dtype=np.int64)
    writes = np.zeros(T, dtype=np.int64)
    for index, value in entries.items():
        if not 1 <= value <= scheme.m:
            raise ValueError(f"value {value} for {index!r} outside [1, {scheme.m}]")
        pos = positions_for(seed, index, scheme.N, T)
        writes[pos] += 1
        ones[pos] += scheme.encode(value)
    cells = np.random.default_rng([seed, _FILL_TAG]).integers(0, 2, size=T, dtype=np.uint8)
    if randomize_agreeing:
        keep = writes == 1
    else:
        keep = (writes >= 1) & ((ones == 0) | (ones == writes))
    cells[keep] = (ones[keep] > 0).astype(np.uint8)
    cells.setflags(write=False)
    return Tape(cells, seed, scheme)


def gather(tape: Tape, index: Hashable) -> BitWord:
    return tape.cells[positions_for(tape.seed, index, tape.scheme.N, tape.T)]


def query(tape: Tape, index: Hashable) -> int:
    """Decode feature ``index``; absent features decode to an arbitrary value."""
    return tape.scheme.decode(gather(tape, index))
