"""Small binary linear codes: the inner block code, the staircase code
stacked from it, and the backup codec that protects (row index, backup bits).

Messages are big-endian when read as integers: the message whose bits are
``int_to_bits(v, kB)`` has value ``v``. Decoder ties go to the lowest value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .bits import BitWord, int_to_bits

Confidence = Literal["clean", "forced"]

N_CANDIDATES = 64
MAX_RANK_RETRIES = 1000
# Full received-word lookup table is built when 2**(kB + nB) stays this small.
TABLE_LOG2_LIMIT = 24


class CodeConstructionError(RuntimeError):
    pass


def gf2_rank(mat: np.ndarray) -> int:
    m = (np.asarray(mat, dtype=np.uint8) & 1).copy()
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r, col]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        hits = m[:, col].astype(bool)
        hits[rank] = False
        m[hits] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def _all_messages(kB: int) -> np.ndarray:
    values = np.arange(1 << kB)
    shifts = np.arange(kB - 1, -1, -1)
    return ((values[:, None] >> shifts) & 1).astype(np.uint8)


def _pack_rows(rows: np.ndarray) -> np.ndarray:
    """Rows of bits -> int64 (first column most significant)."""
    weights = 1 << np.arange(rows.shape[1] - 1, -1, -1, dtype=np.int64)
    return rows.astype(np.int64) @ weights


def _min_distance(codebook: np.ndarray) -> int:
    weights = codebook[1:].sum(axis=1)
    return int(weights.min()) if weights.size else codebook.shape[1]


@dataclass(frozen=True, eq=False)
class InnerCode:
    """Binary linear [nB, kB] code with exact nearest-codeword decoding."""

    G: np.ndarray
    kB: int = field(init=False)
    nB: int = field(init=False)
    dmin: int = field(init=False)
    codebook: np.ndarray = field(init=False, repr=False)
    _packed: np.ndarray = field(init=False, repr=False)
    _table: np.ndarray | None = field(init=False, repr=False)

    def __post_init__(self) -> None:
        G = np.asarray(self.G, dtype=np.uint8) & 1
        G.setflags(write=False)
        kB, nB = G.shape
        if not 1 <= kB <= nB:
            raise ValueError(f"need 1 <= kB <= nB, got kB={kB}, nB={nB}")
        if gf2_rank(G) != kB:
            raise CodeConstructionError("generator matrix is not full rank")
        codebook = (_all_messages(kB).astype(np.int64) @ G) & 1
        codebook = codebook.astype(np.uint8)
        codebook.setflags(write=False)
        packed = _pack_rows(codebook)
        set_ = object.__setattr__
        set_(self, "G", G)
        set_(self, "kB", kB)
        set_(self, "nB", nB)
        set_(self, "codebook", codebook)
        set_(self, "dmin", _min_distance(codebook))
        set_(self, "_packed", packed)
        table = None
        if kB + nB <= TABLE_LOG2_LIMIT:
            words = np.arange(1 << nB, dtype=np.int64)
            dist = np.bitwise_count(words[:, None] ^ packed[None, :])
            table = np.argmin(dist, axis=1).astype(np.int64)
            table.setflags(write=False)
        set_(self, "_table", table)

    @property
    def radius(self) -> int:
        return (self.dmin - 1) // 2

    def encode(self, msg: BitWord) -> BitWord:
        msg = np.asarray(msg, dtype=np.uint8)
        if msg.shape != (self.kB,):
            raise ValueError(f"message must have {self.kB} bits, got {msg.shape}")
        return ((msg.astype(np.int64) @ self.G) & 1).astype(np.uint8)

    def decode_value(self, word: BitWord) -> tuple[int, int]:
        """Nearest message value and its Hamming distance to ``word``."""
        word = np.asarray(word, dtype=np.uint8)
        if word.shape != (self.nB,):
            raise ValueError(f"word must have {self.nB} bits, got {word.shape}")
        w = int(_pack_rows(word[None, :])[0])
        if self._table is not None:
            v = int(self._table[w])
            return v, int(self._packed[v] ^ w).bit_count()
        dist = np.bitwise_count(self._packed ^ w)
        v = int(np.argmin(dist))
        return v, int(dist[v])

    def decode(self, word: BitWord) -> BitWord:
        return self.codebook_message(self.decode_value(word)[0])

    def codebook_message(self, value: int) -> BitWord:
        return int_to_bits(value, self.kB)

    def to_text(self) -> str:
        return "\n".join("".join(map(str, row)) for row in self.G)


def make_inner_code(kB: int, nB: int, seed: int) -> InnerCode:
    """Best of 64 seeded random full-rank generators, ranked by minimum distance."""
    if not 1 <= kB < nB <= 24:
        raise ValueError(f"need 1 <= kB < nB <= 24, got kB={kB}, nB={nB}")
    rng = np.random.default_rng(seed)
    best: InnerCode | None = None
    found = 0
    for _ in range(MAX_RANK_RETRIES):
        G = rng.integers(0, 2, size=(kB, nB), dtype=np.uint8)
        if gf2_rank(G) < kB:
            continue
        code = InnerCode(G)
        if best is None or code.dmin > best.dmin:
            best = code
        found += 1
        if found == N_CANDIDATES:
            break
    if best is None:
        raise CodeConstructionError(f"no full-rank {kB}x{nB} generator found")
    return best


def inner_encode(code: InnerCode, msg: BitWord) -> BitWord:
    return code.encode(msg)


def inner_decode(code: InnerCode, word: BitWord) -> BitWord:
    return code.decode(word)


@dataclass(frozen=True, eq=False)
class StaircaseCode:
    """Banded code whose i-th block-row is B in block-column i and the
    complement of B in block-column i + 1.

    Every row of ``A`` weighs exactly nB, so adding one row to a codeword
    touches exactly nB positions.
    """

    inner: InnerCode
    s: int
    A: np.ndarray = field(init=False, repr=False)
    supports: tuple[np.ndarray, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        kB, nB = self.inner.kB, self.inner.nB
        B = self.inner.G
        A = np.zeros((self.s * kB, (self.s + 1) * nB), dtype=np.uint8)
        for i in range(self.s):
            A[i * kB:(i + 1) * kB, i * nB:(i + 1) * nB] = B
            A[i * kB:(i + 1) * kB, (i + 1) * nB:(i + 2) * nB] = 1 - B
        if not np.all(A.sum(axis=1) == nB):
            raise CodeConstructionError("staircase rows do not all weigh nB")
        A.setflags(write=False)
        supports = tuple(np.flatnonzero(row) for row in A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "supports", supports)

    @property
    def k(self) -> int:
        return self.s * self.inner.kB

    @property
    def n(self) -> int:
        return (self.s + 1) * self.inner.nB

    def support(self, rho: int) -> np.ndarray:
        """Ascending column indices where row ``rho`` (1-based) of A is 1."""
        if not 1 <= rho <= self.k:
            raise ValueError(f"row index {rho} outside [1, {self.k}]")
        return self.supports[rho - 1]

    def encode(self, msg: BitWord) -> BitWord:
        msg = np.asarray(msg, dtype=np.uint8)
        if msg.shape != (self.k,):
            raise ValueError(f"message must have {self.k} bits, got {msg.shape}")
        return ((msg.astype(np.int64) @ self.A) & 1).astype(np.uint8)

    def decode(self, word: BitWord) -> BitWord:
        """Block-by-block decoding, peeling each recovered chunk's
        complement-block contribution off the next block. The last block
        is never read."""
        word = np.asarray(word, dtype=np.uint8)
        if word.shape != (self.n,):
            raise ValueError(f"word must have {self.n} bits, got {word.shape}")
        kB, nB = self.inner.kB, self.inner.nB
        out = np.empty(self.k, dtype=np.uint8)
        carry = np.zeros(nB, dtype=np.uint8)
        for i in range(self.s):
            block = word[i * nB:(i + 1) * nB] ^ carry
            chunk = self.inner.decode(block)
            out[i * kB:(i + 1) * kB] = chunk
            # chunk @ complement(B) == chunk @ B + parity(chunk) * ones
            carry = self.inner.encode(chunk) ^ (int(chunk.sum()) & 1)
        return out


def build_staircase(inner: InnerCode, s: int) -> StaircaseCode:
    return StaircaseCode(inner, s)


def staircase_encode(C: StaircaseCode, msg: BitWord) -> BitWord:
    return C.encode(msg)


def staircase_decode(C: StaircaseCode, word: BitWord) -> BitWord:
    return C.decode(word)


def clamp_row_index(rho: int, k: int) -> tuple[int, bool]:
    """Clamp a parsed row index into [1, k]; the flag reports whether it moved."""
    clamped = min(max(rho, 1), k)
    return clamped, clamped != rho


@dataclass(frozen=True, eq=False)
class BackupCodec:
    """Encodes (row index, nB backup bits) with consecutive blocks of the inner code.

    Layout of the payload: ``rho - 1`` in ``idx_bits`` bits (MSB first), then
    the backup bits, then zero padding up to ``n_blocks * kB`` bits.
    """

    inner: InnerCode
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def idx_bits(self) -> int:
        return max(1, (self.k - 1).bit_length())

    @property
    def payload_bits(self) -> int:
        return self.idx_bits + self.inner.nB

    @property
    def n_blocks(self) -> int:
        return -(-self.payload_bits // self.inner.kB)

    @property
    def length(self) -> int:
        return self.n_blocks * self.inner.nB

    def encode(self, rho: int, beta: BitWord) -> BitWord:
        if not 1 <= rho <= self.k:
            raise ValueError(f"row index {rho} outside [1, {self.k}]")
        beta = np.asarray(beta, dtype=np.uint8)
        if beta.shape != (self.inner.nB,):
            raise ValueError(f"backup must have {self.inner.nB} bits, got {beta.shape}")
        kB = self.inner.kB
        payload = np.zeros(self.n_blocks * kB, dtype=np.uint8)
        payload[:self.idx_bits] = int_to_bits(rho - 1, self.idx_bits)
        payload[self.idx_bits:self.payload_bits] = beta
        return np.concatenate(
            [self.inner.encode(payload[b * kB:(b + 1) * kB]) for b in range(self.n_blocks)]
        )

    def decode(self, word: BitWord) -> tuple[int, BitWord, Confidence]:
        word = np.asarray(word, dtype=np.uint8)
        if word.shape != (self.length,):
            raise ValueError(f"backup word must have {self.length} bits, got {word.shape}")
        kB, nB = self.inner.kB, self.inner.nB
        clean = True
        chunks = []
        for b in range(self.n_blocks):
            value, dist = self.inner.decode_value(word[b * nB:(b + 1) * nB])
            clean &= dist <= self.inner.radius
            chunks.append(int_to_bits(value, kB))
        payload = np.concatenate(chunks)
        raw = 0
        for bit in payload[:self.idx_bits]:
            raw = (raw << 1) | int(bit)
        rho, moved = clamp_row_index(raw + 1, self.k)
        beta = payload[self.idx_bits:self.payload_bits].copy()
        return rho, beta, "clean" if clean and not moved else "forced"


def backup_encode(bc: BackupCodec, rho: int, beta: BitWord) -> BitWord:
    return bc.encode(rho, beta)


def backup_decode(bc: BackupCodec, word: BitWord) -> tuple[int, BitWord, Confidence]:
    return bc.decode(word)
