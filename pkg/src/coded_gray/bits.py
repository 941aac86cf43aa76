"""Helpers for binary words.

A word is a 1-D ``numpy.uint8`` array of 0/1 values. Index 0 is the
leftmost bit.
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import Iterable

import numpy as np

BitWord = np.ndarray


def as_bits(bits: Iterable[int] | str) -> BitWord:
    """Coerce a sequence of 0/1 values (or a string like ``"0110"``) to a word."""
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits if ch in "01"]
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("bits must be 0 or 1")
    return arr


def bits_str(word: BitWord) -> str:
    return "".join("1" if b else "0" for b in word)


def hamming(a: BitWord, b: BitWord) -> int:
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


def int_to_bits(value: int, width: int) -> BitWord:
    """Big-endian (most significant first) bit expansion of ``value``."""
    if value < 0 or value >> width:
        raise ValueError(f"{value} does not fit in {width} bits")
    shifts = np.arange(width - 1, -1, -1)
    return ((value >> shifts) & 1).astype(np.uint8)


def bits_to_int(word: BitWord) -> int:
    out = 0
    for b in word:
        out = (out << 1) | int(b)
    return out


def pack(word: BitWord) -> bytes:
    """Pack bits MSB-first within each byte; the last byte is zero-padded."""
    return np.packbits(word, bitorder="big").tobytes()


def unpack(data: bytes, n: int) -> BitWord:
    arr = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="big")
    if arr.size < n:
        raise ValueError(f"need {n} bits, got {arr.size}")
    return arr[:n].astype(np.uint8)


def to_hex(word: BitWord) -> str:
    return pack(word).hex()


def from_hex(text: str, n: int) -> BitWord:
    return unpack(bytes.fromhex(text.strip()), n)


# Word file: 8-byte little-endian bit length, then ceil(N/8) packed bytes.
def dump_word(word: BitWord) -> bytes:
    return struct.pack("<Q", word.size) + pack(word)


def load_word(data: bytes) -> BitWord:
    if len(data) < 8:
        raise ValueError("truncated word file header")
    (n,) = struct.unpack_from("<Q", data)
    body = data[8:]
    if len(body) != (n + 7) // 8:
        raise ValueError(f"word file declares {n} bits but carries {len(body)} bytes")
    return unpack(body, n)


def write_word_file(path: str | Path, word: BitWord) -> None:
    Path(path).write_bytes(dump_word(word))


def read_word_file(path: str | Path) -> BitWord:
    return load_word(Path(path).read_bytes())
