"""Binary-reflected Gray code with the ruler-sequence flip order.

Bit position 1 (array index 0) is the leftmost and fastest-changing bit,
so for k = 4 the sequence starts 0000, 1000, 1100, 0100, 0110, ...
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import BitWord


@dataclass(frozen=True)
class GrayParams:
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"Gray word length must be >= 1, got {self.k}")

    @property
    def size(self) -> int:
        return 1 << self.k


def ruler(j: int) -> int:
    """Largest r with 2**r dividing 2*j, i.e. one plus the trailing zeros of j."""
    if j < 1:
        raise ValueError(f"ruler is defined for j >= 1, got {j}")
    return (j & -j).bit_length()


def ruler_capped(j: int, k: int) -> int:
    return min(ruler(j), k)


def gray_int(j: int) -> int:
    """Gray word of index j as an integer; bit i-1 holds position i."""
    i = j - 1
    return i ^ (i >> 1)


def gray_word(j: int, k: int) -> BitWord:
    """The j-th k-bit Gray word, j in [1, 2**k]."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 1 <= j <= (1 << k):
        raise ValueError(f"j={j} outside [1, 2**{k}]")
    g = gray_int(j)
    return ((g >> np.arange(k)) & 1).astype(np.uint8)


def gray_index(g: BitWord) -> int:
    """Inverse of :func:`gray_word`: suffix XORs give the binary digits of j - 1."""
    b = np.bitwise_xor.accumulate(np.asarray(g, dtype=np.uint8)[::-1])[::-1]
    return 1 + sum(int(bit) << i for i, bit in enumerate(b))
