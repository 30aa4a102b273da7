"""Fixed-width binary strings and their bitwise algebra.

Bit 1 is the most significant bit, so the text form reads left to right:
``BitString.parse("110")`` has bit 1 = 1, bit 2 = 1, bit 3 = 0.
"""
from __future__ import annotations

from dataclasses import dataclass

MAX_WIDTH = 64


@dataclass(frozen=True)
class BitString:
    """An immutable n-bit string backed by a single machine-word integer."""

    width: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in [1, {MAX_WIDTH}], got {self.width}")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"value {self.bits} does not fit in {self.width} bits")

    @classmethod
    def zeros(cls, width: int) -> "BitString":
        return cls(width, 0)

    @classmethod
    def ones(cls, width: int) -> "BitString":
        return cls(width, (1 << width) - 1)

    @classmethod
    def unit(cls, width: int, position: int) -> "BitString":
        """Single one at 1-based `position`, counted from the left."""
        if not 1 <= position <= width:
            raise ValueError(f"position {position} outside 1..{width}")
        return cls(width, 1 << (width - position))

    @classmethod
    def from_positions(cls, width: int, positions) -> "BitString":
        """Ones exactly at the given 1-based positions."""
        bits = 0
        for p in positions:
            if not 1 <= p <= width:
                raise ValueError(f"position {p} outside 1..{width}")
            bits |= 1 << (width - p)
        return cls(width, bits)

    @classmethod
    def parse(cls, text: str) -> "BitString":
        """Inverse of str(): exactly width characters of 0/1, no separators."""
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"not a binary string: {text!r}")
        return cls(len(text), int(text, 2))

    def __str__(self) -> str:
        return format(self.bits, f"0{self.width}b")

    def bit(self, position: int) -> int:
        """Bit at 1-based `position` (1 = leftmost / most significant)."""
        if not 1 <= position <= self.width:
            raise ValueError(f"position {position} outside 1..{self.width}")
        return (self.bits >> (self.width - position)) & 1

    def _check_width(self, other: "BitString") -> None:
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")

    def __and__(self, other: "BitString") -> "BitString":
        self._check_width(other)
        return BitString(self.width, self.bits & other.bits)

    def __or__(self, other: "BitString") -> "BitString":
        self._check_width(other)
        return BitString(self.width, self.bits | other.bits)

    def __xor__(self, other: "BitString") -> "BitString":
        self._check_width(other)
        return BitString(self.width, self.bits ^ other.bits)

    def __invert__(self) -> "BitString":
        return BitString(self.width, self.bits ^ ((1 << self.width) - 1))

    def complement(self) -> "BitString":
        return ~self

    def weight(self) -> int:
        """Hamming weight: the number of one-bits."""
        return self.bits.bit_count()

    def inner_product(self, other: "BitString") -> int:
        """Mod-2 inner product: parity of the bitwise overlap."""
        self._check_width(other)
        return (self.bits & other.bits).bit_count() & 1

    def support(self) -> tuple:
        """1-based positions of the one-bits, left to right."""
        return tuple(p for p in range(1, self.width + 1) if self.bit(p))

    def is_zeros(self) -> bool:
        return self.bits == 0

    def is_ones(self) -> bool:
        return self.bits == (1 << self.width) - 1
