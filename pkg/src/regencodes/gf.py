"""Arithmetic in GF(2^w) via exp/log tables.

Elements are plain ints in [0, 2^w). Addition and subtraction are XOR;
multiplication and division go through discrete logarithms of a fixed
primitive element.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import ValidationError

# Primitive polynomial per width (bit i = coefficient of x^i).
_PRIMITIVE = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


class BinaryField:
    """The finite field with 2**w elements, 1 <= w <= 16."""

    zero = 0
    one = 1

    def __init__(self, w: int = 8) -> None:
        if w not in _PRIMITIVE:
            raise ValidationError(f"unsupported field width {w}; supported: 1..16")
        self.w = w
        self.order = 1 << w
        self.poly = _PRIMITIVE[w]
        exp = [0] * (2 * self.order)
        log = [0] * self.order
        x = 1
        for i in range(self.order - 1):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.order:
                x ^= self.poly
        # duplicate the cycle so mul() can skip one modular reduction
        for i in range(self.order - 1, 2 * self.order):
            exp[i] = exp[i - (self.order - 1)]
        self._exp = exp
        self._log = log

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ValidationError("zero has no inverse")
        return self._exp[self.order - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ValidationError("division by zero")
        if a == 0:
            return 0
        return self._exp[self._log[a] - self._log[b] + self.order - 1]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def contains(self, a: object) -> bool:
        return isinstance(a, int) and 0 <= a < self.order

    def element(self, i: int) -> int:
        """The i-th canonical element, used as the i-th evaluation point."""
        if not 0 <= i < self.order:
            raise ValidationError(
                f"GF(2^{self.w}) has only {self.order} elements, no element #{i}"
            )
        return i

    @property
    def hex_width(self) -> int:
        return (self.w + 3) // 4

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BinaryField) and other.w == self.w

    def __hash__(self) -> int:
        return hash(("BinaryField", self.w))

    def __repr__(self) -> str:
        return f"BinaryField(w={self.w})"


@lru_cache(maxsize=None)
def binary_field(w: int = 8) -> BinaryField:
    """Shared BinaryField instances; table construction is done once per w."""
    return BinaryField(w)
