"""Exact eta values in (1/16)Z / 2Z.

An eta value is stored as an integer numerator ``num`` in ``0..31`` meaning
``num/16 mod 2``.  Addition and negation are done mod 32, so no rational or
floating point arithmetic is ever involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

MODULUS = 32
DENOMINATOR = 16
SHIFT_ONE = 16  # +1 mod 2Z


@dataclass(frozen=True, order=True)
class Mod32:
    num: int

    def __post_init__(self):
        if not isinstance(self.num, int) or isinstance(self.num, bool):
            raise TypeError(f"Mod32 numerator must be int, got {self.num!r}")
        if not 0 <= self.num < MODULUS:
            object.__setattr__(self, "num", self.num % MODULUS)

    def __add__(self, other: Mod32) -> Mod32:
        return Mod32((self.num + other.num) % MODULUS)

    def __neg__(self) -> Mod32:
        return Mod32((MODULUS - self.num) % MODULUS)

    def __sub__(self, other: Mod32) -> Mod32:
        return self + (-other)

    def shifted(self) -> Mod32:
        """The value plus one, mod 2Z."""
        return Mod32((self.num + SHIFT_ONE) % MODULUS)

    def symmetric(self) -> int:
        """Representative numerator in (-16, 16]."""
        return self.num if self.num <= SHIFT_ONE else self.num - MODULUS

    def fraction(self) -> Fraction:
        return Fraction(self.symmetric(), DENOMINATOR)

    def bordism_class(self) -> int:
        if self.num % 2:
            raise ValueError(f"odd numerator {self.num} has no Z/16 class")
        return (self.num // 2) % 16

    def __str__(self) -> str:
        return format_fraction(self.num)


ZERO = Mod32(0)


def format_fraction(num: int) -> str:
    """Reduced fraction string of ``num/16`` using the representative in (-1, 1]."""
    frac = Mod32(num % MODULUS).fraction()
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def eta_from_fixed_points(indices) -> Mod32:
    """Eta value from the signs of the isolated fixed points of an equivariant structure.

    Each fixed point contributes its index (+1 or -1) times 1/8, i.e. 2/16.
    """
    total = 0
    for sign in indices:
        if sign not in (1, -1):
            raise ValueError(f"fixed point index must be +1 or -1, got {sign!r}")
        total += sign
    return Mod32((2 * total) % MODULUS)


@dataclass(frozen=True)
class ProfileEntry:
    """One Pin+ structure: its H^1 label bits, the bit on the designated loop, its eta value."""

    label: tuple
    restr: int | None
    value: Mod32

    def label_str(self) -> str:
        return "".join(str(b) for b in self.label)


# A Pin+ profile is an immutable tuple of entries, one per structure.
PinProfile = tuple
