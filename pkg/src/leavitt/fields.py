"""Exact scalar fields: the rationals (default) and prime fields F_p.

All coefficient arithmetic in the package is exact; equality of algebra
elements reduces to equality of these scalars, so no floating point is
allowed anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import LeavittError, PreconditionError


class PrimeFieldElement:
    """Residue in F_p. Supports the same arithmetic surface as Fraction."""

    __slots__ = ("residue", "p")

    def __init__(self, residue, p):
        self.residue = residue % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise LeavittError(f"mixed prime fields F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.residue + other.residue, self.p)

    __radd__ = __add__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.residue - other.residue, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.residue * other.residue, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.residue == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return self * PrimeFieldElement(pow(other.residue, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.residue == other % self.p
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.residue == other.residue
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"PrimeFieldElement({self.residue}, {self.p})"

    def __str__(self):
        return str(self.residue)


class RationalField:
    """The field of rational numbers, backed by fractions.Fraction."""

    name = "q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, numerator, denominator=1):
        return Fraction(numerator, denominator)

    def format(self, value):
        return str(value)

    def is_ordered(self):
        # Rational coefficients print with real signs; prime fields do not.
        return True

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational-field")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p for a prime p."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise PreconditionError(f"{p} is not prime")
        self.p = p
        self.name = f"fp:{p}"

    def zero(self):
        return PrimeFieldElement(0, self.p)

    def one(self):
        return PrimeFieldElement(1, self.p)

    def from_int(self, n):
        return PrimeFieldElement(n, self.p)

    def from_fraction(self, numerator, denominator=1):
        return self.from_int(numerator) / self.from_int(denominator)

    def format(self, value):
        return str(value.residue)

    def is_ordered(self):
        return False

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime-field", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p):
    return PrimeField(p)


def field_from_name(name):
    """Parse a CLI field tag: "q" or "fp:<p>"."""
    if name == "q":
        return QQ
    if name.startswith("fp:"):
        try:
            p = int(name[3:])
        except ValueError:
            raise PreconditionError(f"bad field tag {name!r}") from None
        return PrimeField(p)
    raise PreconditionError(f"bad field tag {name!r} (expected 'q' or 'fp:<p>')")
