"""Exact coefficient fields: the rationals and prime fields.

Coefficients are plain Python values (``fractions.Fraction`` for the
rationals, ``int`` residues in ``[0, p)`` for prime fields).  The field
object supplies the arithmetic, so polynomial code stays field-generic
and never touches floating point.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Bad field specification."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field of rational numbers, with Fraction arithmetic.

    Fractions are normalized by construction (lowest terms, positive
    denominator), which keeps canonical polynomial forms unique.
    """

    characteristic = 0
    tag = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value) -> Fraction:
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero coefficient")
        return a / b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero coefficient")
        return 1 / Fraction(a)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash(("field", 0))

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field of ``p`` elements, residues stored as ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"characteristic must be prime, got {p}")
        self.characteristic = p
        self.tag = f"fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, value) -> int:
        p = self.characteristic
        if isinstance(value, Fraction):
            return self.div(value.numerator % p, value.denominator % p)
        return int(value) % p

    def add(self, a, b):
        return (a + b) % self.characteristic

    def sub(self, a, b):
        return (a - b) % self.characteristic

    def mul(self, a, b):
        return (a * b) % self.characteristic

    def div(self, a, b):
        if b % self.characteristic == 0:
            raise ZeroDivisionError("division by zero coefficient")
        return (a * pow(b, -1, self.characteristic)) % self.characteristic

    def neg(self, a):
        return (-a) % self.characteristic

    def inv(self, a):
        if a % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero coefficient")
        return pow(a, -1, self.characteristic)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str) -> int:
        frac = Fraction(text)
        return self.coerce(frac)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("field", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})"


QQ = Rationals()
GF2 = PrimeField(2)


def parse_field(text: str):
    """Parse a field spec string: ``q`` for the rationals, ``fp:<p>`` for GF(p)."""
    text = text.strip().lower()
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise FieldError(f"bad prime in field spec {text!r}") from None
        return PrimeField(p)
    raise FieldError(f"unknown field spec {text!r} (expected 'q' or 'fp:<p>')")
