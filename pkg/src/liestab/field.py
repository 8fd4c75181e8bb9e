"""Exact scalars over a prime field GF(p) or the rationals.

Internally a field element is a *raw* value: a canonical residue ``int`` in
``[0, p)`` for GF(p), and a :class:`fractions.Fraction` (or an ``int``, which
compares and hashes identically) for QQ.  Hot loops elsewhere in the package
work on raw values directly; :class:`Scalar` is the public, self-describing
wrapper.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import FieldMismatch, FieldSyntaxError, NotPrime

Raw = Union[int, Fraction]

_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*\)\s*$")
_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % f for f in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class FieldSpec:
    """GF(p) for ``p`` prime, or QQ when ``p == 0``."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    # -- description -----------------------------------------------------
    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return f"GF({self.p})" if self.p else "QQ"

    def __repr__(self) -> str:
        return f"FieldSpec({str(self)!r})"

    # -- raw arithmetic --------------------------------------------------
    @property
    def zero(self) -> Raw:
        return 0 if self.p else Fraction(0)

    @property
    def one(self) -> Raw:
        return 1 if self.p else Fraction(1)

    def coerce(self, x) -> Raw:
        """Map an int, Fraction, decimal string or Scalar into the field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"scalar of {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse_scalar(x)
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % self.p if self.p else Fraction(x)
        if isinstance(x, Fraction):
            if self.p:
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} has no image in {self}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return x
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def add(self, a: Raw, b: Raw) -> Raw:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: Raw, b: Raw) -> Raw:
        return a * b % self.p if self.p else a * b

    def neg(self, a: Raw) -> Raw:
        return -a % self.p if self.p else -a

    def inv(self, a: Raw) -> Raw:
        if not a:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        return pow(a, -1, self.p) if self.p else 1 / Fraction(a)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def power(self, a: Raw, e: int) -> Raw:
        if e < 0:
            return self.power(self.inv(a), -e)
        return pow(a, e, self.p) if self.p else Fraction(a) ** e

    def elements(self) -> Iterator[Raw]:
        if not self.p:
            raise ValueError("QQ is infinite")
        return iter(range(self.p))

    # -- squares ---------------------------------------------------------
    def is_square(self, a: Raw) -> bool:
        if self.p == 2 or not a:
            return True
        if self.p:
            return pow(a, (self.p - 1) // 2, self.p) == 1
        a = Fraction(a)
        if a < 0:
            return False
        return all(math.isqrt(t) ** 2 == t for t in (a.numerator, a.denominator))

    def sqrt(self, a: Raw) -> Raw | None:
        """A square root of ``a`` if one exists (exhaustive search over GF(p))."""
        if not self.is_square(a):
            return None
        if self.p:
            return next(b for b in range(self.p) if b * b % self.p == a)
        a = Fraction(a)
        return Fraction(math.isqrt(a.numerator), math.isqrt(a.denominator))

    # -- text ------------------------------------------------------------
    def parse_scalar(self, text: str) -> Raw:
        match = _SCALAR_RE.match(text)
        if not match:
            raise FieldSyntaxError(f"not a scalar: {text!r}")
        num = int(match.group(1))
        den = int(match.group(2)) if match.group(2) else 1
        if den == 0:
            raise FieldSyntaxError(f"zero denominator in {text!r}")
        try:
            return self.coerce(Fraction(num, den))
        except ZeroDivisionError as exc:
            raise FieldSyntaxError(str(exc)) from None

    def format(self, a: Raw) -> str:
        return str(a)

    def scalar(self, x) -> "Scalar":
        return Scalar(self, self.coerce(x))


GF = FieldSpec
QQ = FieldSpec(0)


def parse_field(text: str) -> FieldSpec:
    """Parse ``"GF(<p>)"`` or ``"QQ"``."""
    if text.strip() == "QQ":
        return QQ
    match = _FIELD_RE.match(text)
    if not match:
        raise FieldSyntaxError(f"field spec must be GF(<prime>) or QQ, got {text!r}")
    return FieldSpec(int(match.group(1)))


def is_square(a: "Scalar") -> bool:
    return a.field.is_square(a.value)


class Scalar:
    """An immutable field element with a canonical representative."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.coerce(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other) -> Raw:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.power(self.value, e))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.coerce(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self.field}, {self})"
