"""
Exact scalar arithmetic over the rationals and odd prime fields GF(p).

Rational scalars are ``fractions.Fraction`` values; prime field scalars are
``Residue`` values kept in ``[0, p)``. Both support the usual arithmetic
operators, so matrix code is written once for either field.

Functions:
    - parse_field: Parse "Q" or "F<p>" into a FieldSpec
    - parse_scalar: Parse integer or fraction text into a canonical scalar
    - sqrt_scalar: Square root inside the base field, when one exists
    - discrete_log: Logarithm to the cached primitive root of GF(p)
    - generator: Smallest primitive root of GF(p), cached per field
"""

import logging
import random
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, Optional, Union

from sympy import isprime
from sympy.ntheory import discrete_log as sympy_discrete_log
from sympy.ntheory import primitive_root, sqrt_mod

from .errors import ParseError, UnsupportedFieldError

logger = logging.getLogger(__name__)

# Log tables are built eagerly up to this field size; beyond it sympy's
# discrete_log answers each query.
LOG_TABLE_LIMIT = 1 << 17

_SCALAR_RE = re.compile(r"^\s*([+\-−]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")
_FIELD_RE = re.compile(r"^\s*(?:Q|F(\d+))\s*$")


@dataclass(frozen=True, eq=False)
class Residue:
    """An element of GF(p), stored as its residue in [0, p)."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> Optional["Residue"]:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"Cannot combine residues modulo {self.modulus} and {other.modulus}"
                )
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return Residue(other, self.modulus)
        if isinstance(other, Fraction):
            if other.denominator % self.modulus == 0:
                raise ZeroDivisionError(f"{other} has no image modulo {self.modulus}")
            inverse = pow(other.denominator, -1, self.modulus)
            return Residue(other.numerator * inverse, self.modulus)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Residue(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Residue(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Residue(other.value - self.value, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Residue(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.modulus}")
        return Residue(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Residue(pow(self.value, exponent, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.modulus})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]


class FieldKind(str, Enum):
    RATIONALS = "Q"
    PRIME = "F"


@dataclass(frozen=True)
class FieldSpec:
    """
    The base field: the rationals or GF(p) for an odd prime p.

    Example:
        >>> FieldSpec.prime(7).element(10)
        Residue(3, 7)
    """

    kind: FieldKind
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.modulus is not None:
                raise UnsupportedFieldError("The rational field takes no modulus")
            return
        if self.modulus is None or self.modulus < 3 or not isprime(self.modulus):
            raise UnsupportedFieldError(
                f"Prime fields need an odd prime modulus, got {self.modulus}"
            )

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME, p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def label(self) -> str:
        return "Q" if self.kind is FieldKind.RATIONALS else f"F{self.modulus}"

    def element(self, value) -> Scalar:
        """Coerce an int, Fraction or Residue into this field."""
        if isinstance(value, Residue):
            if not self.is_prime_field or value.modulus != self.modulus:
                raise ValueError(f"{value!r} does not belong to {self.label}")
            return value
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"Cannot convert {value!r} to a scalar of {self.label}")
        if not self.is_prime_field:
            return Fraction(value)
        value = Fraction(value)
        if value.denominator % self.modulus == 0:
            raise ZeroDivisionError(f"{value} has no image in {self.label}")
        return Residue(value.numerator * pow(value.denominator, -1, self.modulus), self.modulus)

    @property
    def zero(self) -> Scalar:
        return self.element(0)

    @property
    def one(self) -> Scalar:
        return self.element(1)

    def random_nonzero(self, rng: random.Random) -> Scalar:
        """
        Draw a nonzero scalar.

        Over GF(p) the draw is uniform on the nonzero residues. Over the
        rationals it is a small signed fraction with numerator in 1..9 and
        denominator in 1..4.
        """
        if self.is_prime_field:
            return Residue(rng.randrange(1, self.modulus), self.modulus)
        sign = rng.choice((-1, 1))
        return Fraction(sign * rng.randint(1, 9), rng.randint(1, 4))

    def __str__(self):
        return self.label


RATIONALS = FieldSpec.rationals()


def parse_field(text: str) -> FieldSpec:
    """
    Parse a field label.

    Args:
        text: "Q" for the rationals or "F<p>" for GF(p)

    Returns:
        The matching FieldSpec

    Example:
        >>> parse_field("F7").modulus
        7
    """
    match = _FIELD_RE.match(text or "")
    if not match:
        raise UnsupportedFieldError(f"Unknown field {text!r}; expected Q or F<p>")
    if match.group(1) is None:
        return RATIONALS
    return FieldSpec.prime(int(match.group(1)))


def parse_scalar(text: str, spec: FieldSpec) -> Scalar:
    """
    Parse an integer or fraction into a canonical scalar of ``spec``.

    Args:
        text: Optional sign, decimal integer, optional "/" denominator
        spec: Target field

    Returns:
        Canonical scalar (reduced Fraction or residue in [0, p))

    Example:
        >>> parse_scalar("-3/6", RATIONALS)
        Fraction(-1, 2)
    """
    match = _SCALAR_RE.match(text)
    if not match:
        raise ParseError(f"Malformed scalar {text!r}")
    sign, numerator, denominator = match.groups()
    den = int(denominator) if denominator is not None else 1
    if den == 0:
        raise ParseError(f"Zero denominator in {text!r}")
    num = int(numerator)
    if sign in ("-", "−"):
        num = -num
    try:
        return spec.element(Fraction(num, den))
    except ZeroDivisionError:
        raise ParseError(f"{text!r} has no value in {spec.label}: denominator divisible by {spec.modulus}")


def sqrt_scalar(x: Scalar, spec: FieldSpec) -> Optional[Scalar]:
    """
    Square root inside the base field.

    Returns the positive root over the rationals and the smaller residue over
    GF(p); returns None when no root exists.

    Example:
        >>> sqrt_scalar(FieldSpec.prime(7).element(2), FieldSpec.prime(7))
        Residue(3, 7)
    """
    x = spec.element(x)
    if not x:
        raise ValueError("sqrt_scalar expects a nonzero scalar")
    if not spec.is_prime_field:
        if x < 0:
            return None
        num_root, den_root = isqrt(x.numerator), isqrt(x.denominator)
        if num_root * num_root != x.numerator or den_root * den_root != x.denominator:
            return None
        return Fraction(num_root, den_root)
    root = sqrt_mod(x.value, spec.modulus)
    if root is None:
        return None
    return Residue(min(root, spec.modulus - root), spec.modulus)


@lru_cache(maxsize=None)
def generator(p: int) -> int:
    """Smallest primitive root of GF(p)."""
    g = int(primitive_root(p))
    logger.debug(f"Primitive root of F{p} is {g}")
    return g


@lru_cache(maxsize=8)
def _log_table(p: int) -> Dict[int, int]:
    g = generator(p)
    table = {}
    value = 1
    for exponent in range(p - 1):
        table[value] = exponent
        value = value * g % p
    logger.info(f"Built discrete log table for F{p} ({len(table)} entries)")
    return table


def discrete_log(x: Scalar, spec: FieldSpec) -> int:
    """
    Exponent k in [0, p-1) with g^k = x, where g = generator(p).

    Args:
        x: Nonzero element of GF(p)
        spec: A prime field

    Returns:
        The discrete logarithm of x

    Example:
        >>> discrete_log(FieldSpec.prime(11).one, FieldSpec.prime(11))
        0
    """
    if not spec.is_prime_field:
        raise UnsupportedFieldError("discrete_log needs a prime field")
    x = spec.element(x)
    if not x:
        raise ValueError("discrete_log of 0 is undefined")
    p = spec.modulus
    if p <= LOG_TABLE_LIMIT:
        return _log_table(p)[x.value]
    return int(sympy_discrete_log(p, x.value, generator(p)))
