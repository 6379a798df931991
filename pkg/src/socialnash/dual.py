"""Exact dual numbers ``a + b*eps`` used for weights and costs.

``eps`` is one shared symbolic infinitesimal.  Values are ordered
lexicographically by (standard part, eps coefficient); that is the limit
ordering for every sufficiently small positive eps, so "cares a tiny bit"
preferences stay exact instead of being approximated by a magic constant.

Only first-order eps terms are representable.  A product of two values that
both carry eps would need an eps**2 term and is rejected.

Parts are exact ``Fraction``s except in float cost mode (square-root style
utilities), where comparisons fall back to an absolute 1e-9 tolerance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Dual",
    "EpsilonOrderError",
    "FLOAT_TOLERANCE",
    "ZERO",
    "ONE",
    "EPS",
    "parse_weight",
    "format_weight",
]

FLOAT_TOLERANCE = 1e-9


class EpsilonOrderError(ArithmeticError):
    """Raised when arithmetic would produce an eps**2 term."""


def _part(value):
    # exact rationals stay exact; floats are allowed only for float cost mode
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as a numeric part")


def _cmp_parts(a, b) -> int:
    if isinstance(a, float) or isinstance(b, float):
        diff = float(a) - float(b)
        if abs(diff) <= FLOAT_TOLERANCE:
            return 0
        return -1 if diff < 0 else 1
    if a == b:
        return 0
    return -1 if a < b else 1


@dataclass(frozen=True)
class Dual:
    """One value ``std + eps_coeff * eps``."""

    std: Fraction | float = Fraction(0)
    eps: Fraction | float = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "std", _part(self.std))
        object.__setattr__(self, "eps", _part(self.eps))

    @classmethod
    def of(cls, value) -> "Dual":
        if isinstance(value, Dual):
            return value
        return cls(_part(value))

    @property
    def is_exact(self) -> bool:
        return not isinstance(self.std, float) and not isinstance(self.eps, float)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = Dual.of(other)
        return Dual(self.std + other.std, self.eps + other.eps)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.std, -self.eps)

    def __sub__(self, other):
        return self + (-Dual.of(other))

    def __rsub__(self, other):
        return Dual.of(other) + (-self)

    def __mul__(self, other):
        other = Dual.of(other)
        if self.eps != 0 and other.eps != 0:
            raise EpsilonOrderError(
                "product of two eps-carrying values is outside the model"
            )
        return Dual(self.std * other.std, self.std * other.eps + self.eps * other.std)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Dual):
            if scalar.eps != 0:
                raise EpsilonOrderError("division by an eps-carrying value")
            scalar = scalar.std
        else:
            scalar = _part(scalar)
        if scalar == 0:
            raise ZeroDivisionError("division of a dual value by zero")
        return Dual(self.std / scalar, self.eps / scalar)

    # -- ordering ---------------------------------------------------------
    # Equality stays the dataclass field equality (exact, hash-consistent);
    # the order operators implement the model comparison, which is tolerant
    # when a float part is involved.

    def compare(self, other) -> int:
        other = Dual.of(other)
        c = _cmp_parts(self.std, other.std)
        if c:
            return c
        return _cmp_parts(self.eps, other.eps)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def sign(self) -> int:
        return self.compare(ZERO)

    def __str__(self) -> str:
        if self.is_exact:
            return format_weight(self)
        return f"{float(self.std)!r}{'+' if self.eps >= 0 else ''}{float(self.eps)!r}*eps"


ZERO = Dual()
ONE = Dual(1)
EPS = Dual(0, 1)

_TERM_SPLIT = re.compile(r"[+-]?[^+-]+")


def parse_weight(text: str) -> Dual:
    """Parse a weight token: "a", "eps", "b*eps", or "a+b*eps".

    a and b are rationals written "p/q", as integers, or as decimals
    (decimals are read exactly).  "*" between coefficient and eps is
    optional, as is whitespace.
    """
    compact = text.strip().replace(" ", "")
    if not compact:
        raise ValueError("empty weight token")
    terms = _TERM_SPLIT.findall(compact)
    if "".join(terms) != compact:
        raise ValueError(f"malformed weight token {text!r}")
    std = eps = None
    for term in terms:
        sign = 1
        body = term
        if body[0] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        if body.endswith("eps"):
            if eps is not None:
                raise ValueError(f"more than one eps term in {text!r}")
            coeff_text = body[:-3].rstrip("*")
            coeff = Fraction(1) if coeff_text == "" else Fraction(coeff_text)
            eps = sign * coeff
        else:
            if std is not None:
                raise ValueError(f"more than one standard term in {text!r}")
            std = sign * Fraction(body)
    return Dual(std if std is not None else 0, eps if eps is not None else 0)


def format_weight(value: Dual) -> str:
    """Canonical token for an exact value; inverse of parse_weight."""
    if not value.is_exact:
        raise ValueError("only exact values have a canonical token")
    std, eps = value.std, value.eps
    if eps == 0:
        return str(std)
    magnitude = abs(eps)
    eps_token = "eps" if magnitude == 1 else f"{magnitude}*eps"
    if std == 0:
        return eps_token if eps > 0 else f"-{eps_token}"
    joiner = "+" if eps > 0 else "-"
    return f"{std}{joiner}{eps_token}"
