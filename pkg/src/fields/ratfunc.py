"""
The rational function field GF(2)(t).

Numerator and denominator are GF(2)[t] bit masks kept in lowest terms; over
GF(2) every nonzero polynomial is monic, so the pair is canonical.
"""

from typing import Union

from . import poly
from .gf2k import Gf2kElement
from ..errors import DivisionByZero, LevelMismatch

MINUS_INFINITY = float("-inf")


class RationalFunctionField:
    """Marker object for GF(2)(t); infinite, so it has no element listing."""

    characteristic = 2
    order = None
    tag = "rf2"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalFunctionField)

    def __hash__(self) -> int:
        return hash("rf2")

    def __repr__(self) -> str:
        return "GF(2)(t)"

    def zero(self) -> "RatFunc":
        return RatFunc(0, 1)

    def one(self) -> "RatFunc":
        return RatFunc(1, 1)

    def t(self) -> "RatFunc":
        return RatFunc(0b10, 1)

    def parse_value(self, text: str) -> "RatFunc":
        if "/" in text:
            num, den = text.split("/", 1)
        else:
            num, den = text, "1"
        return RatFunc(poly.from_hex(num), poly.from_hex(den))


RF2 = RationalFunctionField()


class RatFunc:
    """numerator/denominator in GF(2)[t], reduced; immutable."""

    __slots__ = ("num", "den")
    field = RF2

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise DivisionByZero("Rational function with zero denominator")
        if num == 0:
            den = 1
        else:
            g = poly.gcd(num, den)
            if g != 1:
                num = poly.poly_divmod(num, g)[0]
                den = poly.poly_divmod(den, g)[0]
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _check(other) -> None:
        if not isinstance(other, RatFunc):
            raise LevelMismatch(f"Cannot combine rf2 with {other!r}")

    def __add__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        if self.den == other.den:
            return RatFunc(self.num ^ other.num, self.den)
        return RatFunc(
            poly.mul(self.num, other.den) ^ poly.mul(other.num, self.den),
            poly.mul(self.den, other.den),
        )

    __sub__ = __add__

    def __neg__(self) -> "RatFunc":
        return self

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return RatFunc(poly.mul(self.num, other.num), poly.mul(self.den, other.den))

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return self * other.inverse()

    def inverse(self) -> "RatFunc":
        if self.num == 0:
            raise DivisionByZero("0 has no inverse in rf2")
        return RatFunc(self.den, self.num)

    def __pow__(self, e: int) -> "RatFunc":
        base = self if e >= 0 else self.inverse()
        result = RatFunc(1, 1)
        for _ in range(abs(e)):
            result = result * base
        return result

    def is_zero(self) -> bool:
        return self.num == 0

    def is_one(self) -> bool:
        return self.num == 1 and self.den == 1

    def zero(self) -> "RatFunc":
        return RatFunc(0, 1)

    def one(self) -> "RatFunc":
        return RatFunc(1, 1)

    def degree(self) -> Union[int, float]:
        """deg(numerator) - deg(denominator); MINUS_INFINITY for 0."""
        if self.num == 0:
            return MINUS_INFINITY
        return poly.degree(self.num) - poly.degree(self.den)

    def evaluate(self, theta: Gf2kElement) -> Gf2kElement:
        """
        Value at a point of some GF(2^k).

        Raises:
            DivisionByZero: If the denominator vanishes at theta
        """
        num = _eval_poly(self.num, theta)
        den = _eval_poly(self.den, theta)
        if den.is_zero():
            raise DivisionByZero(f"Denominator of {self!r} vanishes at {theta!r}")
        return num / den

    def sort_key(self):
        return (self.num, self.den)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"rf2:{poly.to_hex(self.num)}/{poly.to_hex(self.den)}"

    __str__ = __repr__

    def pretty(self) -> str:
        if self.den == 1:
            return poly.pretty(self.num, "t")
        return f"({poly.pretty(self.num, 't')})/({poly.pretty(self.den, 't')})"


def _eval_poly(mask: int, theta: Gf2kElement) -> Gf2kElement:
    result = theta.zero()
    for i in range(poly.degree(mask), -1, -1):
        result = result * theta
        if mask >> i & 1:
            result = result + theta.one()
    return result


def ratfunc_degree(f: RatFunc) -> Union[int, float]:
    return f.degree()
