"""
Finite fields GF(2^k) in the polynomial basis.

Each level is defined by the numerically least irreducible polynomial of its
degree. Multiplication goes through log/antilog tables built once per level.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Optional

from . import poly
from ..errors import DivisionByZero, LevelMismatch

logger = logging.getLogger(__name__)


def _prime_factors(n: int) -> List[int]:
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


class Gf2kField:
    """The field GF(2^k) modulo a fixed irreducible polynomial."""

    characteristic = 2

    def __init__(self, degree: int, modulus: Optional[int] = None):
        """
        Initialize a field level.

        Args:
            degree: Extension degree k over GF(2), 1..16
            modulus: Irreducible polynomial of degree k as a bit mask
                (defaults to the least irreducible of that degree)

        Raises:
            ValueError: If the degree is out of range or the modulus is
                not irreducible of the right degree
        """
        if not 1 <= degree <= poly.MAX_DEGREE:
            raise ValueError(f"GF(2^k) supported for 1 <= k <= {poly.MAX_DEGREE}, got k={degree}")
        if modulus is None:
            modulus = poly.least_irreducible(degree)
        if poly.degree(modulus) != degree or not poly.is_irreducible(modulus):
            raise ValueError(f"Modulus {poly.pretty(modulus)} is not irreducible of degree {degree}")

        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree
        self._exp: Optional[List[int]] = None
        self._log: Optional[List[int]] = None
        self._artin_schreier: Optional[Dict[int, int]] = None

    @property
    def tag(self) -> str:
        return f"gf2_{self.degree}"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2kField)
            and self.degree == other.degree
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.modulus))

    def __repr__(self) -> str:
        return f"GF(2^{self.degree}) mod {poly.pretty(self.modulus)}"

    # -- tables -------------------------------------------------------------

    def _build_tables(self) -> None:
        n = self.order - 1
        factors = _prime_factors(n) if n > 1 else []
        for g in range(1, self.order):
            if all(poly.powmod(g, n // p, self.modulus) != 1 for p in factors):
                break
        exp = [0] * n
        log = [-1] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = poly.mulmod(x, g, self.modulus)
        self._exp, self._log = exp, log
        logger.debug(f"Built log tables for {self!r} with primitive element {g:#x}")

    def mul_values(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            self._build_tables()
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def pow_value(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero(f"0 has no inverse in {self.tag}")
            return 0 if e > 0 else 1
        if self._exp is None:
            self._build_tables()
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def inv_value(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self.tag}")
        return self.pow_value(a, -1)

    # -- elements -----------------------------------------------------------

    def __call__(self, value: int) -> "Gf2kElement":
        if not 0 <= value < self.order:
            value = poly.mod(value, self.modulus)
        return Gf2kElement(self, value)

    def zero(self) -> "Gf2kElement":
        return Gf2kElement(self, 0)

    def one(self) -> "Gf2kElement":
        return Gf2kElement(self, 1)

    def generator(self) -> "Gf2kElement":
        """The class of x modulo the level modulus."""
        return self(0b10)

    def elements(self) -> Iterator["Gf2kElement"]:
        for value in range(self.order):
            yield Gf2kElement(self, value)

    def nonzero_elements(self) -> Iterator["Gf2kElement"]:
        for value in range(1, self.order):
            yield Gf2kElement(self, value)

    def parse_value(self, text: str) -> "Gf2kElement":
        value = poly.from_hex(text)
        if value >= self.order:
            raise ValueError(f"Coefficient mask {text} has more than {self.degree} bits")
        return Gf2kElement(self, value)

    # -- quadratic equations --------------------------------------------------

    def _artin_schreier_table(self) -> Dict[int, int]:
        if self._artin_schreier is None:
            table: Dict[int, int] = {}
            for mu in range(self.order):
                table.setdefault(self.mul_values(mu, mu) ^ mu, mu)
            self._artin_schreier = table
        return self._artin_schreier

    def solve_quadratic(self, b: "Gf2kElement", c: "Gf2kElement") -> Optional["Gf2kElement"]:
        """
        Least root of z^2 + b z + c in this field, or None.

        With b != 0 the substitution z = b*mu gives mu^2 + mu = c/b^2, an
        Artin–Schreier equation answered by table lookup.
        """
        if b.is_zero():
            return c.sqrt()
        rhs = c / (b * b)
        mu = self._artin_schreier_table().get(rhs.value)
        if mu is None:
            return None
        root = b * Gf2kElement(self, mu)
        other = root + b
        return root if root.value < other.value else other


class Gf2kElement:
    """An element of GF(2^k); immutable."""

    __slots__ = ("field", "value")

    def __init__(self, field: Gf2kField, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Gf2kElement is immutable")

    def _check(self, other) -> None:
        if not isinstance(other, Gf2kElement) or other.field != self.field:
            raise LevelMismatch(f"Cannot combine {self!r} with {other!r}")

    def __add__(self, other: "Gf2kElement") -> "Gf2kElement":
        self._check(other)
        return Gf2kElement(self.field, self.value ^ other.value)

    __sub__ = __add__

    def __neg__(self) -> "Gf2kElement":
        return self

    def __mul__(self, other: "Gf2kElement") -> "Gf2kElement":
        self._check(other)
        return Gf2kElement(self.field, self.field.mul_values(self.value, other.value))

    def __truediv__(self, other: "Gf2kElement") -> "Gf2kElement":
        self._check(other)
        return Gf2kElement(
            self.field, self.field.mul_values(self.value, self.field.inv_value(other.value))
        )

    def __pow__(self, e: int) -> "Gf2kElement":
        if self.value == 0 and e < 0:
            raise DivisionByZero(f"0 has no inverse in {self.field.tag}")
        return Gf2kElement(self.field, self.field.pow_value(self.value, e))

    def inverse(self) -> "Gf2kElement":
        return Gf2kElement(self.field, self.field.inv_value(self.value))

    def frobenius(self) -> "Gf2kElement":
        return Gf2kElement(self.field, self.field.mul_values(self.value, self.value))

    def sqrt(self) -> "Gf2kElement":
        """Inverse Frobenius: a^(2^(k-1)); squaring is bijective in GF(2^k)."""
        return Gf2kElement(self.field, self.field.pow_value(self.value, 1 << (self.field.degree - 1)))

    def trace(self) -> int:
        """Absolute trace to GF(2), as 0 or 1."""
        total, a = 0, self.value
        for _ in range(self.field.degree):
            total ^= a
            a = self.field.mul_values(a, a)
        return total

    def is_zero(self) -> bool:
        return self.value == 0

    def is_one(self) -> bool:
        return self.value == 1

    def zero(self) -> "Gf2kElement":
        return self.field.zero()

    def one(self) -> "Gf2kElement":
        return self.field.one()

    def coeffs(self) -> List[int]:
        """Bit vector of length k, lowest coefficient first."""
        return [(self.value >> i) & 1 for i in range(self.field.degree)]

    def sort_key(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2kElement)
            and self.value == other.value
            and self.field == other.field
        )

    def __hash__(self) -> int:
        return hash((self.field.degree, self.value))

    def __repr__(self) -> str:
        return f"{self.field.tag}:{poly.to_hex(self.value)}"

    __str__ = __repr__


@lru_cache(maxsize=None)
def gf2k(degree: int) -> Gf2kField:
    """Shared field object for the default modulus of a degree."""
    return Gf2kField(degree)
