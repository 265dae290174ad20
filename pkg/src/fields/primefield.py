"""
Small prime fields GF(p), p <= 7.

Only used as odd-characteristic controls for the SL2 scans.
"""

from functools import lru_cache
from typing import Iterator

from ..errors import DivisionByZero, LevelMismatch

SUPPORTED_PRIMES = (2, 3, 5, 7)


class PrimeField:
    """The field Z/pZ."""

    def __init__(self, p: int):
        if p not in SUPPORTED_PRIMES:
            raise ValueError(f"GF(p) controls limited to p in {SUPPORTED_PRIMES}, got {p}")
        self.p = p
        self.characteristic = p
        self.order = p

    @property
    def tag(self) -> str:
        return f"gfp_{self.p}"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("gfp", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __call__(self, value: int) -> "PrimeFieldElement":
        return PrimeFieldElement(self, value % self.p)

    def zero(self) -> "PrimeFieldElement":
        return PrimeFieldElement(self, 0)

    def one(self) -> "PrimeFieldElement":
        return PrimeFieldElement(self, 1)

    def elements(self) -> Iterator["PrimeFieldElement"]:
        for v in range(self.p):
            yield PrimeFieldElement(self, v)

    def nonzero_elements(self) -> Iterator["PrimeFieldElement"]:
        for v in range(1, self.p):
            yield PrimeFieldElement(self, v)

    def parse_value(self, text: str) -> "PrimeFieldElement":
        return self(int(text))


class PrimeFieldElement:
    """Residue class modulo a small prime; immutable."""

    __slots__ = ("field", "value")

    def __init__(self, field: PrimeField, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeFieldElement is immutable")

    def _check(self, other) -> None:
        if not isinstance(other, PrimeFieldElement) or other.field != self.field:
            raise LevelMismatch(f"Cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        self._check(other)
        return PrimeFieldElement(self.field, (self.value + other.value) % self.field.p)

    def __sub__(self, other):
        self._check(other)
        return PrimeFieldElement(self.field, (self.value - other.value) % self.field.p)

    def __neg__(self):
        return PrimeFieldElement(self.field, (-self.value) % self.field.p)

    def __mul__(self, other):
        self._check(other)
        return PrimeFieldElement(self.field, (self.value * other.value) % self.field.p)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeFieldElement(self.field, pow(self.value, e, self.field.p))

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise DivisionByZero(f"0 has no inverse in {self.field.tag}")
        return PrimeFieldElement(self.field, pow(self.value, self.field.p - 2, self.field.p))

    def is_zero(self) -> bool:
        return self.value == 0

    def is_one(self) -> bool:
        return self.value == 1

    def zero(self):
        return self.field.zero()

    def one(self):
        return self.field.one()

    def sort_key(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PrimeFieldElement)
            and self.value == other.value
            and self.field == other.field
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.value))

    def __repr__(self) -> str:
        return f"{self.field.tag}:{self.value}"

    __str__ = __repr__


@lru_cache(maxsize=None)
def gfp(p: int) -> PrimeField:
    return PrimeField(p)
