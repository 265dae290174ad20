"""
2x2 matrices of determinant 1 over the implemented fields.

Serialized as "[[a,b],[c,d]]@<field tag>" with entries written as the
value part of the scalar syntax.
"""

import re
from typing import Iterator, List, Optional, Tuple

from ..errors import BudgetExceeded, DeterminantNotOne, GroupSpecError, LevelMismatch
from ..fields.gf2k import Gf2kField
from ..fields.scalars import Field, Scalar, field_from_tag, parse_scalar

_MATRIX = re.compile(r"^\[\[([^,\]]+),([^,\]]+)\],\[([^,\]]+),([^,\]]+)\]\](?:@(\S+))?$")

DEFAULT_ENUM_BUDGET = 10**6


class Mat2:
    """The matrix [[a, b], [c, d]] with ad - bc = 1; immutable."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Scalar, b: Scalar, c: Scalar, d: Scalar, check: bool = True):
        if check:
            f = a.field
            if not (b.field == f and c.field == f and d.field == f):
                raise LevelMismatch(f"Matrix entries from different fields: {a!r}, {b!r}, {c!r}, {d!r}")
            if not (a * d - b * c).is_one():
                raise DeterminantNotOne(
                    f"det([[{a!r},{b!r}],[{c!r},{d!r}]]) = {(a * d - b * c)!r}, expected 1"
                )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @property
    def field(self) -> Field:
        return self.a.field

    def entries(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "Mat2") -> "Mat2":
        if other.a.field != self.a.field:
            raise LevelMismatch(f"Cannot multiply {self!r} by {other!r}")
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            check=False,
        )

    def inverse(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a, check=False)

    def conjugate_by(self, h: "Mat2") -> "Mat2":
        """h^-1 * self * h."""
        return h.inverse() * self * h

    def trace(self) -> Scalar:
        return self.a + self.d

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def is_identity(self) -> bool:
        return self.a.is_one() and self.d.is_one() and self.b.is_zero() and self.c.is_zero()

    def is_diagonal(self) -> bool:
        return self.b.is_zero() and self.c.is_zero()

    def sort_key(self) -> tuple:
        return tuple(x.sort_key() for x in self.entries())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat2)
            and self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self) -> str:
        vals = [repr(x).split(":", 1)[1] for x in self.entries()]
        return f"[[{vals[0]},{vals[1]}],[{vals[2]},{vals[3]}]]@{self.field.tag}"

    __str__ = __repr__


def mat_mul(g: Mat2, h: Mat2) -> Mat2:
    return g * h


def mat_inv(g: Mat2) -> Mat2:
    return g.inverse()


def identity(field: Field) -> Mat2:
    one, zero = field.one(), field.zero()
    return Mat2(one, zero, zero, one, check=False)


def unipotent(field: Field) -> Mat2:
    """The standard unipotent [[1,1],[0,1]]."""
    one, zero = field.one(), field.zero()
    return Mat2(one, one, zero, one, check=False)


def diag(a: Scalar) -> Mat2:
    zero = a.zero()
    return Mat2(a, zero, zero, a.inverse(), check=False)


def sl2_order(field: Field) -> int:
    q = field.order
    return q * (q * q - 1)


def check_enumerable(field: Field, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """
    Order of SL2 over `field`, refusing levels too large to enumerate.

    Raises:
        BudgetExceeded: If the group order exceeds `budget`
    """
    if field.order is None:
        raise BudgetExceeded(f"SL2 over {field.tag} is infinite", estimate=None, budget=budget)
    order = sl2_order(field)
    if order > budget:
        raise BudgetExceeded(
            f"SL2 over {field.tag} has {order} elements, enumeration budget is {budget}",
            estimate=order,
            budget=budget,
        )
    return order


def enumerate_sl2(field: Field) -> Iterator[Mat2]:
    """
    Every element of SL2 over a finite field exactly once, identity first.

    For a != 0 the entry d is forced by b and c; for a = 0 the entry b is
    forced by c (and c != 0).
    """
    ident = identity(field)
    yield ident
    one = field.one()
    elements = list(field.elements())
    for a in elements:
        for c in elements:
            if a.is_zero():
                if c.is_zero():
                    continue
                b = -(one / c)
                for d in elements:
                    yield Mat2(a, b, c, d, check=False)
            else:
                for b in elements:
                    d = (one + b * c) / a
                    m = Mat2(a, b, c, d, check=False)
                    if m != ident:
                        yield m


def sl2_generators(field: Field) -> List[Mat2]:
    """
    Elementary matrices generating SL2 over a finite field.

    Over GF(2^k) the upper and lower elementary matrices for the basis
    1, x, ..., x^(k-1) suffice; over GF(p) the two for entry 1 do.
    """
    one, zero = field.one(), field.zero()
    if isinstance(field, Gf2kField):
        basis = [field(1 << i) for i in range(field.degree)]
    else:
        basis = [one]
    gens = []
    for s in basis:
        gens.append(Mat2(one, s, zero, one, check=False))
        gens.append(Mat2(one, zero, s, one, check=False))
    return gens


def parse_matrix(text: str, field: Optional[Field] = None) -> Mat2:
    """
    Parse "[[a,b],[c,d]]@tag"; the tag may be omitted when `field` is given.

    Raises:
        GroupSpecError: If the text is malformed
        DeterminantNotOne: If the entries do not have determinant 1
    """
    compact = re.sub(r"\s+", "", text)
    match = _MATRIX.match(compact)
    if not match:
        raise GroupSpecError(f"Malformed matrix '{text}' (expected [[a,b],[c,d]]@tag)")
    if match.group(5):
        tagged = field_from_tag(match.group(5))
        if field is not None and tagged != field:
            raise LevelMismatch(f"Matrix '{text}' is not over {field.tag}")
        field = tagged
    if field is None:
        raise GroupSpecError(f"Matrix '{text}' has no field tag")
    entries = [parse_scalar(match.group(i), field) for i in range(1, 5)]
    return Mat2(*entries)
