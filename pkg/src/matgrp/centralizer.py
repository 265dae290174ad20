"""
Centralizers in SL2 over finite fields.

Structural descriptions follow the Jordan type of g over GF(q), q = 2^k:
split torus (eigenvalues in GF(q), order q - 1), nonsplit torus
(eigenvalues in GF(q^2) outside GF(q), order q + 1) and the unipotent
centralizer (order q). Brute force scans the whole group and works over
GF(p) controls as well.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterator

from ..errors import IdentityInput
from ..utils.logging import ProgressLogger
from .jordan import JordanKind, jordan_form, require_char2
from .mat2 import DEFAULT_ENUM_BUDGET, Mat2, check_enumerable, diag, enumerate_sl2, unipotent

logger = logging.getLogger(__name__)


class CentralizerKind(Enum):
    SPLIT_TORUS = "split_torus"
    NONSPLIT_TORUS = "nonsplit_torus"
    UNIPOTENT = "unipotent"


@dataclass(frozen=True)
class CentralizerDescription:
    """
    C(g) up to conjugation: P^-1 g P is the standard representative.

    For the nonsplit torus the standard representative is the companion
    matrix [[0,1],[1,t]] of the characteristic polynomial.
    """

    element: Mat2
    kind: CentralizerKind
    conjugator: Mat2
    standard: Mat2
    q: int

    @property
    def order(self) -> int:
        if self.kind is CentralizerKind.SPLIT_TORUS:
            return self.q - 1
        if self.kind is CentralizerKind.NONSPLIT_TORUS:
            return self.q + 1
        return self.q

    @property
    def order_formula(self) -> str:
        return {
            CentralizerKind.SPLIT_TORUS: "q-1",
            CentralizerKind.NONSPLIT_TORUS: "q+1",
            CentralizerKind.UNIPOTENT: "q",
        }[self.kind]

    def members(self) -> Iterator[Mat2]:
        """Elements of C(g) generated from the description."""
        field = self.element.field
        p, p_inv = self.conjugator, self.conjugator.inverse()
        if self.kind is CentralizerKind.SPLIT_TORUS:
            for u in field.nonzero_elements():
                yield p * diag(u) * p_inv
        elif self.kind is CentralizerKind.UNIPOTENT:
            one, zero = field.one(), field.zero()
            for s in field.elements():
                yield p * Mat2(one, s, zero, one, check=False) * p_inv
        else:
            g, t = self.element, self.element.trace()
            for alpha in field.elements():
                for beta in field.elements():
                    if (alpha * alpha + alpha * beta * t + beta * beta).is_one():
                        yield Mat2(
                            alpha + beta * g.a, beta * g.b, beta * g.c, alpha + beta * g.d, check=False
                        )

    def member_set(self) -> FrozenSet[Mat2]:
        return frozenset(self.members())

    def to_dict(self) -> dict:
        return {
            "element": repr(self.element),
            "kind": self.kind.value,
            "order": self.order,
            "order_formula": self.order_formula,
            "conjugator": repr(self.conjugator),
            "standard": repr(self.standard),
            "q": self.q,
        }


def standard_representative(kind: CentralizerKind, g: Mat2) -> Mat2:
    """Standard representative of g's conjugacy type at its own level."""
    field = g.field
    if kind is CentralizerKind.UNIPOTENT:
        return unipotent(field)
    if kind is CentralizerKind.NONSPLIT_TORUS:
        return Mat2(field.zero(), field.one(), field.one(), g.trace(), check=False)
    if g.is_diagonal():
        return g
    return diag(field.solve_quadratic(g.trace(), field.one()))


def _nonsplit_conjugator(g: Mat2) -> Mat2:
    # P = [e1 | g e1] sends the companion matrix to g; g.c != 0 as g is not triangular
    one = g.field.one()
    scale = (one / g.c).sqrt()
    return Mat2(scale, g.a * scale, g.field.zero(), g.c * scale)


def centralizer_structural(g: Mat2) -> CentralizerDescription:
    """
    Classify C(g) for a nontrivial g in SL2(GF(2^k)).

    Args:
        g: Nontrivial element

    Returns:
        CentralizerDescription with kind, conjugator and predicted order

    Raises:
        IdentityInput: If g is the identity
        UnsupportedField: Outside characteristic 2
    """
    field = require_char2(g)
    if g.is_identity():
        raise IdentityInput("The centralizer of the identity is the whole group")

    if g.trace().is_zero():
        data = jordan_form(g)
        kind = CentralizerKind.UNIPOTENT
        conjugator = data.conjugator
    elif field.solve_quadratic(g.trace(), field.one()) is not None:
        data = jordan_form(g)
        kind = CentralizerKind.SPLIT_TORUS
        conjugator = data.conjugator
    else:
        kind = CentralizerKind.NONSPLIT_TORUS
        conjugator = _nonsplit_conjugator(g)

    standard = standard_representative(kind, g)
    if kind is CentralizerKind.SPLIT_TORUS:
        standard = data.form
    description = CentralizerDescription(g, kind, conjugator, standard, field.order)
    logger.debug(f"C({g!r}): {kind.value}, order {description.order}")
    return description


def centralizer_bruteforce(g: Mat2, budget: int = DEFAULT_ENUM_BUDGET) -> FrozenSet[Mat2]:
    """
    Exact centralizer {h : hg = gh} by a scan of SL2 over g's field.

    Raises:
        BudgetExceeded: If the group is larger than `budget`
    """
    order = check_enumerable(g.field, budget)
    progress = ProgressLogger(logger, order, f"Centralizer scan over {g.field.tag}", min_total=100_000)
    found = set()
    for h in enumerate_sl2(g.field):
        if h * g == g * h:
            found.add(h)
        progress.update()
    return frozenset(found)
