"""
Conjugacy classes, the CT check and the ICC witness families for SL2.
"""

import logging
from collections import deque
from dataclasses import dataclass, field as dataclass_field
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

from ..errors import FieldTooSmall, LevelMismatch, NonDividingDegree, NotInJordanForm
from ..fields.gf2k import Gf2kField, gf2k
from ..fields.poly import MAX_DEGREE
from ..fields.scalars import Field
from ..fields.tower import FieldTower, get_tower
from ..utils.logging import ProgressLogger
from .centralizer import centralizer_bruteforce
from .jordan import embed_matrix, require_char2
from .mat2 import (
    DEFAULT_ENUM_BUDGET,
    Mat2,
    check_enumerable,
    enumerate_sl2,
    sl2_generators,
    sl2_order,
)

logger = logging.getLogger(__name__)

Level = Union[int, Field]


def _resolve_field(level: Level) -> Field:
    if isinstance(level, int):
        return gf2k(level)
    return level


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Mat2
    members: FrozenSet[Mat2] = dataclass_field(repr=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        return {"representative": repr(self.representative), "size": self.size}


def conjugacy_classes(level: Level, budget: int = DEFAULT_ENUM_BUDGET) -> List[ConjugacyClass]:
    """
    Partition SL2 over a finite field into conjugacy classes.

    Orbits are closed under conjugation by the elementary generators, which
    suffices since they generate the group.

    Args:
        level: Degree k of GF(2^k), or a field object (GF(p) included)
        budget: Enumeration budget on the group order

    Returns:
        Classes ordered by size, then by representative; each representative
        is the least member in the lexicographic entry order

    Raises:
        BudgetExceeded: If the group is larger than `budget`
    """
    field = _resolve_field(level)
    order = check_enumerable(field, budget)
    gens = sl2_generators(field)
    conjugators = [(h, h.inverse()) for h in gens]

    seen = set()
    classes = []
    progress = ProgressLogger(logger, order, f"Class partition of SL2 over {field.tag}", min_total=100_000)
    for g in enumerate_sl2(field):
        if g in seen:
            continue
        orbit = {g}
        queue = deque([g])
        while queue:
            x = queue.popleft()
            for h, h_inv in conjugators:
                y = h_inv * x * h
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        seen |= orbit
        progress.update(len(orbit))
        rep = min(orbit, key=lambda m: m.sort_key())
        classes.append(ConjugacyClass(rep, frozenset(orbit)))

    classes.sort(key=lambda c: (c.size, c.representative.sort_key()))
    logger.debug(f"SL2 over {field.tag}: {len(classes)} classes, sizes {[c.size for c in classes]}")
    return classes


@dataclass
class CtReport:
    """
    Outcome of the commutative-transitivity scan.

    A violating triple (g, h1, h2) has h1, h2 in C(g) with h1 h2 != h2 h1:
    C(g) is not abelian, and h1 ~ g ~ h2 while h1 and h2 do not commute.
    """

    group: str
    order: int
    holds: bool
    checked: int
    exhaustive: bool
    witness: Optional[Tuple[Mat2, Mat2, Mat2]] = None

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "holds": self.holds,
            "checked": self.checked,
            "exhaustive": self.exhaustive,
            "witness": [repr(m) for m in self.witness] if self.witness else None,
        }


def _noncommuting_pair(members: Sequence[Mat2]) -> Optional[Tuple[Mat2, Mat2]]:
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if x * y != y * x:
                return x, y
    return None


def ct_check(level: Level, budget: int = DEFAULT_ENUM_BUDGET, exhaustive: bool = False) -> CtReport:
    """
    Check that every centralizer of a nontrivial element is abelian.

    Centralizers of conjugate elements are conjugate, so by default one
    representative per class is scanned.

    Args:
        level: Degree k of GF(2^k), or a field object
        budget: Enumeration budget on the group order
        exhaustive: Scan every nontrivial element instead

    Raises:
        BudgetExceeded: If the group is larger than `budget`
    """
    field = _resolve_field(level)
    order = check_enumerable(field, budget)
    if exhaustive:
        candidates = [g for g in enumerate_sl2(field) if not g.is_identity()]
    else:
        candidates = [c.representative for c in conjugacy_classes(field, budget) if not c.representative.is_identity()]

    report = CtReport(f"sl2:{field.tag}", order, True, 0, exhaustive)
    for g in candidates:
        members = sorted(centralizer_bruteforce(g, budget), key=lambda m: m.sort_key())
        report.checked += 1
        pair = _noncommuting_pair(members)
        if pair is not None:
            report.holds = False
            report.witness = (g, pair[0], pair[1])
            logger.info(f"CT fails over {field.tag}: C({g!r}) is not abelian")
            break
    return report


def _parameters(field: Gf2kField, count: int):
    return [field(v) for v in range(1, count + 1)]


def _escalate(g: Mat2, count: int, tower: Optional[FieldTower]) -> Mat2:
    k = g.field.degree
    needed = next((d for d in range(k, MAX_DEGREE + 1) if d % k == 0 and (1 << d) - 1 >= count), None)
    if tower is None or k not in tower.levels:
        raise FieldTooSmall(
            f"GF(2^{k}) has {(1 << k) - 1} nonzero elements, {count} requested",
            suggested_degree=needed,
        )
    level = next((d for d in tower.levels if d % k == 0 and (1 << d) - 1 >= count), None)
    if level is None:
        raise FieldTooSmall(
            f"No level of {tower!r} has {count} nonzero elements",
            suggested_degree=needed,
        )
    logger.info(f"Escalating ICC family from gf2_{k} to gf2_{level} for {count} conjugates")
    return embed_matrix(g, level, tower)


def icc_witness_family(g: Mat2, count: int, tower: Optional[FieldTower] = None) -> List[Mat2]:
    """
    Explicit pairwise distinct conjugates of a Jordan-form element.

    For g = diag(a, 1/a) the conjugates h g h^-1 with h = [[b,1],[0,1/b]]
    are [[a, (a + 1/a) b],[0, 1/a]]. For g = [[1,s],[0,1]] conjugating by
    diag(c, 1/c) gives [[1, s c^2],[0,1]]. The parameters b, c run through
    the nonzero elements in increasing coefficient order.

    Args:
        g: Nontrivial diagonal or upper unitriangular element over GF(2^k)
        count: Number of conjugates requested
        tower: When given and GF(2^k) is too small, g is embedded into the
            first level with enough nonzero elements

    Returns:
        `count` distinct conjugates of g (of its image after escalation)

    Raises:
        NotInJordanForm: If g is neither diagonal nor upper unitriangular
        FieldTooSmall: If no available level has `count` nonzero elements
    """
    field = require_char2(g)
    one = field.one()
    diagonal = g.is_diagonal() and not g.is_identity()
    unitriangular = g.a.is_one() and g.d.is_one() and g.c.is_zero() and not g.b.is_zero()
    if not (diagonal or unitriangular):
        raise NotInJordanForm(f"{g!r} is neither diagonal nor [[1,s],[0,1]]")
    if count < 1:
        return []
    if count > field.order - 1:
        g = _escalate(g, count, tower)
        field, one = g.field, g.field.one()

    zero = field.zero()
    conjugates = []
    for p in _parameters(field, count):
        if diagonal:
            h = Mat2(p, one, zero, p.inverse(), check=False)
            expected = Mat2(g.a, (g.a + g.d) * p, zero, g.d, check=False)
        else:
            h = Mat2(p, zero, zero, p.inverse(), check=False)
            expected = Mat2(one, g.b * p * p, zero, one, check=False)
        conj = h * g * h.inverse()
        if conj != expected:
            raise RuntimeError(f"Conjugate of {g!r} by {h!r} is {conj!r}, expected {expected!r}")
        conjugates.append(conj)

    if len(set(conjugates)) != len(conjugates):
        raise RuntimeError(f"ICC family for {g!r} has repeated members")
    return conjugates


def class_size(g: Mat2, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """|G| / |C(g)| by orbit-stabilizer."""
    if g.is_identity():
        return 1
    return sl2_order(g.field) // len(centralizer_bruteforce(g, budget))


def class_growth_along_tower(
    g: Mat2,
    degrees: Sequence[int],
    tower: Optional[FieldTower] = None,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> List[int]:
    """
    Conjugacy class sizes of g embedded at increasing field levels.

    Args:
        g: Element over GF(2^k), k the first listed degree
        degrees: Ascending degrees, each a multiple of k
        tower: Tower used for the embeddings; without one each level is
            reached through the two-level tower (k, d)
        budget: Enumeration budget per level

    Returns:
        Class size at every listed degree

    Raises:
        LevelMismatch: If g does not live at the first degree
        NotInTower: If a degree is missing from the given tower
        BudgetExceeded: If a level is too large to scan
    """
    field = require_char2(g)
    degrees = list(degrees)
    if not degrees:
        return []
    if degrees[0] != field.degree:
        raise LevelMismatch(f"{g!r} lives at degree {field.degree}, first level is {degrees[0]}")

    sizes = []
    for d in degrees:
        if d % field.degree != 0:
            raise NonDividingDegree(f"Degree {field.degree} does not divide {d}")
        chain = tower if tower is not None else get_tower(tuple(sorted({field.degree, d})))
        image = embed_matrix(g, d, chain)
        size = class_size(image, budget)
        sizes.append(size)
        logger.info(f"Class of {g!r} at gf2_{d}: {size} elements")
    return sizes
