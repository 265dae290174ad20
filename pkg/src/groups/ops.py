"""
Operations on group handles: enumeration, subgroup closure, products,
conjugacy partitions and indexed multiplication tables.
"""

import logging
from collections import deque
from functools import cached_property, lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional

import numpy as np

from ..errors import BudgetExceeded, InputError
from ..fields.gf2k import Gf2kField
from ..fields.tower import FieldTower, get_tower
from ..matgrp.jordan import embed_matrix
from ..utils.logging import ProgressLogger
from .handles import CyclicGroup, GElem, GroupHandle, ProductGroup, Sl2Group, SymGroup

logger = logging.getLogger(__name__)

DEFAULT_ENUM_BUDGET = 10**6

# Cayley tables are materialized up to this order (order^2 int32 entries)
TABLE_LIMIT = 5000

# A table at the limit holds 25M int32 entries
TABLE_CACHE_SIZE = 4


def _check_budget(G: GroupHandle, budget: int, what: str = "enumeration") -> int:
    order = G.order
    if order > budget:
        raise BudgetExceeded(
            f"{G.spec} has {order} elements, {what} budget is {budget}",
            estimate=order,
            budget=budget,
        )
    return order


def enumerate_group(G: GroupHandle, budget: int = DEFAULT_ENUM_BUDGET) -> List[GElem]:
    """
    All elements of G, identity first, in the handle's deterministic order.

    Raises:
        BudgetExceeded: If |G| exceeds `budget`
    """
    _check_budget(G, budget)
    return list(G.elements())


def generated_subgroup(
    G: GroupHandle, S: Iterable[GElem], budget: int = DEFAULT_ENUM_BUDGET
) -> FrozenSet[GElem]:
    """
    Smallest subgroup of G containing S, by breadth-first closure.

    Args:
        G: Group handle
        S: Generating elements (may be empty)
        budget: Maximal number of elements the closure may reach

    Raises:
        BudgetExceeded: If the closure grows past `budget`
    """
    gens = list(S)
    gens = gens + [G.inv(s) for s in gens]
    e = G.identity()
    found = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.op(x, s)
            if y not in found:
                found.add(y)
                if len(found) > budget:
                    raise BudgetExceeded(
                        f"Subgroup closure in {G.spec} passed {budget} elements",
                        estimate=len(found),
                        budget=budget,
                    )
                queue.append(y)
    return frozenset(found)


def direct_product(G: GroupHandle, H: GroupHandle, budget: int = DEFAULT_ENUM_BUDGET) -> ProductGroup:
    """
    G x H as a lazy product handle.

    Raises:
        BudgetExceeded: If |G| |H| exceeds `budget`
    """
    product = ProductGroup(G, H)
    _check_budget(product, budget)
    return product


def conjugacy_partition(G: GroupHandle, budget: int = DEFAULT_ENUM_BUDGET) -> List[FrozenSet[GElem]]:
    """
    Conjugacy classes of G.

    Classes are orbits under conjugation by the generators; they come
    ordered by size, then by least member.

    Raises:
        BudgetExceeded: If |G| exceeds `budget`
    """
    order = _check_budget(G, budget)
    gens = G.generators()
    progress = ProgressLogger(logger, order, f"Class partition of {G.spec}", min_total=100_000)
    seen = set()
    classes = []
    for g in G.elements():
        if g in seen:
            continue
        orbit = {g}
        queue = deque([g])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = G.conj(s, x)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        seen |= orbit
        progress.update(len(orbit))
        classes.append(frozenset(orbit))
    classes.sort(key=lambda c: (len(c), min(G.key(x) for x in c)))
    return classes


def class_representative(G: GroupHandle, cls: Iterable[GElem]) -> GElem:
    return min(cls, key=G.key)


def commutes(G: GroupHandle, x: GElem, y: GElem) -> bool:
    return G.op(x, y) == G.op(y, x)


def is_abelian(G: GroupHandle) -> bool:
    gens = G.generators()
    return all(commutes(G, x, y) for i, x in enumerate(gens) for y in gens[i + 1:])


def centralizer(G: GroupHandle, x: GElem, budget: int = DEFAULT_ENUM_BUDGET) -> FrozenSet[GElem]:
    """{h in G : hx = xh} by a scan of G."""
    _check_budget(G, budget)
    return frozenset(h for h in G.elements() if commutes(G, h, x))


def sym_inclusion(n: int, m: int) -> Callable[[tuple], tuple]:
    """
    The inclusion Sym(n) -> Sym(m) fixing the points n+1..m.

    Raises:
        InputError: If m < n
    """
    if m < n:
        raise InputError(f"No inclusion of Sym({n}) into Sym({m})")

    def include(p: tuple) -> tuple:
        if len(p) != n:
            raise InputError(f"{p} is not an element of Sym({n})")
        return tuple(p) + tuple(range(n, m))

    return include


def level_map(source: GroupHandle, target: GroupHandle, tower: Optional[FieldTower] = None) -> Callable[[GElem], GElem]:
    """
    The standard injective homomorphism from one family level into a later one.

    Sym(n) -> Sym(m) fixes the new points, Z/n -> Z/m multiplies by m/n,
    SL2(GF(2^k)) -> SL2(GF(2^d)) embeds entrywise through the tower and
    products map componentwise.

    Args:
        source: Lower level
        target: Higher level of the same kind
        tower: Tower for SL2 embeddings; a two-level tower (k, d) is used
            when it lacks either degree

    Raises:
        InputError: If there is no such map between the two groups
    """
    if source == target:
        return lambda x: x
    if isinstance(source, SymGroup) and isinstance(target, SymGroup):
        return sym_inclusion(source.n, target.n)
    if isinstance(source, CyclicGroup) and isinstance(target, CyclicGroup) and target.n % source.n == 0:
        factor = target.n // source.n
        return lambda x: (x * factor) % target.n
    if (
        isinstance(source, Sl2Group) and isinstance(target, Sl2Group)
        and isinstance(source.field, Gf2kField) and isinstance(target.field, Gf2kField)
        and target.field.degree % source.field.degree == 0
    ):
        k, d = source.field.degree, target.field.degree
        chain = tower if tower is not None and {k, d} <= set(tower.levels) else get_tower((k, d))
        return lambda g: embed_matrix(g, d, chain)
    if isinstance(source, ProductGroup) and isinstance(target, ProductGroup):
        left = level_map(source.left, target.left, tower)
        right = level_map(source.right, target.right, tower)
        return lambda x: (left(x[0]), right(x[1]))
    raise InputError(f"No level map from {source.spec} into {target.spec}")


class CayleyTable:
    """
    Indexed copy of a small group: elements numbered in enumeration order
    (identity is 0) with numpy multiplication and inverse tables.
    """

    def __init__(self, G: GroupHandle, limit: int = TABLE_LIMIT):
        """
        Build the tables.

        Raises:
            BudgetExceeded: If |G| exceeds `limit`
        """
        _check_budget(G, limit, "multiplication table")
        self.group = G
        self.elements: List[GElem] = list(G.elements())
        self.index: Dict[GElem, int] = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        self.mul = np.empty((n, n), dtype=np.int32)
        for i, x in enumerate(self.elements):
            self.mul[i] = [self.index[G.op(x, y)] for y in self.elements]
        self.inv = np.empty(n, dtype=np.int32)
        for i in range(n):
            self.inv[i] = int(np.flatnonzero(self.mul[i] == 0)[0])
        logger.debug(f"Built {n}x{n} multiplication table for {G.spec}")

    def __len__(self) -> int:
        return len(self.elements)

    def indices(self, elems: Iterable[GElem]) -> List[int]:
        return [self.index[x] for x in elems]

    @cached_property
    def conj(self) -> np.ndarray:
        """conj[g, t] = index of g t g^-1."""
        return np.stack([self.mul[self.mul[g], self.inv[g]] for g in range(len(self))])


@lru_cache(maxsize=TABLE_CACHE_SIZE)
def cayley_table(G: GroupHandle, limit: int = TABLE_LIMIT) -> CayleyTable:
    """Shared table per group spec; the least recently used ones are dropped."""
    return CayleyTable(G, limit)
