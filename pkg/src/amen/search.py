"""
Minimal Følner and c-Følner set search.

Sets are handled as index arrays into the group's Cayley table. Unions of
orbits of <S> (right cosets for translation, conjugation orbits otherwise)
are exactly the sets of defect 0. Since |gT △ T| = 2 |gT minus T|, a set of
size s qualifies iff every g in S moves at most K(s) of its points, with
K(s) the largest m such that 2m < epsilon s. Sizes with K(s) = 0 are
therefore decided by subset sums over orbit sizes; other sizes need
subset enumeration, done exactly only for small groups and small sizes.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import numpy as np

from ..errors import BudgetExceeded, ConfigError
from ..groups.handles import GElem, GroupHandle
from ..groups.ops import TABLE_LIMIT, CayleyTable, cayley_table
from ..utils.helpers import format_fraction
from ..utils.logging import ProgressLogger
from .folner import FolnerCertificate, Mode, certify, default_exclusion

logger = logging.getLogger(__name__)

EXACT_ORDER_LIMIT = 60
EXACT_SIZE_LIMIT = 8
DEFAULT_SUBSET_BUDGET = 2 * 10**6
CHUNK = 20_000


class SearchStatus(Enum):
    EXACT = "exact"
    HEURISTIC = "heuristic"
    EXHAUSTED = "exhausted"


@dataclass
class SearchResult:
    """
    Outcome of a minimal-set search.

    exact: the certificate has the least size >= min_size.
    heuristic: a certified upper bound; sizes below `lower_bound` are ruled out.
    exhausted: no witness exists up to `lower_bound - 1`.
    """

    group: str
    mode: Mode
    epsilon: Fraction
    min_size: int
    status: SearchStatus
    lower_bound: int
    certificate: Optional[FolnerCertificate] = None
    orbit_sizes: List[int] = field(default_factory=list)
    beats_orbit_unions: bool = False
    subsets_checked: int = 0

    @property
    def size(self) -> Optional[int]:
        return self.certificate.size if self.certificate else None

    def to_dict(self, G: GroupHandle) -> dict:
        return {
            "group": self.group,
            "mode": self.mode.value,
            "epsilon": format_fraction(self.epsilon),
            "min_size": self.min_size,
            "status": self.status.value,
            "lower_bound": self.lower_bound,
            "size": self.size,
            "certificate": self.certificate.to_dict(G) if self.certificate else None,
            "orbit_sizes": self.orbit_sizes,
            "beats_orbit_unions": self.beats_orbit_unions,
            "subsets_checked": self.subsets_checked,
        }


def max_moved(size: int, epsilon: Fraction, strict: bool = True) -> int:
    """Largest m with 2m < epsilon*size (2m <= epsilon*size when not strict)."""
    bound = Fraction(epsilon) * size / 2
    if strict:
        return math.ceil(bound) - 1
    return math.floor(bound)


class IndexedAction:
    """The maps t -> g.t for g in S as rows of index permutations."""

    def __init__(self, G: GroupHandle, S: Iterable[GElem], mode: Mode, limit: int = TABLE_LIMIT):
        self.table: CayleyTable = cayley_table(G, limit)
        self.mode = mode
        base = self.table.mul if mode is Mode.TRANSLATION else self.table.conj
        idx = sorted({self.table.index[g] for g in S})
        self.perms = base[idx] if idx else np.empty((0, len(self.table)), dtype=np.int32)

    @property
    def n(self) -> int:
        return len(self.table)

    def moved(self, subset: Sequence[int]) -> int:
        """max over g of |g.T minus T| for one index set T."""
        if len(self.perms) == 0:
            return 0
        member = np.zeros(self.n, dtype=bool)
        member[list(subset)] = True
        images = self.perms[:, list(subset)]
        return int((~member[images]).sum(axis=1).max())

    def first_qualifying(self, combos: np.ndarray, limit: int) -> Optional[int]:
        """Row of the first combination in which no map moves more than `limit` points."""
        rows = np.arange(len(combos))[:, None]
        member = np.zeros((len(combos), self.n), dtype=bool)
        member[rows, combos] = True
        ok = np.ones(len(combos), dtype=bool)
        for perm in self.perms:
            outside = (~member[rows, perm[combos]]).sum(axis=1)
            ok &= outside <= limit
        hits = np.flatnonzero(ok)
        return int(hits[0]) if len(hits) else None

    def orbits(self, universe: Sequence[int]) -> List[List[int]]:
        """Orbits of <S> on the whole group, restricted to `universe`, by least index."""
        parent = list(range(self.n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for perm in self.perms:
            for i, j in enumerate(perm):
                a, b = find(i), find(int(j))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups = {}
        allowed = set(universe)
        for i in range(self.n):
            if i in allowed:
                groups.setdefault(find(i), []).append(i)
        return [groups[r] for r in sorted(groups)]


def orbit_partition(G: GroupHandle, S: Iterable[GElem], mode: Mode) -> List[frozenset]:
    """Orbits of <S> acting on G; their unions are exactly the defect-0 sets."""
    action = IndexedAction(G, S, mode)
    elems = action.table.elements
    return [frozenset(elems[i] for i in orbit) for orbit in action.orbits(range(action.n))]


class _OrbitUnions:
    """Subset sums over orbit sizes with deterministic reconstruction."""

    def __init__(self, orbits: List[List[int]]):
        self.orbits = orbits
        self.sizes = [len(o) for o in orbits]
        total = sum(self.sizes)
        mask = (1 << (total + 1)) - 1
        reach = [1]
        for size in reversed(self.sizes):
            reach.append((reach[-1] | (reach[-1] << size)) & mask)
        # suffix[i]: sums reachable with orbits i..end
        self.suffix = list(reversed(reach))
        self.total = total

    def achievable(self, s: int) -> bool:
        return 0 <= s <= self.total and bool(self.suffix[0] >> s & 1)

    def union(self, s: int) -> Optional[List[int]]:
        """Union of size s preferring earlier orbits, or None."""
        if not self.achievable(s):
            return None
        chosen, rem = [], s
        for i, size in enumerate(self.sizes):
            if rem == 0:
                break
            if size <= rem and self.suffix[i + 1] >> (rem - size) & 1:
                chosen.extend(self.orbits[i])
                rem -= size
        return sorted(chosen)

    def smallest_at_least(self, s: int, cap: int) -> Optional[int]:
        return next((t for t in range(max(s, 0), min(cap, self.total) + 1) if self.achievable(t)), None)


def _resolve_exclusion(mode: Mode, exclude_identity: Optional[bool]) -> bool:
    if exclude_identity is None:
        return default_exclusion(mode, None)
    if exclude_identity and mode is Mode.TRANSLATION:
        logger.debug("exclude_identity only applies to conjugation; ignored for translation")
        return False
    return exclude_identity


def _shrink(action: IndexedAction, subset: List[int], limit_for, floor: int) -> List[int]:
    """Greedily drop points while the set keeps qualifying."""
    current = list(subset)
    changed = True
    while changed and len(current) > floor:
        changed = False
        for x in list(current):
            trial = [y for y in current if y != x]
            if action.moved(trial) <= limit_for(len(trial)):
                current = trial
                changed = True
                break
    return current


def min_folner_search(
    G: GroupHandle,
    S: Iterable[GElem],
    epsilon: Fraction,
    mode: Mode,
    min_size: int = 1,
    budget: int = DEFAULT_SUBSET_BUDGET,
    exclude_identity: Optional[bool] = None,
    max_size: Optional[int] = None,
) -> SearchResult:
    """
    Find the least |T| >= min_size with defect(S, T) < epsilon.

    Sizes are tried upward. Orbit unions (defect 0) are tried first; sizes
    where only those qualify are settled by subset sums. Other sizes are
    enumerated exactly when |G| <= 60 and the size is at most 8 (for
    translation every right translate of a witness is one, so T may be
    assumed to contain the identity). Past that limit the least orbit union
    is shrunk greedily and the result is marked heuristic.

    Args:
        G: Group handle (small enough for a Cayley table)
        S: Finite subset of G
        epsilon: Positive exact rational
        mode: Translation or conjugation
        min_size: Least admissible |T|
        budget: Cap on the number of subsets enumerated
        exclude_identity: Forbid e in T (defaults to True for conjugation)
        max_size: Largest admissible |T| (defaults to the whole universe)

    Returns:
        SearchResult with status exact, heuristic or exhausted

    Raises:
        BudgetExceeded: If the enumeration estimate exceeds `budget`; the
            heuristic result so far is attached as `best_so_far`
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    S = list(S)
    exclude = _resolve_exclusion(mode, exclude_identity)
    action = IndexedAction(G, S, mode)
    universe = [i for i in range(action.n) if not (exclude and i == 0)]
    max_size = len(universe) if max_size is None else min(max_size, len(universe))
    min_size = max(1, min_size)

    orbits = action.orbits(universe)
    unions = _OrbitUnions(orbits)
    result = SearchResult(
        G.spec, mode, epsilon, min_size, SearchStatus.EXHAUSTED, max_size + 1,
        orbit_sizes=sorted(len(o) for o in orbits),
    )
    elements = action.table.elements

    def finish(indices: List[int], status: SearchStatus, lower: int) -> SearchResult:
        T = [elements[i] for i in indices]
        result.certificate = certify(G, S, T, epsilon, mode, exclude_identity=exclude)
        result.status = status
        result.lower_bound = lower
        seed = unions.smallest_at_least(min_size, len(universe))
        is_union = unions_contain(orbits, indices)
        result.beats_orbit_unions = not is_union and (seed is None or len(indices) < seed)
        if result.beats_orbit_unions:
            logger.info(f"Witness of size {len(indices)} in {G.spec} is not a union of orbits and beats them")
        return result

    def heuristic(lower: int) -> SearchResult:
        seed_size = unions.smallest_at_least(lower, max_size)
        if seed_size is None:
            result.status = SearchStatus.EXHAUSTED
            result.lower_bound = lower
            return result
        shrunk = _shrink(action, unions.union(seed_size), lambda k: max_moved(k, epsilon), lower)
        return finish(sorted(shrunk), SearchStatus.HEURISTIC, lower)

    for s in range(min_size, max_size + 1):
        limit = max_moved(s, epsilon)
        union = unions.union(s)
        if union is not None:
            return finish(union, SearchStatus.EXACT, s)
        if limit == 0:
            continue
        if action.n > EXACT_ORDER_LIMIT or s > EXACT_SIZE_LIMIT:
            logger.debug(f"Size {s} in {G.spec} is beyond exact enumeration, switching to heuristic")
            return heuristic(s)

        witness = _enumerate_size(action, universe, s, limit, mode, budget - result.subsets_checked, result)
        if witness is None and result.subsets_checked > budget:
            best = heuristic(s)
            raise BudgetExceeded(
                f"Subset search in {G.spec} at size {s} needs more than {budget} subsets",
                estimate=result.subsets_checked,
                budget=budget,
                best_so_far=best,
            )
        if witness is not None:
            return finish(witness, SearchStatus.EXACT, s)

    result.status = SearchStatus.EXHAUSTED
    result.lower_bound = max_size + 1
    return result


def unions_contain(orbits: List[List[int]], indices: Sequence[int]) -> bool:
    chosen = set(indices)
    return all(set(o) <= chosen or not (set(o) & chosen) for o in orbits)


def _enumerate_size(
    action: IndexedAction,
    universe: List[int],
    s: int,
    limit: int,
    mode: Mode,
    remaining: int,
    result: SearchResult,
) -> Optional[List[int]]:
    if mode is Mode.TRANSLATION:
        anchor, rest, k = [universe[0]], universe[1:], s - 1
    else:
        anchor, rest, k = [], universe, s
    count = math.comb(len(rest), k)
    if count > remaining:
        result.subsets_checked += count
        return None

    progress = ProgressLogger(logger, count, f"Subsets of size {s} in {action.table.group.spec}", min_total=200_000)
    combos = itertools.combinations(rest, k)
    while True:
        chunk = list(itertools.islice(combos, CHUNK))
        if not chunk:
            return None
        arr = np.array([anchor + list(c) for c in chunk], dtype=np.int64).reshape(len(chunk), s)
        result.subsets_checked += len(chunk)
        progress.update(len(chunk))
        hit = action.first_qualifying(arr, limit)
        if hit is not None:
            return sorted(int(i) for i in arr[hit])


def bound_holds(
    G: GroupHandle,
    n: int,
    m: int,
    mode: Mode,
    exclude_identity: bool = False,
    strict: bool = True,
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> bool:
    """
    Whether every S with 1 <= |S| <= n has a witness T with n <= |T| <= m
    and defect < 1/n (<= 1/n when not strict), by exhaustive enumeration.

    Raises:
        BudgetExceeded: If the number of (S, T) pairs exceeds `budget`
    """
    table = cayley_table(G)
    N = len(table)
    universe = [i for i in range(N) if not (exclude_identity and i == 0)]
    epsilon = Fraction(1, n)
    s_count = sum(math.comb(N, r) for r in range(1, n + 1))
    t_count = sum(math.comb(len(universe), k) for k in range(n, m + 1))
    if s_count * t_count > budget:
        raise BudgetExceeded(
            f"Bound check n={n}, m={m} on {G.spec} needs {s_count * t_count} (S, T) pairs",
            estimate=s_count * t_count,
            budget=budget,
        )

    for r in range(1, n + 1):
        for s_idx in itertools.combinations(range(N), r):
            action = IndexedAction(G, [table.elements[i] for i in s_idx], mode)
            if not _has_witness(action, universe, n, m, epsilon, strict):
                logger.debug(f"No witness in {G.spec} for S = {[G.format(table.elements[i]) for i in s_idx]}")
                return False
    return True


def _has_witness(action: IndexedAction, universe, n, m, epsilon, strict) -> bool:
    for k in range(n, m + 1):
        if k > len(universe):
            break
        limit = max_moved(k, epsilon, strict)
        if limit < 0:
            continue
        combos = itertools.combinations(universe, k)
        while True:
            chunk = list(itertools.islice(combos, CHUNK))
            if not chunk:
                break
            if action.first_qualifying(np.array(chunk, dtype=np.int64).reshape(len(chunk), k), limit) is not None:
                return True
    return False
