"""
Empirical uniformity profiles.

For every level of a family and every n, sets S with |S| <= n are drawn by
a seeded sampler and the least certified |T| with defect < 1/n is recorded
(|T| >= n in conjugation mode). f_hat(n) per level is the maximum over the
samples, an empirical lower estimate of any uniform bound f(n).

The lifted sampler draws S once at the first level and carries it up the
family through the level inclusions, following one S across levels.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..errors import BudgetExceeded, ConfigError
from ..groups.handles import GroupHandle
from ..fields.tower import FieldTower
from ..groups.ops import conjugacy_partition, level_map
from ..utils.helpers import format_fraction
from ..utils.logging import ProgressLogger
from .folner import Mode, default_exclusion
from .search import DEFAULT_SUBSET_BUDGET, SearchResult, SearchStatus, min_folner_search

logger = logging.getLogger(__name__)

SAMPLERS = ("generators", "random", "adversarial")
SAMPLER_KINDS = SAMPLERS + ("lifted",)

# samplers drawn samples_per_n times per cell
_REPEATED = ("random", "lifted")

PROFILE_COLUMNS = [
    "level", "n", "sample", "sampler", "s_size", "S", "min_t", "defect", "status", "lower_bound",
]


@dataclass
class UniformityProfile:
    mode: str
    family: List[str]
    seed: int
    samplers: List[str]
    exclude_identity: bool
    rows: List[dict] = field(default_factory=list)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=PROFILE_COLUMNS)

    def f_hat(self) -> List[dict]:
        """Per level and n: the largest recorded min |T| and whether all cells were exact."""
        frame = self.frame()
        if frame.empty:
            return []
        summary = []
        for (level, n), cells in frame.groupby(["level", "n"], sort=False):
            sizes = cells["min_t"].dropna()
            summary.append({
                "level": level,
                "n": int(n),
                "f_hat": int(sizes.max()) if len(sizes) else None,
                "exact": bool((cells["status"] == SearchStatus.EXACT.value).all()),
                "cells": int(len(cells)),
            })
        return summary

    def witnesses_contain_identity(self) -> bool:
        return any(row.get("contains_identity") for row in self.rows)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "family": self.family,
            "seed": self.seed,
            "samplers": self.samplers,
            "exclude_identity": self.exclude_identity,
            "rows": [{k: row[k] for k in PROFILE_COLUMNS} for row in self.rows],
            "f_hat": self.f_hat(),
        }


class Sampler:
    """
    Deterministic draws of S at one level.

    The generator for (seed, level index, n) is independent of the order
    in which cells are visited.
    """

    def __init__(
        self,
        G: GroupHandle,
        level_index: int,
        seed: int,
        lift: Optional[Tuple["Sampler", Callable]] = None,
    ):
        self.G = G
        self.level_index = level_index
        self.seed = seed
        self.lift = lift
        self.elements = list(G.elements())
        self._by_class: Optional[list] = None

    def draw(self, kind: str, n: int, sample: int) -> list:
        size = min(n, len(self.elements))
        if kind == "generators":
            gens = self.G.generators() or [self.G.identity()]
            return gens[:size]
        if kind == "random":
            rng = np.random.default_rng([self.seed, self.level_index, n, sample])
            picks = rng.choice(len(self.elements), size=size, replace=False)
            return [self.elements[int(i)] for i in sorted(picks)]
        if kind == "adversarial":
            return self._largest_classes()[:size]
        if kind == "lifted":
            if self.lift is None:
                raise ConfigError(f"No first level to lift S from into {self.G.spec}")
            base, include = self.lift
            return [include(x) for x in base.draw("random", n, sample)]
        raise ConfigError(f"Unknown sampler '{kind}' (expected one of {', '.join(SAMPLER_KINDS)})")

    def _largest_classes(self) -> list:
        """Class representatives by decreasing class size, then the rest of each class."""
        if self._by_class is None:
            classes = sorted(conjugacy_partition(self.G), key=lambda c: -len(c))
            reps = [min(c, key=self.G.key) for c in classes]
            chosen = set(reps)
            rest = [x for c in classes for x in sorted(c, key=self.G.key) if x not in chosen]
            self._by_class = reps + rest
        return self._by_class


def profile_uniform(
    family: Sequence[GroupHandle],
    mode: Mode,
    n_range: Sequence[int],
    samplers: Sequence[str] = SAMPLERS,
    seed: int = 0,
    samples_per_n: int = 2,
    budget: int = DEFAULT_SUBSET_BUDGET,
    exclude_identity: Optional[bool] = None,
    tower: Optional[FieldTower] = None,
) -> UniformityProfile:
    """
    Record minimal witness sizes across a family.

    Args:
        family: Ascending group handles
        mode: Translation or conjugation
        n_range: Values of n; epsilon is 1/n and |S| <= n
        samplers: Sampler kinds, any of generators, random, adversarial, lifted
        seed: Seed of the random sampler
        samples_per_n: Number of random (and lifted) draws per cell
        budget: Subset budget per search
        exclude_identity: Forbid e in T (defaults to True for conjugation)
        tower: Tower carrying lifted SL2 draws up the family

    Returns:
        UniformityProfile; cells over budget are recorded as exhausted

    Raises:
        ConfigError: If a sampler kind is unknown
        InputError: If the lifted sampler is asked for a family whose
            first level does not include into every later one
    """
    exclude = default_exclusion(mode, exclude_identity)
    for kind in samplers:
        if kind not in SAMPLER_KINDS:
            raise ConfigError(f"Unknown sampler '{kind}' (expected one of {', '.join(SAMPLER_KINDS)})")

    profile = UniformityProfile(mode.value, [G.spec for G in family], seed, list(samplers), exclude)
    draws_per_n = sum(samples_per_n if k in _REPEATED else 1 for k in samplers)
    progress = ProgressLogger(logger, len(family) * len(n_range) * draws_per_n, f"Profile ({mode.value})", min_total=1)

    lifts = None
    if "lifted" in samplers and family:
        base = Sampler(family[0], 0, seed)
        lifts = [(base, level_map(family[0], G, tower)) for G in family]

    for level_index, G in enumerate(family):
        sampler = Sampler(G, level_index, seed, lifts[level_index] if lifts else None)
        for n in n_range:
            epsilon = Fraction(1, n)
            min_size = n if mode is Mode.CONJUGATION else 1
            for kind in samplers:
                for sample in range(samples_per_n if kind in _REPEATED else 1):
                    S = sampler.draw(kind, n, sample)
                    row = _cell(G, S, epsilon, mode, min_size, budget, exclude)
                    row.update({"level": G.spec, "n": n, "sample": sample, "sampler": kind})
                    profile.rows.append(row)
                    progress.update()
    progress.finish()
    return profile


def _cell(G, S, epsilon, mode, min_size, budget, exclude) -> Dict:
    try:
        result: SearchResult = min_folner_search(
            G, S, epsilon, mode, min_size=min_size, budget=budget, exclude_identity=exclude
        )
        status = result.status.value
    except BudgetExceeded as e:
        logger.warning(f"Cell over budget in {G.spec}: {e}")
        result = e.best_so_far
        status = SearchStatus.EXHAUSTED.value
    cert = result.certificate if result is not None else None
    return {
        "s_size": len(set(S)),
        "S": " ".join(G.format(x) for x in sorted(set(S), key=G.key)),
        "min_t": cert.size if cert else None,
        "defect": format_fraction(cert.defect) if cert else None,
        "status": status,
        "lower_bound": result.lower_bound if result is not None else min_size,
        "contains_identity": bool(cert and G.identity() in set(cert.T)),
    }
