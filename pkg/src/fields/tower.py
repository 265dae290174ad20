"""
Compatible towers GF(2^k1) < GF(2^k2) < ... standing in for the algebraic
closure of GF(2).

Consecutive levels are linked by sending the lower generator to the least
root of the lower modulus in the upper level; longer embeddings are the
composites, so the tower is coherent by construction.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import poly
from .gf2k import Gf2kElement, Gf2kField, gf2k
from ..errors import NonDividingDegree, NotInTower

logger = logging.getLogger(__name__)

DEFAULT_LEVELS = (1, 2, 4, 8, 16)

Coefficient = Union[int, Gf2kElement]


class FieldTower:
    """A divisibility chain of GF(2^k) levels with their embeddings."""

    def __init__(self, levels: Sequence[int] = DEFAULT_LEVELS):
        """
        Build the tower.

        Args:
            levels: Ascending degrees, each dividing the next

        Raises:
            ValueError: If the levels do not form a divisibility chain
        """
        levels = tuple(int(k) for k in levels)
        if not levels:
            raise ValueError("A tower needs at least one level")
        for lower, upper in zip(levels, levels[1:]):
            if upper <= lower or upper % lower != 0:
                raise ValueError(f"Tower levels must form a divisibility chain, got {levels}")

        self.levels = levels
        self.fields: Dict[int, Gf2kField] = {k: gf2k(k) for k in levels}
        self._images: Dict[Tuple[int, int], Gf2kElement] = {}

        for lower, upper in zip(levels, levels[1:]):
            modulus = self.fields[lower].modulus
            coeffs = [(modulus >> i) & 1 for i in range(lower + 1)]
            root = find_root_in_extension(coeffs, upper)
            if root is None:
                raise RuntimeError(f"Modulus of level {lower} has no root in level {upper}")
            self._images[(lower, upper)] = root
            logger.debug(f"Tower embedding gf2_{lower} -> gf2_{upper}: x -> {root!r}")

    def __repr__(self) -> str:
        return f"FieldTower{self.levels}"

    def field(self, degree: int) -> Gf2kField:
        if degree not in self.fields:
            raise NotInTower(f"Degree {degree} is not a level of {self!r}")
        return self.fields[degree]

    def moduli(self) -> Dict[int, int]:
        return {k: f.modulus for k, f in self.fields.items()}

    def generator_image(self, source: int, target: int) -> Gf2kElement:
        """Image of the level-`source` generator in level `target`."""
        self.field(source)
        self.field(target)
        if target % source != 0:
            raise NonDividingDegree(f"Degree {source} does not divide {target}")
        if source == target:
            return self.fields[source].generator()
        key = (source, target)
        if key not in self._images:
            idx = self.levels.index(source)
            step = self.levels[idx + 1]
            first = self._images[(source, step)]
            self._images[key] = self._embed_along(first, step, target)
        return self._images[key]

    def _embed_along(self, a: Gf2kElement, source: int, target: int) -> Gf2kElement:
        if source == target:
            return a
        return _evaluate_mask(a.value, self.generator_image(source, target))

    def embed(self, a: Gf2kElement, target_level: int) -> Gf2kElement:
        """
        Embed an element into a higher tower level.

        Args:
            a: Element of a tower level
            target_level: Degree of the destination level

        Returns:
            Image of a; the map is an injective ring homomorphism fixing GF(2)

        Raises:
            NotInTower: If either level is not part of the tower
            NonDividingDegree: If the source degree does not divide the target
        """
        source = a.field.degree
        if self.field(source) != a.field:
            raise NotInTower(f"{a!r} does not live in the tower level of degree {source}")
        self.field(target_level)
        if target_level % source != 0:
            raise NonDividingDegree(f"Cannot embed degree {source} into degree {target_level}")
        return self._embed_along(a, source, target_level)


def _evaluate_mask(mask: int, x: Gf2kElement) -> Gf2kElement:
    """Evaluate the GF(2)-polynomial `mask` at x (Horner)."""
    result = x.zero()
    for i in range(poly.degree(mask), -1, -1):
        result = result * x
        if mask >> i & 1:
            result = result + x.one()
    return result


def embed(a: Gf2kElement, target_level: int, tower: Optional[FieldTower] = None) -> Gf2kElement:
    """Embed into `target_level` through `tower` (default tower when omitted)."""
    return (tower or default_tower()).embed(a, target_level)


def _lift_coefficients(coeffs: Sequence[Coefficient], k: int, tower: Optional[FieldTower]) -> List[Gf2kElement]:
    target = gf2k(k)
    lifted = []
    for c in coeffs:
        if isinstance(c, Gf2kElement):
            if c.field == target:
                lifted.append(c)
            elif c.field.degree == 1:
                lifted.append(target(c.value))
            else:
                if k % c.field.degree != 0:
                    raise NonDividingDegree(f"Coefficient level {c.field.degree} does not divide {k}")
                lifted.append((tower or default_tower()).embed(c, k))
        else:
            lifted.append(target(int(c) & 1))
    return lifted


def find_root_in_extension(
    coeffs: Sequence[Coefficient],
    k: int,
    tower: Optional[FieldTower] = None,
) -> Optional[Gf2kElement]:
    """
    Find the least root of a polynomial in GF(2^k).

    Args:
        coeffs: Coefficients, lowest degree first; ints are read in GF(2),
            elements of a lower level are embedded through the tower
        k: Degree of the field searched
        tower: Tower used to embed coefficients of intermediate levels

    Returns:
        The root with the smallest coefficient mask, or None when the
        polynomial has no root in GF(2^k)
    """
    field = gf2k(k)
    lifted = _lift_coefficients(coeffs, k, tower)
    while lifted and lifted[-1].is_zero():
        lifted.pop()
    if not lifted:
        raise ValueError("The zero polynomial has every element as a root")

    deg = len(lifted) - 1
    if deg == 0:
        return None
    if deg == 1:
        return lifted[0] / lifted[1]
    if deg == 2:
        lead = lifted[2]
        return field.solve_quadratic(lifted[1] / lead, lifted[0] / lead)

    for z in field.elements():
        acc = field.zero()
        for c in reversed(lifted):
            acc = acc * z + c
        if acc.is_zero():
            return z
    return None


@lru_cache(maxsize=None)
def get_tower(levels: Tuple[int, ...] = DEFAULT_LEVELS) -> FieldTower:
    """Shared tower per level tuple; towers are read-only after construction."""
    return FieldTower(levels)


def default_tower() -> FieldTower:
    return get_tower(DEFAULT_LEVELS)
