"""
Følner and c-Følner defects and certificates.

The defect of a finite nonempty T against S is the exact rational
max over g in S of |gT △ T| / |T| (translation) or |gTg^-1 △ T| / |T|
(conjugation). A certificate requires defect < epsilon strictly.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Tuple

from ..errors import CertificateRefused, ConfigError, EmptyT
from ..groups.handles import GElem, GroupHandle
from ..utils.helpers import format_fraction, parse_fraction

logger = logging.getLogger(__name__)


class Mode(Enum):
    TRANSLATION = "translation"
    CONJUGATION = "conjugation"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ConfigError(f"Unknown mode '{text}' (expected translation or conjugation)") from None


def default_exclusion(mode: Mode, exclude_identity: Optional[bool]) -> bool:
    """Resolve the auto setting (None): the identity is excluded in conjugation mode only."""
    return mode is Mode.CONJUGATION if exclude_identity is None else exclude_identity


def act(G: GroupHandle, mode: Mode, g: GElem, t: GElem) -> GElem:
    """g t (translation) or g t g^-1 (conjugation)."""
    if mode is Mode.TRANSLATION:
        return G.op(g, t)
    return G.conj(g, t)


def moved_count(G: GroupHandle, mode: Mode, g: GElem, T: frozenset) -> int:
    """|act_g(T) minus T|; the symmetric difference has twice this size."""
    return sum(1 for t in T if act(G, mode, g, t) not in T)


def folner_defect(G: GroupHandle, S: Iterable[GElem], T: Iterable[GElem], mode: Mode) -> Fraction:
    """
    Exact defect of T against S.

    Args:
        G: Group handle
        S: Finite set of group elements
        T: Finite nonempty set of group elements
        mode: Translation or conjugation action

    Returns:
        max over g in S of |g.T △ T| / |T| as a Fraction (0 for empty S)

    Raises:
        EmptyT: If T is empty
    """
    T = frozenset(T)
    if not T:
        raise EmptyT("The Følner defect is undefined for empty T")
    worst = max((moved_count(G, mode, g, T) for g in set(S)), default=0)
    return Fraction(2 * worst, len(T))


def _sorted(G: GroupHandle, elems: Iterable[GElem]) -> Tuple[GElem, ...]:
    return tuple(sorted(set(elems), key=G.key))


@dataclass(frozen=True)
class FolnerCertificate:
    """A set T with its exact defect against S, strictly below epsilon."""

    group: str
    mode: Mode
    S: Tuple[GElem, ...]
    T: Tuple[GElem, ...]
    epsilon: Fraction
    defect: Fraction
    exclude_identity: bool = False

    @property
    def size(self) -> int:
        return len(self.T)

    def verify(self, G: GroupHandle) -> bool:
        """Recompute the defect from (S, T) and re-check every condition."""
        if G.spec != self.group or not self.T:
            return False
        if self.exclude_identity and G.identity() in set(self.T):
            return False
        defect = folner_defect(G, self.S, self.T, self.mode)
        return defect == self.defect and defect < self.epsilon

    def to_dict(self, G: GroupHandle) -> Dict[str, Any]:
        return {
            "group": self.group,
            "mode": self.mode.value,
            "S": [G.format(x) for x in self.S],
            "T": [G.format(x) for x in self.T],
            "epsilon": format_fraction(self.epsilon),
            "defect": format_fraction(self.defect),
            "exclude_identity": self.exclude_identity,
            "size": self.size,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], G: GroupHandle) -> "FolnerCertificate":
        return cls(
            group=data["group"],
            mode=Mode.parse(data["mode"]),
            S=tuple(G.parse(x) for x in data["S"]),
            T=tuple(G.parse(x) for x in data["T"]),
            epsilon=parse_fraction(data["epsilon"]),
            defect=parse_fraction(data["defect"]),
            exclude_identity=bool(data.get("exclude_identity", False)),
        )


def certify(
    G: GroupHandle,
    S: Iterable[GElem],
    T: Iterable[GElem],
    epsilon: Fraction,
    mode: Mode,
    exclude_identity: bool = False,
) -> FolnerCertificate:
    """
    Certify T as an (S, epsilon)-Følner (or c-Følner) set.

    Returns:
        The certificate when defect < epsilon

    Raises:
        EmptyT: If T is empty
        CertificateRefused: If defect >= epsilon, or T contains the identity
            while `exclude_identity` is set
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ConfigError(f"epsilon must be positive, got {format_fraction(epsilon)}")
    S, T = _sorted(G, S), _sorted(G, T)
    defect = folner_defect(G, S, T, mode)
    if exclude_identity and G.identity() in set(T):
        raise CertificateRefused(
            "T contains the identity while it is excluded", defect=defect, epsilon=epsilon
        )
    if not defect < epsilon:
        raise CertificateRefused(
            f"defect {format_fraction(defect)} is not below epsilon {format_fraction(epsilon)}",
            defect=defect,
            epsilon=epsilon,
        )
    logger.debug(f"Certified |T| = {len(T)} in {G.spec} ({mode.value}) with defect {defect}")
    return FolnerCertificate(G.spec, mode, S, T, epsilon, defect, exclude_identity)
