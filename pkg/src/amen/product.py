"""
Lifting certificates from G to G x H.

(g, h)(t, e)(g, h)^-1 = (g t g^-1, e), so T x {e_H} has against S' the
defect of T against the first coordinates of S'.
"""

import logging
from fractions import Fraction
from typing import Iterable

from ..errors import ProjectionMismatch
from ..groups.handles import GroupHandle, ProductGroup
from .folner import FolnerCertificate, Mode, certify, folner_defect

logger = logging.getLogger(__name__)


def lift_set(H: GroupHandle, T: Iterable) -> list:
    e_h = H.identity()
    return [(t, e_h) for t in T]


def lift_defect(G: GroupHandle, H: GroupHandle, S_prime: Iterable, T: Iterable, mode: Mode) -> Fraction:
    """
    Defect of T x {e_H} against S' computed in the product group.

    Raises:
        EmptyT: If T is empty
    """
    product = ProductGroup(G, H)
    return folner_defect(product, S_prime, lift_set(H, T), mode)


def product_lift(cert: FolnerCertificate, G: GroupHandle, H: GroupHandle, S_prime: Iterable) -> FolnerCertificate:
    """
    Certificate for T x {e_H} in G x H.

    The lifted defect is the maximum over the first coordinates of S', so it
    equals the original defect when those cover S and never exceeds it.

    Args:
        cert: Certificate over G
        G: The group `cert` was issued for
        H: Second factor
        S_prime: Finite subset of G x H

    Returns:
        Certificate over prod(G, H) with the same epsilon

    Raises:
        ProjectionMismatch: If a first coordinate of S' is outside cert.S, or
            in translation mode a second coordinate is not e_H
    """
    S_prime = list(S_prime)
    allowed = set(cert.S)
    stray = [G.format(g) for g, _ in S_prime if g not in allowed]
    if stray:
        raise ProjectionMismatch(f"First coordinates {stray} are not in the certified S")
    if cert.mode is Mode.TRANSLATION:
        e_h = H.identity()
        moving = [H.format(h) for _, h in S_prime if h != e_h]
        if moving:
            raise ProjectionMismatch(
                f"Translation lift needs trivial second coordinates, got {moving}"
            )

    product = ProductGroup(G, H)
    lifted = certify(
        product, S_prime, lift_set(H, cert.T), cert.epsilon, cert.mode, exclude_identity=cert.exclude_identity
    )
    projected = folner_defect(G, {g for g, _ in S_prime}, cert.T, cert.mode) if S_prime else Fraction(0)
    if lifted.defect != projected:
        raise RuntimeError(f"Lifted defect {lifted.defect} differs from projected defect {projected}")
    logger.debug(f"Lifted |T| = {cert.size} from {G.spec} to {product.spec}, defect {lifted.defect}")
    return lifted
