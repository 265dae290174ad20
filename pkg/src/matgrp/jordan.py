"""
Jordan canonical forms of SL2 elements in characteristic 2.

A nontrivial g has characteristic polynomial l^2 + t l + 1 with t its trace.
For t = 0 the only eigenvalue is 1 and g is conjugate to [[1,1],[0,1]];
otherwise the eigenvalues a, 1/a are distinct and g is conjugate to
diag(a, 1/a), over GF(q) or over its quadratic extension.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from ..errors import ExtensionUnavailable, IdentityInput, NotInTower, UnsupportedField
from ..fields.gf2k import Gf2kElement, Gf2kField
from ..fields.poly import MAX_DEGREE
from ..fields.tower import FieldTower, get_tower
from .mat2 import Mat2, diag, identity, unipotent

logger = logging.getLogger(__name__)


class JordanKind(Enum):
    DIAGONAL = "diagonal"
    UNIPOTENT = "unipotent"


@dataclass(frozen=True)
class JordanData:
    """
    Jordan form J of g with conjugator P such that P J P^-1 = g.

    `image` is g itself, or its embedding when the eigenvalues only exist
    at `extension_level`; P and J live at that level.
    """

    kind: JordanKind
    form: Mat2
    conjugator: Mat2
    extension_level: int
    image: Mat2
    eigenvalue: Optional[Gf2kElement] = None

    def verify(self) -> bool:
        return self.conjugator * self.form * self.conjugator.inverse() == self.image

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "form": repr(self.form),
            "conjugator": repr(self.conjugator),
            "extension_level": self.extension_level,
            "eigenvalue": repr(self.eigenvalue) if self.eigenvalue is not None else None,
        }


def require_char2(g: Mat2) -> Gf2kField:
    field = g.field
    if not isinstance(field, Gf2kField):
        raise UnsupportedField(f"Jordan forms are implemented over GF(2^k) only, got {field.tag}")
    return field


def embed_matrix(g: Mat2, target: int, tower: FieldTower) -> Mat2:
    """Entrywise embedding of g into the tower level of degree `target`."""
    if g.field.degree == target:
        return g
    return Mat2(*(tower.embed(x, target) for x in g.entries()), check=False)


def _extension_tower(k: int, tower: Optional[FieldTower]) -> FieldTower:
    target = 2 * k
    if tower is None:
        if target > MAX_DEGREE:
            raise ExtensionUnavailable(
                f"Eigenvalues of this element lie in GF(2^{target}), beyond the supported degree {MAX_DEGREE}"
            )
        return get_tower((k, target))
    if k not in tower.levels:
        raise NotInTower(f"Degree {k} is not a level of {tower!r}")
    if target not in tower.levels:
        raise ExtensionUnavailable(
            f"Eigenvalues of this element lie in GF(2^{target}), which is not a level of {tower!r}"
        )
    return tower


def _column_matrix(u: Tuple[Gf2kElement, Gf2kElement], v: Tuple[Gf2kElement, Gf2kElement]) -> Mat2:
    return Mat2(u[0], v[0], u[1], v[1], check=False)


def _kernel_vector(m: Mat2) -> Tuple[Gf2kElement, Gf2kElement]:
    """Nonzero vector in the kernel of a singular nonzero matrix."""
    if not (m.a.is_zero() and m.b.is_zero()):
        return (m.b, m.a)
    return (m.d, m.c)


def _unipotent_form(g: Mat2) -> JordanData:
    field = g.field
    one, zero = field.one(), field.zero()
    n = Mat2(g.a + one, g.b, g.c, g.d + one, check=False)
    # v outside ker(g - I), w = (g - I) v spans the kernel since (g - I)^2 = 0
    if not (n.b.is_zero() and n.d.is_zero()):
        v = (zero, one)
    else:
        v = (one, zero)
    w = (n.a * v[0] + n.b * v[1], n.c * v[0] + n.d * v[1])
    p = _column_matrix(w, v)
    scale = (one / p.det()).sqrt()
    p = Mat2(p.a * scale, p.b * scale, p.c * scale, p.d * scale)
    return JordanData(JordanKind.UNIPOTENT, unipotent(field), p, field.degree, g)


def _diagonal_form(g: Mat2, a: Gf2kElement) -> JordanData:
    field = g.field
    b = a.inverse()
    if g.is_diagonal():
        return JordanData(JordanKind.DIAGONAL, g, identity(field), field.degree, g, g.a)
    u = _kernel_vector(Mat2(g.a + a, g.b, g.c, g.d + a, check=False))
    v = _kernel_vector(Mat2(g.a + b, g.b, g.c, g.d + b, check=False))
    p = _column_matrix(u, v)
    s = p.det().inverse()
    p = Mat2(p.a * s, p.b, p.c * s, p.d)
    return JordanData(JordanKind.DIAGONAL, diag(a), p, field.degree, g, a)


def jordan_form(g: Mat2, tower: Optional[FieldTower] = None) -> JordanData:
    """
    Jordan canonical form of a nontrivial SL2 element over GF(2^k).

    Args:
        g: Element of SL2(GF(2^k)), not the identity
        tower: Tower providing the quadratic extension; without one a
            two-level tower (k, 2k) is built when needed

    Returns:
        JordanData with P J P^-1 equal to g (or its image at level 2k)

    Raises:
        IdentityInput: If g is the identity
        UnsupportedField: If g is not over GF(2^k)
        ExtensionUnavailable: If the eigenvalues need a missing level
    """
    field = require_char2(g)
    if g.is_identity():
        raise IdentityInput("The identity has no nontrivial Jordan form")

    t = g.trace()
    if t.is_zero():
        return _unipotent_form(g)

    a = field.solve_quadratic(t, field.one())
    if a is not None:
        if g.is_diagonal():
            a = g.a
        return _diagonal_form(g, a)

    ext = _extension_tower(field.degree, tower)
    lifted = embed_matrix(g, 2 * field.degree, ext)
    ext_field = lifted.field
    a = ext_field.solve_quadratic(lifted.trace(), ext_field.one())
    logger.debug(f"Eigenvalues of {g!r} found in gf2_{ext_field.degree}: {a!r}")
    return _diagonal_form(lifted, a)
