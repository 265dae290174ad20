"""
Uniform scalar operations and the text syntax shared by all field kinds.

Syntax: "gf2_<k>:<hex mask>", "rf2:<num hex>/<den hex>", "gfp_<p>:<value>".
"""

import re
from typing import Union

from .gf2k import Gf2kElement, Gf2kField, gf2k
from .primefield import PrimeField, PrimeFieldElement, gfp
from .ratfunc import RF2, RatFunc, RationalFunctionField, ratfunc_degree
from ..errors import DivisionByZero, GroupSpecError, LevelMismatch

Scalar = Union[Gf2kElement, PrimeFieldElement, RatFunc]
Field = Union[Gf2kField, PrimeField, RationalFunctionField]

_FIELD_TAG = re.compile(r"^(gf2_(\d+)|gfp_(\d+)|rf2)$")

__all__ = [
    "Scalar",
    "Field",
    "field_add",
    "field_mul",
    "field_inv",
    "frobenius",
    "ratfunc_degree",
    "field_from_tag",
    "parse_scalar",
    "format_scalar",
]


def _same_level(a: Scalar, b: Scalar) -> None:
    if type(a) is not type(b) or a.field != b.field:
        raise LevelMismatch(f"Operands from different levels: {a!r}, {b!r}")


def field_add(a: Scalar, b: Scalar) -> Scalar:
    _same_level(a, b)
    return a + b


def field_mul(a: Scalar, b: Scalar) -> Scalar:
    _same_level(a, b)
    return a * b


def field_inv(a: Scalar) -> Scalar:
    if a.is_zero():
        raise DivisionByZero(f"{a!r} has no inverse")
    return a.inverse()


def frobenius(a: Gf2kElement) -> Gf2kElement:
    return a.frobenius()


def field_from_tag(tag: str) -> Field:
    """
    Resolve a field tag.

    Args:
        tag: "gf2_<k>", "gfp_<p>" or "rf2"

    Raises:
        GroupSpecError: If the tag is unknown or out of range
    """
    match = _FIELD_TAG.match(tag.strip())
    if not match:
        raise GroupSpecError(f"Unknown field tag '{tag}' (expected gf2_<k>, gfp_<p> or rf2)")
    try:
        if match.group(2):
            return gf2k(int(match.group(2)))
        if match.group(3):
            return gfp(int(match.group(3)))
    except ValueError as e:
        raise GroupSpecError(str(e)) from e
    return RF2


def parse_scalar(text: str, field: Field = None) -> Scalar:
    """
    Parse a scalar from its text form.

    A bare value without a tag is read in `field` when given.
    """
    text = text.strip()
    if ":" in text:
        tag, value = text.split(":", 1)
        parsed_field = field_from_tag(tag)
        if field is not None and parsed_field != field:
            raise LevelMismatch(f"Scalar '{text}' is not in {field.tag}")
        field = parsed_field
    else:
        value = text
    if field is None:
        raise GroupSpecError(f"Scalar '{text}' has no field tag")
    try:
        return field.parse_value(value)
    except (ValueError, ZeroDivisionError) as e:
        raise GroupSpecError(f"Invalid scalar '{text}': {e}") from e


def format_scalar(a: Scalar) -> str:
    return repr(a)
