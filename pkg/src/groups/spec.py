"""
Group and family spec strings.

    sl2:gf2_<k> | sl2:gfp_<p> | sym:<n> | cyclic:<n> | prod(<spec>,<spec>)

Families are comma separated specs, where "sym:2..5", "cyclic:2..4" and
"sl2:gf2_1..3" expand to consecutive stages.
"""

import re
from typing import List

from ..errors import GroupSpecError
from ..fields.scalars import field_from_tag
from .handles import CyclicGroup, GroupHandle, ProductGroup, Sl2Group, SymGroup, split_top_level

_SIMPLE = re.compile(r"^(sym|cyclic):(\d+)$")
_RANGE = re.compile(r"^(sym:|cyclic:|sl2:gf2_|sl2:gfp_)(\d+)\.\.(\d+)$")


def parse_group_spec(text: str) -> GroupHandle:
    """
    Build a group handle from its spec.

    Raises:
        GroupSpecError: If the spec is malformed or out of range
    """
    spec = re.sub(r"\s+", "", text)
    if spec.startswith("prod(") and spec.endswith(")"):
        parts = split_top_level(spec[5:-1], ",")
        if len(parts) != 2:
            raise GroupSpecError(f"prod(...) takes exactly two group specs, got '{text}'")
        return ProductGroup(parse_group_spec(parts[0]), parse_group_spec(parts[1]))
    if spec.startswith("sl2:"):
        field = field_from_tag(spec[4:])
        return Sl2Group(field)
    match = _SIMPLE.match(spec)
    if match:
        n = int(match.group(2))
        return SymGroup(n) if match.group(1) == "sym" else CyclicGroup(n)
    raise GroupSpecError(
        f"Unknown group spec '{text}' (expected sl2:gf2_<k>, sl2:gfp_<p>, sym:<n>, cyclic:<n> or prod(A,B))"
    )


def parse_family_spec(text: str) -> List[GroupHandle]:
    """
    Expand a family spec into its ascending list of handles.

    Raises:
        GroupSpecError: If any member is malformed or a range is empty
    """
    spec = re.sub(r"\s+", "", text)
    family: List[GroupHandle] = []
    for part in split_top_level(spec, ","):
        if not part:
            raise GroupSpecError(f"Empty member in family spec '{text}'")
        match = _RANGE.match(part)
        if match:
            prefix, lo, hi = match.group(1), int(match.group(2)), int(match.group(3))
            if lo > hi:
                raise GroupSpecError(f"Empty range '{part}'")
            family.extend(parse_group_spec(f"{prefix}{i}") for i in range(lo, hi + 1))
        else:
            family.append(parse_group_spec(part))
    return family
