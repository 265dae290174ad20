"""
Uniform finite-group handles.

Every handle exposes the same element interface: identity, op, inv,
generators, an enumeration that starts at the identity, a total sort key,
and text formatting/parsing of its elements. Elements are plain hashable
values (Mat2, permutation tuples, ints, pairs), compared by value.
"""

import itertools
import math
import re
from abc import ABC, abstractmethod
from typing import Any, Hashable, Iterator, List, Tuple

from ..errors import GroupSpecError
from ..fields.scalars import Field
from ..matgrp.mat2 import Mat2, enumerate_sl2, identity, parse_matrix, sl2_generators, sl2_order

GElem = Hashable


class GroupHandle(ABC):
    """A finite group given by its arithmetic."""

    kind: str = ""

    @property
    @abstractmethod
    def spec(self) -> str:
        """Group spec string this handle parses from."""

    @property
    @abstractmethod
    def order(self) -> int:
        pass

    @abstractmethod
    def identity(self) -> GElem:
        pass

    @abstractmethod
    def op(self, x: GElem, y: GElem) -> GElem:
        pass

    @abstractmethod
    def inv(self, x: GElem) -> GElem:
        pass

    @abstractmethod
    def generators(self) -> List[GElem]:
        pass

    @abstractmethod
    def elements(self) -> Iterator[GElem]:
        """Every element exactly once, identity first, deterministic order."""

    @abstractmethod
    def key(self, x: GElem) -> Any:
        """Sort key; orders elements totally and deterministically."""

    @abstractmethod
    def format(self, x: GElem) -> str:
        pass

    @abstractmethod
    def parse(self, text: str) -> GElem:
        pass

    def conj(self, g: GElem, t: GElem) -> GElem:
        """g t g^-1."""
        return self.op(self.op(g, t), self.inv(g))

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupHandle) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec})"


class Sl2Group(GroupHandle):
    """SL2 over a finite field level."""

    kind = "sl2"

    def __init__(self, field: Field):
        if field.order is None:
            raise GroupSpecError(f"SL2 over {field.tag} is infinite and has no finite handle")
        self.field = field

    @property
    def spec(self) -> str:
        return f"sl2:{self.field.tag}"

    @property
    def order(self) -> int:
        return sl2_order(self.field)

    def identity(self) -> Mat2:
        return identity(self.field)

    def op(self, x: Mat2, y: Mat2) -> Mat2:
        return x * y

    def inv(self, x: Mat2) -> Mat2:
        return x.inverse()

    def generators(self) -> List[Mat2]:
        return sl2_generators(self.field)

    def elements(self) -> Iterator[Mat2]:
        return enumerate_sl2(self.field)

    def key(self, x: Mat2):
        return x.sort_key()

    def format(self, x: Mat2) -> str:
        return repr(x)

    def parse(self, text: str) -> Mat2:
        text = text.strip()
        if text in ("e", "id", "I"):
            return self.identity()
        return parse_matrix(text, self.field)


Perm = Tuple[int, ...]

_CYCLE = re.compile(r"\(([^()]*)\)")


class SymGroup(GroupHandle):
    """
    The symmetric group on {1..n}.

    Elements are 0-based one-line tuples p with p[i] the image of i;
    (p * q)[i] = p[q[i]], so q acts first. Text uses 1-based points:
    "perm:[2,1,3]" or "cycles:(1 2)".
    """

    kind = "sym"

    def __init__(self, n: int):
        if n < 1:
            raise GroupSpecError(f"Sym(n) needs n >= 1, got {n}")
        self.n = n

    @property
    def spec(self) -> str:
        return f"sym:{self.n}"

    @property
    def order(self) -> int:
        return math.factorial(self.n)

    def identity(self) -> Perm:
        return tuple(range(self.n))

    def op(self, x: Perm, y: Perm) -> Perm:
        return tuple(x[i] for i in y)

    def inv(self, x: Perm) -> Perm:
        result = [0] * self.n
        for i, image in enumerate(x):
            result[image] = i
        return tuple(result)

    def generators(self) -> List[Perm]:
        """The transposition (1 2) and the n-cycle (1 2 ... n)."""
        if self.n == 1:
            return []
        swap = (1, 0) + tuple(range(2, self.n))
        if self.n == 2:
            return [swap]
        cycle = tuple(range(1, self.n)) + (0,)
        return [swap, cycle]

    def elements(self) -> Iterator[Perm]:
        return itertools.permutations(range(self.n))

    def key(self, x: Perm):
        return x

    def format(self, x: Perm) -> str:
        return "perm:[" + ",".join(str(i + 1) for i in x) + "]"

    def cycles(self, x: Perm) -> str:
        """Cycle notation, fixed points omitted; "()" for the identity."""
        seen, parts = set(), []
        for start in range(self.n):
            if start in seen or x[start] == start:
                continue
            cycle, i = [], start
            while i not in seen:
                seen.add(i)
                cycle.append(str(i + 1))
                i = x[i]
            parts.append("(" + " ".join(cycle) + ")")
        return "".join(parts) or "()"

    def parse(self, text: str) -> Perm:
        text = text.strip()
        if text in ("e", "id", "()"):
            return self.identity()
        if text.startswith("perm:") or text.startswith("["):
            body = text[5:] if text.startswith("perm:") else text
            body = body.strip()
            if not (body.startswith("[") and body.endswith("]")):
                raise GroupSpecError(f"Malformed permutation '{text}'")
            try:
                points = [int(v) - 1 for v in body[1:-1].split(",") if v.strip()]
            except ValueError as e:
                raise GroupSpecError(f"Malformed permutation '{text}'") from e
            if sorted(points) != list(range(self.n)):
                raise GroupSpecError(f"'{text}' is not a permutation of 1..{self.n}")
            return tuple(points)
        body = text[7:] if text.startswith("cycles:") else text
        return self._parse_cycles(body, text)

    def _parse_cycles(self, body: str, text: str) -> Perm:
        if _CYCLE.sub("", body).strip():
            raise GroupSpecError(f"Malformed cycle notation '{text}'")
        result = self.identity()
        for match in _CYCLE.finditer(body):
            try:
                points = [int(v) - 1 for v in match.group(1).replace(",", " ").split()]
            except ValueError as e:
                raise GroupSpecError(f"Malformed cycle in '{text}'") from e
            if len(set(points)) != len(points) or any(not 0 <= p < self.n for p in points):
                raise GroupSpecError(f"Cycle {match.group(0)} is not a cycle on 1..{self.n}")
            step = list(range(self.n))
            for a, b in zip(points, points[1:] + points[:1]):
                step[a] = b
            # cycles compose right to left like the product
            result = self.op(result, tuple(step))
        return result


class CyclicGroup(GroupHandle):
    """Z/nZ, written additively as "int:k"."""

    kind = "cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise GroupSpecError(f"Cyclic group needs n >= 1, got {n}")
        self.n = n

    @property
    def spec(self) -> str:
        return f"cyclic:{self.n}"

    @property
    def order(self) -> int:
        return self.n

    def identity(self) -> int:
        return 0

    def op(self, x: int, y: int) -> int:
        return (x + y) % self.n

    def inv(self, x: int) -> int:
        return (-x) % self.n

    def generators(self) -> List[int]:
        return [1] if self.n > 1 else []

    def elements(self) -> Iterator[int]:
        return iter(range(self.n))

    def key(self, x: int):
        return x

    def format(self, x: int) -> str:
        return f"int:{x}"

    def parse(self, text: str) -> int:
        text = text.strip()
        if text in ("e", "id"):
            return 0
        if text.startswith("int:"):
            text = text[4:]
        try:
            return int(text) % self.n
        except ValueError as e:
            raise GroupSpecError(f"Malformed cyclic element '{text}'") from e


def split_top_level(text: str, sep: str) -> List[str]:
    """Split on `sep` outside any (), [] nesting."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


class ProductGroup(GroupHandle):
    """
    Direct product G x H with componentwise arithmetic.

    Lazy: no operation table is built; elements are pairs (g, h) written
    "(g|h)".
    """

    kind = "prod"

    def __init__(self, left: GroupHandle, right: GroupHandle):
        self.left = left
        self.right = right

    @property
    def spec(self) -> str:
        return f"prod({self.left.spec},{self.right.spec})"

    @property
    def order(self) -> int:
        return self.left.order * self.right.order

    def identity(self):
        return (self.left.identity(), self.right.identity())

    def op(self, x, y):
        return (self.left.op(x[0], y[0]), self.right.op(x[1], y[1]))

    def inv(self, x):
        return (self.left.inv(x[0]), self.right.inv(x[1]))

    def generators(self) -> list:
        e_left, e_right = self.left.identity(), self.right.identity()
        return [(g, e_right) for g in self.left.generators()] + [
            (e_left, h) for h in self.right.generators()
        ]

    def elements(self) -> Iterator:
        return itertools.product(self.left.elements(), self.right.elements())

    def key(self, x):
        return (self.left.key(x[0]), self.right.key(x[1]))

    def format(self, x) -> str:
        return f"({self.left.format(x[0])}|{self.right.format(x[1])})"

    def parse(self, text: str):
        text = text.strip()
        if text in ("e", "id"):
            return self.identity()
        if not (text.startswith("(") and text.endswith(")")):
            raise GroupSpecError(f"Product element '{text}' must look like (left|right)")
        parts = split_top_level(text[1:-1], "|")
        if len(parts) != 2:
            raise GroupSpecError(f"Product element '{text}' must have exactly one top-level '|'")
        return (self.left.parse(parts[0]), self.right.parse(parts[1]))
