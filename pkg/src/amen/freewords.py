"""
Relation search among reduced words in two SL2(GF(2)(t)) matrices.

Every reduced word over a, a^-1, b, b^-1 up to a maximal length is
evaluated exactly by depth-first extension of prefix products. The default
pair is a = diag(t, 1/t) and b = P a P^-1 with P = [[t+1, 1], [t, 1]]:
two hyperbolic elements with disjoint axes. The unipotent pair
[[1,t],[0,1]], [[1,0],[t,1]] is kept as a control; both are involutions in
characteristic 2, so "aa" is already a relation there.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..errors import InputError
from ..fields.ratfunc import MINUS_INFINITY, RF2
from ..matgrp.mat2 import Mat2, identity
from ..utils.logging import ProgressLogger

logger = logging.getLogger(__name__)

LETTERS = ("a", "A", "b", "B")
INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}
GENERATOR_SETS = ("hyperbolic", "unipotent")


def hyperbolic_pair() -> Tuple[Mat2, Mat2]:
    t = RF2.t()
    one, zero = RF2.one(), RF2.zero()
    a = Mat2(t, zero, zero, t.inverse())
    p = Mat2(t + one, one, t, one)
    return a, p * a * p.inverse()


def unipotent_pair() -> Tuple[Mat2, Mat2]:
    t = RF2.t()
    one, zero = RF2.one(), RF2.zero()
    return Mat2(one, t, zero, one), Mat2(one, zero, t, one)


def generator_pair(name: str) -> Tuple[Mat2, Mat2]:
    if name == "hyperbolic":
        return hyperbolic_pair()
    if name == "unipotent":
        return unipotent_pair()
    raise InputError(f"Unknown generator set '{name}' (expected one of {', '.join(GENERATOR_SETS)})")


def entry_degree(m: Mat2):
    return max(x.degree() for x in m.entries())


@dataclass
class FreeWordReport:
    a: Mat2
    b: Mat2
    max_length: int
    words_checked: int = 0
    counts: Dict[int, int] = field(default_factory=dict)
    max_degree: Dict[int, float] = field(default_factory=dict)
    relations: List[str] = field(default_factory=list)

    @property
    def relation_free(self) -> bool:
        return not self.relations

    @property
    def verdict(self) -> str:
        if self.relation_free:
            return f"no relations up to length {self.max_length}"
        return f"{len(self.relations)} relations up to length {self.max_length}"

    def to_dict(self) -> dict:
        def degree(d):
            return None if d == MINUS_INFINITY else d

        return {
            "a": repr(self.a),
            "b": repr(self.b),
            "max_length": self.max_length,
            "words_checked": self.words_checked,
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "max_degree": {str(k): degree(v) for k, v in sorted(self.max_degree.items())},
            "relations": self.relations,
            "verdict": self.verdict,
        }


def reduced_word_count(length: int) -> int:
    """4 * 3^(length-1) reduced words of exactly `length` letters."""
    return 4 * 3 ** (length - 1) if length >= 1 else 1


def free_words_check(a: Mat2 = None, b: Mat2 = None, max_len: int = 8) -> FreeWordReport:
    """
    Evaluate every nontrivial reduced word of length <= max_len.

    Args:
        a: First generator over GF(2)(t) (default: hyperbolic pair)
        b: Second generator
        max_len: Longest word length

    Returns:
        FreeWordReport with per-length counts, maximal entry degrees and
        every word that evaluates to the identity

    Raises:
        InputError: If a generator is not over rf2 or max_len < 1
    """
    if a is None or b is None:
        a, b = hyperbolic_pair()
    if a.field != RF2 or b.field != RF2:
        raise InputError("Free word generators must be matrices over rf2")
    if max_len < 1:
        raise InputError(f"Word length must be positive, got {max_len}")

    values = {"a": a, "A": a.inverse(), "b": b, "B": b.inverse()}
    report = FreeWordReport(a, b, max_len)
    total = sum(reduced_word_count(k) for k in range(1, max_len + 1))
    progress = ProgressLogger(logger, total, "Reduced word evaluation", min_total=10_000)

    # stack of (word, value); words grow by one letter that does not cancel the last
    stack = [(letter, values[letter]) for letter in reversed(LETTERS)]
    while stack:
        word, value = stack.pop()
        length = len(word)
        report.words_checked += 1
        report.counts[length] = report.counts.get(length, 0) + 1
        degree = entry_degree(value)
        report.max_degree[length] = max(report.max_degree.get(length, MINUS_INFINITY), degree)
        if value.is_identity():
            report.relations.append(word)
            logger.info(f"Relation found: {word} = 1")
        progress.update()
        if length < max_len:
            for letter in reversed(LETTERS):
                if letter != INVERSE[word[-1]]:
                    stack.append((word + letter, value * values[letter]))

    logger.info(f"Checked {report.words_checked} reduced words: {report.verdict}")
    return report


def evaluate_word(word: str, a: Mat2, b: Mat2) -> Mat2:
    """Value of a word over a, A = a^-1, b, B = b^-1 ("" is the identity)."""
    values = {"a": a, "A": a.inverse(), "b": b, "B": b.inverse()}
    result = identity(RF2)
    for letter in word:
        if letter not in values:
            raise InputError(f"Unknown letter '{letter}' in word '{word}'")
        result = result * values[letter]
    return result
