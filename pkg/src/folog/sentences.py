"""
Builders for fixed first-order sentences about groups.

The Følner sentences say: for every S with |S| <= n there are pairwise
distinct t_1..t_k, n <= k <= m, such that each s in S sends all but r of
the t_j back into {t_1..t_k}, where r is the largest count keeping the
defect 2r/k below 1/n (or at most 1/n). "Sends back" is a disjunction of
equalities, "all but r" a disjunction over the r-subsets that may escape.
"""

import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import List

from ..amen.folner import Mode
from ..amen.search import max_moved
from ..errors import ConfigError, TooLarge
from .ast import And, Eq, Exists, Forall, Formula, Identity, Implies, Inv, Mul, Not, Or, Var, conj, disj

logger = logging.getLogger(__name__)

DEFAULT_NODE_CAP = 10**6


def _neq(left, right) -> Formula:
    return Not(Eq(left, right))


def commutativity_sentence() -> Formula:
    """A x. A y. x*y = y*x"""
    x, y = Var("x"), Var("y")
    return Forall("x", Forall("y", Eq(Mul(x, y), Mul(y, x))))


def involution_sentence() -> Formula:
    """E x. !(x = e) & x*x = e"""
    x = Var("x")
    return Exists("x", And(_neq(x, Identity()), Eq(Mul(x, x), Identity())))


def ct_sentence() -> Formula:
    """Commutative transitivity: commuting is transitive through nontrivial elements."""
    x, y, z = Var("x"), Var("y"), Var("z")
    premise = conj([
        _neq(y, Identity()),
        Eq(Mul(x, y), Mul(y, x)),
        Eq(Mul(y, z), Mul(z, y)),
    ])
    return Forall("x", Forall("y", Forall("z", Implies(premise, Eq(Mul(x, z), Mul(z, x))))))


def center_trivial_sentence() -> Formula:
    """A x. (A y. x*y = y*x) -> x = e"""
    x, y = Var("x"), Var("y")
    return Forall("x", Implies(Forall("y", Eq(Mul(x, y), Mul(y, x))), Eq(x, Identity())))


NAMED_SENTENCES = {
    "commutativity": commutativity_sentence,
    "involution": involution_sentence,
    "ct": ct_sentence,
    "center_trivial": center_trivial_sentence,
}


def _acted(mode: Mode, s: Var, t: Var):
    if mode is Mode.TRANSLATION:
        return Mul(s, t)
    return Mul(Mul(s, t), Inv(s))


def _escape_limit(n: int, k: int, strict: bool) -> int:
    return max_moved(k, Fraction(1, n), strict)


def folner_sentence_size(
    n: int, m: int, mode: Mode, exclude_identity: bool = False, strict: bool = True, prenex: bool = False
) -> int:
    """Node count of folner_sentence(...) without building it."""
    eq = 5 if mode is Mode.TRANSLATION else 8
    total = 0
    for k in range(n, m + 1):
        r = _escape_limit(n, k, strict)
        inside = k * eq + (k - 1)
        ways = math.comb(k, r)
        cond = ways * ((k - r) * inside + (k - r - 1)) + (ways - 1)
        parts = math.comb(k, 2) + (k if exclude_identity else 0) + n
        body = 4 * math.comb(k, 2) + (4 * k if exclude_identity else 0) + n * cond + (parts - 1)
        total += body if prenex else body + k
    total += (m - n)
    return total + n + (m if prenex else 0)


def folner_sentence(
    n: int,
    m: int,
    mode: Mode = Mode.CONJUGATION,
    exclude_identity: bool = False,
    strict: bool = True,
    prenex: bool = False,
    cap: int = DEFAULT_NODE_CAP,
) -> Formula:
    """
    Sentence stating that every S with |S| <= n has a Følner witness
    of size between n and m with defect < 1/n (<= 1/n when not strict).

    Args:
        n: Bound on |S| and lower bound on |T|
        m: Upper bound on |T|
        mode: Translation or conjugation
        exclude_identity: Add t_j != e for every j
        strict: Strict defect inequality
        prenex: Quantify t_1..t_m once in front of the disjunction over sizes
            instead of one existential block per size
        cap: Maximal number of AST nodes

    Raises:
        ConfigError: If not 1 <= n <= m
        TooLarge: If the sentence would exceed `cap` nodes
    """
    if n < 1 or m < n:
        raise ConfigError(f"Følner sentence needs 1 <= n <= m, got n={n}, m={m}")
    size = folner_sentence_size(n, m, mode, exclude_identity, strict, prenex)
    if size > cap:
        raise TooLarge(
            f"Følner sentence for n={n}, m={m} has {size} nodes, cap is {cap}",
            estimate=size,
            budget=cap,
        )

    s_vars = [Var(f"s{i}") for i in range(1, n + 1)]
    disjuncts = []
    for k in range(n, m + 1):
        t_vars = [Var(f"t{j}") for j in range(1, k + 1)]
        r = _escape_limit(n, k, strict)
        parts: List[Formula] = [_neq(a, b) for a, b in combinations(t_vars, 2)]
        if exclude_identity:
            parts.extend(_neq(t, Identity()) for t in t_vars)
        for s in s_vars:
            stays = [disj([Eq(_acted(mode, s, t), u) for u in t_vars]) for t in t_vars]
            parts.append(disj([
                conj([stays[j] for j in range(k) if j not in escaped])
                for escaped in map(set, combinations(range(k), r))
            ]))
        body = conj(parts)
        if not prenex:
            for t in reversed(t_vars):
                body = Exists(t.name, body)
        disjuncts.append(body)

    result = disj(disjuncts)
    if prenex:
        for j in range(m, 0, -1):
            result = Exists(f"t{j}", result)
    for s in reversed(s_vars):
        result = Forall(s.name, result)
    logger.debug(f"Built Følner sentence n={n}, m={m}, {mode.value}: {size} nodes")
    return result
