"""
Tarskian evaluation of formulas over finite group handles.

Formulas are compiled once into nested closures over an environment list;
small groups evaluate through their Cayley table, larger ones through the
handle's own arithmetic. Quantifiers range over the group in enumeration
order, so witnesses and counterexamples are the first ones found.
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from ..errors import BudgetExceeded, InputError
from ..groups.handles import GElem, GroupHandle
from ..groups.ops import cayley_table
from .ast import And, Eq, Exists, Forall, Formula, Identity, Implies, Inv, Mul, Not, Or, Term, Var, free_variables, quantifier_depth, shadowed_bindings
from .printer import print_formula

logger = logging.getLogger(__name__)

DEFAULT_EVAL_BUDGET = 10**8

# larger groups evaluate through the handle instead of a materialized table
TABLED_ORDER_LIMIT = 1024

Env = List
Compiled = Callable[[Env], bool]


@dataclass
class EvalResult:
    value: bool
    witness: Optional[Dict[str, str]] = None
    counterexample: Optional[Dict[str, str]] = None
    elapsed: float = 0.0

    def to_dict(self, sentence: str, group: str) -> dict:
        record = {"sentence": sentence, "group": group, "value": self.value, "elapsed": round(self.elapsed, 6)}
        if self.witness is not None:
            record["witness"] = self.witness
        if self.counterexample is not None:
            record["counterexample"] = self.counterexample
        return record


class _Domain:
    """Element arithmetic in the representation the compiled closures use."""

    def __init__(self, G: GroupHandle):
        self.G = G
        if G.order <= TABLED_ORDER_LIMIT:
            table = cayley_table(G)
            rows = table.mul.tolist()
            inverses = table.inv.tolist()
            self.values = list(range(len(table)))
            self.identity = 0
            self.mul = lambda a, b: rows[a][b]
            self.inv = inverses.__getitem__
            self.encode = table.index.__getitem__
            self.decode = table.elements.__getitem__
        else:
            self.values = list(G.elements())
            self.identity = G.identity()
            self.mul = G.op
            self.inv = G.inv
            self.encode = lambda x: x
            self.decode = lambda x: x


class _Compiler:
    def __init__(self, domain: _Domain):
        self.domain = domain
        self.slots = 0

    def new_slot(self) -> int:
        self.slots += 1
        return self.slots - 1

    def term(self, t: Term, scope: Dict[str, int]) -> Callable[[Env], object]:
        d = self.domain
        if isinstance(t, Var):
            slot = scope[t.name]
            return lambda env: env[slot]
        if isinstance(t, Identity):
            e = d.identity
            return lambda env: e
        if isinstance(t, Mul):
            left, right = self.term(t.left, scope), self.term(t.right, scope)
            mul = d.mul
            return lambda env: mul(left(env), right(env))
        if isinstance(t, Inv):
            inner, inv = self.term(t.inner, scope), d.inv
            return lambda env: inv(inner(env))
        raise TypeError(f"Not a term: {t!r}")

    def formula(self, f: Formula, scope: Dict[str, int]) -> Compiled:
        if isinstance(f, Eq):
            left, right = self.term(f.left, scope), self.term(f.right, scope)
            return lambda env: left(env) == right(env)
        if isinstance(f, Not):
            body = self.formula(f.body, scope)
            return lambda env: not body(env)
        if isinstance(f, And):
            left, right = self.formula(f.left, scope), self.formula(f.right, scope)
            return lambda env: left(env) and right(env)
        if isinstance(f, Or):
            left, right = self.formula(f.left, scope), self.formula(f.right, scope)
            return lambda env: left(env) or right(env)
        if isinstance(f, Implies):
            left, right = self.formula(f.left, scope), self.formula(f.right, scope)
            return lambda env: (not left(env)) or right(env)
        if isinstance(f, (Forall, Exists)):
            slot, body = self.quantifier(f, scope)
            values = self.domain.values
            if isinstance(f, Forall):
                def forall(env):
                    for x in values:
                        env[slot] = x
                        if not body(env):
                            return False
                    return True
                return forall

            def exists(env):
                for x in values:
                    env[slot] = x
                    if body(env):
                        return True
                return False
            return exists
        raise TypeError(f"Not a formula: {f!r}")

    def quantifier(self, f, scope: Dict[str, int]) -> Tuple[int, Compiled]:
        slot = self.new_slot()
        inner = dict(scope)
        inner[f.var] = slot
        return slot, self.formula(f.body, inner)


def evaluation_cost(G: GroupHandle, f: Formula) -> int:
    """Worst-case number of innermost evaluations, |G|^depth."""
    return G.order ** quantifier_depth(f)


def evaluate(
    G: GroupHandle,
    f: Formula,
    assignment: Optional[Dict[str, GElem]] = None,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> EvalResult:
    """
    Truth value of f in G.

    Args:
        G: Finite group handle
        f: Formula whose free variables are all assigned
        assignment: Values of free variables (elements or their text form)
        budget: Refuse when |G|^(quantifier depth) exceeds this

    Returns:
        EvalResult; a true leading Exists block yields a witness, a false
        leading Forall block yields a counterexample

    Raises:
        BudgetExceeded: If the cost estimate exceeds `budget`
        InputError: If a free variable is unassigned
    """
    assignment = dict(assignment or {})
    missing = free_variables(f) - set(assignment)
    if missing:
        raise InputError(f"Free variables {sorted(missing)} have no assigned value")
    cost = evaluation_cost(G, f)
    if cost > budget:
        raise BudgetExceeded(
            f"Evaluating a depth-{quantifier_depth(f)} formula over {G.spec} costs up to {cost} steps",
            estimate=cost,
            budget=budget,
        )
    shadowed = shadowed_bindings(f)
    if shadowed:
        logger.warning(f"Formula rebinds variables already in scope: {sorted(set(shadowed))}")

    started = time.perf_counter()
    domain = _Domain(G)
    compiler = _Compiler(domain)
    scope = {}
    for name in sorted(assignment):
        scope[name] = compiler.new_slot()

    # the leading block of like quantifiers is compiled separately for witnesses
    kind = type(f) if isinstance(f, (Forall, Exists)) else None
    block: List[Tuple[str, int]] = []
    core = f
    inner_scope = dict(scope)
    while kind is not None and isinstance(core, kind):
        slot = compiler.new_slot()
        inner_scope = dict(inner_scope)
        inner_scope[core.var] = slot
        block.append((core.var, slot))
        core = core.body
    body = compiler.formula(core, inner_scope)

    env: Env = [None] * compiler.slots
    for name in assignment:
        value = assignment[name]
        if isinstance(value, str):
            value = G.parse(value)
        env[scope[name]] = domain.encode(value)

    found = _search_block(domain.values, block, body, env, want=(kind is not Forall))
    if kind is Exists:
        result = EvalResult(found is not None)
        if found is not None:
            result.witness = _describe(G, domain, block, found)
    elif kind is Forall:
        result = EvalResult(found is None)
        if found is not None:
            result.counterexample = _describe(G, domain, block, found)
    else:
        result = EvalResult(bool(body(env)))
    result.elapsed = time.perf_counter() - started
    logger.debug(f"{print_formula(f)[:80]} over {G.spec}: {result.value}")
    return result


def _search_block(values, block, body, env, want: bool) -> Optional[list]:
    """First assignment of the block variables (lexicographic) with body == want."""
    if not block:
        return [] if body(env) == want else None
    slots = [slot for _, slot in block]

    def recurse(i: int) -> Optional[list]:
        if i == len(slots):
            return [] if body(env) == want else None
        for x in values:
            env[slots[i]] = x
            rest = recurse(i + 1)
            if rest is not None:
                return [x] + rest
        return None

    return recurse(0)


def _describe(G: GroupHandle, domain: _Domain, block, values) -> Dict[str, str]:
    described = {}
    for (name, _), value in zip(block, values):
        described[name] = G.format(domain.decode(value))
    return described
