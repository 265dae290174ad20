"""
Terms and formulas of the first-order language of groups.

Nodes are frozen dataclasses, so structural equality and hashing come for
free and formulas can be shared between builders.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Tuple, Union


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("Variable names must be nonempty")


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Inv:
    inner: "Term"


Term = Union[Var, Identity, Mul, Inv]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Eq, Not, And, Or, Implies, Forall, Exists]

TRUE = Eq(Identity(), Identity())
FALSE = Not(TRUE)


def _balanced(parts: List[Formula], node) -> Formula:
    if len(parts) == 1:
        return parts[0]
    mid = len(parts) // 2
    return node(_balanced(parts[:mid], node), _balanced(parts[mid:], node))


def conj(parts: List[Formula]) -> Formula:
    """Balanced conjunction (nesting depth log2 of the length); the empty conjunction is e = e."""
    if not parts:
        return TRUE
    return _balanced(list(parts), And)


def disj(parts: List[Formula]) -> Formula:
    """Balanced disjunction; the empty disjunction is !(e = e)."""
    if not parts:
        return FALSE
    return _balanced(list(parts), Or)


def term_variables(t: Term) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, Mul):
        return term_variables(t.left) | term_variables(t.right)
    if isinstance(t, Inv):
        return term_variables(t.inner)
    return frozenset()


def free_variables(f: Formula) -> FrozenSet[str]:
    if isinstance(f, Eq):
        return term_variables(f.left) | term_variables(f.right)
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_variables(f.left) | free_variables(f.right)
    return free_variables(f.body) - {f.var}


def is_sentence(f: Formula) -> bool:
    return not free_variables(f)


def shadowed_bindings(f: Formula, bound: Tuple[str, ...] = ()) -> List[str]:
    """Quantified variables that rebind a variable already in scope."""
    if isinstance(f, Eq):
        return []
    if isinstance(f, Not):
        return shadowed_bindings(f.body, bound)
    if isinstance(f, (And, Or, Implies)):
        return shadowed_bindings(f.left, bound) + shadowed_bindings(f.right, bound)
    found = [f.var] if f.var in bound else []
    return found + shadowed_bindings(f.body, bound + (f.var,))


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, Eq):
        return 0
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, (And, Or, Implies)):
        return max(quantifier_depth(f.left), quantifier_depth(f.right))
    return 1 + quantifier_depth(f.body)


def _term_size(t: Term) -> int:
    if isinstance(t, Mul):
        return 1 + _term_size(t.left) + _term_size(t.right)
    if isinstance(t, Inv):
        return 1 + _term_size(t.inner)
    return 1


def formula_size(f: Formula) -> int:
    """Number of AST nodes, terms included."""
    if isinstance(f, Eq):
        return 1 + _term_size(f.left) + _term_size(f.right)
    if isinstance(f, Not):
        return 1 + formula_size(f.body)
    if isinstance(f, (And, Or, Implies)):
        return 1 + formula_size(f.left) + formula_size(f.right)
    return 1 + formula_size(f.body)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, (And, Or, Implies)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Forall, Exists)):
        yield from subformulas(f.body)
