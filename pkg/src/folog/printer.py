"""
Canonical fully parenthesized rendering of terms and formulas.

Every binary node and quantifier gets its own parentheses, so the output
parses back to the same tree.
"""

from .ast import And, Eq, Exists, Forall, Formula, Identity, Implies, Inv, Mul, Not, Or, Term, Var

_BINARY = {And: "&", Or: "|", Implies: "->"}


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Identity):
        return "e"
    if isinstance(t, Mul):
        return f"({print_term(t.left)} * {print_term(t.right)})"
    if isinstance(t, Inv):
        return f"{print_term(t.inner)}^-1"
    raise TypeError(f"Not a term: {t!r}")


def print_formula(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"{print_term(f.left)} = {print_term(f.right)}"
    if isinstance(f, Not):
        body = print_formula(f.body)
        if isinstance(f.body, (Eq,)):
            body = f"({body})"
        return f"!{body}"
    op = _BINARY.get(type(f))
    if op is not None:
        return f"({print_formula(f.left)} {op} {print_formula(f.right)})"
    if isinstance(f, Forall):
        return f"(A {f.var}. {print_formula(f.body)})"
    if isinstance(f, Exists):
        return f"(E {f.var}. {print_formula(f.body)})"
    raise TypeError(f"Not a formula: {f!r}")
