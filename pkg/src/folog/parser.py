"""
Recursive-descent parser for first-order group sentences.

Grammar (precedence ! > & > | > ->, '->' right associative, quantifiers
extend as far right as possible):

    formula  := quant | implies
    quant    := ('A' | 'E') var '.' formula
    implies  := or ('->' formula)?
    or       := and ('|' and)*
    and      := unary ('&' unary)*
    unary    := '!' unary | quant | atom
    atom     := term ('=' | '!=') term | '(' formula ')'
    term     := factor (('*' | '·')? factor)*
    factor   := primary ('^-1')*
    primary  := var | 'e' | '(' term ')'

Variables match [a-z][a-z0-9_]* except the reserved 'e'.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..errors import FormulaSyntaxError
from .ast import And, Eq, Exists, Forall, Formula, Identity, Implies, Inv, Mul, Not, Or, Term, Var

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<inv>\^\s*-\s*1)"
    r"|(?P<arrow>->)"
    r"|(?P<neq>!=)"
    r"|(?P<op>[()=!&|.*·])"
    r"|(?P<quant>[AE])(?![A-Za-z0-9_])"
    r"|(?P<ident>[a-z][a-z0-9_]*)"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


class _Backtrack(Exception):
    pass


def tokenize(text: str) -> List[Token]:
    """
    Split text into tokens with 1-based line/column positions.

    Raises:
        FormulaSyntaxError: On a character outside the grammar
    """
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise FormulaSyntaxError(
                f"Unexpected character '{text[pos]}'", line, pos - line_start + 1, "a token"
            )
        kind = match.lastgroup
        chunk = match.group(0)
        if kind != "ws":
            if kind == "op":
                kind = chunk
            elif kind == "ident" and chunk == "e":
                kind = "e"
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = match.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _check_parentheses(tokens: List[Token]) -> None:
    stack = []
    for tok in tokens:
        if tok.kind == "(":
            stack.append(tok)
        elif tok.kind == ")":
            if not stack:
                raise FormulaSyntaxError("Unmatched ')'", tok.line, tok.column, "no ')'")
            stack.pop()
    if stack:
        tok = stack[-1]
        raise FormulaSyntaxError("Unclosed '('", tok.line, tok.column, "')'")


class Parser:
    """One-shot parser over a token list."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self._furthest: Tuple[int, List[str]] = (-1, [])

    def parse(self) -> Formula:
        _check_parentheses(self.tokens)
        try:
            result = self.formula()
            if self.peek().kind != "eof":
                self.fail("end of input")
            return result
        except _Backtrack:
            pos, expected = self._furthest
            tok = self.tokens[pos]
            found = "end of input" if tok.kind == "eof" else f"'{tok.text}'"
            wanted = " or ".join(sorted(set(expected)))
            raise FormulaSyntaxError(
                f"Expected {wanted}, found {found}", tok.line, tok.column, wanted
            ) from None

    # -- token helpers ------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected: str):
        if self.pos > self._furthest[0]:
            self._furthest = (self.pos, [expected])
        elif self.pos == self._furthest[0]:
            self._furthest[1].append(expected)
        raise _Backtrack()

    def accept(self, kind: str) -> Optional[Token]:
        tok = self.peek()
        if tok.kind == kind:
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str, description: str) -> Token:
        tok = self.accept(kind)
        if tok is None:
            self.fail(description)
        return tok

    # -- formulas -----------------------------------------------------------

    def formula(self) -> Formula:
        if self.peek().kind == "quant":
            return self.quantified()
        return self.implication()

    def quantified(self) -> Formula:
        quant = self.expect("quant", "'A' or 'E'")
        var = self.expect("ident", "a variable")
        self.expect(".", "'.'")
        body = self.formula()
        return Forall(var.text, body) if quant.text == "A" else Exists(var.text, body)

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.accept("arrow"):
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        result = self.conjunction()
        while self.accept("|"):
            result = Or(result, self.conjunction())
        return result

    def conjunction(self) -> Formula:
        result = self.unary()
        while self.accept("&"):
            result = And(result, self.unary())
        return result

    def unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.unary())
        if self.peek().kind == "quant":
            return self.quantified()
        return self.atom()

    def atom(self) -> Formula:
        start = self.pos
        try:
            return self.equation()
        except _Backtrack:
            self.pos = start
        if self.accept("("):
            inner = self.formula()
            self.expect(")", "')'")
            return inner
        return self.equation()

    def equation(self) -> Formula:
        left = self.term()
        if self.accept("neq"):
            return Not(Eq(left, self.term()))
        self.expect("=", "'='")
        return Eq(left, self.term())

    # -- terms --------------------------------------------------------------

    def term(self) -> Term:
        result = self.factor()
        while True:
            if self.accept("*") or self.accept("·"):
                result = Mul(result, self.factor())
            elif self.peek().kind in ("ident", "e", "("):
                start = self.pos
                try:
                    result = Mul(result, self.factor())
                except _Backtrack:
                    self.pos = start
                    return result
            else:
                return result

    def factor(self) -> Term:
        result = self.primary()
        while self.accept("inv"):
            result = Inv(result)
        return result

    def primary(self) -> Term:
        tok = self.peek()
        if self.accept("ident"):
            return Var(tok.text)
        if self.accept("e"):
            return Identity()
        if self.accept("("):
            inner = self.term()
            self.expect(")", "')'")
            return inner
        self.fail("a term")


def parse(text: str) -> Formula:
    """
    Parse one formula.

    Raises:
        FormulaSyntaxError: With the line and column of the first token that
            no alternative could consume
    """
    return Parser(text).parse()


def parse_sentence_file(text: str) -> List[Tuple[int, Formula]]:
    """
    Parse a sentence file: one sentence per line, '#' starts a comment.

    Returns:
        (line number, formula) pairs

    Raises:
        FormulaSyntaxError: Positions refer to lines of the whole file
    """
    sentences = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        try:
            sentences.append((number, parse(line)))
        except FormulaSyntaxError as e:
            raise FormulaSyntaxError(str(e).rsplit(" at line", 1)[0], number, e.column, e.expected) from None
    return sentences
