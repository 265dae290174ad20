"""First-order sentences: parsing, printing, evaluation, Følner sentences."""

import pytest
from hypothesis import given, strategies as st

from src.amen.folner import Mode
from src.amen.search import bound_holds
from src.errors import BudgetExceeded, ConfigError, FormulaSyntaxError, InputError, TooLarge
from src.fields.gf2k import gf2k
from src.folog.ast import (
    And,
    Eq,
    Exists,
    Forall,
    Identity,
    Implies,
    Inv,
    Mul,
    Not,
    Or,
    Var,
    formula_size,
    free_variables,
    is_sentence,
    quantifier_depth,
)
from src.folog.evaluator import evaluate, evaluation_cost
from src.folog.parser import parse, parse_sentence_file
from src.folog.printer import print_formula
from src.folog.sentences import (
    center_trivial_sentence,
    commutativity_sentence,
    ct_sentence,
    folner_sentence,
    folner_sentence_size,
    involution_sentence,
)
from src.groups.handles import CyclicGroup, Sl2Group, SymGroup
from src.matgrp.classes import ct_check

x, y, z, e = Var("x"), Var("y"), Var("z"), Identity()

VARIABLES = ["x", "y", "z"]

terms = st.recursive(
    st.sampled_from([x, y, z, e]),
    lambda inner: st.one_of(
        st.builds(Mul, inner, inner),
        st.builds(Inv, inner),
    ),
    max_leaves=6,
)

formulas = st.recursive(
    st.builds(Eq, terms, terms),
    lambda inner: st.one_of(
        st.builds(Not, inner),
        st.builds(And, inner, inner),
        st.builds(Or, inner, inner),
        st.builds(Implies, inner, inner),
        st.builds(Forall, st.sampled_from(VARIABLES), inner),
        st.builds(Exists, st.sampled_from(VARIABLES), inner),
    ),
    max_leaves=8,
)


# -- parsing -----------------------------------------------------------------

def test_parse_named_sentences():
    assert parse("A x. A y. x*y = y*x") == commutativity_sentence()
    assert parse("E x. !(x = e) & x*x = e") == involution_sentence()
    assert parse("A x. (A y. x y = y x) -> x = e") == center_trivial_sentence()


def test_precedence():
    f = parse("!x = e & y = e | z = e -> x = y")
    assert f == Implies(Or(And(Not(Eq(x, e)), Eq(y, e)), Eq(z, e)), Eq(x, y))


def test_implication_is_right_associative():
    a, b, c = Eq(x, e), Eq(y, e), Eq(z, e)
    assert parse("x = e -> y = e -> z = e") == Implies(a, Implies(b, c))


def test_quantifier_scope_extends_right():
    assert parse("A x. x = e | x = x") == Forall("x", Or(Eq(x, e), Eq(x, x)))


def test_term_syntax():
    assert parse("x^-1 * x = e") == Eq(Mul(Inv(x), x), e)
    assert parse("x ^ - 1 = x") == Eq(Inv(x), x)
    assert parse("x·y = y x") == Eq(Mul(x, y), Mul(y, x))
    assert parse("(x y)^-1 = y^-1 x^-1") == Eq(Inv(Mul(x, y)), Mul(Inv(y), Inv(x)))
    assert parse("x != y") == Not(Eq(x, y))


def test_unclosed_parenthesis_position():
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse("A x. (")
    assert (excinfo.value.line, excinfo.value.column) == (1, 6)


def test_missing_term_position():
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse("x = ")
    assert (excinfo.value.line, excinfo.value.column) == (1, 5)
    assert "a term" in str(excinfo.value)


def test_unexpected_character():
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse("x = y + z")
    assert excinfo.value.column == 7


def test_multiline_positions():
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse("A x.\n  x = = e")
    assert excinfo.value.line == 2


def test_sentence_file():
    text = "# sentences\n\nA x. x = x  # trivially true\nE x. x != e\n"
    sentences = parse_sentence_file(text)
    assert [number for number, _ in sentences] == [3, 4]
    assert sentences[1][1] == Exists("x", Not(Eq(x, e)))


def test_sentence_file_error_line():
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse_sentence_file("A x. x = x\nA y. (\n")
    assert (excinfo.value.line, excinfo.value.column) == (2, 6)


@given(formulas)
def test_print_parse_round_trip(f):
    assert parse(print_formula(f)) == f


def test_printer_output():
    assert print_formula(commutativity_sentence()) == "(A x. (A y. (x * y) = (y * x)))"
    assert print_formula(Not(Eq(x, e))) == "!(x = e)"


def test_free_variables_and_depth():
    f = parse("A x. x * y = z")
    assert free_variables(f) == {"y", "z"}
    assert not is_sentence(f)
    assert quantifier_depth(ct_sentence()) == 3
    assert formula_size(Eq(Mul(x, y), e)) == 5


# -- evaluation --------------------------------------------------------------

def test_commutativity_fails_in_sl2_gf2_with_counterexample(sl2_gf2):
    result = evaluate(sl2_gf2, commutativity_sentence())
    assert result.value is False
    assert set(result.counterexample) == {"x", "y"}
    a = sl2_gf2.parse(result.counterexample["x"])
    b = sl2_gf2.parse(result.counterexample["y"])
    assert a * b != b * a


def test_commutativity_holds_in_cyclic_groups(cyclic6):
    result = evaluate(cyclic6, commutativity_sentence())
    assert result.value is True
    assert result.counterexample is None


def test_involution_witness(sym3):
    result = evaluate(sym3, involution_sentence())
    assert result.value is True
    assert result.witness == {"x": "perm:[1,3,2]"}
    assert evaluate(CyclicGroup(3), involution_sentence()).value is False


def test_center_counterexample(cyclic6, sym3):
    assert evaluate(sym3, center_trivial_sentence()).value is True
    result = evaluate(cyclic6, center_trivial_sentence())
    assert result.value is False
    assert result.counterexample == {"x": "int:1"}


@pytest.mark.parametrize("k", [1, 2])
def test_ct_sentence_agrees_with_structural_check(k):
    G = Sl2Group(gf2k(k))
    assert evaluate(G, ct_sentence()).value is ct_check(k).holds is True


def test_ct_sentence_fails_over_gf3():
    from src.fields.primefield import gfp

    assert evaluate(Sl2Group(gfp(3)), ct_sentence()).value is False


def test_free_variables_need_values(sym3):
    f = parse("x * x = e")
    with pytest.raises(InputError):
        evaluate(sym3, f)
    assert evaluate(sym3, f, {"x": "(1 2)"}).value is True
    assert evaluate(sym3, f, {"x": sym3.parse("(1 2 3)")}).value is False


def test_evaluation_budget(sym4):
    f = folner_sentence(2, 3, Mode.CONJUGATION)
    assert evaluation_cost(sym4, f) == 24 ** 5
    with pytest.raises(BudgetExceeded):
        evaluate(sym4, f, budget=1000)


def test_large_groups_use_handle_arithmetic():
    G = Sl2Group(gf2k(4))
    assert evaluate(G, parse("A x. x * e = x")).value is True
    result = evaluate(G, involution_sentence())
    assert result.witness == {"x": "[[0,1],[1,0]]@gf2_4"}


def test_result_record(sym3):
    record = evaluate(sym3, involution_sentence()).to_dict("involution", sym3.spec)
    assert record["value"] is True
    assert record["group"] == "sym:3"
    assert record["witness"] == {"x": "perm:[1,3,2]"}
    assert "counterexample" not in record


# -- Følner sentences --------------------------------------------------------

def test_folner_sentence_shape():
    f = folner_sentence(1, 2, Mode.TRANSLATION)
    assert is_sentence(f)
    assert isinstance(f, Forall) and f.var == "s1"
    assert quantifier_depth(f) == 3
    assert quantifier_depth(folner_sentence(1, 2, Mode.TRANSLATION, prenex=True)) == 3


def test_folner_sentence_one_one_holds(sym3, sl2_gf2, cyclic6):
    f = folner_sentence(1, 1)
    for G in (sym3, sl2_gf2, cyclic6):
        assert evaluate(G, f).value is True


@pytest.mark.parametrize("mode", list(Mode), ids=lambda m: m.value)
@pytest.mark.parametrize("exclude", [False, True])
@pytest.mark.parametrize("prenex", [False, True])
@pytest.mark.parametrize("strict", [True, False])
def test_size_estimate_is_exact(mode, exclude, prenex, strict):
    for n, m in [(1, 1), (1, 3), (2, 2), (2, 4)]:
        f = folner_sentence(n, m, mode, exclude_identity=exclude, strict=strict, prenex=prenex)
        assert formula_size(f) == folner_sentence_size(n, m, mode, exclude, strict, prenex)


def test_folner_sentence_cap():
    with pytest.raises(TooLarge) as excinfo:
        folner_sentence(3, 8, cap=1000)
    assert excinfo.value.estimate == folner_sentence_size(3, 8, Mode.CONJUGATION)
    assert excinfo.value.budget == 1000


@pytest.mark.parametrize("n, m", [(0, 1), (2, 1)])
def test_folner_sentence_bounds(n, m):
    with pytest.raises(ConfigError):
        folner_sentence(n, m)


BOUNDS = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)]


@pytest.mark.parametrize("group", [SymGroup(3), Sl2Group(gf2k(1)), CyclicGroup(4)], ids=lambda G: G.spec)
@pytest.mark.parametrize("mode", list(Mode), ids=lambda m: m.value)
@pytest.mark.parametrize("n, m", BOUNDS)
def test_sentence_agrees_with_exhaustive_bound_check(group, mode, n, m):
    for strict in (True, False):
        for exclude in (False, True):
            expected = bound_holds(group, n, m, mode, exclude_identity=exclude, strict=strict)
            f = folner_sentence(n, m, mode, exclude_identity=exclude, strict=strict)
            assert evaluate(group, f).value is expected
            prenex = folner_sentence(n, m, mode, exclude_identity=exclude, strict=strict, prenex=True)
            assert evaluate(group, prenex).value is expected


@pytest.mark.slow
@pytest.mark.parametrize("mode", list(Mode), ids=lambda m: m.value)
@pytest.mark.parametrize("n, m", [(1, 2), (2, 3)])
def test_sentence_agrees_with_bound_check_on_sym4(sym4, mode, n, m):
    expected = bound_holds(sym4, n, m, mode)
    assert evaluate(sym4, folner_sentence(n, m, mode)).value is expected
