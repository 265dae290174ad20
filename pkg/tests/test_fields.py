"""Field arithmetic: GF(2^k), towers, GF(p) and GF(2)(t)."""

import pytest
from hypothesis import given, strategies as st

from src.errors import DivisionByZero, GroupSpecError, LevelMismatch, NonDividingDegree, NotInTower
from src.fields import poly
from src.fields.gf2k import Gf2kField, gf2k
from src.fields.primefield import gfp
from src.fields.ratfunc import MINUS_INFINITY, RF2, RatFunc
from src.fields.scalars import field_from_tag, format_scalar, parse_scalar
from src.fields.tower import FieldTower, embed, find_root_in_extension, get_tower


@st.composite
def field_and_values(draw, count=2):
    k = draw(st.integers(min_value=1, max_value=10))
    field = gf2k(k)
    values = [draw(st.integers(min_value=0, max_value=field.order - 1)) for _ in range(count)]
    return field, [field(v) for v in values]


# -- polynomials over GF(2) ---------------------------------------------------

def test_irreducibility():
    assert poly.is_irreducible(0b111)
    assert not poly.is_irreducible(0b101)  # (x + 1)^2
    assert poly.least_irreducible(2) == 0b111
    assert poly.least_irreducible(3) == 0b1011
    assert poly.least_irreducible(8) == 0x11B


def test_hex_and_pretty():
    assert poly.to_hex(0b1011) == "b"
    assert poly.from_hex("b") == 0b1011
    assert poly.pretty(0b1011) == "x^3 + x + 1"
    assert poly.pretty(0) == "0"


# -- GF(2^k) -----------------------------------------------------------------

def test_gf4_multiplication():
    F = gf2k(2)
    x = F.generator()
    assert (x * x).value == 0b11
    assert (x * (x + F.one())).is_one()
    assert x.inverse() == x + F.one()


def test_degree_out_of_range():
    with pytest.raises(ValueError):
        Gf2kField(17)
    with pytest.raises(ValueError):
        Gf2kField(2, modulus=0b101)


@given(field_and_values(count=3))
def test_gf2k_ring_axioms(data):
    F, (a, b, c) = data
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + a == F.zero()


@given(field_and_values(count=1))
def test_gf2k_inverse_and_roots(data):
    F, (a,) = data
    if not a.is_zero():
        assert (a * a.inverse()).is_one()
    assert a.sqrt().frobenius() == a
    assert a.trace() in (0, 1)


@pytest.mark.parametrize(
    "k", [1, 2, 3, 4, 5, 6, pytest.param(7, marks=pytest.mark.slow), pytest.param(8, marks=pytest.mark.slow)]
)
def test_frobenius_has_order_k_on_every_element(k):
    F = gf2k(k)
    for a in F.elements():
        assert a ** (1 << k) == a
        b = a
        for _ in range(k):
            b = b.frobenius()
        assert b == a


@given(field_and_values(count=2))
def test_frobenius_is_additive(data):
    _, (a, b) = data
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()


@given(field_and_values(count=2))
def test_solve_quadratic(data):
    F, (b, c) = data
    z = F.solve_quadratic(b, c)
    if z is not None:
        assert (z * z + b * z + c).is_zero()
    elif not b.is_zero():
        # z^2 + bz + c has a root iff Tr(c/b^2) = 0
        assert (c / (b * b)).trace() == 1


def test_zero_has_no_inverse():
    with pytest.raises(DivisionByZero):
        gf2k(3).zero() ** -1


def test_mixed_levels_are_refused():
    with pytest.raises(LevelMismatch):
        gf2k(2).one() + gf2k(4).one()


# -- towers ------------------------------------------------------------------

def test_tower_generator_image_is_a_root():
    tower = get_tower((1, 2, 4, 8))
    g = tower.generator_image(2, 4)
    one = g.one()
    assert (g * g + g + one).is_zero()
    g8 = tower.generator_image(2, 8)
    assert (g8 * g8 + g8 + g8.one()).is_zero()


@given(st.integers(0, 3), st.integers(0, 3))
def test_embedding_is_a_homomorphism(u, v):
    tower = get_tower((1, 2, 4, 8))
    F = gf2k(2)
    a, b = F(u), F(v)
    for target in (4, 8):
        assert tower.embed(a * b, target) == tower.embed(a, target) * tower.embed(b, target)
        assert tower.embed(a + b, target) == tower.embed(a, target) + tower.embed(b, target)


def test_embeddings_compose():
    tower = get_tower((1, 2, 4, 8))
    F = gf2k(2)
    for a in F.elements():
        assert tower.embed(tower.embed(a, 4), 8) == tower.embed(a, 8)


def test_embedding_is_injective():
    tower = get_tower((1, 2, 4))
    images = {tower.embed(a, 4) for a in gf2k(2).elements()}
    assert len(images) == 4


def test_embedding_fixes_gf2():
    assert embed(gf2k(1).one(), 4).is_one()
    assert embed(gf2k(1).zero(), 16).is_zero()


def test_embedding_errors():
    tower = get_tower((1, 2, 4))
    with pytest.raises(NotInTower):
        tower.embed(gf2k(2).one(), 8)
    with pytest.raises(NonDividingDegree):
        tower.embed(gf2k(4).one(), 2)


def test_tower_needs_divisibility_chain():
    with pytest.raises(ValueError):
        FieldTower((2, 3))


def test_find_root_in_extension():
    # x^2 + x + 1 splits in GF(4) but not in GF(2) or GF(8)
    root = find_root_in_extension([1, 1, 1], 2)
    assert root is not None
    assert (root * root + root + root.one()).is_zero()
    assert find_root_in_extension([1, 1, 1], 1) is None
    assert find_root_in_extension([1, 1, 1], 3) is None
    cubic = find_root_in_extension([1, 1, 0, 1], 3)
    assert (cubic * cubic * cubic + cubic + cubic.one()).is_zero()


# -- GF(p) -------------------------------------------------------------------

def test_prime_field():
    F = gfp(5)
    assert (F(2) * F(3)).is_one()
    assert F(3).inverse() == F(2)
    assert -F(1) == F(4)
    with pytest.raises(ValueError):
        gfp(11)


# -- GF(2)(t) ----------------------------------------------------------------

def test_ratfunc_normal_form():
    t, one = RF2.t(), RF2.one()
    f = (t * t + one) / (t + one)  # (t+1)^2 / (t+1)
    assert f == t + one
    assert f.degree() == 1
    assert RF2.zero().degree() == MINUS_INFINITY
    assert (t / t).is_one()
    with pytest.raises(DivisionByZero):
        RF2.zero().inverse()


@given(
    st.integers(1, 31), st.integers(1, 31),
    st.integers(1, 31), st.integers(1, 31),
)
def test_evaluation_is_a_homomorphism(n1, d1, n2, d2):
    # the generator of GF(32) has degree 5 over GF(2), so no nonzero
    # polynomial of degree <= 4 vanishes there
    theta = gf2k(5).generator()
    f, g = RatFunc(n1, d1), RatFunc(n2, d2)
    assert (f * g).evaluate(theta) == f.evaluate(theta) * g.evaluate(theta)
    assert (f + g).evaluate(theta) == f.evaluate(theta) + g.evaluate(theta)


# -- scalar syntax -----------------------------------------------------------

def test_scalar_text_forms():
    assert parse_scalar("gf2_2:3") == gf2k(2)(3)
    assert parse_scalar("3", gf2k(2)) == gf2k(2)(3)
    assert parse_scalar("gfp_5:4") == gfp(5)(4)
    assert parse_scalar("rf2:2/3") == RF2.t() / (RF2.t() + RF2.one())
    assert format_scalar(gf2k(4)(0xA)) == "gf2_4:a"


def test_scalar_errors():
    with pytest.raises(GroupSpecError):
        field_from_tag("gf2_17")
    with pytest.raises(GroupSpecError):
        field_from_tag("gf3_2")
    with pytest.raises(GroupSpecError):
        parse_scalar("gf2_2:4")
    with pytest.raises(GroupSpecError):
        parse_scalar("7")
    with pytest.raises(LevelMismatch):
        parse_scalar("gf2_3:1", gf2k(2))
