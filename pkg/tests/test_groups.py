"""Group handles, spec strings and generic finite group operations."""

import pytest

from src.errors import BudgetExceeded, GroupSpecError, InputError
from src.fields.gf2k import gf2k
from src.fields.tower import get_tower
from src.groups.handles import CyclicGroup, ProductGroup, Sl2Group, SymGroup
from src.groups.ops import (
    TABLE_CACHE_SIZE,
    cayley_table,
    centralizer,
    conjugacy_partition,
    direct_product,
    enumerate_group,
    generated_subgroup,
    is_abelian,
    level_map,
    sym_inclusion,
)
from src.groups.spec import parse_family_spec, parse_group_spec


def test_group_specs():
    assert parse_group_spec("sym:4") == SymGroup(4)
    assert parse_group_spec("cyclic:6").order == 6
    assert parse_group_spec("sl2:gf2_2").order == 60
    assert parse_group_spec("sl2:gfp_5").order == 120
    product = parse_group_spec("prod(sym:3, cyclic:2)")
    assert isinstance(product, ProductGroup)
    assert product.spec == "prod(sym:3,cyclic:2)"
    assert product.order == 12


def test_nested_product_spec():
    G = parse_group_spec("prod(prod(cyclic:2,cyclic:3),sym:2)")
    assert G.order == 12
    assert parse_group_spec(G.spec) == G


@pytest.mark.parametrize("text", ["sym", "sym:x", "alt:4", "prod(sym:3)", "sl2:rf2", "sl2:gf2_20"])
def test_bad_specs(text):
    with pytest.raises(GroupSpecError):
        parse_group_spec(text)


def test_family_specs():
    assert [G.spec for G in parse_family_spec("sym:2..5")] == ["sym:2", "sym:3", "sym:4", "sym:5"]
    assert [G.spec for G in parse_family_spec("sl2:gf2_1..3")] == ["sl2:gf2_1", "sl2:gf2_2", "sl2:gf2_3"]
    assert [G.spec for G in parse_family_spec("cyclic:2,prod(sym:2,sym:2)")] == [
        "cyclic:2", "prod(sym:2,sym:2)",
    ]
    with pytest.raises(GroupSpecError):
        parse_family_spec("sym:5..2")


def test_sym_element_syntax(sym3):
    swap = sym3.parse("cycles:(1 2)")
    assert swap == sym3.parse("perm:[2,1,3]")
    assert sym3.format(swap) == "perm:[2,1,3]"
    assert sym3.cycles(sym3.parse("(1 2 3)")) == "(1 2 3)"
    assert sym3.cycles(sym3.identity()) == "()"
    assert sym3.parse(sym3.format(swap)) == swap
    with pytest.raises(GroupSpecError):
        sym3.parse("perm:[1,1,2]")
    with pytest.raises(GroupSpecError):
        sym3.parse("(1 4)")


def test_sym_composition_acts_right_to_left(sym3):
    a = sym3.parse("(1 2)")
    b = sym3.parse("(2 3)")
    # (1 2)(2 3) sends 3 -> 2 -> 1
    assert sym3.cycles(sym3.op(a, b)) == "(1 2 3)"


def test_handles_are_groups(sym3, cyclic6, sl2_gf2):
    for G in (sym3, cyclic6, sl2_gf2, ProductGroup(sym3, CyclicGroup(2))):
        elements = enumerate_group(G)
        assert len(elements) == G.order
        assert elements[0] == G.identity()
        for x in elements:
            assert G.op(x, G.inv(x)) == G.identity()
            assert G.parse(G.format(x)) == x


def test_generators_generate(sym4, sl2_gf4):
    for G in (sym4, sl2_gf4, CyclicGroup(5), ProductGroup(SymGroup(3), CyclicGroup(4))):
        assert len(generated_subgroup(G, G.generators())) == G.order


def test_generated_subgroup(sym4):
    assert len(generated_subgroup(sym4, [])) == 1
    assert len(generated_subgroup(sym4, [sym4.parse("(1 2 3 4)")])) == 4
    assert len(generated_subgroup(sym4, [sym4.parse("(1 2)"), sym4.parse("(3 4)")])) == 4
    with pytest.raises(BudgetExceeded):
        generated_subgroup(sym4, sym4.generators(), budget=10)


def test_sym4_classes(sym4):
    sizes = sorted(len(c) for c in conjugacy_partition(sym4))
    assert sizes == [1, 3, 6, 6, 8]


def test_sl2_classes_through_the_handle(sl2_gf4):
    sizes = sorted(len(c) for c in conjugacy_partition(sl2_gf4))
    assert sizes == [1, 12, 12, 15, 20]


def test_centralizers_and_abelian(sym3, cyclic6):
    assert is_abelian(cyclic6)
    assert not is_abelian(sym3)
    assert len(centralizer(sym3, sym3.parse("(1 2 3)"))) == 3
    assert len(centralizer(sym3, sym3.identity())) == 6


def test_direct_product_budget(sym4):
    assert direct_product(sym4, CyclicGroup(3)).order == 72
    with pytest.raises(BudgetExceeded):
        direct_product(sym4, sym4, budget=100)


def test_sym_inclusion_is_a_homomorphism():
    include = sym_inclusion(3, 5)
    S3, S5 = SymGroup(3), SymGroup(5)
    for x in S3.elements():
        for y in S3.elements():
            assert include(S3.op(x, y)) == S5.op(include(x), include(y))


def test_cayley_table(sym3):
    table = cayley_table(sym3)
    assert len(table) == 6
    assert table.elements[0] == sym3.identity()
    for i, x in enumerate(table.elements):
        for j, y in enumerate(table.elements):
            assert table.elements[table.mul[i, j]] == sym3.op(x, y)
            assert table.elements[table.conj[i, j]] == sym3.conj(x, y)
    assert cayley_table(SymGroup(3)) is table


def test_cayley_table_limit():
    with pytest.raises(BudgetExceeded):
        cayley_table(Sl2Group(gf2k(4)), limit=1000)


def test_cayley_tables_are_bounded():
    cayley_table.cache_clear()
    for n in range(1, TABLE_CACHE_SIZE + 2):
        cayley_table(SymGroup(n))
    info = cayley_table.cache_info()
    assert info.currsize == TABLE_CACHE_SIZE
    assert info.misses == TABLE_CACHE_SIZE + 1
    # the least recently used table was dropped
    cayley_table(SymGroup(1))
    assert cayley_table.cache_info().misses == TABLE_CACHE_SIZE + 2


def _assert_homomorphism(f, source, target):
    elements = list(source.elements())
    images = {f(x) for x in elements}
    assert len(images) == len(elements)
    assert f(source.identity()) == target.identity()
    for x in elements:
        for y in elements:
            assert f(source.op(x, y)) == target.op(f(x), f(y))


def test_level_map_for_symmetric_groups():
    f = level_map(SymGroup(3), SymGroup(5))
    include = sym_inclusion(3, 5)
    for x in SymGroup(3).elements():
        assert f(x) == include(x)
    same = level_map(SymGroup(4), SymGroup(4))
    assert all(same(x) == x for x in SymGroup(4).elements())


def test_level_map_for_cyclic_groups():
    f = level_map(CyclicGroup(2), CyclicGroup(4))
    assert [f(x) for x in range(2)] == [0, 2]
    _assert_homomorphism(level_map(CyclicGroup(3), CyclicGroup(6)), CyclicGroup(3), CyclicGroup(6))


def test_level_map_embeds_sl2_through_the_tower():
    source, target = Sl2Group(gf2k(1)), Sl2Group(gf2k(2))
    _assert_homomorphism(level_map(source, target), source, target)
    _assert_homomorphism(level_map(source, target, get_tower((1, 2, 4))), source, target)
    for x in level_map(source, target)(source.generators()[0]).entries():
        assert x.field == gf2k(2)


def test_level_map_for_products():
    source, target = ProductGroup(SymGroup(2), CyclicGroup(2)), ProductGroup(SymGroup(3), CyclicGroup(4))
    _assert_homomorphism(level_map(source, target), source, target)


def test_level_map_mismatch():
    with pytest.raises(InputError):
        level_map(SymGroup(3), CyclicGroup(6))
    with pytest.raises(InputError):
        level_map(CyclicGroup(4), CyclicGroup(6))
    with pytest.raises(InputError):
        level_map(SymGroup(4), SymGroup(3))
