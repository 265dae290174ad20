"""Følner defects, certificates, searches, profiles, lifts and free words."""

import itertools
from functools import lru_cache
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.amen.folner import FolnerCertificate, Mode, act, certify, folner_defect
from src.amen.freewords import evaluate_word, free_words_check, reduced_word_count, unipotent_pair
from src.amen.product import lift_defect, product_lift
from src.amen.profile import Sampler, profile_uniform
from src.amen.search import (
    SearchStatus,
    bound_holds,
    max_moved,
    min_folner_search,
    orbit_partition,
)
from src.errors import BudgetExceeded, CertificateRefused, ConfigError, EmptyT, InputError, ProjectionMismatch
from src.fields.gf2k import gf2k
from src.groups.handles import CyclicGroup, ProductGroup, Sl2Group, SymGroup
from src.groups.ops import conjugacy_partition, generated_subgroup, sym_inclusion

EPSILONS = [Fraction(1), Fraction(2, 3), Fraction(1, 2)]
SYM4_ELEMENTS = list(SymGroup(4).elements())


def brute_force_min_size(G, S, epsilon, mode, min_size=1, exclude_identity=False):
    universe = [x for x in G.elements() if not (exclude_identity and x == G.identity())]
    for k in range(min_size, len(universe) + 1):
        for T in itertools.combinations(universe, k):
            if folner_defect(G, S, T, mode) < epsilon:
                return k
    return None


# -- defects and certificates --------------------------------------------------

def test_max_moved():
    assert max_moved(8, Fraction(1, 4)) == 0
    assert max_moved(9, Fraction(1, 4)) == 1
    assert max_moved(8, Fraction(1, 4), strict=False) == 1
    assert max_moved(6, Fraction(1, 3), strict=False) == 1
    assert max_moved(6, Fraction(1, 3)) == 0


def test_subgroups_have_defect_zero(sym4):
    H = generated_subgroup(sym4, [sym4.parse("(1 2 3 4)")])
    assert folner_defect(sym4, H, H, Mode.TRANSLATION) == 0
    assert folner_defect(sym4, H, sym4.elements(), Mode.TRANSLATION) == 0


def test_conjugacy_classes_have_conjugation_defect_zero(sym4):
    for cls in conjugacy_partition(sym4):
        assert folner_defect(sym4, sym4.elements(), cls, Mode.CONJUGATION) == 0


@given(st.sets(st.integers(0, 5), min_size=1), st.sets(st.integers(0, 5)))
def test_defect_is_exact_and_bounded(T, S):
    G = CyclicGroup(6)
    defect = folner_defect(G, S, T, Mode.TRANSLATION)
    assert isinstance(defect, Fraction)
    assert 0 <= defect <= 2
    worst = max((len({(s + t) % 6 for t in T} - T) for s in S), default=0)
    assert defect == Fraction(2 * worst, len(T))


@given(st.sets(st.integers(0, 23), min_size=1, max_size=3))
def test_generated_subgroups_certify_at_defect_zero(indices):
    G = SymGroup(4)
    S = [SYM4_ELEMENTS[i] for i in indices]
    H = generated_subgroup(G, S)
    cert = certify(G, S, H, Fraction(1, 100), Mode.TRANSLATION)
    assert cert.defect == 0
    assert cert.size == len(H)


@given(st.sets(st.integers(0, 23), min_size=1, max_size=3), st.sets(st.integers(0, 4), min_size=1))
def test_class_unions_certify_at_defect_zero(indices, chosen):
    G = SymGroup(4)
    classes = conjugacy_partition(G)
    T = [x for i in sorted(chosen) for x in classes[i]]
    cert = certify(G, [SYM4_ELEMENTS[i] for i in indices], T, Fraction(1, 100), Mode.CONJUGATION)
    assert cert.defect == 0


def test_orbit_unions_have_defect_zero(sym3):
    S = [sym3.parse("(1 2)")]
    orbits = orbit_partition(sym3, S, Mode.CONJUGATION)
    assert sorted(len(o) for o in orbits) == [1, 1, 2, 2]
    for r in range(1, len(orbits) + 1):
        for chosen in itertools.combinations(orbits, r):
            T = frozenset().union(*chosen)
            assert folner_defect(sym3, S, T, Mode.CONJUGATION) == 0


def test_empty_t_is_refused(sym3):
    with pytest.raises(EmptyT):
        folner_defect(sym3, sym3.generators(), [], Mode.TRANSLATION)


def test_certify_is_strict(sym3):
    swap = sym3.parse("(1 2)")
    with pytest.raises(CertificateRefused) as excinfo:
        certify(sym3, [swap], [sym3.identity()], Fraction(2), Mode.TRANSLATION)
    assert excinfo.value.defect == 2
    cert = certify(sym3, [swap], [sym3.identity()], Fraction(5, 2), Mode.TRANSLATION)
    assert cert.defect == 2
    assert cert.verify(sym3)


def test_certify_excluded_identity(sym3):
    with pytest.raises(CertificateRefused):
        certify(sym3, sym3.generators(), [sym3.identity()], Fraction(1), Mode.CONJUGATION, exclude_identity=True)


def test_certify_needs_positive_epsilon(sym3):
    with pytest.raises(ConfigError):
        certify(sym3, [], [sym3.identity()], Fraction(0), Mode.TRANSLATION)


def test_certificate_serialization(sym3):
    cert = certify(sym3, sym3.generators(), sym3.elements(), Fraction(1, 3), Mode.TRANSLATION)
    data = cert.to_dict(sym3)
    assert data["defect"] == "0/1"
    assert data["epsilon"] == "1/3"
    restored = FolnerCertificate.from_dict(data, sym3)
    assert restored == cert
    assert restored.verify(sym3)


def test_tampered_certificate_fails_verification(sym3):
    cert = certify(sym3, sym3.generators(), sym3.elements(), Fraction(1, 3), Mode.TRANSLATION)
    data = cert.to_dict(sym3)
    data["T"] = data["T"][:3]
    assert not FolnerCertificate.from_dict(data, sym3).verify(sym3)


# -- minimal search ----------------------------------------------------------

@pytest.mark.parametrize("group", [SymGroup(3), Sl2Group(gf2k(1)), CyclicGroup(6)], ids=lambda G: G.spec)
@pytest.mark.parametrize("mode", list(Mode), ids=lambda m: m.value)
@pytest.mark.parametrize("epsilon", EPSILONS, ids=str)
def test_exact_search_matches_brute_force(group, mode, epsilon):
    S = group.generators()
    exclude = mode is Mode.CONJUGATION
    result = min_folner_search(group, S, epsilon, mode)
    expected = brute_force_min_size(group, S, epsilon, mode, exclude_identity=exclude)
    if expected is None:
        assert result.status is SearchStatus.EXHAUSTED
        assert result.certificate is None
    else:
        assert result.status is SearchStatus.EXACT
        assert result.size == expected
        assert result.certificate.verify(group)
        assert result.certificate.exclude_identity == exclude


def _small_sets(G, largest):
    elements = list(G.elements())
    return [list(S) for r in range(1, largest + 1) for S in itertools.combinations(elements, r)]


def _sets_up_to_conjugacy(G, largest):
    """One S per orbit of simultaneous conjugation; minimal witness sizes are constant on orbits."""
    elements = list(G.elements())
    seen, reps = set(), []
    for S in _small_sets(G, largest):
        key = min(tuple(sorted(G.key(G.conj(g, x)) for x in S)) for g in elements)
        if key not in seen:
            seen.add(key)
            reps.append(S)
    return reps


@lru_cache(maxsize=None)
def _index_combinations(n, k):
    return np.array(list(itertools.combinations(range(n), k)), dtype=np.int64).reshape(-1, k)


def vectorized_min_size(G, S, epsilon, mode, below, exclude_identity=False):
    """Least k < below admitting a witness, checking every k-subset at once; None if there is none."""
    elements = list(G.elements())
    index = {x: i for i, x in enumerate(elements)}
    universe = np.array([i for i, x in enumerate(elements) if not (exclude_identity and x == G.identity())])
    images = np.array([[index[act(G, mode, s, t)] for t in elements] for s in S])
    for k in range(1, below):
        combos = universe[_index_combinations(len(universe), k)]
        moved = np.zeros(len(combos), dtype=np.int64)
        for row in images:
            stays = (row[combos][:, :, None] == combos[:, None, :]).any(axis=2).sum(axis=1)
            moved = np.maximum(moved, k - stays)
        if np.any(2 * moved * epsilon.denominator < epsilon.numerator * k):
            return k
    return None


@pytest.mark.parametrize("group", [SymGroup(3), Sl2Group(gf2k(1))], ids=lambda G: G.spec)
@pytest.mark.parametrize("mode", list(Mode), ids=lambda m: m.value)
def test_exact_search_is_minimal_for_every_small_S(group, mode):
    exclude = mode is Mode.CONJUGATION
    for S in _small_sets(group, 2):
        for epsilon in (Fraction(1), Fraction(1, 2), Fraction(1, 3)):
            result = min_folner_search(group, S, epsilon, mode)
            assert result.status is SearchStatus.EXACT
            assert result.size == brute_force_min_size(group, S, epsilon, mode, exclude_identity=exclude)


@pytest.mark.slow
@pytest.mark.parametrize("mode", list(Mode), ids=lambda m: m.value)
def test_exact_search_is_minimal_on_sym4(sym4, mode):
    exclude = mode is Mode.CONJUGATION
    for S in _sets_up_to_conjugacy(sym4, 2):
        for epsilon in (Fraction(1), Fraction(1, 2), Fraction(1, 3)):
            result = min_folner_search(sym4, S, epsilon, mode)
            assert result.certificate.verify(sym4)
            ruled_out = result.size if result.status is SearchStatus.EXACT else result.lower_bound
            assert vectorized_min_size(sym4, S, epsilon, mode, min(ruled_out, 9), exclude) is None
            if result.status is SearchStatus.EXACT and result.size <= 8:
                assert vectorized_min_size(sym4, S, epsilon, mode, result.size + 1, exclude) == result.size


def test_search_respects_min_size(sym3):
    S = [sym3.parse("(1 2)")]
    result = min_folner_search(sym3, S, Fraction(1, 2), Mode.CONJUGATION, min_size=3)
    assert result.size == brute_force_min_size(
        sym3, S, Fraction(1, 2), Mode.CONJUGATION, min_size=3, exclude_identity=True
    )
    assert result.size >= 3


def test_conjugation_witness_can_include_identity_when_allowed(cyclic6):
    result = min_folner_search(cyclic6, cyclic6.generators(), Fraction(1, 2), Mode.CONJUGATION, exclude_identity=False)
    # abelian: every singleton is fixed by conjugation, the identity comes first
    assert result.size == 1
    assert result.certificate.T == (0,)


def test_heuristic_search_beyond_exact_limit(sl2_gf4):
    result = min_folner_search(sl2_gf4, sl2_gf4.generators(), Fraction(1, 4), Mode.CONJUGATION, min_size=2)
    assert result.status is SearchStatus.HEURISTIC
    assert result.lower_bound == 9
    assert 9 <= result.size <= 12
    assert result.certificate.verify(sl2_gf4)
    assert sl2_gf4.identity() not in result.certificate.T
    assert result.orbit_sizes == [12, 12, 15, 20]


def test_budget_exhaustion_carries_best_so_far(sym4):
    with pytest.raises(BudgetExceeded) as excinfo:
        min_folner_search(sym4, sym4.generators(), Fraction(1, 3), Mode.TRANSLATION, budget=10)
    best = excinfo.value.best_so_far
    assert best is not None
    assert best.status is SearchStatus.HEURISTIC
    assert best.certificate.verify(sym4)


def test_search_reports_round_trip(sym3):
    result = min_folner_search(sym3, sym3.generators(), Fraction(1), Mode.TRANSLATION)
    data = result.to_dict(sym3)
    assert data["status"] == "exact"
    assert data["size"] == result.size
    assert FolnerCertificate.from_dict(data["certificate"], sym3).verify(sym3)


# -- bound checks ------------------------------------------------------------

def test_bound_holds_trivially_for_whole_small_groups(sym3):
    # |T| = |G| = 6 is translation invariant
    assert bound_holds(sym3, 1, 6, Mode.TRANSLATION)
    assert not bound_holds(sym3, 2, 2, Mode.TRANSLATION)


def test_bound_holds_budget(sym4):
    with pytest.raises(BudgetExceeded):
        bound_holds(sym4, 3, 8, Mode.CONJUGATION, budget=1000)


# -- profiles ----------------------------------------------------------------

def test_profile_rows_and_f_hat():
    family = [SymGroup(2), SymGroup(3)]
    profile = profile_uniform(family, Mode.TRANSLATION, [1, 2], samplers=("generators", "random"), seed=3)
    assert len(profile.rows) == 2 * 2 * 3
    summary = profile.f_hat()
    assert [(e["level"], e["n"]) for e in summary] == [("sym:2", 1), ("sym:2", 2), ("sym:3", 1), ("sym:3", 2)]
    for e in summary:
        assert e["f_hat"] is not None and e["f_hat"] >= 1
    for row in profile.rows:
        assert row["status"] == "exact"


def test_profile_is_reproducible():
    family = [SymGroup(3), CyclicGroup(4)]
    first = profile_uniform(family, Mode.CONJUGATION, [1, 2], seed=11)
    second = profile_uniform(family, Mode.CONJUGATION, [1, 2], seed=11)
    assert first.frame().equals(second.frame())
    assert not first.witnesses_contain_identity()
    for row in first.rows:
        if row["min_t"] is not None:
            assert row["min_t"] >= row["n"]


def test_profile_rejects_unknown_sampler():
    with pytest.raises(ConfigError):
        profile_uniform([SymGroup(3)], Mode.TRANSLATION, [1], samplers=("uniform",))


def test_lifted_sampler_maps_the_first_level_draw():
    family = [SymGroup(2), SymGroup(3), SymGroup(4)]
    profile = profile_uniform(family, Mode.TRANSLATION, [1, 2], samplers=("lifted",), seed=7)
    assert len(profile.rows) == 3 * 2 * 2
    base = Sampler(family[0], 0, seed=7)
    for row in profile.rows:
        G = SymGroup(int(row["level"].split(":")[1]))
        include = sym_inclusion(2, G.n)
        S = {include(x) for x in base.draw("random", row["n"], row["sample"])}
        assert row["S"] == " ".join(G.format(x) for x in sorted(S, key=G.key))
        assert row["sampler"] == "lifted"


def test_lifted_sampler_needs_a_level_map():
    with pytest.raises(InputError):
        profile_uniform([SymGroup(3), CyclicGroup(4)], Mode.TRANSLATION, [1], samplers=("lifted",))
    with pytest.raises(ConfigError):
        Sampler(SymGroup(3), 1, seed=0).draw("lifted", 1, 0)


def test_sampler_draws_are_order_independent(sym4):
    a = Sampler(sym4, 2, seed=5)
    b = Sampler(sym4, 2, seed=5)
    first = [a.draw("random", 3, 0), a.draw("random", 3, 1)]
    second = [b.draw("random", 3, 1), b.draw("random", 3, 0)]
    assert first == second[::-1]
    assert len(set(first[0])) == 3


def test_adversarial_sampler_starts_with_largest_class(sym4):
    S = Sampler(sym4, 0, seed=0).draw("adversarial", 2, 0)
    # the 3-cycles form the largest class; its least member in one-line order
    assert sym4.cycles(S[0]) == "(2 3 4)"
    assert len(S) == 2


# -- product lift ------------------------------------------------------------

def test_product_lift_preserves_the_defect(sym3):
    H = CyclicGroup(2)
    result = min_folner_search(sym3, sym3.generators(), Fraction(1), Mode.CONJUGATION)
    cert = result.certificate
    S_prime = [(s, h) for s in cert.S for h in H.elements()]
    lifted = product_lift(cert, sym3, H, S_prime)
    assert lifted.defect == cert.defect
    assert lifted.group == "prod(sym:3,cyclic:2)"
    assert lift_defect(sym3, H, S_prime, cert.T, Mode.CONJUGATION) == cert.defect


@given(
    st.sets(st.integers(0, 5), min_size=1, max_size=3),
    st.sets(st.integers(0, 5), min_size=1),
    st.sampled_from(list(Mode)),
)
def test_lifted_defect_is_exact(s_indices, t_indices, mode):
    G, H = SymGroup(3), CyclicGroup(3)
    elements = list(G.elements())
    S = [elements[i] for i in sorted(s_indices)]
    T = [elements[i] for i in sorted(t_indices)]
    cert = certify(G, S, T, Fraction(3), mode)
    seconds = [0] if mode is Mode.TRANSLATION else list(H.elements())
    lifted = product_lift(cert, G, H, [(s, h) for s in S for h in seconds])
    assert lifted.defect == cert.defect
    assert lifted.verify(ProductGroup(G, H))


@pytest.mark.slow
@pytest.mark.parametrize(
    "pair",
    [
        (Sl2Group(gf2k(2)), CyclicGroup(3)),
        (SymGroup(4), SymGroup(3)),
        (Sl2Group(gf2k(1)), SymGroup(4)),
    ],
    ids=lambda pair: f"{pair[0].spec}x{pair[1].spec}",
)
@settings(max_examples=50, deadline=None)
@given(data=st.data(), mode=st.sampled_from(list(Mode)))
def test_lifted_defect_is_exact_across_factor_pairs(pair, data, mode):
    G, H = pair
    elements, seconds = list(G.elements()), list(H.elements())
    indices = st.integers(0, len(elements) - 1)
    S = [elements[i] for i in sorted(data.draw(st.sets(indices, min_size=1, max_size=3)))]
    T = [elements[i] for i in sorted(data.draw(st.sets(indices, min_size=1, max_size=12)))]
    cert = certify(G, S, T, Fraction(3), mode)
    if mode is Mode.TRANSLATION:
        seconds = [H.identity()]
    lifted = product_lift(cert, G, H, [(s, h) for s in S for h in seconds])
    assert lifted.defect == cert.defect == folner_defect(G, S, T, mode)
    assert lifted.verify(ProductGroup(G, H))


def test_product_lift_projection_checks(sym3):
    H = CyclicGroup(2)
    cert = certify(sym3, sym3.generators(), sym3.elements(), Fraction(1, 2), Mode.TRANSLATION)
    swap = sym3.generators()[0]
    with pytest.raises(ProjectionMismatch):
        product_lift(cert, sym3, H, [(swap, 1)])
    outside = sym3.parse("(1 3)")
    with pytest.raises(ProjectionMismatch):
        product_lift(cert, sym3, H, [(outside, 0)])
    lifted = product_lift(cert, sym3, H, [(swap, 0)])
    assert lifted.defect == 0


# -- free words --------------------------------------------------------------

def test_reduced_word_counts():
    assert reduced_word_count(8) == 8748
    assert sum(reduced_word_count(k) for k in range(1, 9)) == 13120


def test_short_words_in_the_hyperbolic_pair():
    report = free_words_check(max_len=4)
    assert report.words_checked == 4 + 12 + 36 + 108
    assert report.relation_free
    assert report.verdict == "no relations up to length 4"


@pytest.mark.slow
def test_all_words_up_to_length_eight():
    report = free_words_check(max_len=8)
    assert report.words_checked == 13120
    assert report.counts[8] == 8748
    assert report.relation_free


def test_unipotent_pair_has_relations():
    a, b = unipotent_pair()
    report = free_words_check(a, b, max_len=2)
    assert "aa" in report.relations
    assert "bb" in report.relations
    assert not report.relation_free


def test_evaluate_word():
    a, b = unipotent_pair()
    assert evaluate_word("", a, b).is_identity()
    assert evaluate_word("aA", a, b).is_identity()
    assert evaluate_word("ab", a, b) == a * b
    with pytest.raises(InputError):
        evaluate_word("ac", a, b)


def test_free_word_inputs_are_rejected():
    with pytest.raises(InputError):
        free_words_check(max_len=0)
    a, b = Sl2Group(gf2k(1)).generators()[:2]
    with pytest.raises(InputError):
        free_words_check(a, b, max_len=2)
