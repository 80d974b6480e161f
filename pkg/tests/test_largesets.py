import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heytinglab.config import DEFAULT_CEILINGS
from heytinglab.errors import BoundError, InputError
from heytinglab.hfsets import EMPTY, HFSet, cumulative_level, kpair, ordinal, parse_hf
from heytinglab.largesets import (
    MVRelation,
    adjust,
    adjust_equivalences,
    census,
    check_adjust_equivalences,
    check_pairing_closure,
    closure_failures,
    full_subsets,
    is_bcst_regular,
    is_full,
    is_mvf,
    is_mvf_both,
    is_regular,
    mv_enumerate,
    set_mv_refine,
    transitive_subsets,
)

import oracles

ONE = ordinal(1)
TWO = ordinal(2)


def test_mvf_examples():
    R = MVRelation([(EMPTY, ONE)], ONE, HFSet([EMPTY, ONE]))
    assert is_mvf(R) and not is_mvf_both(R)
    assert is_mvf_both(MVRelation([(EMPTY, EMPTY), (EMPTY, ONE)], ONE, TWO))
    assert not is_mvf(MVRelation([], ONE, TWO))
    with pytest.raises(InputError):
        is_mvf(MVRelation([(ONE, ONE)], ONE, TWO))


def test_adjust_example():
    R = MVRelation([(EMPTY, ONE)], ONE, TWO)
    A = adjust(R)
    assert A.pairs == {(EMPTY, kpair(EMPTY, ONE))}
    assert A.codomain == HFSet([kpair(EMPTY, EMPTY), kpair(EMPTY, ONE)])
    with pytest.raises(InputError):
        adjust(MVRelation([], ONE, TWO))


def test_mv_enumerate_counts():
    assert len(mv_enumerate(ONE, TWO)) == 3
    assert mv_enumerate(ONE, EMPTY) == []
    empty_dom = mv_enumerate(EMPTY, TWO)
    assert len(empty_dom) == 1 and empty_dom[0].pairs == frozenset()
    assert len(mv_enumerate(TWO, TWO)) == 9


def test_minimal_full_subset():
    mv = mv_enumerate(ONE, TWO)
    (c,) = full_subsets(ONE, TWO, minimal=True)
    assert len(c) == 2 and is_full(c, mv)
    assert {len(r.pairs) for r in c} == {1}
    assert not is_full([], mv)


def test_full_subset_ceiling():
    with pytest.raises(BoundError):
        full_subsets(ordinal(3), ordinal(3))


def test_regularity_examples():
    assert is_regular(ONE).holds
    v = is_regular(TWO)
    assert not v.holds
    a, R = v.witness
    assert a == ONE and R.pairs == {(EMPTY, ONE)}
    with pytest.raises(InputError):
        is_regular(HFSet([ONE]))


def test_regular_matches_brute_force():
    for A in transitive_subsets(cumulative_level(3), 4):
        assert is_regular(A).holds == oracles.regular_brute(A), str(A)


def test_bcst_regularity_of_one():
    # {∅} is regular but not closed under pairing: {∅, ∅} = {∅} is missing
    v = is_bcst_regular(ONE)
    assert v.regular.holds and v.union_regular and not v.holds
    assert v.closure["pairing"] == (EMPTY, EMPTY)


def test_empty_set_is_not_bcst_regular():
    v = is_bcst_regular(EMPTY)
    assert v.regular.holds and not v.holds and v.closure["emptyset"] == ()


def test_closure_failures_on_v3():
    V3 = HFSet(cumulative_level(3))
    fails = closure_failures(V3)
    assert fails["emptyset"] is None and fails["union"] is None
    assert fails["pairing"] is not None


def test_pairing_closure_cases():
    assert check_pairing_closure(ONE) == ("vacuous", None)
    assert check_pairing_closure(TWO) == ("vacuous", None)


def test_set_mv_refine():
    A = HFSet(cumulative_level(3))
    R = MVRelation([(EMPTY, EMPTY)], ONE, ONE)
    # ⟨∅,∅⟩ = {{∅}} lies in V_3 but {⟨∅,∅⟩} only appears in V_4
    assert set_mv_refine(A, ONE, R) is None
    B = HFSet(cumulative_level(4))
    b = set_mv_refine(B, ONE, R)
    assert b == HFSet([kpair(EMPTY, EMPTY)])
    with pytest.raises(InputError):
        set_mv_refine(A, ordinal(3), R)
    with pytest.raises(InputError):
        set_mv_refine(A, ONE, MVRelation([], ONE, ONE))


def test_adjust_equivalence_example():
    R = MVRelation([(EMPTY, EMPTY), (EMPTY, ONE)], ONE, TWO)
    into, onto = adjust_equivalences(R, HFSet([(kpair(EMPTY, EMPTY))]))
    assert into and onto


def test_adjust_equivalences_small_pool():
    v = check_adjust_equivalences([EMPTY, ONE, parse_hf("{{{}}}")], max_size=2)
    assert v.holds and v.checked > 100


def test_census_shape():
    rows = census(3, 4)
    assert len(rows) == oracles.transitive_count(cumulative_level(3), 4)
    by = {r["set"]: r for r in rows}
    assert not by["{}"]["bcst_regular"] and by["{}"]["regular"]
    assert by["{{}}"]["regular"] and not by["{{}}"]["bcst_regular"]
    assert not by["{{},{{}}}"]["regular"]
    assert census(4, 2, min_size=3) == []


def test_census_rank_ceiling():
    with pytest.raises(BoundError):
        census(5, 8)


def test_graph_counterexamples_survive_tight_ceiling():
    tight = DEFAULT_CEILINGS.with_overrides(relation_cells=1)
    v = is_regular(HFSet(cumulative_level(3)), tight)
    assert not v.holds and len(v.witness[1].pairs) == len(v.witness[0])


@settings(max_examples=25)
@given(st.sets(st.sampled_from(cumulative_level(3)), max_size=4))
def test_transitive_closure_of_subsets(xs):
    A = HFSet(xs)
    subs = transitive_subsets(cumulative_level(3), 4)
    assert (A in subs) == A.is_transitive()
