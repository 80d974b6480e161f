import pytest
from hypothesis import given
from hypothesis import strategies as st

from heytinglab import corpus
from heytinglab.errors import BoundError, InputError, ResolutionError
from heytinglab.evaluator import Evaluator
from heytinglab.hfsets import HFSet, cumulative_level, ordinal, parse_hf
from heytinglab.names import (
    Name,
    NameUniverse,
    canonical_name,
    check_name,
    domain_closure,
    enumerate_names,
    is_transitive,
    map_values,
    op_pair,
    parse_name,
    projected_count,
    prune_bottom,
    relativized_names,
    up,
)


def test_rank_one_universe_on_three_chain(chain):
    u = enumerate_names(chain, 1, 1)
    assert u.count == 3
    assert [str(n) for n in u] == ["empty", "name{ empty: [0] }", "name{ empty: [0,1] }"]


def test_rank_two_universe_count(chain):
    # 1 + C(3,1)*2 + C(3,2)*2^2 names of rank <= 2 with at most two entries
    assert enumerate_names(chain, 2, 2).count == 1 + 3 * 2 + 3 * 4 == 19


def test_rank_zero_universe(chain):
    assert [str(n) for n in enumerate_names(chain, 0, 2)] == ["empty"]


def test_projected_count_matches_enumeration(chain):
    for w in range(3):
        u1 = enumerate_names(chain, 1, w)
        assert enumerate_names(chain, 2, w).count == projected_count(u1.count, 2, w)


def test_enumeration_ceiling_names_the_rank(chain):
    with pytest.raises(BoundError, match="rank 3"):
        enumerate_names(chain, 3, 2, ceiling=100)


def test_enumeration_is_deterministic(chain):
    a = [n.sort_key for n in enumerate_names(chain, 2, 2)]
    b = [n.sort_key for n in enumerate_names(chain, 2, 2)]
    assert a == b == sorted(a)


def test_structural_identity(chain):
    e = Name(chain)
    lo = chain.element(["0"])
    assert Name(chain, [(e, lo)]) == Name(chain, [(e, lo)])
    assert hash(Name(chain, [(e, lo)])) == hash(Name(chain, [(e, lo)]))
    assert Name(chain, [(e, lo)]) != Name(chain, [(e, chain.top)])


def test_duplicate_keys_rejected(chain):
    e = Name(chain)
    with pytest.raises(InputError, match="duplicate key"):
        Name(chain, [(e, chain.top), (e, chain.bottom)])


def test_frame_mismatch_rejected(chain):
    other = corpus.frame("chain3")
    with pytest.raises(InputError):
        Name(chain, [(Name(other), chain.top)])
    with pytest.raises(InputError):
        Name(chain, [(Name(chain), other.top)])
    with pytest.raises(InputError):
        up(Name(chain), Name(other))


def test_canonical_names(chain):
    two = check_name(chain, ordinal(2))
    assert two.rank == 2 and len(two) == 2
    assert all(v == chain.top for _, v in two.entries)
    u = enumerate_names(chain, 2, 2)
    assert canonical_name(u, ordinal(2)) in u
    with pytest.raises(BoundError):
        canonical_name(u, ordinal(3))


def test_canonical_identity_follows_hf_equality(chain):
    xs = cumulative_level(3)
    for x in xs:
        for y in xs:
            assert (x == y) == (check_name(chain, x) == check_name(chain, y))


def test_up_and_op(chain):
    a, b = Name(chain), check_name(chain, ordinal(1))
    assert len(up(a, a)) == 1 and len(up(a, b)) == 2
    assert op_pair(a, b) == up(up(a, a), up(a, b))
    # the name op mirrors the Kuratowski pair of the HF sets
    from heytinglab.hfsets import kpair

    assert op_pair(check_name(chain, ordinal(0)), check_name(chain, ordinal(1))) == check_name(
        chain, kpair(ordinal(0), ordinal(1))
    )


def test_rank_monotone(chain):
    for n in enumerate_names(chain, 2, 2):
        assert all(c.rank < n.rank for c in n.domain)


def test_prune_bottom_keeps_values(chain):
    ev = Evaluator(chain)
    e = Name(chain)
    padded = Name(chain, [(e, chain.element(["0"])), (check_name(chain, ordinal(1)), chain.bottom)])
    pruned = prune_bottom(padded)
    assert pruned == Name(chain, [(e, chain.element(["0"]))])
    assert ev.eq_m(padded, pruned) == chain.top_m
    for n in enumerate_names(chain, 2, 2):
        assert ev.mem_m(n, padded) == ev.mem_m(n, pruned)


def test_prune_bottom_on_heavy_bottom():
    f = corpus.frame("heavy_bottom")
    ev = Evaluator(f)
    a = Name(f, [(Name(f), f.bottom)])
    assert prune_bottom(a) == Name(f)
    assert ev.eq_m(a, Name(f)) == f.top_m


def test_sub_universes(chain):
    u = enumerate_names(chain, 2, 2)
    A = domain_closure([u.names[-1]])
    assert is_transitive(A)
    sub = u.sub_universe(A)
    assert sub.count == len(A)
    with pytest.raises(InputError):
        u.sub_universe([u.names[-1]])


def test_relativized_enumeration_is_intersection(chain):
    u = enumerate_names(chain, 2, 2)
    for n in u:
        A = domain_closure([n])
        assert relativized_names(chain, A, 2, 2) == frozenset(u.names) & A


def test_relativized_enumeration_respects_bounds(chain):
    big = check_name(chain, ordinal(3))
    A = domain_closure([big])
    got = relativized_names(chain, A, 2, 2)
    assert big not in got and check_name(chain, ordinal(2)) in got


def test_map_values_merges_keys(chain):
    b = corpus.three_chain()
    lo = Name(b, [(Name(b), b.element(["0"]))])
    hi = Name(b, [(Name(b), b.top)])
    both = Name(b, [(lo, b.top), (hi, b.element(["0"]))])
    collapsed = map_values(both, b, lambda m: b.dn_m(m))
    assert len(collapsed) == 1


def test_parse_name(chain):
    n = parse_name("name{ empty: [0], check({{}}): [0,1] }", chain)
    assert len(n) == 2 and n.rank == 2
    assert parse_name("up(empty, empty)", chain) == up(Name(chain), Name(chain))
    with pytest.raises(ResolutionError):
        parse_name("name{ empty: [1] }", chain)
    with pytest.raises(ResolutionError):
        parse_name("name{ empty: [0], empty: [0,1] }", chain)


def test_universe_repr(chain):
    u = enumerate_names(chain, 1, 1)
    assert "3 names" in repr(u) and isinstance(u, NameUniverse)


@given(st.sampled_from(cumulative_level(3)), st.sampled_from(cumulative_level(3)))
def test_check_name_of_pairs(x, y):
    f = corpus.three_chain()
    assert (check_name(f, HFSet([x, y])) == up(check_name(f, x), check_name(f, y)))
