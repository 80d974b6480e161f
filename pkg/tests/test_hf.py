import pytest
from hypothesis import given
from hypothesis import strategies as st

from heytinglab.errors import ParseError
from heytinglab.hfsets import EMPTY, HFSet, cumulative_level, from_code, kpair, ordinal, pair, parse_hf, product_set


def test_literals_and_ordinals():
    assert str(ordinal(0)) == "{}"
    assert str(ordinal(2)) == "{{},{{}}}"
    assert parse_hf("{{},{{}}}") == ordinal(2)
    assert parse_hf("2") == ordinal(2)
    assert parse_hf("{ {}, {} }") == ordinal(1)


def test_bad_literals():
    for text in ["{", "{}}", "{,}", "x"]:
        with pytest.raises(ParseError):
            parse_hf(text)


def test_cumulative_levels():
    assert [len(cumulative_level(n)) for n in range(5)] == [0, 1, 2, 4, 16]


def test_ranks():
    assert EMPTY.rank == 0 and ordinal(1).rank == 1 and ordinal(3).rank == 3


def test_kuratowski_pairs():
    a, b = ordinal(0), ordinal(1)
    assert kpair(a, b) == HFSet([HFSet([a]), HFSet([a, b])])
    assert kpair(a, a) == HFSet([HFSet([a])])
    assert len(product_set(ordinal(2), ordinal(2))) == 4
    assert pair(a, b) == ordinal(2)


def test_transitive_closure():
    x = HFSet([HFSet([ordinal(1)])])
    tc = x.transitive_closure()
    assert tc.is_transitive() and x.issubset(tc)
    assert tc == HFSet([HFSet([ordinal(1)]), ordinal(1), EMPTY])


def test_set_operations():
    assert (ordinal(2) & ordinal(1)) == ordinal(1)
    assert (ordinal(1) | HFSet([ordinal(1)])) == ordinal(2)
    assert ordinal(3).union() == ordinal(2)


hf_sets = st.integers(0, 2**12).map(from_code)


@given(hf_sets)
def test_code_round_trip(x):
    assert from_code(x.code) == x
    assert parse_hf(str(x)) == x


@given(hf_sets, hf_sets)
def test_extensional_equality(x, y):
    assert (x == y) == (set(x) == set(y))
    assert (x == y) == (str(x) == str(y))


@given(hf_sets)
def test_transitive_closure_is_least(x):
    tc = x.transitive_closure()
    assert tc.is_transitive()
    for y in cumulative_level(4):
        if y.is_transitive() and x.issubset(y):
            assert tc.issubset(y)
