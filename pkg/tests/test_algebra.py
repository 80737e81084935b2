from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rgt.algebra import ActionUniverse, check_name, enumerate_between, interval_size
from rgt.errors import (
    DuplicateAction,
    EmptyInterval,
    EmptyUniverse,
    InvalidName,
    UniverseMismatch,
    UnknownAction,
)

GREEK = ActionUniverse(["α", "β", "γ"])

universes = st.lists(
    st.sampled_from("pqrstuvw"), min_size=1, max_size=5, unique=True
).map(ActionUniverse)


@st.composite
def universe_and_bits(draw, count=1):
    universe = draw(universes)
    bits = [
        draw(st.integers(min_value=0, max_value=universe.mask)) for _ in range(count)
    ]
    return universe, *[universe.from_bits(b) for b in bits]


def test_universe_rejects_empty():
    with pytest.raises(EmptyUniverse):
        ActionUniverse([])


def test_universe_rejects_duplicates():
    with pytest.raises(DuplicateAction):
        ActionUniverse(["α", "α"])


@pytest.mark.parametrize("bad", ["", "0", "1", "a b", "a+b", "x·y", "{a}", "a,b"])
def test_bad_action_names(bad):
    with pytest.raises(InvalidName):
        ActionUniverse([bad])


def test_check_name_mentions_role():
    with pytest.raises(InvalidName, match="subject"):
        check_name("0", "subject")


def test_alternative_members_round_trip():
    alt = GREEK.alternative(["γ", "α"])
    assert alt.members == ("α", "γ")
    assert str(alt) == "{α,γ}"


def test_unknown_action():
    with pytest.raises(UnknownAction):
        GREEK.alternative(["δ"])


def test_empty_and_full():
    assert GREEK.empty.is_empty
    assert GREEK.full.is_full
    assert str(GREEK.empty) == "{}"
    assert GREEK.full.members == ("α", "β", "γ")


def test_universe_equality_is_by_value():
    assert ActionUniverse(["α", "β"]) == ActionUniverse(["α", "β"])
    assert ActionUniverse(["α", "β"]) != ActionUniverse(["β", "α"])


def test_mixing_universes_fails():
    other = ActionUniverse(["α", "β"])
    with pytest.raises(UniverseMismatch):
        GREEK.full.meet(other.full)


@given(universe_and_bits(count=2))
def test_meet_join_are_bitwise(data):
    universe, x, y = data
    assert x.meet(y).bits == x.bits & y.bits
    assert x.join(y).bits == x.bits | y.bits


@given(universe_and_bits(count=1))
def test_complement_involution(data):
    universe, x = data
    assert x.complement().complement() == x
    assert x.meet(x.complement()).is_empty
    assert x.join(x.complement()).is_full


@given(universe_and_bits(count=2))
def test_de_morgan(data):
    universe, x, y = data
    assert x.meet(y).complement() == x.complement().join(y.complement())


@given(universe_and_bits(count=2))
def test_leq_matches_meet(data):
    universe, x, y = data
    assert x.leq(y) == (x.meet(y) == x)
    assert (x <= y) == x.leq(y)


@given(universe_and_bits(count=3))
def test_distributivity(data):
    universe, x, y, z = data
    assert x.meet(y.join(z)) == x.meet(y).join(x.meet(z))


def test_operator_aliases():
    a = GREEK.alternative(["α"])
    b = GREEK.alternative(["β"])
    assert (a | b).members == ("α", "β")
    assert (a & b).is_empty
    assert (~a).members == ("β", "γ")


def test_all_alternatives_in_bit_order():
    alts = GREEK.all_alternatives()
    assert len(alts) == 8
    assert [a.bits for a in alts] == list(range(8))
    assert alts[0].is_empty and alts[-1].is_full


def test_parse_alternative():
    assert GREEK.parse_alternative("0") == GREEK.empty
    assert GREEK.parse_alternative("1") == GREEK.full
    assert GREEK.parse_alternative("{}") == GREEK.empty
    assert GREEK.parse_alternative("{β,α}") == GREEK.alternative(["α", "β"])
    assert GREEK.parse_alternative(" { β , α } ") == GREEK.alternative(["α", "β"])
    with pytest.raises(UnknownAction):
        GREEK.parse_alternative("{δ}")
    with pytest.raises(InvalidName):
        GREEK.parse_alternative("α,β")


@given(universe_and_bits(count=1))
def test_str_parse_round_trip(data):
    universe, x = data
    assert universe.parse_alternative(str(x)) == x


def test_enumerate_between_order_and_size():
    inf = GREEK.alternative(["β"])
    sup = GREEK.alternative(["α", "β"])
    alts = enumerate_between(inf, sup)
    assert [str(a) for a in alts] == ["{β}", "{α,β}"]
    assert interval_size(inf, sup) == 2


@given(universe_and_bits(count=2))
def test_enumerate_between_properties(data):
    universe, x, y = data
    inf, sup = x.meet(y), x.join(y)
    alts = enumerate_between(inf, sup)
    assert len(alts) == interval_size(inf, sup)
    assert alts[0] == inf and alts[-1] == sup
    assert all(inf.leq(a) and a.leq(sup) for a in alts)
    assert [a.bits for a in alts] == sorted(a.bits for a in alts)
    assert len(set(alts)) == len(alts)


def test_enumerate_between_empty_interval():
    with pytest.raises(EmptyInterval):
        enumerate_between(GREEK.full, GREEK.empty)


def test_full_interval_covers_everything():
    assert enumerate_between(GREEK.empty, GREEK.full) == GREEK.all_alternatives()
