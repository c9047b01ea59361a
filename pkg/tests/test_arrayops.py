"""The four section operators and the reversal bookkeeping.

Each operator drops the two entries at the chosen positions and
rearranges the rest; the worked cases here pin the exact slice
arithmetic, and the properties check conservation of everything else.
"""

import pytest
from hypothesis import given, strategies as st

from g2skein.arrayops import (
    flip_q_codes,
    merge_components_back,
    merge_components_fwd,
    op_merge_back,
    op_merge_fwd,
    op_reverse,
    op_split,
    reverse_component_section,
    split_component,
    update_signs_on_reversal,
)
from g2skein.diagram import parse_token
from g2skein.errors import InternalInvariantError

from conftest import TWO_CROSSING_DOC


def toks(*names):
    return [parse_token(n) for n in names]


E1 = TWO_CROSSING_DOC["components"][0]["E"]


def test_split_examples():
    assert op_split(list("abcde"), 1, 3) == (["c"], ["a", "e"])
    assert op_split(list("abcd"), 0, 3) == (["b", "c"], [])
    mid, outer = op_split(E1, 1, 8)
    assert mid == ["O2", "U2", "X-2", "O2", "U2", "X+2"]
    assert outer == ["O1", "U1"]


def test_reverse_examples():
    assert op_reverse(list("abcdef"), 1, 4) == ["a", "d", "c", "f"]
    assert op_reverse(list("abc"), 0, 2) == ["b"]
    assert op_reverse(E1, 1, 8) == ["O1", "X+2", "U2", "O2", "X-2", "U2", "O2", "U1"]


def test_merge_fwd_examples():
    assert op_merge_fwd(list("abc"), list("pqr"), 1, 1) == ["a", "r", "p", "c"]
    assert op_merge_fwd(["a"], ["p"], 0, 0) == []
    assert op_merge_fwd(list("ab"), list("pqr"), 0, 2) == ["p", "q", "b"]


def test_merge_back_examples():
    assert op_merge_back(list("abc"), list("pqr"), 1, 1) == ["a", "p", "r", "c"]
    assert op_merge_back(["a"], list("pq"), 0, 0) == ["q"]
    assert op_merge_back(list("ab"), list("pqr"), 1, 0) == ["a", "r", "q"]


def test_section_bounds_checked():
    with pytest.raises(InternalInvariantError):
        op_split(list("abc"), 2, 1)
    with pytest.raises(InternalInvariantError):
        op_split(list("abc"), 1, 1)
    with pytest.raises(InternalInvariantError):
        op_reverse(list("abc"), 0, 5)
    with pytest.raises(InternalInvariantError):
        op_merge_fwd(list("ab"), list("pq"), 3, 0)


def test_reverse_empty_middle_just_deletes():
    assert op_reverse(list("ab"), 0, 1) == []
    assert op_reverse(list("abcd"), 1, 2) == ["a", "d"]


items = st.lists(st.integers(0, 99), min_size=2, max_size=12)


@given(items, st.data())
def test_split_and_reverse_conserve_entries(x, data):
    j2 = data.draw(st.integers(1, len(x) - 1))
    j1 = data.draw(st.integers(0, j2 - 1))
    keep = sorted(x[:j1] + x[j1 + 1 : j2] + x[j2 + 1 :])
    mid, outer = op_split(x, j1, j2)
    assert sorted(mid + outer) == keep
    assert sorted(op_reverse(x, j1, j2)) == keep


@given(items, items, st.data())
def test_merges_conserve_entries(x, y, data):
    j1 = data.draw(st.integers(0, len(x) - 1))
    j2 = data.draw(st.integers(0, len(y) - 1))
    keep = sorted(x[:j1] + x[j1 + 1 :] + y[:j2] + y[j2 + 1 :])
    assert sorted(op_merge_fwd(x, y, j1, j2)) == keep
    assert sorted(op_merge_back(x, y, j1, j2)) == keep


def test_flip_q_codes_examples():
    assert flip_q_codes([3, 0, 4], toks("O1", "X+1", "U1")) == [4, 0, 3]
    assert flip_q_codes([4, 5], toks("O2", "U2")) == [5, 4]
    section = toks("O1", "X+1", "U1", "O2")
    codes = [3, 0, 4, 5]
    assert flip_q_codes(flip_q_codes(codes, section), section) == codes


def test_flip_q_codes_length_mismatch():
    with pytest.raises(InternalInvariantError):
        flip_q_codes([3, 4], toks("O1"))


def test_update_signs_examples():
    # both branches of crossing 2 inside the reversed section: unchanged
    section = toks("O2", "U2", "X-2", "O2", "U2", "X+2")
    assert update_signs_on_reversal({2: 1}, section) == {2: 1}
    # a single branch inside: negated
    assert update_signs_on_reversal({3: 1}, toks("X+3")) == {3: -1}
    assert update_signs_on_reversal({1: -1, 3: -1}, toks("X+3")) == {1: -1, 3: 1}
    # nothing reversed: identity
    assert update_signs_on_reversal({1: 1, 2: -1}, []) == {1: 1, 2: -1}


@given(st.dictionaries(st.integers(1, 6), st.sampled_from([1, -1]), max_size=6))
def test_update_signs_is_involutive(signs):
    section = toks("X+1", "U1", "X-3")
    once = update_signs_on_reversal(signs, section)
    assert update_signs_on_reversal(once, section) == signs


def test_component_wrappers_keep_lockstep(two_crossing):
    c = two_crossing.components[0]
    mid, outer = split_component(c, 1, 8)
    for part in (mid, outer):
        assert len(part.entries) == len(part.heights) == len(part.orients)
    assert [str(h) for h in mid.heights] == ["6", "5", "7", "3", "4", "7"]
    rev = reverse_component_section(c, 1, 8)
    assert len(rev.entries) == len(rev.heights) == len(rev.orients) == len(c.entries) - 2

    merged = merge_components_fwd(mid, outer, 0, 0)
    assert len(merged.entries) == len(merged.heights) == len(merged.orients)
    merged2 = merge_components_back(mid, outer, 0, 0)
    assert len(merged2.entries) == len(merged2.heights) == len(merged2.orients)
