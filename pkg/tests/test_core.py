import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from presort.core import (
    KEY_MAX,
    KEY_MIN,
    Item,
    Meter,
    Sequence,
    SequenceFormatError,
    dump_sequence,
    load_sequence,
    sorted_check,
    verify_sorted_stable_permutation,
)

from vectors import SWAPPED_PAIRS16


def test_sequence_from_keys_assigns_tags_in_order():
    s = Sequence.from_keys([9, 3, 9])
    assert s.items == (Item(9, 0), Item(3, 1), Item(9, 2))
    assert s.n == 3
    assert s.keys() == [9, 3, 9]
    assert s.tags() == [0, 1, 2]


def test_sorted_check_sorted_input_scans_every_pair():
    m = Meter()
    assert sorted_check(Sequence.from_keys([1, 2, 2, 3]), m) is True
    assert m.comparisons == 3


def test_sorted_check_stops_at_first_violation():
    m = Meter()
    assert sorted_check(Sequence.from_keys([2, 1, 9, 9]), m) is False
    assert m.comparisons == 1


def test_sorted_check_charges_violation_index_plus_one():
    # descent at pair index 2 costs exactly 3 comparisons
    m = Meter()
    assert sorted_check(Sequence.from_keys([1, 3, 7, 2, 8, 0]), m) is False
    assert m.comparisons == 3


def test_sorted_check_detects_swapped_pairs_vector():
    m = Meter()
    assert sorted_check(Sequence.from_keys(SWAPPED_PAIRS16), m) is False
    assert m.comparisons == 1  # 6 > 4 right at the front


@pytest.mark.parametrize("keys", [[], [5]])
def test_sorted_check_trivial_lengths_charge_nothing(keys):
    m = Meter()
    assert sorted_check(Sequence.from_keys(keys), m) is True
    assert m.comparisons == 0


@given(st.lists(st.integers(-50, 50), max_size=60))
def test_sorted_check_agrees_with_python(keys):
    m = Meter()
    assert sorted_check(Sequence.from_keys(keys), m) == (sorted(keys) == keys)
    assert 0 <= m.comparisons <= max(len(keys) - 1, 0)


@given(st.lists(st.integers(-50, 50), max_size=60))
def test_first_descent_trace_matches_fast_path(keys):
    traced = Meter()
    traced.trace = []
    fast = Meter()
    assert traced.first_descent(list(keys)) == fast.first_descent(list(keys))
    assert traced.comparisons == len(traced.trace) == fast.comparisons


@given(st.lists(st.integers(-50, 50), max_size=60), st.integers(-50, 50))
def test_count_below_trace_matches_fast_path(keys, pivot):
    traced = Meter()
    traced.trace = []
    fast = Meter()
    assert traced.count_below(list(keys), pivot) == fast.count_below(list(keys), pivot)
    assert traced.comparisons == len(traced.trace) == fast.comparisons == len(keys)


def test_meter_cmp3_charges_one_or_two():
    m = Meter()
    assert m.cmp3(1, 2) == -1
    assert m.comparisons == 1
    assert m.cmp3(2, 1) == 1
    assert m.comparisons == 3
    assert m.cmp3(2, 2) == 0
    assert m.comparisons == 5


def test_verify_accepts_stable_sort():
    inp = Sequence([Item(2, 0), Item(1, 1), Item(2, 2)])
    out = Sequence([Item(1, 1), Item(2, 0), Item(2, 2)])
    assert verify_sorted_stable_permutation(inp, out)


def test_verify_rejects_equal_keys_out_of_tag_order():
    inp = Sequence([Item(2, 0), Item(1, 1), Item(2, 2)])
    out = Sequence([Item(1, 1), Item(2, 2), Item(2, 0)])
    assert not verify_sorted_stable_permutation(inp, out)


def test_verify_identity_on_sorted_input():
    s = Sequence.from_keys([1, 2, 2, 3])
    assert verify_sorted_stable_permutation(s, s)


def test_verify_rejects_length_and_multiset_mismatch():
    a = Sequence.from_keys([1, 2])
    assert not verify_sorted_stable_permutation(a, Sequence.from_keys([1]))
    # same keys but tags are not the input's tags
    forged = Sequence([Item(1, 1), Item(2, 0)])
    assert not verify_sorted_stable_permutation(a, forged)
    assert not verify_sorted_stable_permutation(a, Sequence.from_keys([1, 3]))


def test_verify_rejects_unsorted_output():
    a = Sequence.from_keys([2, 1])
    assert not verify_sorted_stable_permutation(a, a)


# -- text format --------------------------------------------------------------


def test_load_skips_comments_and_blanks(tmp_path):
    p = tmp_path / "in.txt"
    p.write_text("# header\n\n5\n-3\n# mid\n7\n\n")
    s = load_sequence(p)
    assert s.keys() == [5, -3, 7]
    assert s.tags() == [0, 1, 2]


def test_dump_load_round_trip(tmp_path):
    p = tmp_path / "out.txt"
    s = Sequence.from_keys([0, -9, KEY_MAX, KEY_MIN, 4])
    dump_sequence(s, p, header="two\nlines")
    text = p.read_text()
    assert text.startswith("# two\n# lines\n")
    assert load_sequence(p) == s


def test_load_rejects_garbage():
    with pytest.raises(SequenceFormatError, match="line 2"):
        load_sequence(io.StringIO("1\npotato\n"))


def test_load_rejects_out_of_range_keys():
    with pytest.raises(SequenceFormatError, match="64-bit"):
        load_sequence(io.StringIO(f"{KEY_MAX + 1}\n"))
    with pytest.raises(SequenceFormatError):
        load_sequence(io.StringIO(f"{KEY_MIN - 1}\n"))


def test_load_accepts_extreme_keys():
    s = load_sequence(io.StringIO(f"{KEY_MIN}\n{KEY_MAX}\n"))
    assert s.keys() == [KEY_MIN, KEY_MAX]


def test_load_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        load_sequence(tmp_path / "nope.txt")
