from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from kecs.errors import BudgetError, FormatError, InputError
from kecs.sat import (
    TwoCnf,
    assignment_from_int,
    assignment_to_int,
    count_satisfied,
    format_dimacs,
    parse_dimacs_2cnf,
    sat_extrema,
    satisfied_clauses,
)

PAIR = TwoCnf.from_dimacs_ints(2, [(1, 2), (-1, 2)])


def test_parse_examples():
    cnf = parse_dimacs_2cnf("p cnf 2 2\n1 2 0\n-1 2 0\n")
    assert cnf == PAIR
    assert cnf.clauses == (((1, False), (2, False)), ((1, True), (2, False)))
    with pytest.raises(FormatError, match="expected 2") as exc:
        parse_dimacs_2cnf("p cnf 1 1\n1 0\n")
    assert exc.value.line == 2
    with pytest.raises(FormatError, match="out of range"):
        parse_dimacs_2cnf("p cnf 2 1\n1 3 0\n")


def test_parse_comments_and_round_trip():
    text = "c a comment\np cnf 3 2\n1 -3 0 2\n3 0\n"
    cnf = parse_dimacs_2cnf(text)
    assert cnf.m == 2 and cnf.clauses[1] == ((2, False), (3, False))
    assert parse_dimacs_2cnf(format_dimacs(cnf)) == cnf


def test_parse_header_mismatch():
    with pytest.raises(FormatError, match="declares"):
        parse_dimacs_2cnf("p cnf 2 3\n1 2 0\n")


def test_count_examples():
    assert count_satisfied(PAIR, (True, True)) == 2
    assert count_satisfied(PAIR, (True, False)) == 1
    assert count_satisfied(PAIR, (False, False)) == 1
    with pytest.raises(InputError):
        count_satisfied(PAIR, (True,))


def test_extrema_examples():
    ext = sat_extrema(PAIR)
    assert (ext.k_max, ext.k_min) == (2, 1)
    assert ext.argmin == (False, False)  # lowest encoding among minimisers
    comp = TwoCnf.from_dimacs_ints(1, [(1, 1), (-1, -1)])
    assert sat_extrema(comp)[::2] == (1, 1)
    assert sat_extrema(TwoCnf(0, ()))[::2] == (0, 0)
    with pytest.raises(BudgetError):
        sat_extrema(TwoCnf(3, ()), max_vars=2)


def test_occurrence_flag():
    with pytest.raises(InputError, match="fewer than twice"):
        TwoCnf.from_dimacs_ints(2, [(1, 2), (1, -1)], require_two_occurrences=True)


cnfs = st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(1, n), st.booleans(), st.integers(1, n), st.booleans()),
             max_size=8)))


@given(cnfs, st.data())
def test_extrema_bound_every_assignment(case, data):
    n, raw = case
    cnf = TwoCnf(n, tuple(((a, x), (b, y)) for a, x, b, y in raw))
    ext = sat_extrema(cnf)
    a = assignment_from_int(data.draw(st.integers(0, 2 ** n - 1)), n)
    assert ext.k_min <= count_satisfied(cnf, a) <= ext.k_max
    assert count_satisfied(cnf, ext.argmax) == ext.k_max


@given(cnfs, st.data())
def test_flipping_assignment_matches_complemented_formula(case, data):
    n, raw = case
    cnf = TwoCnf(n, tuple(((a, x), (b, y)) for a, x, b, y in raw))
    bits = data.draw(st.integers(0, 2 ** n - 1))
    a = assignment_from_int(bits, n)
    flipped = tuple(not x for x in a)
    assert satisfied_clauses(cnf, a) == satisfied_clauses(cnf.complemented(), flipped)
    assert assignment_to_int(a) == bits
