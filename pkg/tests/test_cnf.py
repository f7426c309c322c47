import time

import pytest
from hypothesis import given, strategies as st

from kphi_utilities import kphi_cnf
from kphi_utilities.kphi_cnf import (PHI_NEG, CnfFormula, ConflictPair, Literal, brute_force_sat, conflict_pairs,
                                     evaluate, normalize, parse_dimacs, random_3cnf, write_dimacs)
from kphi_utilities.kphi_errors import CnfParseError, PreconditionError
from kphi_utilities.kphi_verify import FULL_3CNF, TWO_CONFLICT


@st.composite
def formulas(draw, max_width=4):
    n = draw(st.integers(1, 6))
    literal = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(literal, min_size=1, max_size=max_width), max_size=8))
    return CnfFormula.from_ints(n, clauses)


def test_parse_simple():
    phi = parse_dimacs('c comment\np cnf 3 2\n1 -2 0\n2 3 -1 0\n')
    assert phi.n == 3
    assert phi.to_ints() == [[1, -2], [2, 3, -1]]


def test_parse_multiline_clause():
    phi = parse_dimacs('p cnf 3 1\n1 2\n3 0\n')
    assert phi.to_ints() == [[1, 2, 3]]


def test_parse_percent_terminator():
    phi = parse_dimacs('p cnf 2 1\n1 2 0\n%\n0\n')
    assert phi.t == 1


def test_parse_bytes():
    assert parse_dimacs(b'p cnf 1 2\n1 0\n-1 0\n') == PHI_NEG


@pytest.mark.parametrize('text', [
    '1 2 0\n',
    'p cnf 2 1\n',
    'p cnf 2 2\n1 2 0\n',
    'p cnf 2 1\n1 3 0\n',
    'p cnf 2 1\n1 2\n',
    'p cnf 2 1\np cnf 2 1\n1 0\n',
    'p dnf 2 1\n1 0\n',
    'p cnf 2 1\n1 x 0\n',
    'p cnf two 1\n1 0\n',
])
def test_parse_errors(text):
    with pytest.raises(CnfParseError):
        parse_dimacs(text)


def test_parse_non_utf8():
    with pytest.raises(CnfParseError):
        parse_dimacs(b'p cnf 1 1\n\xff 0\n')


def test_wide_clause_is_parsed(caplog):
    phi = parse_dimacs('p cnf 4 1\n1 2 3 4 0\n')
    assert phi.widths == [4]
    assert 'more than 3 literals' in caplog.text


@given(formulas())
def test_dimacs_round_trip(phi):
    assert parse_dimacs(write_dimacs(phi, ['generated'])) == phi


def test_write_dimacs():
    assert write_dimacs(PHI_NEG) == 'p cnf 1 2\n1 0\n-1 0\n'


def test_literal_ints():
    assert Literal.from_int(-3) == Literal(3, 0)
    assert Literal(3, 0).to_int() == -3
    assert Literal(2, 1).negated() == Literal(2, 0)
    with pytest.raises(PreconditionError):
        Literal(0, 1)


def test_variable_out_of_range():
    with pytest.raises(PreconditionError):
        CnfFormula.from_ints(2, [[3]])


def test_normalize_drops_tautology():
    phi = CnfFormula.from_ints(2, [[1, -1, 2], [2]])
    assert normalize(phi).to_ints() == [[2]]


def test_normalize_deduplicates():
    phi = CnfFormula.from_ints(3, [[1, 1, 2, 3, 2]])
    assert normalize(phi).to_ints() == [[1, 2, 3]]


def test_normalize_width_cap():
    with pytest.raises(PreconditionError):
        normalize(CnfFormula.from_ints(4, [[1, 2, 3, 4]]))


def test_normalize_empty_clause():
    with pytest.raises(PreconditionError):
        normalize(parse_dimacs('p cnf 1 1\n0\n'))


@given(formulas(max_width=3))
def test_normalize_idempotent(phi):
    once = normalize(phi)
    assert normalize(once) == once


def test_conflicts_of_phi_neg():
    assert conflict_pairs(PHI_NEG) == [ConflictPair((2, 1), (1, 1))]
    assert conflict_pairs(PHI_NEG)[0].tag == '2.1-1.1'


def test_conflicts_of_two_conflict_formula():
    pairs = conflict_pairs(TWO_CONFLICT)
    assert [p.tag for p in pairs] == ['2.1-1.1', '2.3-1.3']


def test_conflicts_skip_same_clause():
    assert conflict_pairs(CnfFormula.from_ints(1, [[1, -1]])) == []


def test_evaluate():
    assert evaluate(TWO_CONFLICT, [1, 0, 0])
    assert not evaluate(TWO_CONFLICT, [0, 0, 0])


def test_phi_neg_unsat():
    result = brute_force_sat(PHI_NEG)
    assert result.verdict == 'UNSAT'
    assert result.witness is None


def test_full_formula_unsat():
    assert not brute_force_sat(FULL_3CNF).satisfiable


def test_smallest_witness():
    assert brute_force_sat(TWO_CONFLICT).witness == (1, 0, 0)


def test_witness_independent_of_workers():
    phi = random_3cnf(8, 20, seed=3)
    serial = brute_force_sat(phi, chunk=16, workers=1)
    threaded = brute_force_sat(phi, chunk=16, workers=4)
    assert serial == threaded
    if serial.satisfiable:
        assert evaluate(phi, serial.witness)


def test_sat_cap():
    with pytest.raises(PreconditionError):
        brute_force_sat(CnfFormula.from_ints(5, [[1]]), max_vars=4)


def test_random_3cnf_reproducible():
    phi = random_3cnf(6, 10, seed=7)
    assert phi == random_3cnf(6, 10, seed=7)
    assert phi.widths == [3] * 10
    assert all(len({lit.var for lit in c.literals}) == 3 for c in phi.clauses)


def test_random_3cnf_needs_three_variables():
    with pytest.raises(PreconditionError):
        random_3cnf(2, 1)


def test_threaded_search_stops_after_first_hit(monkeypatch):
    search = kphi_cnf._first_satisfying
    calls = []

    def slow_after_first(clauses, start, stop):
        calls.append(start)
        if start:
            time.sleep(0.01)
        return search(clauses, start, stop)

    monkeypatch.setattr(kphi_cnf, '_first_satisfying', slow_after_first)
    phi = CnfFormula.from_ints(12, [[-1]])
    result = brute_force_sat(phi, chunk=16, workers=2)
    assert result.witness == (0,) * 12
    assert len(calls) < 32
