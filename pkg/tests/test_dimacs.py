import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multigain.dimacs import clause_width, parse_dimacs, read_dimacs, serialize_dimacs, write_dimacs
from multigain.errors import (
    ClauseCountMismatch,
    DimacsError,
    EmptyClause,
    InputError,
    MalformedHeader,
    VariableOutOfRange,
)
from multigain.problems import CnfFormula, make_maxsat_c


def test_basic_parse():
    f = parse_dimacs("p cnf 3 2\n1 -2 0\n-1 3 0")
    assert f.num_vars == 3
    assert f.clauses == ((1, -2), (-1, 3))


def test_comment_and_stream_input():
    f = parse_dimacs(io.StringIO("c comment\np cnf 1 1\n1 0\n"))
    assert (f.num_vars, f.s) == (1, 1)


def test_clause_spanning_lines_and_percent_terminator():
    f = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n0\n%\n0\n")
    assert f.clauses == ((1, 2, 3), (-1,))


def test_unterminated_final_clause():
    assert parse_dimacs("p cnf 2 1\n1 -2").clauses == ((1, -2),)


@pytest.mark.parametrize(
    "text, err",
    [
        ("p cnf 2 1\n3 0", VariableOutOfRange),
        ("p cnf 2 2\n1 0", ClauseCountMismatch),
        ("p cnf 2 1\n0", EmptyClause),
        ("1 0\np cnf 1 1", MalformedHeader),
        ("p sat 2 1\n1 0", MalformedHeader),
        ("p cnf x 1\n1 0", MalformedHeader),
        ("p cnf 1 1\np cnf 1 1\n1 0", MalformedHeader),
        ("", MalformedHeader),
        ("p cnf 2 1\n1 a 0", MalformedHeader),
    ],
)
def test_errors(text, err):
    with pytest.raises(err):
        parse_dimacs(text)


def test_error_hierarchy():
    assert issubclass(VariableOutOfRange, DimacsError)
    assert issubclass(DimacsError, InputError)


def test_file_roundtrip(tmp_path):
    f = make_maxsat_c(6)
    path = tmp_path / "c.cnf"
    write_dimacs(f, path, comments=["two optima"])
    g = read_dimacs(path)
    assert g.clauses == f.clauses and g.num_vars == f.num_vars
    assert path.read_text().startswith("c two optima\np cnf 6 10\n")
    assert clause_width(g) == 2
    assert clause_width(CnfFormula(3, ((1,), (1, 2)))) is None


literal = st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(literal, min_size=1, max_size=4).map(tuple), min_size=0, max_size=10))
def test_serialize_parse_roundtrip(clauses):
    f = CnfFormula(6, tuple(clauses))
    g = parse_dimacs(serialize_dimacs(f))
    assert g.clauses == f.clauses
