"""Reading and writing DIMACS CNF."""

from __future__ import annotations

import io
from typing import Iterable, TextIO

from .errors import ClauseCountMismatch, EmptyClause, MalformedHeader, VariableOutOfRange
from .problems import CnfFormula


def parse_dimacs(text: str | TextIO) -> CnfFormula:
    """Parse DIMACS CNF from a string or text stream.

    Lines starting with ``c`` are comments. The ``p cnf <vars> <clauses>``
    header must appear exactly once, before any clause. Clauses are signed
    integers terminated by ``0`` and may span lines; a trailing clause
    without its ``0`` is accepted. A ``%`` line (SATLIB style) ends the data.
    """
    if not isinstance(text, str):
        text = text.read()
    num_vars = num_clauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []

    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise MalformedHeader(f"line {lineno}: duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedHeader(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedHeader(f"line {lineno}: non-integer counts") from None
            if num_vars < 1 or num_clauses < 0:
                raise MalformedHeader(f"line {lineno}: invalid counts")
            continue
        if num_vars is None:
            raise MalformedHeader(f"line {lineno}: clause data before the problem line")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise MalformedHeader(f"line {lineno}: unexpected token {token!r}") from None
            if lit == 0:
                if not current:
                    raise EmptyClause(f"line {lineno}: empty clause")
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > num_vars:
                raise VariableOutOfRange(
                    f"line {lineno}: variable {abs(lit)} outside 1..{num_vars}"
                )
            else:
                current.append(lit)

    if num_vars is None:
        raise MalformedHeader("missing problem line")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != num_clauses:
        raise ClauseCountMismatch(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def serialize_dimacs(formula: CnfFormula, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.num_vars} {formula.s}")
    lines.extend(" ".join(str(l) for l in clause) + " 0" for clause in formula.clauses)
    return "\n".join(lines) + "\n"


def read_dimacs(path) -> CnfFormula:
    with open(path, encoding="utf-8") as fh:
        return parse_dimacs(fh)


def write_dimacs(formula: CnfFormula, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_dimacs(formula, comments))


def clause_width(formula: CnfFormula) -> int | None:
    """Common clause length ``k`` if the formula is k-uniform, else ``None``.

    Advisory only; the parser accepts general CNF.
    """
    widths = {len(c) for c in formula.clauses}
    return widths.pop() if len(widths) == 1 else None
