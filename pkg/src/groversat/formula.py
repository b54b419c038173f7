"""CNF formulas: parsing, evaluation and brute-force classification.

A formula is a conjunction of clauses, each clause a disjunction of literals
over named Boolean variables. Two surface syntaxes are supported: a small
infix grammar (``(~a|~b)&(a|b)&a``) and standard DIMACS CNF. Exhaustive
enumeration (`classify`) is the correctness oracle for the whole toolchain.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_CLASSIFY_BOUND = 24
MULTIPLE_SOLUTIONS_CAP = 16

# An assignment is one bit per variable, in variable-table order.
Assignment = tuple[int, ...]


class FormulaError(ValueError):
    """Base error for formula construction and parsing."""


class FormulaSyntaxError(FormulaError):
    """Malformed source text; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class BoundExceededError(FormulaError):
    """Too many variables for exhaustive enumeration."""


@dataclass(frozen=True)
class Literal:
    """A variable occurrence, possibly negated."""

    variable: int
    negated: bool = False

    def satisfied_by(self, value: int) -> bool:
        return bool(value) != self.negated


@dataclass(frozen=True)
class Clause:
    """A nonempty disjunction of literals over distinct variables."""

    literals: tuple[Literal, ...]

    def __post_init__(self):
        if not self.literals:
            raise FormulaError("empty clause")
        seen: set[int] = set()
        for lit in self.literals:
            if lit.variable in seen:
                raise FormulaError(
                    f"clause references variable {lit.variable} more than once"
                )
            seen.add(lit.variable)

    @property
    def width(self) -> int:
        return len(self.literals)


@dataclass(frozen=True)
class CnfFormula:
    """An ordered conjunction of clauses over an ordered variable table."""

    variables: tuple[str, ...]
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise FormulaError("duplicate variable names")
        for clause in self.clauses:
            for lit in clause.literals:
                if not 0 <= lit.variable < len(self.variables):
                    raise FormulaError(
                        f"literal references unknown variable {lit.variable}"
                    )

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class SatClassification:
    """Exact solution census: total count plus a capped solution list."""

    count: int
    solutions: tuple[Assignment, ...]

    @property
    def is_unsatisfiable(self) -> bool:
        return self.count == 0

    @property
    def is_unique(self) -> bool:
        return self.count == 1

    @property
    def is_multiple(self) -> bool:
        return self.count >= 2

    @property
    def kind(self) -> str:
        if self.is_unsatisfiable:
            return "Unsatisfiable"
        return "Unique" if self.is_unique else "Multiple"

    @property
    def unique_solution(self) -> Assignment:
        if not self.is_unique:
            raise ValueError(f"classification is {self.kind}, not Unique")
        return self.solutions[0]


_TOKEN_RE = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[~|&()]))")


def _tokenize_infix(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            # Trailing whitespace only.
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        if match.group("ident") is not None:
            tokens.append(("ident", match.group("ident"), match.start("ident")))
        else:
            tokens.append(("sym", match.group("sym"), match.start("sym")))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _InfixParser:
    """Recursive-descent parser for clause&clause&... with | inside clauses."""

    def __init__(self, text: str):
        self.tokens = _tokenize_infix(text)
        self.pos = 0
        self.variables: list[str] = []
        self.index: dict[str, int] = {}

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, sym: str):
        kind, value, offset = self.peek()
        if kind != "sym" or value != sym:
            raise FormulaSyntaxError(f"expected {sym!r}", offset)
        self.advance()

    def parse(self) -> CnfFormula:
        clauses = [self.parse_clause()]
        while True:
            kind, value, offset = self.peek()
            if kind == "end":
                break
            if kind == "sym" and value == "&":
                self.advance()
                clauses.append(self.parse_clause())
            else:
                raise FormulaSyntaxError(f"expected '&' or end of input", offset)
        return CnfFormula(tuple(self.variables), tuple(clauses))

    def parse_clause(self) -> Clause:
        kind, value, offset = self.peek()
        if kind == "sym" and value == "(":
            self.advance()
            clause = self.parse_disjunction(offset)
            self.expect_sym(")")
            return clause
        return self.parse_disjunction(offset)

    def parse_disjunction(self, clause_offset: int) -> Clause:
        literals = [self.parse_literal()]
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value == "|":
                self.advance()
                literals.append(self.parse_literal())
            else:
                break
        try:
            return Clause(tuple(literals))
        except FormulaError as exc:
            raise FormulaSyntaxError(str(exc), clause_offset) from None

    def parse_literal(self) -> Literal:
        negated = False
        kind, value, offset = self.peek()
        if kind == "sym" and value == "~":
            negated = True
            self.advance()
            kind, value, offset = self.peek()
        if kind != "ident":
            raise FormulaSyntaxError("expected a variable name", offset)
        self.advance()
        if value not in self.index:
            self.index[value] = len(self.variables)
            self.variables.append(value)
        return Literal(self.index[value], negated)


def parse_infix(text: str) -> CnfFormula:
    """Parse the infix surface syntax.

    Variables are identifiers, ``~`` negates, ``|`` joins literals into a
    clause, ``&`` joins clauses, parentheses delimit clauses. Variables are
    numbered by first appearance; clause and literal order is preserved.
    """
    return _InfixParser(text).parse()


def parse_dimacs(text: str) -> CnfFormula:
    """Parse standard DIMACS CNF text.

    Variable ``i`` is named ``x<i>``. The declared variable and clause counts
    must match the body exactly.
    """
    declared_vars = declared_clauses = None
    raw_clauses: list[list[int]] = []
    current: list[int] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if declared_vars is not None:
                raise FormulaError(f"duplicate header on line {line_no}")
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"malformed header on line {line_no}: {stripped!r}")
            try:
                declared_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormulaError(
                    f"non-integer counts in header on line {line_no}"
                ) from None
            if declared_vars < 0 or declared_clauses < 0:
                raise FormulaError(f"negative counts in header on line {line_no}")
            continue
        if declared_vars is None:
            raise FormulaError(f"clause before header on line {line_no}")
        for token in stripped.split():
            try:
                lit = int(token)
            except ValueError:
                raise FormulaError(
                    f"bad token {token!r} on line {line_no}"
                ) from None
            if lit == 0:
                if not current:
                    raise FormulaError(f"zero-length clause on line {line_no}")
                raw_clauses.append(current)
                current = []
            else:
                if abs(lit) > declared_vars:
                    raise FormulaError(
                        f"variable {abs(lit)} out of range on line {line_no}"
                    )
                current.append(lit)
    if current:
        raise FormulaError("unterminated clause at end of input")
    if declared_vars is None:
        raise FormulaError("missing 'p cnf' header")
    if len(raw_clauses) != declared_clauses:
        raise FormulaError(
            f"header declares {declared_clauses} clauses, found {len(raw_clauses)}"
        )
    variables = tuple(f"x{i}" for i in range(1, declared_vars + 1))
    clauses = tuple(
        Clause(tuple(Literal(abs(lit) - 1, lit < 0) for lit in raw))
        for raw in raw_clauses
    )
    return CnfFormula(variables, clauses)


def emit_dimacs(f: CnfFormula) -> str:
    """Serialize to DIMACS CNF. Names are dropped; index order is kept."""
    lines = [f"p cnf {f.variable_count} {f.clause_count}"]
    for clause in f.clauses:
        parts = [
            str(-(lit.variable + 1) if lit.negated else lit.variable + 1)
            for lit in clause.literals
        ]
        lines.append(" ".join(parts) + " 0")
    return "\n".join(lines) + "\n"


def evaluate(f: CnfFormula, x: Assignment) -> bool:
    """True iff every clause has a satisfied literal. Empty formula is true."""
    if len(x) != f.variable_count:
        raise FormulaError(
            f"assignment length {len(x)} != variable count {f.variable_count}"
        )
    return all(
        any(lit.satisfied_by(x[lit.variable]) for lit in clause.literals)
        for clause in f.clauses
    )


def classify(
    f: CnfFormula, max_vars: int = DEFAULT_CLASSIFY_BOUND
) -> SatClassification:
    """Exhaustively enumerate all assignments and count the satisfying ones.

    The returned solution list is capped at MULTIPLE_SOLUTIONS_CAP entries;
    the count is always exact.
    """
    n = f.variable_count
    if n > max_vars:
        raise BoundExceededError(
            f"{n} variables exceeds brute-force bound of {max_vars}"
        )
    count = 0
    solutions: list[Assignment] = []
    for bits in range(1 << n):
        x = index_to_assignment(bits, n)
        if evaluate(f, x):
            count += 1
            if len(solutions) < MULTIPLE_SOLUTIONS_CAP:
                solutions.append(x)
    return SatClassification(count, tuple(solutions))


def assignment_to_index(x: Assignment) -> int:
    """Pack an assignment into a basis index, variable 0 as the low bit."""
    idx = 0
    for i, bit in enumerate(x):
        if bit:
            idx |= 1 << i
    return idx


def index_to_assignment(idx: int, n: int) -> Assignment:
    return tuple((idx >> i) & 1 for i in range(n))


def format_assignment(f: CnfFormula, x: Assignment) -> str:
    return " ".join(f"{name}={bit}" for name, bit in zip(f.variables, x))


def make_formula(
    variables: Sequence[str], clauses: Iterable[Sequence[tuple[int, bool]]]
) -> CnfFormula:
    """Build a formula from (variable index, negated) pairs per clause."""
    built = tuple(
        Clause(tuple(Literal(v, neg) for v, neg in clause)) for clause in clauses
    )
    return CnfFormula(tuple(variables), built)
