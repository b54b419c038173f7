import itertools

import numpy as np
import pytest

from groversat import formula as fm
from helpers import EQ2_DIMACS, EQ2_INFIX, EQ6_DIMACS, EQ6_INFIX, EQ7_INFIX, random_formula_spec


class TestParseInfix:
    def test_two_variable_three_clause(self):
        f = fm.parse_infix(EQ2_INFIX)
        assert f.variables == ("a", "b")
        assert [c.width for c in f.clauses] == [2, 2, 1]
        first = f.clauses[0].literals
        assert [(l.variable, l.negated) for l in first] == [(0, True), (1, True)]

    def test_minimal(self):
        f = fm.parse_infix("a")
        assert f.variables == ("a",)
        assert f.clause_count == 1
        assert f.clauses[0].literals == (fm.Literal(0, False),)

    def test_three_variable_four_clause(self):
        f = fm.parse_infix(EQ7_INFIX)
        assert f.variables == ("a", "b", "c")
        assert [c.width for c in f.clauses] == [3, 3, 1, 1]

    def test_variables_ordered_by_first_appearance(self):
        f = fm.parse_infix("(b|a)&c")
        assert f.variables == ("b", "a", "c")

    def test_bare_disjunction_is_one_clause(self):
        f = fm.parse_infix("a|b")
        assert f.clause_count == 1
        assert f.clauses[0].width == 2

    def test_syntax_error_carries_offset(self):
        with pytest.raises(fm.FormulaSyntaxError) as err:
            fm.parse_infix("a & (b")
        assert err.value.offset == 6
        with pytest.raises(fm.FormulaSyntaxError):
            fm.parse_infix("a $ b")
        with pytest.raises(fm.FormulaSyntaxError):
            fm.parse_infix("a && b")
        with pytest.raises(fm.FormulaSyntaxError):
            fm.parse_infix("()")

    def test_repeated_variable_in_clause_rejected(self):
        with pytest.raises(fm.FormulaError):
            fm.parse_infix("(a|~a)")
        with pytest.raises(fm.FormulaError):
            fm.parse_infix("(a|b|a)")


class TestParseDimacs:
    def test_two_variable_three_clause(self):
        f = fm.parse_dimacs(EQ2_DIMACS)
        assert f.variables == ("x1", "x2")
        ref = fm.parse_infix(EQ2_INFIX)
        assert f.clauses == ref.clauses

    def test_minimal(self):
        f = fm.parse_dimacs("p cnf 1 1\n1 0\n")
        assert f.variables == ("x1",)
        assert f.clauses[0].literals == (fm.Literal(0, False),)

    def test_three_variable_three_clause(self):
        f = fm.parse_dimacs(EQ6_DIMACS)
        assert f.variables == ("x1", "x2", "x3")
        assert f.clauses == fm.parse_infix(EQ6_INFIX).clauses

    def test_comments_and_multiline_clauses(self):
        f = fm.parse_dimacs("c a comment\np cnf 2 1\n1\n-2 0\n")
        assert f.clause_count == 1
        assert f.clauses[0].width == 2

    def test_errors(self):
        with pytest.raises(fm.FormulaError):
            fm.parse_dimacs("1 0\n")  # clause before header
        with pytest.raises(fm.FormulaError):
            fm.parse_dimacs("p cnf 1 1\np cnf 1 1\n1 0\n")
        with pytest.raises(fm.FormulaError):
            fm.parse_dimacs("p cnf 2 2\n1 0\n")  # count mismatch
        with pytest.raises(fm.FormulaError):
            fm.parse_dimacs("p cnf 2 2\n1 0\n0\n")  # zero-length clause
        with pytest.raises(fm.FormulaError):
            fm.parse_dimacs("p cnf 2 1\n3 0\n")  # out of range
        with pytest.raises(fm.FormulaError):
            fm.parse_dimacs("p cnf 2 1\n1 2\n")  # unterminated


class TestRoundTrip:
    def test_fixed_formulas(self):
        for text in (EQ2_INFIX, EQ6_INFIX, EQ7_INFIX, "a", "a|b"):
            f = fm.parse_infix(text)
            back = fm.parse_dimacs(fm.emit_dimacs(f))
            assert back.variable_count == f.variable_count
            assert back.clauses == f.clauses

    def test_random_formulas(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            names, clauses = random_formula_spec(rng)
            f = fm.make_formula(names, clauses)
            back = fm.parse_dimacs(fm.emit_dimacs(f))
            assert back.variable_count == f.variable_count
            assert back.clauses == f.clauses


class TestEvaluate:
    def test_paper_solution(self):
        f = fm.parse_infix(EQ2_INFIX)
        assert fm.evaluate(f, (1, 0)) is True
        assert fm.evaluate(f, (0, 0)) is False

    def test_three_sat_by_enumeration(self):
        # Independent truth-table check of the four-clause formula.
        ref = lambda a, b, c: (a or b or c) and (a or not b or c) and b and not c
        f = fm.parse_infix(EQ7_INFIX)
        sat = [x for x in itertools.product((0, 1), repeat=3) if ref(*x)]
        assert sat == [(1, 1, 0)]
        for x in itertools.product((0, 1), repeat=3):
            assert fm.evaluate(f, x) == ref(*x)

    def test_empty_formula_is_true(self):
        f = fm.CnfFormula((), ())
        assert fm.evaluate(f, ()) is True

    def test_length_mismatch(self):
        f = fm.parse_infix("a")
        with pytest.raises(fm.FormulaError):
            fm.evaluate(f, (1, 0))

    def test_agrees_with_naive_check_on_random_pairs(self):
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 1000:
            names, clauses = random_formula_spec(rng)
            f = fm.make_formula(names, clauses)
            x = tuple(int(b) for b in rng.integers(2, size=len(names)))
            naive = all(
                any((x[v] == 0) == neg for v, neg in clause) for clause in clauses
            )
            assert fm.evaluate(f, x) == naive
            checked += 1


class TestClassify:
    def test_unique_solution(self):
        ref = lambda a, b, c: (a or b) and (not a or c) and not b
        sat = [x for x in itertools.product((0, 1), repeat=3) if ref(*x)]
        assert sat == [(1, 0, 1)]
        cls = fm.classify(fm.parse_infix(EQ6_INFIX))
        assert cls.is_unique
        assert cls.unique_solution == (1, 0, 1)

    def test_unsatisfiable(self):
        cls = fm.classify(fm.parse_infix("a&~a"))
        assert cls.is_unsatisfiable
        assert cls.kind == "Unsatisfiable"

    def test_multiple(self):
        cls = fm.classify(fm.parse_infix("a|b"))
        assert cls.is_multiple
        assert cls.count == 3
        assert len(cls.solutions) == 3

    def test_bound(self):
        f = fm.make_formula([f"v{i}" for i in range(25)], [[(0, False)]])
        with pytest.raises(fm.BoundExceededError):
            fm.classify(f)
        # A tighter explicit bound is honored too.
        small = fm.make_formula(["p", "q"], [[(0, False)]])
        with pytest.raises(fm.BoundExceededError):
            fm.classify(small, max_vars=1)

    def test_unique_matches_exhaustive_evaluation(self):
        rng = np.random.default_rng(13)
        uniques = 0
        for _ in range(300):
            names, clauses = random_formula_spec(rng)
            f = fm.make_formula(names, clauses)
            cls = fm.classify(f)
            expected = [
                x
                for x in itertools.product((0, 1), repeat=len(names))
                if all(any((x[v] == 0) == neg for v, neg in cl) for cl in clauses)
            ]
            assert cls.count == len(expected)
            if cls.is_unique:
                uniques += 1
                assert cls.unique_solution == expected[0]
        assert uniques > 0

    def test_solution_list_is_capped(self):
        f = fm.make_formula([f"v{i}" for i in range(8)], [[(0, False)]])
        cls = fm.classify(f)
        assert cls.count == 128
        assert len(cls.solutions) == fm.MULTIPLE_SOLUTIONS_CAP


def test_assignment_index_round_trip():
    for n in range(1, 7):
        for idx in range(1 << n):
            assert fm.assignment_to_index(fm.index_to_assignment(idx, n)) == idx
