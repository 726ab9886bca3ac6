import json

import pytest

from msmp.formats import (
    ParseError,
    parse_dimacs,
    parse_dnf,
    parse_formula_text,
    parse_gcnf,
    parse_model_line,
    parse_wcnf,
    write_answer,
    write_dimacs,
)
from msmp.formula import And, Atom, Not, Or


class TestDimacs:
    def test_basic(self):
        cnf = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")
        assert cnf.clauses == [(1,), (-1,)]
        assert cnf.nvars == 1

    def test_tautologous_clause_rejected_with_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_dimacs("p cnf 2 1\n1 -1 0\n")

    def test_universe_from_header(self):
        cnf = parse_dimacs("p cnf 2 3\n1 0\n-1 0\n2 0\n")
        assert len(cnf.clauses) == 3
        assert cnf.nvars == 2

    def test_var_above_header_rejected(self):
        with pytest.raises(ParseError, match="exceeds declared"):
            parse_dimacs("p cnf 1 1\n2 0\n")

    def test_clause_count_mismatch(self):
        with pytest.raises(ParseError, match="declares 2 clauses"):
            parse_dimacs("p cnf 1 2\n1 0\n")

    def test_trailing_junk_rejected(self):
        with pytest.raises(ParseError):
            parse_dimacs("p cnf 1 1\n1 0\ngarbage\n")

    def test_missing_terminator(self):
        with pytest.raises(ParseError, match="0-terminated"):
            parse_dimacs("p cnf 2 1\n1 2\n")

    def test_comments_ignored(self):
        cnf = parse_dimacs("c hello\np cnf 1 1\nc mid\n1 0\n")
        assert cnf.clauses == [(1,)]

    def test_parse_write_fixpoint(self):
        text = "p cnf 3 3\n1 -2 0\n2 3 0\n-3 0\n"
        once = parse_dimacs(text)
        again = parse_dimacs(write_dimacs(once))
        assert once.clauses == again.clauses and once.nvars == again.nvars


class TestGcnf:
    def test_groups(self):
        cnf, groups = parse_gcnf("p gcnf 1 2 1\n{0} 1 0\n{1} -1 0\n")
        assert cnf.clauses == [(1,), (-1,)]
        assert groups == {0: [0], 1: [1]}

    def test_group_above_declared(self):
        with pytest.raises(ParseError, match="group 2 exceeds"):
            parse_gcnf("p gcnf 1 1 1\n{2} 1 0\n")

    def test_prefix_required(self):
        with pytest.raises(ParseError, match="group"):
            parse_gcnf("p gcnf 1 1 1\n1 0\n")


class TestWcnf:
    def test_unit_weights_become_singleton_groups(self):
        cnf, groups = parse_wcnf("p wcnf 2 3 10\n10 1 0\n1 -1 0\n1 2 0\n")
        assert cnf.clauses == [(1,), (-1,), (2,)]
        assert groups == {0: [0], 1: [1], 2: [2]}

    def test_other_weights_rejected(self):
        with pytest.raises(ParseError, match="weight 3"):
            parse_wcnf("p wcnf 1 1 10\n3 1 0\n")

    def test_topless_header_all_soft(self):
        cnf, groups = parse_wcnf("p wcnf 1 2\n1 1 0\n1 -1 0\n")
        assert 0 not in groups and len(groups) == 2


class TestDnf:
    def test_terms(self):
        dnf = parse_dnf("p dnf 2 2\n1 2 0\n-1 0\n")
        assert dnf.terms == [(1, 2), (-1,)]

    def test_contradictory_term_rejected(self):
        with pytest.raises(ParseError, match="contradictory"):
            parse_dnf("p dnf 1 1\n1 -1 0\n")


class TestFormulaText:
    def test_nested(self):
        f, _ = parse_formula_text("(or x1 (and x2 x3))")
        assert f == Or([Atom(1), And([Atom(2), Atom(3)])])

    def test_implication_desugars(self):
        f, _ = parse_formula_text("(imp x1 x2)")
        assert f == Or([Not(Atom(1)), Atom(2)])

    def test_iff_desugars(self):
        f, _ = parse_formula_text("(iff x1 x2)")
        assert f == And([Or([Not(Atom(1)), Atom(2)]), Or([Not(Atom(2)), Atom(1)])])

    def test_unary_and_rejected(self):
        with pytest.raises(ParseError, match="at least 2"):
            parse_formula_text("(and x1)")

    def test_unbalanced_parens_with_position(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_formula_text("(and x1 (or x2 x3)")

    def test_unknown_head(self):
        with pytest.raises(ParseError, match="unknown connective"):
            parse_formula_text("(xor x1 x2)")

    def test_named_variables_get_fresh_ids(self):
        f, names = parse_formula_text("(and x2 foo bar)")
        assert names == {"foo": 3, "bar": 4}
        assert f == And([Atom(2), Atom(3), Atom(4)])


class TestModelLine:
    def test_v_line(self):
        assert parse_model_line("c stuff\nv 1 -2 3 0\n") == (1, -2, 3)

    def test_multi_line(self):
        assert parse_model_line("v 1 -2\nv 3 0\n") == (1, -2, 3)

    def test_no_v_line(self):
        with pytest.raises(ParseError, match="model line"):
            parse_model_line("s SATISFIABLE\n")


class TestWriteAnswer:
    def _answer(self, kind, payload, optimum=None):
        from msmp.minimize import MinimalSetResult
        from msmp.reductions import Problem, ProblemAnswer

        return ProblemAnswer(
            kind=Problem(kind),
            payload=tuple(payload),
            optimum=optimum,
            result=MinimalSetResult(tuple(payload), None, 3, "deletion"),
            time_ms=1.5,
        )

    def test_plain_indices(self):
        assert write_answer(self._answer("mus", (1, 2))) == "v 1 2 0\n"

    def test_plain_literals_sorted_by_var(self):
        assert write_answer(self._answer("backbone", (-3, 1))) == "v 1 -3 0\n"

    def test_plain_empty(self):
        assert write_answer(self._answer("backbone", ())) == "v 0\n"

    def test_json_round_trips(self):
        out = write_answer(self._answer("mus", (2, 1)), "json")
        obj = json.loads(out)
        assert obj["problem"] == "mus"
        assert obj["answer"] == [1, 2]
        assert obj["oracle_calls"] == 3
        assert obj["algorithm"] == "deletion"
        assert isinstance(obj["time_ms"], float)
        assert set(obj) == {"problem", "answer", "oracle_calls", "algorithm", "time_ms"}
