import itertools

import pytest
from hypothesis import given, settings, strategies as st

from msmp.formula import (
    And,
    Assignment,
    Atom,
    CnfFormula,
    EvaluationError,
    FormulaError,
    Not,
    Or,
    check_clause,
    check_term,
    clausify,
    cnf_negation_of_clause_set,
    evaluate,
    flip_polarity,
    negate,
    substitute,
    variables,
)

x1, x2, x3 = Atom(1), Atom(2), Atom(3)


def assign(*lits):
    return Assignment.from_literals(lits)


def all_assignments(nvars):
    for bits in itertools.product([False, True], repeat=nvars):
        yield {i + 1: bits[i] for i in range(nvars)}


def _no_double_negation(f):
    if isinstance(f, Not):
        return not isinstance(f.child, Not) and _no_double_negation(f.child)
    if isinstance(f, (And, Or)):
        return all(_no_double_negation(c) for c in f.children)
    return True


# hypothesis strategy for small ASTs over x1..x4
def formulas(max_var=4):
    atoms = st.integers(1, max_var).map(Atom)
    return st.recursive(
        atoms,
        lambda sub: st.one_of(
            sub.map(Not),
            st.lists(sub, min_size=2, max_size=3).map(And),
            st.lists(sub, min_size=2, max_size=3).map(Or),
        ),
        max_leaves=8,
    )


class TestEvaluate:
    def test_or_case(self):
        assert evaluate(Or([x1, x2]), assign(-1, 2)) == 1

    def test_not_case(self):
        assert evaluate(Not(x1), assign(1)) == 0

    def test_and_case(self):
        assert evaluate(And([x1, x2]), assign(1, -2)) == 0

    def test_constants(self):
        assert evaluate(And(()), assign()) == 1
        assert evaluate(Or(()), assign()) == 0

    def test_unassigned_variable_named(self):
        with pytest.raises(EvaluationError, match="variable 2"):
            evaluate(And([x1, x2]), assign(1))


class TestNegate:
    def test_atom(self):
        assert negate(x1) == Not(x1)

    def test_double_negation(self):
        f = negate(Not(x1))
        for a in all_assignments(1):
            assert evaluate(f, a) == evaluate(x1, a)

    def test_conjunction_disagrees_everywhere(self):
        f = And([x1, x2])
        g = negate(f)
        for a in all_assignments(2):
            assert evaluate(g, a) == 1 - evaluate(f, a)

    @settings(max_examples=60, deadline=None)
    @given(formulas())
    def test_de_morgan(self, f):
        n = max(variables(f), default=1)
        lhs = negate(And([f, Atom(n)]))
        rhs = Or([negate(f), negate(Atom(n))])
        for a in all_assignments(n):
            assert evaluate(lhs, a) == evaluate(rhs, a)


class TestSubstitute:
    def test_rename(self):
        assert substitute(And([x1, x2]), {1: 4}) == And([Atom(4), x2])

    def test_fix_to_zero(self):
        f = substitute(Or([x1, x2]), {2: 0})
        for a in all_assignments(1):
            assert evaluate(f, a) == evaluate(x1, a)

    def test_rename_universe_models(self):
        # models of (x1 and not x2) over renamed vars are exactly x3=1, x4=0
        f = substitute(And([x1, Not(x2)]), {1: 3, 2: 4})
        models = [a for a in all_assignments(4) if evaluate(f, a)]
        assert all(a[3] and not a[4] for a in models)
        assert len(models) == 4  # x1, x2 free

    def test_identity_is_structural_noop(self):
        f = Or([And([x1, Not(x2)]), x3])
        assert substitute(f, {1: 1, 2: 2, 3: 3}) == f

    def test_bad_target(self):
        with pytest.raises(FormulaError):
            substitute(x1, {1: -2})


class TestFlipPolarity:
    def test_clause(self):
        assert flip_polarity(Or([x1, x2])) == Or([Not(x1), Not(x2)])

    def test_negative_leaf(self):
        assert flip_polarity(Not(x1)) == x1

    def test_models_are_complements(self):
        f = And([x1, Or([x2, Not(x3)])])
        g = flip_polarity(f)
        for a in all_assignments(3):
            comp = {v: not b for v, b in a.items()}
            assert evaluate(g, a) == evaluate(f, comp)

    @settings(max_examples=60, deadline=None)
    @given(formulas())
    def test_involution(self, f):
        twice = flip_polarity(flip_polarity(f))
        if _no_double_negation(f):
            assert twice == f
        n = max(variables(f), default=1)
        for a in all_assignments(n):
            assert evaluate(twice, a) == evaluate(f, a)


class TestClausify:
    def test_single_atom(self):
        enc = clausify(x1)
        assert enc.clauses == [(1,)]
        assert not enc.aux_vars

    def test_top_level_conjunction_flattens(self):
        enc = clausify(And([x1, x2]))
        assert sorted(enc.clauses) == [(1,), (2,)]
        assert not enc.aux_vars

    def test_projected_models_exact(self):
        f = Or([x1, And([x2, x3])])
        enc = clausify(f)
        projected = set()
        n = enc.nvars
        for bits in itertools.product([False, True], repeat=n):
            a = {i + 1: bits[i] for i in range(n)}
            if all(any(a[abs(l)] == (l > 0) for l in c) for c in enc.clauses):
                projected.add((a[1], a[2], a[3]))
        direct = {
            (a[1], a[2], a[3]) for a in all_assignments(3) if evaluate(f, a)
        }
        assert projected == direct
        assert len(direct) == 5

    @settings(max_examples=80, deadline=None)
    @given(formulas())
    def test_projection_preserved(self, f):
        nv = max(variables(f), default=1)
        enc = clausify(f)
        projected = set()
        for bits in itertools.product([False, True], repeat=enc.nvars):
            a = {i + 1: bits[i] for i in range(enc.nvars)}
            if all(any(a[abs(l)] == (l > 0) for l in c) for c in enc.clauses):
                projected.add(tuple(a[v] for v in range(1, nv + 1)))
        direct = {
            tuple(a[v] for v in range(1, nv + 1))
            for a in all_assignments(nv)
            if evaluate(f, a)
        }
        assert projected == direct

    def test_aux_vars_above_originals(self):
        enc = clausify(Or([And([x1, x2]), And([x2, x3])]))
        assert all(v > 3 for v in enc.aux_vars)


class TestNegationOfClauseSet:
    def test_single_clause(self):
        f = cnf_negation_of_clause_set([(1, 2)])
        assert f == And([Not(x1), Not(x2)])

    def test_empty_set_is_false(self):
        f = cnf_negation_of_clause_set([])
        for a in all_assignments(1):
            assert evaluate(f, a) == 0

    def test_complementary_units_satisfiable(self):
        f = cnf_negation_of_clause_set([(1,), (-1,)])
        assert any(evaluate(f, a) for a in all_assignments(1))


class TestClauseTermChecks:
    def test_tautologous_clause_rejected(self):
        with pytest.raises(FormulaError, match="tautologous"):
            check_clause([1, -1])

    def test_contradictory_term_rejected(self):
        with pytest.raises(FormulaError, match="contradictory"):
            check_term([1, -1])

    def test_cnf_universe_tracks_declared_vars(self):
        cnf = CnfFormula([(1,), (2,)], nvars=5)
        assert cnf.nvars == 5
        with pytest.raises(FormulaError):
            CnfFormula([(1,), (6,)], nvars=5)


class TestAssignment:
    def test_inconsistent_rejected(self):
        with pytest.raises(FormulaError):
            Assignment.from_literals([1, -1])

    def test_literals_sorted(self):
        assert assign(-3, 1).literals() == (1, -3)

    def test_total_over(self):
        a = assign(1, -2)
        assert a.total_over([1, 2])
        assert not a.total_over([1, 2, 3])
