import itertools

import pytest

from msmp.cardinality import CardConstraint, encode_geq
from msmp.formula import FormulaError, VarAllocator
from msmp.solver import Solver


def projected_ok(lits, bound, clauses, top_var):
    """Check, by assumption probes, that projection equals '>= bound true'."""
    n = len(lits)
    for bits in itertools.product([False, True], repeat=n):
        s = Solver()
        s.ensure_vars(top_var)
        for c in clauses:
            s.add_clause(c)
        assume = [l if b else -l for l, b in zip(lits, bits)]
        got = s.solve(assume) is not None
        if got != (sum(bits) >= bound):
            return False, bits
    return True, None


class TestEncodeGeq:
    def test_bound_zero_no_clauses(self):
        alloc = VarAllocator(4)
        assert encode_geq(CardConstraint((1, 2, 3), 0), alloc) == []

    def test_bound_above_n_unsatisfiable(self):
        alloc = VarAllocator(4)
        assert encode_geq(CardConstraint((1, 2, 3), 4), alloc) == [()]

    def test_bound_two_of_three_has_four_projected_models(self):
        lits = (1, 2, 3)
        alloc = VarAllocator(4)
        clauses = encode_geq(CardConstraint(lits, 2), alloc)
        count = 0
        for bits in itertools.product([False, True], repeat=3):
            s = Solver()
            s.ensure_vars(alloc.next_var - 1)
            for c in clauses:
                s.add_clause(c)
            if s.solve([l if b else -l for l, b in zip(lits, bits)]) is not None:
                count += 1
        assert count == 4

    @pytest.mark.parametrize("n", range(0, 7))
    def test_exact_projection_small(self, n):
        lits = tuple(range(1, n + 1))
        for bound in range(0, n + 2):
            alloc = VarAllocator(n + 1)
            clauses = encode_geq(CardConstraint(lits, bound), alloc)
            ok, bad = projected_ok(lits, bound, clauses, alloc.next_var - 1)
            assert ok, f"n={n} bound={bound} wrong at {bad}"

    def test_linear_size(self):
        for n in range(1, 9):
            for bound in range(0, n + 2):
                alloc = VarAllocator(n + 1)
                clauses = encode_geq(CardConstraint(tuple(range(1, n + 1)), bound), alloc)
                k = max(n - bound, 1)
                assert len(clauses) <= 2 * n * k + n + 1

    def test_negated_literals_supported(self):
        lits = (-1, 2, -3)
        alloc = VarAllocator(4)
        clauses = encode_geq(CardConstraint(lits, 2), alloc)
        ok, bad = projected_ok(lits, 2, clauses, alloc.next_var - 1)
        assert ok, bad

    def test_bound_out_of_range_rejected(self):
        with pytest.raises(FormulaError):
            CardConstraint((1, 2), 4)
        with pytest.raises(FormulaError):
            CardConstraint((1, 2), -1)
