import itertools
import os
import random
import stat
import sys
import textwrap

import pytest

from msmp.formula import CnfFormula
from msmp.oracle import EmbeddedSession, ExternalSession, OracleError, make_session
from msmp.solver import Solver, luby


def brute_status(nvars, clauses, fixed=()):
    fix = {abs(l): l > 0 for l in fixed}
    for bits in itertools.product([False, True], repeat=nvars):
        a = {i + 1: bits[i] for i in range(nvars)}
        if any(a[v] != val for v, val in fix.items()):
            continue
        if all(any(a[abs(l)] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def random_clauses(rng, nvars, nclauses):
    out = []
    for _ in range(nclauses):
        width = rng.randint(1, min(3, nvars))
        vs = rng.sample(range(1, nvars + 1), width)
        out.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return out


class TestSolveContract:
    def test_complementary_units_unsat(self, session):
        session.add_clauses([(1,), (-1,)])
        assert not session.solve().is_sat

    def test_assumption_guides_model(self, session):
        session.add_clauses([(1, 2)])
        out = session.solve([-1])
        assert out.is_sat and out.witness.value(2) is True

    def test_empty_clause_set_sat_with_empty_witness(self, session):
        out = session.solve()
        assert out.is_sat and len(out.witness) == 0

    def test_inconsistent_assumptions_unsat_not_error(self, session):
        session.add_clauses([(1, 2)])
        assert not session.solve([1, -1]).is_sat

    def test_call_counter_increments_by_one(self, session):
        session.add_clauses([(1,)])
        for expected in (1, 2, 3):
            session.solve()
            assert session.calls == expected


class TestIncrementality:
    def test_adding_clauses_monotone(self, session):
        session.add_clauses([(1,)])
        assert session.solve().is_sat
        session.add_clauses([(-1,)])
        assert not session.solve().is_sat
        session.add_clauses([(2,)])
        assert not session.solve().is_sat  # never back to sat

    def test_adding_nothing_keeps_result(self, session):
        session.add_clauses([(1, 2)])
        first = session.solve().witness
        second = session.solve().witness
        assert first == second

    def test_assumptions_are_transient(self, session):
        session.add_clauses([(-1,)])
        assert not session.solve([1]).is_sat
        assert session.solve().is_sat


class TestAgainstEnumeration:
    def test_small_space(self):
        rng = random.Random(4242)
        for _ in range(600):
            nv = rng.randint(1, 5)
            clauses = random_clauses(rng, nv, rng.randint(1, 8))
            sess = EmbeddedSession(validate=True)
            sess.ensure_vars(nv)
            sess.add_clauses(clauses)
            nass = rng.randint(0, 2)
            assumptions = [
                (v if rng.random() < 0.5 else -v)
                for v in (rng.randint(1, nv) for _ in range(nass))
            ]
            got = sess.solve(assumptions)
            pos = set(assumptions)
            want = (not any(-a in pos for a in pos)) and brute_status(nv, clauses, assumptions)
            assert got.is_sat == want, (clauses, assumptions)
            if got.is_sat:
                assert got.witness.total_over(range(1, nv + 1))

    def test_removing_clauses_keeps_sat(self):
        # subset of a satisfiable clause set stays satisfiable
        rng = random.Random(11)
        for _ in range(100):
            nv = rng.randint(1, 5)
            clauses = random_clauses(rng, nv, rng.randint(2, 8))
            if not brute_status(nv, clauses):
                continue
            subset = [c for c in clauses if rng.random() < 0.5]
            sess = EmbeddedSession(validate=True)
            sess.ensure_vars(nv)
            sess.add_clauses(subset)
            assert sess.solve().is_sat

    def test_determinism(self):
        rng = random.Random(99)
        clauses = random_clauses(rng, 6, 12)
        models = []
        for _ in range(2):
            sess = EmbeddedSession()
            sess.ensure_vars(6)
            sess.add_clauses(clauses)
            out = sess.solve()
            models.append(out.witness.literals() if out.is_sat else None)
        assert models[0] == models[1]


class TestLuby:
    def test_prefix(self):
        assert [luby(i) for i in range(1, 16)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


@pytest.fixture(scope="module")
def shim_solver(tmp_path_factory):
    """A tiny stand-alone external solver: brute-force model enumeration.

    Independent of this package's CDCL, so adapter tests double as a
    cross-implementation check.
    """
    script = tmp_path_factory.mktemp("shim") / "shimsat"
    script.write_text(textwrap.dedent(f"""\
        #!{sys.executable} -S
        import sys
        nv, clauses = 0, []
        for line in open(sys.argv[1]):
            line = line.strip()
            if not line or line[0] == 'c':
                continue
            if line[0] == 'p':
                nv = int(line.split()[2])
                continue
            clauses.append([int(t) for t in line.split()[:-1]])
        for i in range(1 << nv):
            val = [(i >> (v - 1)) & 1 for v in range(1, nv + 1)]
            if all(any(val[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
                print("s SATISFIABLE")
                print("v " + " ".join(str(v if val[v-1] else -v) for v in range(1, nv + 1)) + " 0")
                sys.exit(10)
        print("s UNSATISFIABLE")
        sys.exit(20)
        """))
    script.chmod(script.stat().st_mode | stat.S_IEXEC)
    return str(script)


class TestExternalAdapter:
    def test_sat_with_model(self, shim_solver):
        sess = ExternalSession(shim_solver)
        sess.add_clauses([(1,)])
        out = sess.solve()
        assert out.is_sat and out.witness.value(1) is True

    def test_unsat(self, shim_solver):
        sess = ExternalSession(shim_solver)
        sess.add_clauses([(1,), (-1,)])
        assert not sess.solve().is_sat

    def test_agrees_with_embedded_on_random_instances(self, shim_solver):
        rng = random.Random(7)
        for _ in range(200):
            nv = rng.randint(1, 8)
            clauses = random_clauses(rng, nv, rng.randint(1, 10))
            ext = ExternalSession(shim_solver)
            ext.ensure_vars(nv)
            ext.add_clauses(clauses)
            emb = EmbeddedSession(validate=True)
            emb.ensure_vars(nv)
            emb.add_clauses(clauses)
            assumptions = []
            if rng.random() < 0.5:
                v = rng.randint(1, nv)
                assumptions = [v if rng.random() < 0.5 else -v]
            assert ext.solve(assumptions).is_sat == emb.solve(assumptions).is_sat

    def test_unparseable_output_is_oracle_error(self, tmp_path):
        bad = tmp_path / "bad"
        bad.write_text(f"#!{sys.executable}\nprint('what')\n")
        bad.chmod(bad.stat().st_mode | stat.S_IEXEC)
        sess = ExternalSession(str(bad))
        sess.add_clauses([(1,)])
        with pytest.raises(OracleError, match="unparseable"):
            sess.solve()

    def test_missing_executable_is_oracle_error(self):
        sess = ExternalSession("/no/such/solver")
        sess.add_clauses([(1,)])
        with pytest.raises(OracleError, match="not found"):
            sess.solve()


class TestMakeSession:
    def test_internal(self):
        assert isinstance(make_session("internal"), EmbeddedSession)

    def test_exec_prefix(self):
        assert isinstance(make_session("exec:/bin/true"), ExternalSession)

    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            make_session("magic")
