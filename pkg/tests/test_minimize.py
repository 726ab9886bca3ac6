import math
import random

import pytest

from msmp.minimize import (
    ALGORITHMS,
    FORM_B,
    FORM_L,
    FORM_P,
    IllPosedError,
    MonotonePredicate,
    extract_minimal,
    oracle_call_count,
)
from msmp.oracle import EmbeddedSession
from msmp.verifier import OddSizePredicate, check_monotone


def guarded_units(session, clauses):
    session.ensure_vars(max((abs(l) for c in clauses for l in c), default=0))
    selectors = []
    for c in clauses:
        s = session.new_var()
        selectors.append(s)
        session.add_clauses([(-s,) + tuple(c)])
    return selectors


def mus_pred(clauses):
    """Unsat-of-working-set predicate over a clause list."""
    session = EmbeddedSession(validate=True)
    sel = guarded_units(session, clauses)
    elements = tuple(range(1, len(clauses) + 1))
    return MonotonePredicate(
        FORM_P, elements, session,
        element_assumptions={i + 1: (sel[i],) for i in range(len(sel))},
    )


def mcs_pred(clauses):
    """Sat-of-complement predicate over a clause list."""
    session = EmbeddedSession(validate=True)
    sel = guarded_units(session, clauses)
    elements = tuple(range(1, len(clauses) + 1))
    return MonotonePredicate(
        FORM_L, elements, session,
        element_assumptions={i + 1: (sel[i],) for i in range(len(sel))},
    )


def backbone_pred(clauses, model_lits):
    session = EmbeddedSession(validate=True)
    session.ensure_vars(max(abs(l) for c in clauses for l in c))
    session.add_clauses(clauses)
    elements = tuple(sorted(model_lits, key=abs))
    return MonotonePredicate(
        FORM_B, elements, session,
        element_disjuncts={l: -l for l in elements},
    )


E2 = [(1,), (-1,), (2,)]


class TestForms:
    def test_sat_of_complement_chain(self):
        # working sets {} <= {1} <= R on the two complementary units
        p = mcs_pred([(1,), (-1,)])
        assert p.test(())[0] is False
        assert p.test((1,))[0] is True
        assert p.test((1, 2))[0] is True

    def test_sat_of_complement_full_set(self):
        p = mcs_pred([(1,), (-1,)])
        ok, witness = p.test((1, 2))
        assert ok and witness is not None

    def test_unsat_of_working_set(self):
        p = mus_pred([(1,), (-1,)])
        assert p.test((1, 2))[0] is True
        assert p.test(())[0] is False
        assert p.test((1,))[0] is False

    def test_disjunction_form_full_set_always_true(self):
        p = backbone_pred([(1,)], [1])
        assert p.test((1,))[0] is True  # empty disjunction yields an empty clause

    def test_disjunction_form_forced_unit(self):
        # formula (x1); reference model {x1}: dropping everything stays true
        p = backbone_pred([(1,)], [1])
        assert p.test(())[0] is True

    def test_disjunction_form_free_choice(self):
        # formula (x1 or x2) with model {x1, x2}: some literal can flip
        p = backbone_pred([(1, 2)], [1, 2])
        ok, witness = p.test(())
        assert ok is False and witness is not None

    def test_repeated_test_same_status(self):
        p = mus_pred(E2)
        first = p.test((1, 2))[0]
        for _ in range(3):
            assert p.test((1, 2))[0] == first

    def test_working_set_must_be_subset(self):
        p = mus_pred(E2)
        with pytest.raises(ValueError):
            p.test((9,))


class TestExtract:
    @pytest.mark.parametrize("alg", ALGORITHMS)
    def test_mus_e2(self, alg):
        r = extract_minimal(mus_pred(E2), alg)
        assert r.minimal_set == (1, 2)

    def test_deletion_counts_exactly_r(self):
        r = extract_minimal(mus_pred(E2), "deletion")
        assert r.search_calls == 3
        assert r.wellposedness_calls == 1
        assert oracle_call_count(r) == 4

    def test_deletion_count_without_check(self):
        r = extract_minimal(mus_pred(E2), "deletion", check_wellposed=False)
        assert oracle_call_count(r) == 3

    def test_dichotomic_padded_instance_call_count(self):
        # pair of complementary units padded with 6 satisfiable clauses
        clauses = [(1,), (-1,)] + [(v,) for v in range(2, 8)]
        r = extract_minimal(mus_pred(clauses), "dichotomic")
        assert r.minimal_set == (1, 2)
        assert r.search_calls <= math.ceil(math.log2(8)) + 2 == 5
        assert r.search_calls <= 2 * (math.ceil(math.log2(8)) + 1)

    def test_ill_posed_raises(self):
        with pytest.raises(IllPosedError):
            extract_minimal(mus_pred([(1,), (2,)]), "deletion")

    def test_empty_reference_set(self):
        session = EmbeddedSession()
        session.add_clauses([(1,), (-1,)])
        p = MonotonePredicate(FORM_P, (), session, element_assumptions={})
        r = extract_minimal(p, "progression")
        assert r.minimal_set == ()

    @pytest.mark.parametrize("alg", ALGORITHMS)
    def test_unique_answer_instances_agree(self, alg):
        # formula (x1) and (x2 or x3), model x1=1,x2=1,x3=0: backbone {x1}
        p = backbone_pred([(1,), (2, 3)], [1, 2, -3])
        r = extract_minimal(p, alg)
        assert r.minimal_set == (2, -3)

    def test_element_order_permutes_traversal(self):
        base = extract_minimal(mus_pred(E2), "deletion").minimal_set
        permuted = extract_minimal(mus_pred(E2), "deletion", element_order=(3, 1, 2))
        assert permuted.minimal_set == base  # unique MUS here

    def test_bad_order_rejected(self):
        with pytest.raises(ValueError):
            extract_minimal(mus_pred(E2), "deletion", element_order=(1, 2))

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            extract_minimal(mus_pred(E2), "magic")

    def test_true_witness_confirmed_for_sat_form(self):
        for alg in ALGORITHMS:
            r = extract_minimal(mcs_pred(E2), alg)
            assert r.witness is not None
            # witness satisfies the complement of the extracted set
            keep = [E2[i - 1] for i in (1, 2, 3) if i not in r.minimal_set]
            for c in keep:
                assert r.witness.satisfies_clause(c)


def random_mus_instance(rng, max_vars=4, max_clauses=10):
    from msmp.verifier import random_unsat_cnf

    return random_unsat_cnf(rng, max_vars=max_vars, max_clauses=max_clauses)


class TestAlgorithmProperties:
    def test_all_algorithms_minimal_on_random_instances(self):
        rng = random.Random(5)
        for _ in range(25):
            cnf = random_mus_instance(rng)
            for alg in ALGORITHMS:
                p = mus_pred(cnf.clauses)
                r = extract_minimal(p, alg)
                m = set(r.minimal_set)
                ok, _ = p.test(m)
                assert ok
                for e in m:
                    ok, _ = p.test(m - {e})
                    assert not ok, (alg, cnf.clauses, m, e)

    def test_progression_matches_deletion(self):
        # both drop candidates late-to-early, so they land on the same set
        rng = random.Random(6)
        for _ in range(40):
            cnf = random_mus_instance(rng)
            a = extract_minimal(mus_pred(cnf.clauses), "deletion").minimal_set
            b = extract_minimal(mus_pred(cnf.clauses), "progression").minimal_set
            assert a == b

    def test_determinism_same_counts(self):
        rng = random.Random(7)
        cnf = random_mus_instance(rng, max_vars=5, max_clauses=10)
        for alg in ALGORITHMS:
            runs = [extract_minimal(mus_pred(cnf.clauses), alg) for _ in range(2)]
            assert runs[0].minimal_set == runs[1].minimal_set
            assert runs[0].oracle_calls == runs[1].oracle_calls

    def test_insertion_call_bound(self):
        rng = random.Random(8)
        for _ in range(20):
            cnf = random_mus_instance(rng)
            r = extract_minimal(mus_pred(cnf.clauses), "insertion")
            n, m = len(cnf.clauses), len(r.minimal_set)
            assert r.search_calls <= n * m + n

    def test_dichotomic_call_bound(self):
        rng = random.Random(9)
        for _ in range(20):
            cnf = random_mus_instance(rng)
            r = extract_minimal(mus_pred(cnf.clauses), "dichotomic")
            n, m = len(cnf.clauses), len(r.minimal_set)
            assert r.search_calls <= m * (math.ceil(math.log2(n)) + 2)

    def test_progression_call_bound(self):
        rng = random.Random(10)
        for _ in range(20):
            cnf = random_mus_instance(rng)
            r = extract_minimal(mus_pred(cnf.clauses), "progression")
            n, m = len(cnf.clauses), len(r.minimal_set)
            bound = 4 * m * (1 + math.ceil(math.log2(1 + n / max(m, 1))))
            assert r.search_calls <= bound


class TestMonotonicity:
    def test_reduction_predicates_monotone(self):
        rng = random.Random(11)
        for _ in range(10):
            cnf = random_mus_instance(rng, max_clauses=8)
            for make in (mus_pred, mcs_pred):
                report = check_monotone(make(cnf.clauses), samples=300, seed=3)
                assert report.ok

    def test_parity_predicate_caught(self):
        report = check_monotone(OddSizePredicate(6), samples=500, seed=1)
        assert not report.ok
        w0, w1 = report.violations[0]
        assert w0 <= w1 and len(w0) % 2 == 1 and len(w1) % 2 == 0
