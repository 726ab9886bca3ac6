"""Minimal sets over monotone predicates.

A predicate instance pairs an ordered reference set with a SAT-backed test
in one of three shapes:

* form L:  true iff the base formula stays satisfiable with the per-element
  constraints of every element OUTSIDE the working set conjoined;
* form P:  true iff the base formula becomes unsatisfiable with the
  constraints of the elements INSIDE the working set conjoined;
* form B:  true iff the base formula is unsatisfiable with the DISJUNCTION of
  the constraints of the elements outside the working set conjoined.

All three are monotone under set inclusion, so a subset-minimal satisfying
set exists and can be extracted with any of the interchangeable algorithms
below.  Every predicate test is exactly one oracle call.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .formula import Assignment
from .oracle import OracleSession

FORM_L = "L"
FORM_P = "P"
FORM_B = "B"

ALGORITHMS = ("deletion", "insertion", "dichotomic", "quickxplain", "progression")


class IllPosedError(Exception):
    """The predicate does not hold on the full reference set."""


@dataclass
class MinimalSetResult:
    minimal_set: tuple[Hashable, ...]  # in reference-set index order
    witness: Assignment | None
    oracle_calls: int  # wellposedness + search + witness confirmation
    algorithm: str
    search_calls: int = 0
    wellposedness_calls: int = 0
    confirm_calls: int = 0


class MonotonePredicate:
    """A monotone predicate over an ordered reference set, tested via SAT.

    ``element_assumptions`` maps each element to assumption literals used for
    the conjunctive forms (L assumes elements outside W, P the elements
    inside).  ``element_disjuncts`` maps each element to a literal standing
    for its constraint; form-B tests build a fresh guarded disjunction per
    call, since that clause changes shape with W.  ``bound_query`` serves the
    optimization reductions, whose elements are integer lower bounds: only
    the largest bound outside W needs encoding, as smaller bounds are implied.
    """

    def __init__(
        self,
        form: str,
        elements: Sequence[Hashable],
        session: OracleSession,
        *,
        element_assumptions: dict | None = None,
        element_disjuncts: dict | None = None,
        bound_query: Callable[[int], int | None] | None = None,
        base_assumptions: Sequence[int] = (),
        description: str = "",
        precondition_message: str = "",
    ):
        if form not in (FORM_L, FORM_P, FORM_B):
            raise ValueError(f"unknown predicate form {form!r}")
        self.form = form
        self.elements = tuple(elements)
        self.session = session
        self.element_assumptions = element_assumptions or {}
        self.element_disjuncts = element_disjuncts or {}
        self.bound_query = bound_query
        self.base_assumptions = tuple(base_assumptions)
        self.description = description
        self.precondition_message = precondition_message
        self.context: dict = {}
        if bound_query is None:
            if form in (FORM_L, FORM_P):
                missing = [e for e in self.elements if e not in self.element_assumptions]
                if missing:
                    raise ValueError(f"no assumption literals for elements {missing}")
            else:
                missing = [e for e in self.elements if e not in self.element_disjuncts]
                if missing:
                    raise ValueError(f"no disjunct literals for elements {missing}")

    def test(self, working: Iterable[Hashable]) -> tuple[bool, Assignment | None]:
        """Evaluate the predicate on a working set with one oracle call.

        Returns (truth, witness).  The witness is the satisfying assignment
        of the underlying query when one exists: for form L that certifies a
        TRUE answer, for forms P/B it certifies a FALSE one.
        """
        wset = set(working)
        unknown = wset.difference(self.elements)
        if unknown:
            raise ValueError(f"working set not within reference set: {unknown}")
        assumptions = list(self.base_assumptions)
        if self.bound_query is not None:
            rest = [e for e in self.elements if e not in wset]
            if rest:
                lit = self.bound_query(max(rest))
                if lit is not None:
                    assumptions.append(lit)
            outcome = self.session.solve(assumptions)
            return outcome.is_sat, outcome.witness
        if self.form == FORM_L:
            for e in self.elements:
                if e not in wset:
                    assumptions.extend(self.element_assumptions[e])
            outcome = self.session.solve(assumptions)
            return outcome.is_sat, outcome.witness
        if self.form == FORM_P:
            for e in self.elements:
                if e in wset:
                    assumptions.extend(self.element_assumptions[e])
            outcome = self.session.solve(assumptions)
            return not outcome.is_sat, outcome.witness
        # form B: guard the per-call disjunction with a fresh activation literal
        act = self.session.new_var()
        clause = [-act] + [self.element_disjuncts[e] for e in self.elements if e not in wset]
        self.session.add_clauses([tuple(clause)])
        assumptions.append(act)
        outcome = self.session.solve(assumptions)
        return not outcome.is_sat, outcome.witness

    def needs_true_witness(self) -> bool:
        """Whether a satisfying model accompanies a TRUE test (form L only)."""
        return self.form == FORM_L or self.bound_query is not None


class _CountingTester:
    """Wraps predicate.test, counting calls and tracking witnesses."""

    def __init__(self, predicate: MonotonePredicate):
        self.predicate = predicate
        self.calls = 0
        self.last_true_set: frozenset | None = None
        self.last_true_witness: Assignment | None = None
        self.last_false_witness: Assignment | None = None

    def __call__(self, working: Iterable[Hashable]) -> bool:
        wset = frozenset(working)
        self.calls += 1
        truth, witness = self.predicate.test(wset)
        if truth:
            self.last_true_set = wset
            self.last_true_witness = witness
        else:
            self.last_false_witness = witness
        return truth


def extract_minimal(
    predicate: MonotonePredicate,
    algorithm: str = "progression",
    *,
    check_wellposed: bool = True,
    element_order: Sequence[Hashable] | None = None,
) -> MinimalSetResult:
    """Extract a subset-minimal satisfying set for a monotone predicate.

    The predicate must hold on the full reference set; this is verified with
    one extra test unless ``check_wellposed`` is false.  ``element_order``
    permutes the traversal order (defaults to reference-set order); the
    result is always reported in reference-set order.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r} (choose from {ALGORITHMS})")
    order = list(element_order) if element_order is not None else list(predicate.elements)
    if set(order) != set(predicate.elements) or len(order) != len(predicate.elements):
        raise ValueError("element_order must be a permutation of the reference set")

    tester = _CountingTester(predicate)
    wp_calls = 0
    if check_wellposed:
        ok = tester(predicate.elements)
        wp_calls = 1
        if not ok:
            msg = predicate.precondition_message or (
                f"predicate does not hold on the full reference set"
                f"{' (' + predicate.description + ')' if predicate.description else ''}"
            )
            raise IllPosedError(msg)

    if not order:
        minimal: list[Hashable] = []
    else:
        minimal = _DISPATCH[algorithm](tester, order)

    search_calls = tester.calls - wp_calls
    index = {e: i for i, e in enumerate(predicate.elements)}
    minimal_sorted = tuple(sorted(minimal, key=index.__getitem__))

    confirm_calls = 0
    witness = None
    mset = frozenset(minimal_sorted)
    if predicate.needs_true_witness():
        if tester.last_true_set == mset and tester.last_true_witness is not None:
            witness = tester.last_true_witness
        else:
            ok = tester(mset)
            confirm_calls = 1
            if not ok:  # pragma: no cover - would mean a broken extraction
                raise IllPosedError("extracted set failed its confirming test")
            witness = tester.last_true_witness
    else:
        witness = tester.last_false_witness

    return MinimalSetResult(
        minimal_set=minimal_sorted,
        witness=witness,
        oracle_calls=tester.calls,
        algorithm=algorithm,
        search_calls=search_calls,
        wellposedness_calls=wp_calls,
        confirm_calls=confirm_calls,
    )


def oracle_call_count(result: MinimalSetResult) -> int:
    """Total oracle calls recorded for an extraction."""
    return result.oracle_calls


# ---------------------------------------------------------------------------
# the five algorithms.  Each takes a counting tester and the ordered
# reference set, assumes the predicate holds on the full set, and returns a
# minimal satisfying subset.


def _deletion(test: _CountingTester, order: list) -> list:
    """One test per element: drop e when the predicate survives without it.

    Candidates are tried from the last element down, so earlier elements are
    preferred for the minimal set when several minimal sets exist.
    """
    work = list(order)
    for e in reversed(order):
        candidate = [x for x in work if x != e]
        if test(candidate):
            work = candidate
    return work


def _insertion(test: _CountingTester, order: list) -> list:
    """Grow the answer by scanning for transition elements.

    A transition element is the first one whose inclusion flips the predicate
    from false to true on top of the confirmed prefix; everything after it is
    discarded for the next round.
    """
    confirmed: list = []
    universe = list(order)
    while universe:
        if test(confirmed):
            return confirmed
        j = None
        for i in range(len(universe)):
            if i == len(universe) - 1:
                j = i  # the full set holds by invariant; no test needed
                break
            if test(confirmed + universe[: i + 1]):
                j = i
                break
        confirmed.append(universe[j])
        universe = universe[:j]
    return confirmed


def _dichotomic(test: _CountingTester, order: list) -> list:
    """Insertion with each transition element located by binary search."""
    confirmed: list = []
    universe = list(order)
    while universe:
        if test(confirmed):
            return confirmed
        lo, hi = 0, len(universe)  # false at prefix lo, true at prefix hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if test(confirmed + universe[:mid]):
                hi = mid
            else:
                lo = mid
        confirmed.append(universe[hi - 1])
        universe = universe[: hi - 1]
    return confirmed


def _progression(test: _CountingTester, order: list) -> list:
    """Locate transition elements with geometrically growing probes.

    Probes drop suffix chunks of doubling size (1, 2, 4, ...) off the
    candidate tail, then binary-search the exact transition element inside
    the failing chunk.  Matches deletion's answer with O(|M| log(1+|R|/|M|))
    tests instead of |R|.
    """
    confirmed: list = []
    tail = list(order)
    while tail:
        n = len(tail)
        lo, hi = 0, None  # number of dropped suffix elements: ok at lo, bad at hi
        k = 1
        while True:
            if k >= n:
                if test(confirmed):
                    return confirmed  # the whole tail can go
                hi = n
                break
            if test(confirmed + tail[: n - k]):
                lo = k
                k *= 2
            else:
                hi = k
                break
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if test(confirmed + tail[: n - mid]):
                lo = mid
            else:
                hi = mid
        # dropping lo suffix elements is fine, one more breaks the predicate
        confirmed.append(tail[n - lo - 1])
        tail = tail[: n - lo - 1]
    return confirmed


def _quickxplain(test: _CountingTester, order: list) -> list:
    """Divide-and-conquer preference-respecting minimization."""
    if test([]):
        return []

    def rec(base: list, candidates: list, base_changed: bool) -> list:
        if base_changed and test(base):
            return []
        if len(candidates) == 1:
            return list(candidates)
        half = len(candidates) // 2
        left, right = candidates[:half], candidates[half:]
        d2 = rec(base + left, right, bool(left))
        d1 = rec(base + d2, left, bool(d2))
        return d1 + d2

    return rec([], list(order), False)


_DISPATCH = {
    "deletion": _deletion,
    "insertion": _insertion,
    "dichotomic": _dichotomic,
    "quickxplain": _quickxplain,
    "progression": _progression,
}
