"""An embedded CDCL SAT solver.

Two-watched-literal propagation, first-UIP clause learning, Luby restarts,
phase saving and incremental solving under assumptions.  Decisions pick the
highest-activity unassigned variable, ties broken by lowest id; together with
deterministic clause order this makes every run reproducible.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

_RESTART_BASE = 64
_ACT_DECAY = 1.0 / 0.95
_ACT_LIMIT = 1e100


def luby(i: int) -> int:
    """The i-th element (1-based) of the Luby restart sequence."""
    k = 1
    while (1 << (k + 1)) - 1 <= i:
        k += 1
    while i != (1 << k) - 1:
        i = i - (1 << (k - 1)) + 1
        k = 1
        while (1 << (k + 1)) - 1 <= i:
            k += 1
    return 1 << (k - 1)


class Solver:
    """CDCL solver over integer literals (DIMACS sign convention)."""

    def __init__(self, seed: int = 0):
        self.seed = seed  # kept for interface stability; search is deterministic
        self.nvars = 0
        self.clauses: list[list[int]] = []
        self.watches: dict[int, list[list[int]]] = {}
        self.assign: dict[int, bool] = {}
        self.level: dict[int, int] = {}
        self.reason: dict[int, list[int] | None] = {}
        self.trail: list[int] = []
        self.qhead = 0
        self.saved_phase: dict[int, bool] = {}
        self.activity: dict[int, float] = {}
        self.act_inc = 1.0
        self.order: list[tuple[float, int]] = []  # lazy max-heap of (-activity, var)
        self.unsat_forever = False
        self.pending_units: list[int] = []
        self.n_learned = 0

    # -- variables ---------------------------------------------------------

    def new_var(self) -> int:
        self.nvars += 1
        v = self.nvars
        self.watches[v] = []
        self.watches[-v] = []
        self.saved_phase[v] = False
        self.activity[v] = 0.0
        heapq.heappush(self.order, (0.0, v))
        return v

    def ensure_vars(self, n: int) -> None:
        while self.nvars < n:
            self.new_var()

    # -- clause database ---------------------------------------------------

    def add_clause(self, lits: Iterable[int]) -> None:
        """Add a clause permanently.  Duplicates collapse; tautologies are no-ops."""
        seen: set[int] = set()
        for l in lits:
            if -l in seen:
                return
            seen.add(l)
        clause = sorted(seen, key=lambda l: (abs(l), l < 0))
        if clause:
            self.ensure_vars(max(abs(l) for l in clause))
        if not clause:
            self.unsat_forever = True
            return
        if len(clause) == 1:
            self.pending_units.append(clause[0])
            return
        self._attach(list(clause))

    def _attach(self, clause: list[int]) -> None:
        self.clauses.append(clause)
        self.watches[clause[0]].append(clause)
        self.watches[clause[1]].append(clause)

    # -- assignment machinery ----------------------------------------------

    def _value(self, lit: int) -> bool | None:
        v = self.assign.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def _enqueue(self, lit: int, lvl: int, reason: list[int] | None) -> None:
        v = abs(lit)
        self.assign[v] = lit > 0
        self.level[v] = lvl
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self) -> list[int] | None:
        """Unit propagation; returns a conflicting clause or None."""
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            falsified = -p
            ws = self.watches[falsified]
            i = 0
            while i < len(ws):
                clause = ws[i]
                # normalize: falsified watch at position 1
                if clause[0] == falsified:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                if self._value(first) is True:
                    i += 1
                    continue
                moved = False
                for j in range(2, len(clause)):
                    if self._value(clause[j]) is not False:
                        clause[1], clause[j] = clause[j], clause[1]
                        self.watches[clause[1]].append(clause)
                        ws[i] = ws[-1]
                        ws.pop()
                        moved = True
                        break
                if moved:
                    continue
                if self._value(first) is False:
                    return clause  # conflict
                self._enqueue(first, self.level[abs(p)], clause)
                i += 1
        return None

    def _backtrack(self, target_level: int) -> None:
        while self.trail:
            lit = self.trail[-1]
            v = abs(lit)
            if self.level[v] <= target_level:
                break
            self.saved_phase[v] = lit > 0
            del self.assign[v]
            del self.level[v]
            self.reason.pop(v, None)
            self.trail.pop()
            heapq.heappush(self.order, (-self.activity[v], v))
        self.qhead = len(self.trail)

    # -- conflict analysis ---------------------------------------------------

    def _bump(self, v: int) -> None:
        act = self.activity[v] + self.act_inc
        self.activity[v] = act
        if act > _ACT_LIMIT:
            for u in self.activity:
                self.activity[u] *= 1e-100
            self.act_inc *= 1e-100
            self.order = [(-self.activity[u], u) for u in self.activity if u not in self.assign]
            heapq.heapify(self.order)
            return
        heapq.heappush(self.order, (-act, v))

    def _analyze(self, conflict: list[int], current: int) -> tuple[list[int], int]:
        """First-UIP learning.  Returns (learned clause, backjump level)."""
        seen: set[int] = set()
        learned: list[int] = []
        counter = 0
        p: int | None = None
        clause: Sequence[int] = conflict
        index = len(self.trail) - 1
        while True:
            for q in clause:
                if p is not None and q == p:
                    continue
                v = abs(q)
                if v in seen or self.level[v] == 0:
                    continue
                seen.add(v)
                self._bump(v)
                if self.level[v] == current:
                    counter += 1
                else:
                    learned.append(q)
            while abs(self.trail[index]) not in seen:
                index -= 1
            p = self.trail[index]
            index -= 1
            seen.discard(abs(p))
            counter -= 1
            if counter == 0:
                break
            clause = self.reason[abs(p)] or ()
        learned.insert(0, -p)
        if len(learned) == 1:
            return learned, 0
        # second watch: the literal with the highest level below current
        bj = max(self.level[abs(q)] for q in learned[1:])
        for k in range(1, len(learned)):
            if self.level[abs(learned[k])] == bj:
                learned[1], learned[k] = learned[k], learned[1]
                break
        return learned, bj

    def _decide(self) -> int | None:
        while self.order:
            _, v = self.order[0]
            if v in self.assign:
                heapq.heappop(self.order)  # stale entry
                continue
            return v
        return None

    # -- main search ---------------------------------------------------------

    def solve(self, assumptions: Sequence[int] = ()) -> list[int] | None:
        """Decide satisfiability under assumptions.

        Returns a total model as a literal list (index 0 unused -> sorted by
        var), or None when unsatisfiable.  Assumptions are transient.
        """
        if self.unsat_forever:
            return None
        for a in assumptions:
            self.ensure_vars(abs(a))
        self._backtrack(0)
        self.qhead = 0  # re-propagate level 0 so clauses added since last solve fire
        # conflicting assumption set: (a, -a)
        pos = set(assumptions)
        if any(-a in pos for a in pos):
            return None

        # flush root-level units
        while self.pending_units:
            u = self.pending_units.pop()
            val = self._value(u)
            if val is False:
                self.unsat_forever = True
                return None
            if val is None:
                self._enqueue(u, 0, None)
        if self._propagate() is not None:
            self.unsat_forever = True
            return None

        level = 0
        conflicts_until_restart = _RESTART_BASE * luby(1)
        restarts = 0

        while True:
            confl = self._propagate()
            if confl is not None:
                if level == 0:
                    self.unsat_forever = True
                    return None
                learned, bj = self._analyze(confl, level)
                self._backtrack(bj)
                level = bj
                if len(learned) == 1:
                    self._enqueue(learned[0], 0, None)
                else:
                    self._attach(learned)
                    self._enqueue(learned[0], bj, learned)
                self.n_learned += 1
                self.act_inc *= _ACT_DECAY
                conflicts_until_restart -= 1
                if conflicts_until_restart <= 0:
                    restarts += 1
                    conflicts_until_restart = _RESTART_BASE * luby(restarts + 1)
                    self._backtrack(0)
                    level = 0
                continue

            if level < len(assumptions):
                # (re-)establish the next assumption; levels 1..k hold them
                a = assumptions[level]
                val = self._value(a)
                if val is False:
                    return None  # unsat under assumptions, not permanently
                level += 1
                if val is None:
                    self._enqueue(a, level, None)
                continue

            v = self._decide()
            if v is None:
                model = [(var if val else -var) for var, val in self.assign.items()]
                model.sort(key=abs)
                return model
            level += 1
            self._enqueue(v if self.saved_phase[v] else -v, level, None)
