"""SAT oracle sessions: the (status, witness) contract over a clause database.

A session owns a growing clause set, hands out fresh variables, and answers
queries under assumption literals.  Every ``solve`` bumps the call counter by
exactly one.  Two backends: the embedded CDCL solver, and an external solver
executable speaking the SAT-competition convention over DIMACS files.
"""

from __future__ import annotations

import os
import subprocess
import tempfile
from dataclasses import dataclass
from typing import Iterable, Sequence

from .formula import Assignment
from .solver import Solver

SAT = "sat"
UNSAT = "unsat"


class OracleError(Exception):
    """Backend failure (crash, timeout, unparseable output) — not an UNSAT."""


@dataclass
class SolveOutcome:
    status: str  # SAT or UNSAT
    witness: Assignment | None  # total over the session universe when sat

    @property
    def is_sat(self) -> bool:
        return self.status == SAT


class OracleSession:
    """Base class: clause database, fresh variables, call accounting."""

    def __init__(self):
        self.calls = 0

    def add_clauses(self, clauses: Iterable[Sequence[int]]) -> None:
        raise NotImplementedError

    def new_var(self) -> int:
        raise NotImplementedError

    @property
    def nvars(self) -> int:
        raise NotImplementedError

    def solve(self, assumptions: Sequence[int] = ()) -> SolveOutcome:
        raise NotImplementedError

    def _check_witness(self, model: Sequence[int], clauses: Iterable[Sequence[int]]) -> None:
        values = {abs(l): l > 0 for l in model}
        for c in clauses:
            if not any(values.get(abs(l)) == (l > 0) for l in c):
                raise OracleError(f"witness violates clause {tuple(c)}")


class EmbeddedSession(OracleSession):
    """Session backed by the in-process CDCL solver."""

    def __init__(self, seed: int = 0, validate: bool = False):
        super().__init__()
        self._solver = Solver(seed=seed)
        self._clauses: list[tuple[int, ...]] = []
        self.validate = validate

    def add_clauses(self, clauses: Iterable[Sequence[int]]) -> None:
        for c in clauses:
            c = tuple(c)
            self._clauses.append(c)
            self._solver.add_clause(c)

    def new_var(self) -> int:
        return self._solver.new_var()

    def ensure_vars(self, n: int) -> None:
        self._solver.ensure_vars(n)

    @property
    def nvars(self) -> int:
        return self._solver.nvars

    @property
    def clauses(self) -> list[tuple[int, ...]]:
        return self._clauses

    def solve(self, assumptions: Sequence[int] = ()) -> SolveOutcome:
        self.calls += 1
        model = self._solver.solve(tuple(assumptions))
        if model is None:
            return SolveOutcome(UNSAT, None)
        if self.validate:
            self._check_witness(model, self._clauses)
            values = {abs(l): l > 0 for l in model}
            for a in assumptions:
                if values.get(abs(a)) != (a > 0):
                    raise OracleError(f"witness violates assumption {a}")
        return SolveOutcome(SAT, Assignment.from_literals(model))


class ExternalSession(OracleSession):
    """Session driving an external solver executable.

    The executable must accept a DIMACS CNF path as its argument and print
    ``s SATISFIABLE``/``s UNSATISFIABLE`` plus ``v`` model lines.  Assumptions
    are realized by appending unit clauses to a temporary copy of the
    database, so the database itself is never mutated by queries.
    """

    # exit codes 10/20 are the SAT-competition convention; accept 0 as well
    _OK_RETURNS = {0, 10, 20}

    def __init__(self, path: str, timeout: float = 60.0):
        super().__init__()
        self.path = path
        self.timeout = timeout
        self._clauses: list[tuple[int, ...]] = []
        self._nvars = 0

    def add_clauses(self, clauses: Iterable[Sequence[int]]) -> None:
        for c in clauses:
            c = tuple(c)
            self._clauses.append(c)
            for l in c:
                self._nvars = max(self._nvars, abs(l))

    def new_var(self) -> int:
        self._nvars += 1
        return self._nvars

    def ensure_vars(self, n: int) -> None:
        self._nvars = max(self._nvars, n)

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def clauses(self) -> list[tuple[int, ...]]:
        return self._clauses

    def solve(self, assumptions: Sequence[int] = ()) -> SolveOutcome:
        self.calls += 1
        pos = set(assumptions)
        if any(-a in pos for a in pos):
            return SolveOutcome(UNSAT, None)
        lines = [f"p cnf {self._nvars} {len(self._clauses) + len(pos)}"]
        for c in self._clauses:
            lines.append(" ".join(map(str, c)) + " 0")
        for a in sorted(pos, key=abs):
            lines.append(f"{a} 0")
        fd, path = tempfile.mkstemp(suffix=".cnf", prefix="msmp-query-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write("\n".join(lines) + "\n")
            try:
                proc = subprocess.run(
                    [self.path, path],
                    capture_output=True,
                    text=True,
                    timeout=self.timeout,
                )
            except FileNotFoundError as exc:
                raise OracleError(f"solver executable not found: {self.path}") from exc
            except subprocess.TimeoutExpired as exc:
                raise OracleError(f"solver timed out after {self.timeout}s") from exc
        finally:
            os.unlink(path)
        return self._parse_output(proc)

    def _parse_output(self, proc: subprocess.CompletedProcess) -> SolveOutcome:
        out = proc.stdout or ""
        status = None
        lits: list[int] = []
        for line in out.splitlines():
            line = line.strip()
            if line.startswith("s "):
                tag = line[2:].strip().upper()
                if tag == "SATISFIABLE":
                    status = SAT
                elif tag == "UNSATISFIABLE":
                    status = UNSAT
            elif line.startswith("v"):
                try:
                    lits.extend(int(t) for t in line[1:].split())
                except ValueError as exc:
                    raise OracleError(f"bad model line from solver: {line!r}") from exc
        if status is None:
            raise OracleError(
                f"unparseable solver output (rc={proc.returncode}): "
                f"{out[:500]!r} stderr={proc.stderr[:200]!r}"
            )
        if status == UNSAT:
            return SolveOutcome(UNSAT, None)
        values = {abs(l): l > 0 for l in lits if l != 0}
        model = [v if values.get(v, False) else -v for v in range(1, self._nvars + 1)]
        self._check_witness(model, self._clauses)
        return SolveOutcome(SAT, Assignment.from_literals(model))


def make_session(backend: str = "internal", seed: int = 0, validate: bool = False) -> OracleSession:
    """Build a session from a backend spec: "internal" or "exec:/path/to/solver"."""
    if backend in ("internal", "", None):
        return EmbeddedSession(seed=seed, validate=validate)
    if backend.startswith("exec:"):
        return ExternalSession(backend[5:])
    raise ValueError(f"unknown solver backend {backend!r} (use internal or exec:PATH)")
