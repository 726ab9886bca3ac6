"""Propositional formulas: ASTs, clause sets, assignments and clausification.

Variables are positive integers.  A literal is a non-zero integer whose sign
gives the polarity (DIMACS convention): ``3`` is variable 3, ``-3`` its
complement.  CNF/DNF formulas are ordered lists of clauses/terms so that unit
indices are stable; arbitrary formulas are immutable AST nodes built from
``Atom``, ``Not``, ``And`` and ``Or``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence, Union


class EvaluationError(Exception):
    """Raised when a formula is evaluated under a partial assignment."""


class FormulaError(Exception):
    """Raised for malformed clauses, terms or substitution targets."""


# ---------------------------------------------------------------------------
# literals


def complement(lit: int) -> int:
    return -lit


def var_of(lit: int) -> int:
    return lit if lit > 0 else -lit


def check_clause(lits: Iterable[int], where: str = "clause") -> tuple[int, ...]:
    """Normalize a disjunction: dedupe, sort by variable, reject tautologies."""
    seen = set()
    for l in lits:
        if not isinstance(l, int) or l == 0:
            raise FormulaError(f"bad literal {l!r} in {where}")
        if -l in seen:
            raise FormulaError(f"tautologous {where}: contains both {l} and {-l}")
        seen.add(l)
    return tuple(sorted(seen, key=lambda l: (abs(l), l < 0)))


def check_term(lits: Iterable[int], where: str = "term") -> tuple[int, ...]:
    """Normalize a conjunction: dedupe, sort, reject contradictory terms."""
    seen = set()
    for l in lits:
        if not isinstance(l, int) or l == 0:
            raise FormulaError(f"bad literal {l!r} in {where}")
        if -l in seen:
            raise FormulaError(f"contradictory {where}: contains both {l} and {-l}")
        seen.add(l)
    return tuple(sorted(seen, key=lambda l: (abs(l), l < 0)))


# ---------------------------------------------------------------------------
# assignments


class Assignment:
    """A consistent set of literals, i.e. a (possibly partial) truth assignment."""

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[int, bool]):
        self._values = dict(values)

    @classmethod
    def from_literals(cls, lits: Iterable[int]) -> "Assignment":
        values: dict[int, bool] = {}
        for l in lits:
            v = var_of(l)
            val = l > 0
            if values.get(v, val) != val:
                raise FormulaError(f"inconsistent assignment: both {v} and {-v}")
            values[v] = val
        return cls(values)

    def value(self, var: int) -> bool | None:
        return self._values.get(var)

    def __contains__(self, var: int) -> bool:
        return var in self._values

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self) -> Iterator[int]:
        return iter(self._values)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Assignment) and self._values == other._values

    def __hash__(self) -> int:
        return hash(frozenset(self._values.items()))

    def literals(self) -> tuple[int, ...]:
        """The assignment as a sorted literal tuple."""
        return tuple(v if val else -v for v, val in sorted(self._values.items()))

    def restrict(self, variables: Iterable[int]) -> "Assignment":
        keep = set(variables)
        return Assignment({v: b for v, b in self._values.items() if v in keep})

    def total_over(self, variables: Iterable[int]) -> bool:
        return all(v in self._values for v in variables)

    def satisfies_clause(self, clause: Sequence[int]) -> bool:
        return any(self._values.get(var_of(l)) == (l > 0) for l in clause)

    def __repr__(self) -> str:
        return f"Assignment({' '.join(map(str, self.literals()))})"


# ---------------------------------------------------------------------------
# AST


class Formula:
    """Base class for formula AST nodes.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And((self, other))

    def __or__(self, other: "Formula") -> "Formula":
        return Or((self, other))

    def __invert__(self) -> "Formula":
        return negate(self)


class Atom(Formula):
    __slots__ = ("var",)

    def __init__(self, var: int):
        if var <= 0:
            raise FormulaError(f"variable ids are positive, got {var}")
        object.__setattr__(self, "var", var)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Atom is immutable")

    def __eq__(self, other):
        return isinstance(other, Atom) and other.var == self.var

    def __hash__(self):
        return hash(("atom", self.var))

    def __repr__(self):
        return f"x{self.var}"


class Not(Formula):
    __slots__ = ("child",)

    def __init__(self, child: Formula):
        object.__setattr__(self, "child", child)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Not is immutable")

    def __eq__(self, other):
        return isinstance(other, Not) and other.child == self.child

    def __hash__(self):
        return hash(("not", self.child))

    def __repr__(self):
        return f"(not {self.child!r})"


class _Nary(Formula):
    __slots__ = ("children",)
    _tag = ""

    def __init__(self, children: Iterable[Formula]):
        object.__setattr__(self, "children", tuple(children))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("node is immutable")

    def __eq__(self, other):
        return type(other) is type(self) and other.children == self.children

    def __hash__(self):
        return hash((self._tag, self.children))

    def __repr__(self):
        if not self.children:
            return "true" if self._tag == "and" else "false"
        return f"({self._tag} {' '.join(map(repr, self.children))})"


class And(_Nary):
    """Conjunction.  ``And(())`` is the constant true (internal only)."""

    __slots__ = ()
    _tag = "and"


class Or(_Nary):
    """Disjunction.  ``Or(())`` is the constant false (internal only)."""

    __slots__ = ()
    _tag = "or"


TRUE = And(())
FALSE = Or(())


def term_ast(lits: Sequence[int]) -> Formula:
    """The conjunction of a literal set, as an AST."""
    parts = [Atom(l) if l > 0 else Not(Atom(-l)) for l in lits]
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def clause_ast(lits: Sequence[int]) -> Formula:
    """The disjunction of a literal set, as an AST."""
    parts = [Atom(l) if l > 0 else Not(Atom(-l)) for l in lits]
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def variables(f: Formula) -> frozenset[int]:
    out: set[int] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.var)
        elif isinstance(node, Not):
            stack.append(node.child)
        else:
            stack.extend(node.children)  # type: ignore[attr-defined]
    return frozenset(out)


def evaluate(f: Formula, assignment: Assignment | Mapping[int, bool]) -> int:
    """Evaluate ``f`` under a total assignment, returning 0 or 1.

    Raises EvaluationError naming the first unassigned variable encountered.
    """
    get = assignment.value if isinstance(assignment, Assignment) else assignment.get

    def rec(node: Formula) -> bool:
        if isinstance(node, Atom):
            val = get(node.var)
            if val is None:
                raise EvaluationError(f"variable {node.var} is unassigned")
            return val
        if isinstance(node, Not):
            return not rec(node.child)
        if isinstance(node, And):
            return all(rec(c) for c in node.children)
        if isinstance(node, Or):
            return any(rec(c) for c in node.children)
        raise TypeError(f"not a formula node: {node!r}")

    return 1 if rec(f) else 0


def negate(f: Formula) -> Formula:
    """Logical negation; collapses a top-level double negation."""
    if isinstance(f, Not):
        return f.child
    return Not(f)


def substitute(f: Formula, mapping: Mapping[int, Union[int, bool]]) -> Formula:
    """Replace variables by other variables or by constants.

    Targets: a positive int renames to that variable; ``True``/``False`` (or
    the int 0 for false) fix the variable to a constant.  Each source is
    replaced independently.
    """
    for src, tgt in mapping.items():
        if isinstance(tgt, bool) or tgt == 0:
            continue
        if not isinstance(tgt, int) or tgt <= 0:
            raise FormulaError(f"bad substitution target for {src}: {tgt!r}")

    def rec(node: Formula) -> Formula:
        if isinstance(node, Atom):
            if node.var not in mapping:
                return node
            tgt = mapping[node.var]
            if tgt is True:
                return TRUE
            if tgt is False or tgt == 0:
                return FALSE
            return Atom(tgt)
        if isinstance(node, Not):
            return Not(rec(node.child))
        if isinstance(node, And):
            return And(tuple(rec(c) for c in node.children))
        return Or(tuple(rec(c) for c in node.children))

    return rec(f)


def flip_polarity(f: Formula) -> Formula:
    """Complement every literal, keeping the parse tree above the leaves."""
    if isinstance(f, Atom):
        return Not(f)
    if isinstance(f, Not):
        if isinstance(f.child, Atom):
            return f.child
        return Not(flip_polarity(f.child))
    if isinstance(f, And):
        return And(tuple(flip_polarity(c) for c in f.children))
    return Or(tuple(flip_polarity(c) for c in f.children))


def cnf_negation_of_clause_set(clauses: Sequence[Sequence[int]]) -> Formula:
    """The negation of a clause set: the disjunction of complemented clauses."""
    terms = [term_ast([-l for l in c]) if c else TRUE for c in clauses]
    if not terms:
        return FALSE
    if len(terms) == 1:
        return terms[0]
    return Or(terms)


# ---------------------------------------------------------------------------
# clause containers


class CnfFormula:
    """A CNF formula as an ordered clause list over variables 1..nvars."""

    __slots__ = ("clauses", "nvars")

    def __init__(self, clauses: Iterable[Sequence[int]], nvars: int | None = None):
        self.clauses = [check_clause(c) for c in clauses]
        maxv = max((abs(l) for c in self.clauses for l in c), default=0)
        if nvars is None:
            nvars = maxv
        elif nvars < maxv:
            raise FormulaError(f"nvars={nvars} below max variable {maxv}")
        self.nvars = nvars

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.clauses)

    def as_ast(self) -> Formula:
        if not self.clauses:
            return TRUE
        if len(self.clauses) == 1:
            return clause_ast(self.clauses[0])
        return And([clause_ast(c) for c in self.clauses])

    def __repr__(self):
        return f"CnfFormula({len(self.clauses)} clauses, {self.nvars} vars)"


class DnfFormula:
    """A DNF formula as an ordered term list over variables 1..nvars."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Iterable[Sequence[int]], nvars: int | None = None):
        self.terms = [check_term(t) for t in terms]
        maxv = max((abs(l) for t in self.terms for l in t), default=0)
        if nvars is None:
            nvars = maxv
        elif nvars < maxv:
            raise FormulaError(f"nvars={nvars} below max variable {maxv}")
        self.nvars = nvars

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.terms)

    def as_ast(self) -> Formula:
        if not self.terms:
            return FALSE
        if len(self.terms) == 1:
            return term_ast(self.terms[0])
        return Or([term_ast(t) for t in self.terms])

    def __repr__(self):
        return f"DnfFormula({len(self.terms)} terms, {self.nvars} vars)"


# ---------------------------------------------------------------------------
# clausification


class VarAllocator:
    """Hands out fresh variable ids above everything allocated so far."""

    __slots__ = ("next_var",)

    def __init__(self, first_free: int):
        self.next_var = first_free

    def fresh(self) -> int:
        v = self.next_var
        self.next_var += 1
        return v


class Clausified:
    """Result of clausification: clauses, total var count and the aux vars."""

    __slots__ = ("clauses", "nvars", "aux_vars")

    def __init__(self, clauses: list[tuple[int, ...]], nvars: int, aux_vars: frozenset[int]):
        self.clauses = clauses
        self.nvars = nvars
        self.aux_vars = aux_vars


_TRUE_LIT = "true"
_FALSE_LIT = "false"


def _is_const_true(node: Formula) -> bool:
    return isinstance(node, And) and not node.children


def _is_const_false(node: Formula) -> bool:
    return isinstance(node, Or) and not node.children


def clausify(f: Formula, alloc: VarAllocator | None = None) -> Clausified:
    """CNF-encode an arbitrary formula, equisatisfiable and model-preserving.

    Uses auxiliary definition variables with full biconditionals, so models of
    the output projected onto the input variables are exactly the models of
    the input.  Top-level conjunctions/disjunctions are flattened and produce
    no auxiliaries.  Aux ids come from ``alloc`` or start above max(var(f)).
    """
    if alloc is None:
        alloc = VarAllocator(max(variables(f), default=0) + 1)
    clauses: list[tuple[int, ...]] = []
    aux: set[int] = set()
    defined: dict[Formula, int] = {}

    def emit(lits: Iterable[int]) -> None:
        # Tautologous definitional clauses are implied; skip them quietly.
        out: set[int] = set()
        for l in lits:
            if -l in out:
                return
            out.add(l)
        clauses.append(tuple(sorted(out, key=lambda l: (abs(l), l < 0))))

    def encode(node: Formula):
        """Return an equivalent literal, or a true/false constant marker."""
        if isinstance(node, Atom):
            return node.var
        if isinstance(node, Not):
            sub = encode(node.child)
            if sub == _TRUE_LIT:
                return _FALSE_LIT
            if sub == _FALSE_LIT:
                return _TRUE_LIT
            return -sub
        cached = defined.get(node)
        if cached is not None:
            return cached
        conj = isinstance(node, And)
        kids = []
        for c in node.children:  # type: ignore[attr-defined]
            k = encode(c)
            if k == _TRUE_LIT:
                if not conj:
                    return _TRUE_LIT
                continue
            if k == _FALSE_LIT:
                if conj:
                    return _FALSE_LIT
                continue
            kids.append(k)
        kidset = set(kids)
        if any(-k in kidset for k in kidset):
            return _FALSE_LIT if conj else _TRUE_LIT
        if not kids:
            return _TRUE_LIT if conj else _FALSE_LIT
        if len(kids) == 1:
            return kids[0]
        a = alloc.fresh()
        aux.add(a)
        if conj:
            for k in kids:
                emit((-a, k))
            emit([a] + [-k for k in kids])
        else:
            for k in kids:
                emit((a, -k))
            emit([-a] + kids)
        defined[node] = a
        return a

    def assert_top(node: Formula) -> None:
        if isinstance(node, And):
            for c in node.children:
                assert_top(c)
            return
        if isinstance(node, Or) and node.children:
            lits = []
            for c in node.children:
                lit = encode(c)
                if lit == _TRUE_LIT:
                    return
                if lit == _FALSE_LIT:
                    continue
                lits.append(lit)
            if not lits:
                clauses.append(())
            else:
                emit(lits)
            return
        lit = encode(node)
        if lit == _TRUE_LIT:
            return
        if lit == _FALSE_LIT:
            clauses.append(())
            return
        clauses.append((lit,))

    assert_top(f)
    return Clausified(clauses, alloc.next_var - 1, frozenset(aux))
