"""Reductions from Boolean function problems to minimal-set extraction.

Each problem builds a monotone predicate over a reference set (clauses,
groups, literals, variables, or cardinality bounds), extracts a minimal
satisfying set, and decodes it back: directly, as a complement, or as an
optimum with a witness subset read off the final model's selector variables.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .cardinality import CardConstraint, encode_geq
from .formats import ProblemInstance
from .formula import (
    Assignment,
    Atom,
    Formula,
    Not,
    Or,
    And,
    VarAllocator,
    clausify,
    evaluate,
    flip_polarity,
    substitute,
    variables,
)
from .minimize import (
    FORM_B,
    FORM_L,
    FORM_P,
    MinimalSetResult,
    MonotonePredicate,
    extract_minimal,
)
from .oracle import OracleSession, make_session


class Problem(Enum):
    MUS = "mus"
    MCS = "mcs"
    MSS = "mss"
    MES = "mes"
    MDS = "mds"
    MNS = "mns"
    MCFS = "mcfs"
    MFS = "mfs"
    MINMODEL = "minmodel"
    MAXMODEL = "maxmodel"
    PIT = "pit"
    PIC = "pic"
    LEIT = "leit"
    LEIC = "leic"
    MNES = "mnes"
    MXES = "mxes"
    BACKBONE = "backbone"
    BACKBONE_FULL = "backbone-full"
    VARIND = "varind"
    AUTARKY = "autarky"
    SMCS = "smcs"
    SMDS = "smds"
    SMCFS = "smcfs"
    SMNM = "smnm"


# kinds whose answer is the minimal set itself / its complement in R
_DIRECT = {Problem.MUS, Problem.MCS, Problem.MES, Problem.MDS, Problem.MCFS,
           Problem.MNES, Problem.PIT, Problem.PIC, Problem.MINMODEL}
_OPTIMIZATION = {Problem.SMCS, Problem.SMDS, Problem.SMCFS, Problem.SMNM}

# unique-answer kinds: the result is independent of algorithm and order
UNIQUE_ANSWER = {Problem.BACKBONE, Problem.BACKBONE_FULL, Problem.MXES,
                 Problem.AUTARKY, Problem.LEIC, Problem.LEIT, Problem.VARIND}


class PreconditionError(Exception):
    """The instance violates the problem's defining precondition."""


@dataclass
class ProblemAnswer:
    kind: Problem
    payload: tuple[int, ...]
    result: MinimalSetResult
    optimum: int | None = None
    witness: Assignment | None = None
    degenerate: bool = False
    precondition_calls: int = 0
    decode_calls: int = 0
    time_ms: float = 0.0
    aut_form: str = "l"

    def payload_items(self) -> list[int]:
        return list(self.payload)

    def payload_json(self):
        if self.kind in (Problem.SMCS, Problem.SMDS, Problem.SMCFS):
            return {"optimum": self.optimum, "subset": sorted(self.payload)}
        if self.kind is Problem.SMNM:
            return {"optimum": self.optimum, "model": sorted(self.payload)}
        return sorted(self.payload, key=lambda v: (abs(v), v < 0))

    def total_oracle_calls(self) -> int:
        return self.result.oracle_calls + self.precondition_calls + self.decode_calls


class _SessionAlloc(VarAllocator):
    """Fresh-variable allocator backed by an oracle session."""

    def __init__(self, session: OracleSession):
        self.session = session
        super().__init__(session.nvars + 1)

    def fresh(self) -> int:
        v = self.session.new_var()
        self.next_var = v + 1
        return v


def _assert_ast(session: OracleSession, ast: Formula, guard: int | None = None) -> frozenset[int]:
    """Clausify a formula into the session, optionally guarded by a selector."""
    alloc = _SessionAlloc(session)
    enc = clausify(ast, alloc)
    if guard is None:
        session.add_clauses(enc.clauses)
    else:
        session.add_clauses([(-guard,) + c for c in enc.clauses])
    return enc.aux_vars


def _guarded_clauses(session: OracleSession, clauses: Sequence[Sequence[int]]) -> list[int]:
    """One fresh selector per clause; selector true forces the clause."""
    selectors = []
    for c in clauses:
        s = session.new_var()
        selectors.append(s)
        session.add_clauses([(-s,) + tuple(c)])
    return selectors


def _negation_selectors(session: OracleSession, clauses: Sequence[Sequence[int]]) -> list[int]:
    """One selector per clause; selector true forces the clause falsified."""
    selectors = []
    for c in clauses:
        t = session.new_var()
        selectors.append(t)
        session.add_clauses([(-t, -l) for l in c])
    return selectors


def _sorted_lits(lits) -> tuple[int, ...]:
    return tuple(sorted(lits, key=lambda l: (abs(l), l < 0)))


def _cnf_universe(instance: ProblemInstance) -> list[int]:
    return list(range(1, instance.main_nvars() + 1))


def _require_cnf(kind: Problem, instance: ProblemInstance):
    if instance.cnf is None:
        raise PreconditionError(f"{kind.value} needs a CNF clause-set input")
    if instance.groups is not None and kind not in (Problem.MUS, Problem.MCS):
        raise PreconditionError(f"group input is only supported for mus and mcs, not {kind.value}")
    return instance.cnf


def build_predicate(
    kind: Problem,
    instance: ProblemInstance,
    session: OracleSession,
    *,
    assume_wellposed: bool = False,
    aut_form: str = "l",
) -> MonotonePredicate:
    """Encode the instance into the session and return the predicate to minimize.

    Problem preconditions are checked here (one oracle probe where needed)
    unless ``assume_wellposed``; preconditions that coincide with the
    predicate holding on the full reference set are left to the extractor's
    well-posedness test and only contribute an error message.
    """
    builder = _BUILDERS.get(kind)
    if builder is None:
        raise ValueError(f"no reduction for {kind}")
    calls_before = session.calls
    pred = builder(instance, session, assume_wellposed, aut_form)
    pred.context["kind"] = kind
    pred.context["precondition_calls"] = session.calls - calls_before
    if "universe" not in pred.context:
        pred.context["universe"] = _universe_for(instance, instance.main_ast())
    return pred


# ---------------------------------------------------------------------------
# builders


def _elements_and_selectors(instance: ProblemInstance, session: OracleSession):
    """Load the main clause set guarded by selectors.

    Plain CNF: elements are 1-based clause indices.  Grouped CNF: group 0 is
    loaded hard, and elements are the group ids >= 1 sharing one selector per
    group.
    """
    cnf = instance.cnf
    session.ensure_vars(cnf.nvars)
    if instance.groups is None:
        selectors = _guarded_clauses(session, cnf.clauses)
        elements = tuple(range(1, len(cnf.clauses) + 1))
        assumptions = {i + 1: (selectors[i],) for i in range(len(selectors))}
        return elements, assumptions
    hard = instance.groups.get(0, [])
    session.add_clauses([cnf.clauses[i] for i in hard])
    elements = tuple(sorted(g for g in instance.groups if g != 0))
    assumptions = {}
    for g in elements:
        s = session.new_var()
        session.add_clauses([(-s,) + cnf.clauses[i] for i in instance.groups[g]])
        assumptions[g] = (s,)
    return elements, assumptions


def _build_mus(instance, session, assume_wellposed, aut_form):
    _require_cnf(Problem.MUS, instance)
    elements, assumptions = _elements_and_selectors(instance, session)
    return MonotonePredicate(
        FORM_P, elements, session,
        element_assumptions=assumptions,
        description="minimal unsatisfiable subset",
        precondition_message="mus requires an unsatisfiable clause set",
    )


def _build_mcs(instance, session, assume_wellposed, aut_form):
    _require_cnf(Problem.MCS, instance)
    elements, assumptions = _elements_and_selectors(instance, session)
    if not assume_wellposed:
        every = [lit for e in elements for lit in assumptions[e]]
        if session.solve(every).is_sat:
            raise PreconditionError("mcs requires an unsatisfiable clause set")
    return MonotonePredicate(
        FORM_L, elements, session,
        element_assumptions=assumptions,
        description="minimal correction subset",
    )


def _build_mes(instance, session, assume_wellposed, aut_form):
    cnf = _require_cnf(Problem.MES, instance)
    session.ensure_vars(cnf.nvars)
    selectors = _guarded_clauses(session, cnf.clauses)
    negsel = _negation_selectors(session, cnf.clauses)
    session.add_clauses([tuple(negsel) if negsel else ()])  # some clause falsified
    elements = tuple(range(1, len(cnf.clauses) + 1))
    return MonotonePredicate(
        FORM_P, elements, session,
        element_assumptions={i + 1: (selectors[i],) for i in range(len(selectors))},
        description="minimal equivalent subset",
    )


def _build_mds(instance, session, assume_wellposed, aut_form):
    cnf = _require_cnf(Problem.MDS, instance)
    session.ensure_vars(cnf.nvars)
    selectors = _guarded_clauses(session, cnf.clauses)
    negsel = _negation_selectors(session, cnf.clauses)
    session.add_clauses([tuple(negsel) if negsel else ()])
    elements = tuple(range(1, len(cnf.clauses) + 1))
    return MonotonePredicate(
        FORM_L, elements, session,
        element_assumptions={i + 1: (selectors[i],) for i in range(len(selectors))},
        description="minimal distinguishing subset",
        precondition_message="mds requires a nonempty clause set",
    )


def _build_mcfs(instance, session, assume_wellposed, aut_form):
    cnf = _require_cnf(Problem.MCFS, instance)
    session.ensure_vars(cnf.nvars)
    selectors = _negation_selectors(session, cnf.clauses)
    elements = tuple(range(1, len(cnf.clauses) + 1))
    return MonotonePredicate(
        FORM_L, elements, session,
        element_assumptions={i + 1: (selectors[i],) for i in range(len(selectors))},
        description="minimal correction-for-falsifiability subset",
    )


def _build_minmodel(instance, session, assume_wellposed, aut_form, ast=None, universe=None):
    if ast is None:
        ast = instance.main_ast()
        universe = _universe_for(instance, ast)
    session.ensure_vars(max(universe, default=0))
    _assert_ast(session, ast)
    return MonotonePredicate(
        FORM_L, tuple(universe), session,
        element_assumptions={x: (-x,) for x in universe},
        description="minimal model",
        precondition_message="minmodel requires a satisfiable formula",
    )


def _universe_for(instance: ProblemInstance, ast: Formula) -> list[int]:
    if instance.cnf is not None or instance.dnf is not None:
        return _cnf_universe(instance)
    return sorted(variables(ast))


def _build_maxmodel(instance, session, assume_wellposed, aut_form):
    ast = instance.main_ast()
    universe = _universe_for(instance, ast)
    pred = _build_minmodel(instance, session, assume_wellposed, aut_form,
                           ast=flip_polarity(ast), universe=universe)
    pred.description = "maximal model"
    pred.precondition_message = "maxmodel requires a satisfiable formula"
    pred.context["universe"] = universe
    return pred


def _build_pit(instance, session, assume_wellposed, aut_form):
    if instance.term is None:
        raise PreconditionError("pit needs a term (--term)")
    ast = instance.main_ast()
    session.ensure_vars(max(instance.main_nvars(), max(abs(l) for l in instance.term)))
    _assert_ast(session, Not(ast))
    elements = _sorted_lits(instance.term)
    return MonotonePredicate(
        FORM_P, elements, session,
        element_assumptions={l: (l,) for l in elements},
        description="prime implicant from implicant",
        precondition_message="pit requires the given term to entail the formula",
    )


def _build_pic(instance, session, assume_wellposed, aut_form):
    if instance.clause is None:
        raise PreconditionError("pic needs a clause (--clause)")
    ast = instance.main_ast()
    session.ensure_vars(max(instance.main_nvars(), max(abs(l) for l in instance.clause)))
    _assert_ast(session, ast)
    elements = _sorted_lits(instance.clause)
    return MonotonePredicate(
        FORM_P, elements, session,
        element_assumptions={l: (-l,) for l in elements},
        description="prime implicate from implicate",
        precondition_message="pic requires the formula to entail the given clause",
    )


def _free_literals(universe: Sequence[int], unit: Sequence[int]) -> tuple[int, ...]:
    used = {abs(l) for l in unit}
    out = []
    for v in universe:
        if v not in used:
            out.extend((v, -v))
    return tuple(out)


def _check_unit_index(instance: ProblemInstance, n_units: int, what: str) -> int:
    k = instance.unit_index
    if k is None or not 1 <= k <= n_units:
        raise PreconditionError(
            f"{what} needs --unit-index between 1 and {n_units}, got {k}"
        )
    return k - 1


def _build_leit(instance, session, assume_wellposed, aut_form):
    if instance.dnf is None:
        raise PreconditionError("leit needs a DNF input")
    dnf = instance.dnf
    k = _check_unit_index(instance, len(dnf.terms), "leit")
    session.ensure_vars(dnf.nvars)
    base = dnf.terms[k]
    session.add_clauses([(l,) for l in base])
    for i, t in enumerate(dnf.terms):
        if i != k:
            session.add_clauses([tuple(-l for l in t)])
    elements = _free_literals(_cnf_universe(instance), base)
    pred = MonotonePredicate(
        FORM_B, elements, session,
        element_disjuncts={l: -l for l in elements},
        description="longest extension of an implicant",
    )
    pred.context["base_lits"] = base
    if not assume_wellposed:
        pred.context["degenerate"] = not session.solve(()).is_sat
    return pred


def _build_leic(instance, session, assume_wellposed, aut_form):
    cnf = _require_cnf(Problem.LEIC, instance)
    k = _check_unit_index(instance, len(cnf.clauses), "leic")
    session.ensure_vars(cnf.nvars)
    base = cnf.clauses[k]
    session.add_clauses([(-l,) for l in base])
    for i, c in enumerate(cnf.clauses):
        if i != k:
            session.add_clauses([c])
    elements = _free_literals(_cnf_universe(instance), base)
    pred = MonotonePredicate(
        FORM_B, elements, session,
        element_disjuncts={l: l for l in elements},
        description="longest extension of an implicate",
    )
    pred.context["base_lits"] = base
    if not assume_wellposed:
        pred.context["degenerate"] = not session.solve(()).is_sat
    return pred


def _build_mnes(instance, session, assume_wellposed, aut_form):
    cnf = _require_cnf(Problem.MNES, instance)
    if instance.target is None:
        raise PreconditionError("mnes needs a target formula (--target)")
    session.ensure_vars(max(cnf.nvars, max(variables(instance.target), default=0)))
    _assert_ast(session, Not(instance.target))
    selectors = _guarded_clauses(session, cnf.clauses)
    elements = tuple(range(1, len(cnf.clauses) + 1))
    return MonotonePredicate(
        FORM_P, elements, session,
        element_assumptions={i + 1: (selectors[i],) for i in range(len(selectors))},
        description="minimal entailing subset",
        precondition_message="mnes requires the clause set to entail the target",
    )


def _build_mxes(instance, session, assume_wellposed, aut_form):
    if instance.candidates is None:
        raise PreconditionError("mxes needs a candidate clause set (--candidates)")
    ast = instance.main_ast()
    cand = instance.candidates
    session.ensure_vars(max(instance.main_nvars(), cand.nvars))
    _assert_ast(session, ast)
    if not assume_wellposed and not session.solve(()).is_sat:
        raise PreconditionError("mxes requires a satisfiable entailing formula")
    disjuncts = {}
    for i, c in enumerate(cand.clauses):
        d = session.new_var()
        session.add_clauses([(-d, -l) for l in c])
        disjuncts[i + 1] = d
    elements = tuple(range(1, len(cand.clauses) + 1))
    return MonotonePredicate(
        FORM_B, elements, session,
        element_disjuncts=disjuncts,
        description="maximal entailed subset",
    )


def _build_backbone(instance, session, assume_wellposed, aut_form):
    ast = instance.main_ast()
    nvars = instance.main_nvars()
    session.ensure_vars(nvars)
    _assert_ast(session, ast)
    universe = _universe_for(instance, ast)
    if instance.model is not None:
        ref = Assignment.from_literals(instance.model)
        if not ref.total_over(universe):
            raise PreconditionError("backbone reference model must assign every variable")
        if not assume_wellposed and evaluate(ast, ref) != 1:
            raise PreconditionError("backbone requires the reference model to satisfy the formula")
    else:
        outcome = session.solve(())
        if not outcome.is_sat:
            raise PreconditionError("backbone requires a satisfiable formula")
        ref = outcome.witness.restrict(universe)
    elements = _sorted_lits(v if ref.value(v) else -v for v in universe)
    return MonotonePredicate(
        FORM_B, elements, session,
        element_disjuncts={l: -l for l in elements},
        description="backbone from a reference model",
    )


def _build_backbone_full(instance, session, assume_wellposed, aut_form):
    ast = instance.main_ast()
    universe = _universe_for(instance, ast)
    session.ensure_vars(instance.main_nvars())
    primed = {x: session.new_var() for x in universe}
    _assert_ast(session, ast)
    _assert_ast(session, substitute(ast, primed))
    disjuncts = {}
    for x in universe:
        d = session.new_var()
        session.add_clauses([(-d, x), (-d, -primed[x])])
        disjuncts[x] = d
    pred = MonotonePredicate(
        FORM_B, tuple(universe), session,
        element_disjuncts=disjuncts,
        description="backbone via a renamed copy",
    )
    pred.context["universe"] = universe
    return pred


def _build_varind(instance, session, assume_wellposed, aut_form):
    ast = instance.main_ast()
    universe = _universe_for(instance, ast)
    session.ensure_vars(instance.main_nvars())
    renamed = {x: session.new_var() for x in universe}
    copy = substitute(ast, renamed)
    difference = Or([And([copy, Not(ast)]), And([Not(copy), ast])])
    _assert_ast(session, difference)
    assumptions = {}
    for x in universe:
        s = session.new_var()
        y = renamed[x]
        session.add_clauses([(-s, -x, y), (-s, x, -y)])
        assumptions[x] = (s,)
    return MonotonePredicate(
        FORM_P, tuple(universe), session,
        element_assumptions=assumptions,
        description="maximal independent variable set",
    )


def _build_autarky(instance, session, assume_wellposed, aut_form):
    cnf = _require_cnf(Problem.AUTARKY, instance)
    session.ensure_vars(cnf.nvars)
    universe = _cnf_universe(instance)
    if not assume_wellposed:
        h = session.new_var()
        session.add_clauses([(-h,) + c for c in cnf.clauses])
        if session.solve((h,)).is_sat:
            raise PreconditionError("autarky requires an unsatisfiable clause set")
    sel = {}
    on_true = {}
    on_false = {}
    for x in universe:
        sel[x] = session.new_var()
        on_true[x] = session.new_var()
        on_false[x] = session.new_var()
        session.add_clauses([
            (-on_true[x], sel[x]), (-on_true[x], x), (on_true[x], -sel[x], -x),
            (-on_false[x], sel[x]), (-on_false[x], -x), (on_false[x], -sel[x], x),
        ])
    for c in cnf.clauses:
        if not c:
            continue  # an empty clause touches no variable
        translated = tuple(on_true[abs(l)] if l > 0 else on_false[abs(l)] for l in c)
        for v in {abs(l) for l in c}:
            session.add_clauses([(-sel[v],) + translated])
    if aut_form == "b":
        pred = MonotonePredicate(
            FORM_B, tuple(universe), session,
            element_disjuncts={x: sel[x] for x in universe},
            description="maximal autarky (unsat-of-disjunction shape)",
        )
    else:
        pred = MonotonePredicate(
            FORM_L, tuple(universe), session,
            element_assumptions={x: (sel[x],) for x in universe},
            description="maximal autarky (sat-of-complement shape)",
        )
    pred.context["aut_form"] = aut_form
    return pred


def _relaxed_clause_selectors(session: OracleSession, clauses) -> list[int]:
    """Relaxation selectors: p_i true commits clause i to be satisfied."""
    return _guarded_clauses(session, clauses)


def _bound_machinery(session: OracleSession, plits: Sequence[int]):
    """A cached builder of activation literals for 'at least b selectors true'."""
    cache: dict[int, int | None] = {}

    def bound_query(b: int) -> int | None:
        if b in cache:
            return cache[b]
        alloc = _SessionAlloc(session)
        clauses = encode_geq(CardConstraint(tuple(plits), b), alloc)
        if not clauses:
            cache[b] = None
            return None
        act = session.new_var()
        session.add_clauses([(-act,) + c for c in clauses])
        cache[b] = act
        return act

    return bound_query


def _build_smcs(instance, session, assume_wellposed, aut_form):
    cnf = _require_cnf(Problem.SMCS, instance)
    session.ensure_vars(cnf.nvars)
    plits = _relaxed_clause_selectors(session, cnf.clauses)
    elements = tuple(range(0, len(cnf.clauses) + 1))
    pred = MonotonePredicate(
        FORM_L, elements, session,
        bound_query=_bound_machinery(session, plits),
        description="smallest correction subset",
    )
    pred.context["plits"] = plits
    return pred


def _build_smds(instance, session, assume_wellposed, aut_form):
    cnf = _require_cnf(Problem.SMDS, instance)
    session.ensure_vars(cnf.nvars)
    negsel = _negation_selectors(session, cnf.clauses)
    session.add_clauses([tuple(negsel) if negsel else ()])
    plits = _relaxed_clause_selectors(session, cnf.clauses)
    elements = tuple(range(0, len(cnf.clauses) + 1))
    pred = MonotonePredicate(
        FORM_L, elements, session,
        bound_query=_bound_machinery(session, plits),
        description="smallest distinguishing subset",
        precondition_message="smds requires a nonempty clause set",
    )
    pred.context["plits"] = plits
    return pred


def _build_smcfs(instance, session, assume_wellposed, aut_form):
    cnf = _require_cnf(Problem.SMCFS, instance)
    session.ensure_vars(cnf.nvars)
    plits = _negation_selectors(session, cnf.clauses)
    elements = tuple(range(0, len(cnf.clauses) + 1))
    pred = MonotonePredicate(
        FORM_L, elements, session,
        bound_query=_bound_machinery(session, plits),
        description="smallest correction-for-falsifiability subset",
    )
    pred.context["plits"] = plits
    return pred


def _build_smnm(instance, session, assume_wellposed, aut_form):
    ast = instance.main_ast()
    universe = _universe_for(instance, ast)
    session.ensure_vars(instance.main_nvars())
    _assert_ast(session, ast)
    plits = []
    for x in universe:
        p = session.new_var()
        plits.append(p)
        session.add_clauses([(-p, -x)])
    elements = tuple(range(0, len(universe) + 1))
    pred = MonotonePredicate(
        FORM_L, elements, session,
        bound_query=_bound_machinery(session, plits),
        description="smallest minimal model",
        precondition_message="smnm requires a satisfiable formula",
    )
    pred.context["plits"] = plits
    pred.context["universe"] = universe
    return pred


_BUILDERS = {
    Problem.MUS: _build_mus,
    Problem.MCS: _build_mcs,
    Problem.MSS: _build_mcs,
    Problem.MES: _build_mes,
    Problem.MDS: _build_mds,
    Problem.MNS: _build_mds,
    Problem.MCFS: _build_mcfs,
    Problem.MFS: _build_mcfs,
    Problem.MINMODEL: _build_minmodel,
    Problem.MAXMODEL: _build_maxmodel,
    Problem.PIT: _build_pit,
    Problem.PIC: _build_pic,
    Problem.LEIT: _build_leit,
    Problem.LEIC: _build_leic,
    Problem.MNES: _build_mnes,
    Problem.MXES: _build_mxes,
    Problem.BACKBONE: _build_backbone,
    Problem.BACKBONE_FULL: _build_backbone_full,
    Problem.VARIND: _build_varind,
    Problem.AUTARKY: _build_autarky,
    Problem.SMCS: _build_smcs,
    Problem.SMDS: _build_smds,
    Problem.SMCFS: _build_smcfs,
    Problem.SMNM: _build_smnm,
}

# group-input restriction is enforced in _require_cnf


# ---------------------------------------------------------------------------
# decoding


def _consistent_in_order(lits: Sequence[int]) -> list[int]:
    """Keep the first literal per variable (resolves degenerate extensions)."""
    seen: set[int] = set()
    out = []
    for l in lits:
        if abs(l) not in seen:
            seen.add(abs(l))
            out.append(l)
    return out


def decode_answer(
    kind: Problem,
    result: MinimalSetResult,
    predicate: MonotonePredicate,
) -> ProblemAnswer:
    """Turn a minimal set (plus witness) into the problem's answer."""
    session = predicate.session
    elements = predicate.elements
    mset = set(result.minimal_set)
    rest = tuple(e for e in elements if e not in mset)
    universe = predicate.context.get("universe")
    decode_calls = 0
    witness = None
    optimum = None
    degenerate = bool(predicate.context.get("degenerate", False))

    if kind in _DIRECT:
        payload = tuple(result.minimal_set)
        if kind is Problem.MINMODEL:
            payload = tuple(sorted(mset))
            witness = Assignment({x: (x in mset) for x in elements})
        elif result.witness is not None:
            witness = result.witness
    elif kind in (Problem.MSS, Problem.MNS, Problem.MFS):
        payload = rest
        if result.witness is not None:
            witness = result.witness
    elif kind is Problem.MAXMODEL:
        model = tuple(sorted(set(universe) - mset))
        payload = model
        witness = Assignment({x: (x in model) for x in universe})
    elif kind in (Problem.LEIT, Problem.LEIC):
        base = predicate.context["base_lits"]
        extension = _consistent_in_order(list(rest))
        payload = _sorted_lits(tuple(base) + tuple(extension))
        if not degenerate and len(extension) != len(rest):
            # both polarities survived although the base was not covered
            degenerate = True
    elif kind is Problem.MXES:
        payload = rest
    elif kind is Problem.BACKBONE:
        payload = _sorted_lits(rest)
    elif kind is Problem.BACKBONE_FULL:
        outcome = session.solve(())
        decode_calls = 1
        if not outcome.is_sat:
            raise PreconditionError("backbone-full requires a satisfiable formula")
        model = outcome.witness
        payload = _sorted_lits(x if model.value(x) else -x for x in rest)
        witness = model.restrict(elements)
    elif kind is Problem.VARIND:
        payload = tuple(sorted(set(elements) - mset))
    elif kind is Problem.AUTARKY:
        if predicate.context.get("aut_form") == "b":
            autark = tuple(sorted(mset))
        else:
            autark = tuple(sorted(set(elements) - mset))
        payload = autark
        if result.witness is not None:
            witness = result.witness.restrict(autark)
    elif kind in _OPTIMIZATION:
        optimum = len(mset)
        if result.witness is None:  # pragma: no cover - form L always carries one
            raise RuntimeError("optimization decode needs the final witness")
        plits = predicate.context["plits"]
        off = [i for i, p in enumerate(plits) if not result.witness.value(p)]
        if kind is Problem.SMNM:
            payload = tuple(sorted(universe[i] for i in off))
            witness = Assignment({x: (x in set(payload)) for x in universe})
        else:
            payload = tuple(i + 1 for i in off)
            witness = result.witness
        if len(payload) != optimum:  # pragma: no cover - selector/bound mismatch
            raise RuntimeError(
                f"decoded subset size {len(payload)} disagrees with optimum {optimum}"
            )
    else:  # pragma: no cover
        raise ValueError(f"no decode for {kind}")

    if witness is not None and universe is not None:
        witness = witness.restrict(universe)
    answer = ProblemAnswer(
        kind=kind,
        payload=tuple(payload),
        result=result,
        optimum=optimum,
        witness=witness,
        degenerate=degenerate,
        precondition_calls=predicate.context.get("precondition_calls", 0),
        decode_calls=decode_calls,
        aut_form=predicate.context.get("aut_form", "l"),
    )
    return answer


def solve(
    kind: Problem,
    instance: ProblemInstance,
    algorithm: str = "progression",
    *,
    session: OracleSession | None = None,
    backend: str = "internal",
    seed: int = 0,
    assume_wellposed: bool = False,
    aut_form: str = "l",
    element_order: Sequence | None = None,
) -> ProblemAnswer:
    """Build, extract and decode in one step."""
    t0 = time.perf_counter()
    if session is None:
        session = make_session(backend, seed=seed)
    pred = build_predicate(kind, instance, session,
                           assume_wellposed=assume_wellposed, aut_form=aut_form)
    result = extract_minimal(pred, algorithm,
                             check_wellposed=not assume_wellposed,
                             element_order=element_order)
    answer = decode_answer(kind, result, pred)
    answer.time_ms = (time.perf_counter() - t0) * 1000.0
    return answer


def verify_certificate(predicate: MonotonePredicate, result: MinimalSetResult) -> tuple[bool, str]:
    """Post-hoc minimality certificate: the set holds, no single deletion does."""
    mset = list(result.minimal_set)
    ok, _ = predicate.test(mset)
    if not ok:
        return False, "extracted set does not satisfy the predicate"
    for e in mset:
        ok, _ = predicate.test([x for x in mset if x != e])
        if ok:
            return False, f"element {e} is redundant in the extracted set"
    return True, "minimality certificate holds"
