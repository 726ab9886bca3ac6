"""File formats: DIMACS CNF/GCNF/WCNF/DNF, a prefix formula syntax, answers.

All clause-based formats are ASCII, whitespace-separated, 0-terminated.
Clause order in the file defines the (1-based) indices reported in answers,
so parsing preserves order exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from .formula import (
    And,
    Atom,
    CnfFormula,
    DnfFormula,
    Formula,
    FormulaError,
    Not,
    Or,
)


class ParseError(Exception):
    """Malformed input; carries a 1-based line (and column when known)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" at line {line}"
            if column is not None:
                where += f", column {column}"
        super().__init__(message + where)
        self.line = line
        self.column = column


@dataclass
class ProblemInstance:
    """Everything a reduction may need: the main formula plus side inputs."""

    cnf: CnfFormula | None = None
    dnf: DnfFormula | None = None
    formula: Formula | None = None
    groups: dict[int, list[int]] | None = None  # group id -> clause indices (0-based)
    term: tuple[int, ...] | None = None
    clause: tuple[int, ...] | None = None
    unit_index: int | None = None  # 1-based index into cnf/dnf units
    target: Formula | None = None  # entailed formula I
    candidates: CnfFormula | None = None  # candidate clause set N
    model: tuple[int, ...] | None = None  # reference model V as literals
    var_names: dict[str, int] = field(default_factory=dict)

    def main_ast(self) -> Formula:
        if self.formula is not None:
            return self.formula
        if self.cnf is not None:
            return self.cnf.as_ast()
        if self.dnf is not None:
            return self.dnf.as_ast()
        raise ValueError("instance has no main formula")

    def main_nvars(self) -> int:
        if self.cnf is not None:
            return self.cnf.nvars
        if self.dnf is not None:
            return self.dnf.nvars
        from .formula import variables

        return max(variables(self.formula), default=0) if self.formula else 0


def _decode(data: bytes | str) -> str:
    return data.decode("ascii") if isinstance(data, (bytes, bytearray)) else data


def _int_tokens(tokens: list[str], lineno: int) -> list[int]:
    out = []
    for t in tokens:
        try:
            out.append(int(t))
        except ValueError:
            raise ParseError(f"bad token {t!r}", lineno) from None
    return out


def _read_clause_line(lits: list[int], nvars: int, lineno: int, kind: str) -> tuple[int, ...]:
    if not lits or lits[-1] != 0:
        raise ParseError(f"{kind} not 0-terminated", lineno)
    body = lits[:-1]
    if any(l == 0 for l in body):
        raise ParseError(f"stray 0 inside {kind}", lineno)
    for l in body:
        if abs(l) > nvars:
            raise ParseError(f"variable {abs(l)} exceeds declared {nvars}", lineno)
    try:
        if kind == "term":
            from .formula import check_term

            return check_term(body, kind)
        from .formula import check_clause

        return check_clause(body, kind)
    except FormulaError as exc:
        raise ParseError(str(exc), lineno) from None


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield i, line


def parse_dimacs(data: bytes | str) -> CnfFormula:
    """Parse a DIMACS CNF file; clause order defines reference indices."""
    text = _decode(data)
    header = None
    clauses: list[tuple[int, ...]] = []
    nvars = nclauses = 0
    for lineno, line in _lines(text):
        if header is None:
            m = re.fullmatch(r"p\s+cnf\s+(\d+)\s+(\d+)", line)
            if not m:
                raise ParseError(f'expected "p cnf <vars> <clauses>", got {line!r}', lineno)
            nvars, nclauses = int(m.group(1)), int(m.group(2))
            header = lineno
            continue
        lits = _int_tokens(line.split(), lineno)
        clauses.append(_read_clause_line(lits, nvars, lineno, "clause"))
    if header is None:
        raise ParseError("missing DIMACS header")
    if len(clauses) != nclauses:
        raise ParseError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return CnfFormula(clauses, nvars)


def parse_dnf(data: bytes | str) -> DnfFormula:
    """Parse DIMACS-style DNF ("p dnf <vars> <terms>"); each line one term."""
    text = _decode(data)
    header = None
    terms: list[tuple[int, ...]] = []
    nvars = nterms = 0
    for lineno, line in _lines(text):
        if header is None:
            m = re.fullmatch(r"p\s+dnf\s+(\d+)\s+(\d+)", line)
            if not m:
                raise ParseError(f'expected "p dnf <vars> <terms>", got {line!r}', lineno)
            nvars, nterms = int(m.group(1)), int(m.group(2))
            header = lineno
            continue
        lits = _int_tokens(line.split(), lineno)
        terms.append(_read_clause_line(lits, nvars, lineno, "term"))
    if header is None:
        raise ParseError("missing DNF header")
    if len(terms) != nterms:
        raise ParseError(f"header declares {nterms} terms, found {len(terms)}")
    return DnfFormula(terms, nvars)


def parse_gcnf(data: bytes | str) -> tuple[CnfFormula, dict[int, list[int]]]:
    """Parse group CNF.  Group 0 is hard; groups >= 1 are reference elements."""
    text = _decode(data)
    header = None
    clauses: list[tuple[int, ...]] = []
    groups: dict[int, list[int]] = {}
    nvars = nclauses = ngroups = 0
    grp_re = re.compile(r"\{(\d+)\}\s*(.*)")
    for lineno, line in _lines(text):
        if header is None:
            m = re.fullmatch(r"p\s+gcnf\s+(\d+)\s+(\d+)\s+(\d+)", line)
            if not m:
                raise ParseError(f'expected "p gcnf <vars> <clauses> <groups>", got {line!r}', lineno)
            nvars, nclauses, ngroups = (int(g) for g in m.groups())
            header = lineno
            continue
        m = grp_re.fullmatch(line)
        if not m:
            raise ParseError(f"expected {{group}} prefix, got {line!r}", lineno)
        gid = int(m.group(1))
        if gid > ngroups:
            raise ParseError(f"group {gid} exceeds declared {ngroups}", lineno)
        lits = _int_tokens(m.group(2).split(), lineno)
        clauses.append(_read_clause_line(lits, nvars, lineno, "clause"))
        groups.setdefault(gid, []).append(len(clauses) - 1)
    if header is None:
        raise ParseError("missing GCNF header")
    if len(clauses) != nclauses:
        raise ParseError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return CnfFormula(clauses, nvars), groups


def parse_wcnf(data: bytes | str) -> tuple[CnfFormula, dict[int, list[int]]]:
    """Parse unweighted WCNF: weights must be 1 (soft) or top (hard).

    Returns the same shape as parse_gcnf: hard clauses in group 0, each soft
    clause its own singleton group in input order.
    """
    text = _decode(data)
    header = None
    top: int | None = None
    clauses: list[tuple[int, ...]] = []
    groups: dict[int, list[int]] = {}
    nvars = nclauses = 0
    next_group = 1
    for lineno, line in _lines(text):
        if header is None:
            m = re.fullmatch(r"p\s+wcnf\s+(\d+)\s+(\d+)(?:\s+(\d+))?", line)
            if not m:
                raise ParseError(f'expected "p wcnf <vars> <clauses> [top]", got {line!r}', lineno)
            nvars, nclauses = int(m.group(1)), int(m.group(2))
            top = int(m.group(3)) if m.group(3) else None
            header = lineno
            continue
        toks = _int_tokens(line.split(), lineno)
        if not toks:
            raise ParseError("empty clause line", lineno)
        weight, lits = toks[0], toks[1:]
        if top is not None and weight == top:
            gid = 0
        elif weight == 1:
            gid = next_group
            next_group += 1
        else:
            raise ParseError(f"weight {weight} unsupported (must be 1 or top)", lineno)
        clauses.append(_read_clause_line(lits, nvars, lineno, "clause"))
        groups.setdefault(gid, []).append(len(clauses) - 1)
    if header is None:
        raise ParseError("missing WCNF header")
    if len(clauses) != nclauses:
        raise ParseError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return CnfFormula(clauses, nvars), groups


# ---------------------------------------------------------------------------
# prefix formula text:  F ::= var | (not F) | (and F F+) | (or F F+)
#                          | (imp F F) | (iff F F)


_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_EXPLICIT_VAR = re.compile(r"x([1-9][0-9]*)$")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def parse_formula_text(data: bytes | str) -> tuple[Formula, dict[str, int]]:
    """Parse the prefix formula syntax; imp/iff are desugared to not/and/or.

    Variables written ``x<k>`` map to id k; other identifiers are assigned
    fresh ids (in first-appearance order) above all explicit ids.  Returns
    the AST and the name->id map for named variables.
    """
    text = _decode(data)
    tokens = [(m.group(0), m.start()) for m in _TOKEN.finditer(text)]
    pos = 0

    def err(msg: str, at: int) -> ParseError:
        line = text.count("\n", 0, at) + 1
        col = at - (text.rfind("\n", 0, at) + 1) + 1
        return ParseError(msg, line, col)

    names: list[str] = []

    def parse_expr():
        nonlocal pos
        if pos >= len(tokens):
            raise err("unexpected end of input", len(text))
        tok, at = tokens[pos]
        pos += 1
        if tok == ")":
            raise err("unexpected ')'", at)
        if tok != "(":
            if _EXPLICIT_VAR.match(tok) or _IDENT.match(tok):
                if tok not in names:
                    names.append(tok)
                return ("var", tok)
            raise err(f"bad variable name {tok!r}", at)
        if pos >= len(tokens):
            raise err("unclosed '('", at)
        head, head_at = tokens[pos]
        pos += 1
        args = []
        while True:
            if pos >= len(tokens):
                raise err("unclosed '('", at)
            if tokens[pos][0] == ")":
                pos += 1
                break
            args.append(parse_expr())
        arity = {"not": (1, 1), "and": (2, None), "or": (2, None), "imp": (2, 2), "iff": (2, 2)}
        if head not in arity:
            raise err(f"unknown connective {head!r}", head_at)
        lo, hi = arity[head]
        if len(args) < lo or (hi is not None and len(args) > hi):
            want = f"exactly {lo}" if hi == lo else f"at least {lo}"
            raise err(f"{head} expects {want} arguments, got {len(args)}", head_at)
        return (head, args)

    tree = parse_expr()
    if pos != len(tokens):
        raise err("trailing input after formula", tokens[pos][1])

    explicit = {int(m.group(1)) for n in names for m in [_EXPLICIT_VAR.match(n)] if m}
    next_free = max(explicit, default=0) + 1
    ids: dict[str, int] = {}
    for n in names:
        m = _EXPLICIT_VAR.match(n)
        if m:
            ids[n] = int(m.group(1))
        else:
            ids[n] = next_free
            next_free += 1

    def build(node) -> Formula:
        kind, payload = node
        if kind == "var":
            return Atom(ids[payload])
        if kind == "not":
            return Not(build(payload[0]))
        if kind == "and":
            return And([build(a) for a in payload])
        if kind == "or":
            return Or([build(a) for a in payload])
        if kind == "imp":
            return Or([Not(build(payload[0])), build(payload[1])])
        a, b = build(payload[0]), build(payload[1])
        return And([Or([Not(a), b]), Or([Not(b), a])])

    named = {n: ids[n] for n in names if not _EXPLICIT_VAR.match(n)}
    return build(tree), named


def parse_model_line(data: bytes | str) -> tuple[int, ...]:
    """Extract literals from 'v ... 0' lines (SAT-competition style)."""
    text = _decode(data)
    lits: list[int] = []
    saw_v = False
    for lineno, line in _lines(text):
        if not line.startswith("v"):
            continue
        saw_v = True
        lits.extend(_int_tokens(line[1:].split(), lineno))
    if not saw_v:
        raise ParseError("no 'v' model line found")
    if lits and lits[-1] == 0:
        lits = lits[:-1]
    if any(l == 0 for l in lits):
        raise ParseError("stray 0 inside model line")
    return tuple(lits)


# ---------------------------------------------------------------------------
# writers


def write_dimacs(cnf: CnfFormula) -> str:
    lines = [f"p cnf {cnf.nvars} {len(cnf.clauses)}"]
    for c in cnf.clauses:
        lines.append(" ".join(map(str, c + (0,))))
    return "\n".join(lines) + "\n"


def _sorted_items(items: Sequence[int]) -> list[int]:
    return sorted(items, key=lambda v: (abs(v), v < 0))


def write_answer(answer, fmt: str = "plain") -> str:
    """Render a ProblemAnswer: a 'v ... 0' line, or a JSON stats object."""
    if fmt == "plain":
        items = answer.payload_items()
        return "v " + " ".join(map(str, _sorted_items(items) + [0])) + "\n"
    if fmt == "json":
        obj = {
            "problem": answer.kind.value,
            "answer": answer.payload_json(),
            "oracle_calls": answer.total_oracle_calls(),
            "algorithm": answer.result.algorithm,
            "time_ms": answer.time_ms,
        }
        return json.dumps(obj, sort_keys=True) + "\n"
    raise ValueError(f"unknown answer format {fmt!r}")
