"""2-CNF formulas, DIMACS I/O and exhaustive Max/Min 2-SAT."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

from .errors import BudgetError, FormatError, InputError

#: (variable index, negated); variables are numbered from 1 as in DIMACS
Literal = tuple[int, bool]
Clause = tuple[Literal, Literal]
#: truth value of x_1 .. x_n
TruthAssignment = tuple[bool, ...]

DEFAULT_MAX_VARS = 24


@dataclass(frozen=True)
class TwoCnf:
    """A list of two-literal clauses over ``x_1 .. x_num_vars``.

    With ``require_two_occurrences`` every variable must appear in at least
    two clauses, the precondition of the gadget reductions.
    """

    num_vars: int
    clauses: tuple[Clause, ...]
    require_two_occurrences: bool = False

    def __post_init__(self):
        if self.num_vars < 0:
            raise InputError("num_vars must be nonnegative")
        clauses = []
        for cl in self.clauses:
            if len(cl) != 2:
                raise InputError(f"clause {cl} does not have exactly two literals")
            lits = []
            for var, neg in cl:
                if not 1 <= var <= self.num_vars:
                    raise InputError(f"variable {var} out of range 1..{self.num_vars}")
                lits.append((int(var), bool(neg)))
            clauses.append(tuple(lits))
        object.__setattr__(self, "clauses", tuple(clauses))
        if self.require_two_occurrences:
            rare = [i for i, c in enumerate(self.occurrences(), 1) if c < 2]
            if rare:
                raise InputError(f"variables occurring fewer than twice: {rare}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def n(self) -> int:
        return self.num_vars

    def occurrences(self) -> list[int]:
        cnt = Counter(var for cl in self.clauses for var, _ in cl)
        return [cnt[i] for i in range(1, self.num_vars + 1)]

    def complemented(self) -> "TwoCnf":
        """Same clauses with every literal negated."""
        flipped = tuple(tuple((v, not neg) for v, neg in cl) for cl in self.clauses)
        return TwoCnf(self.num_vars, flipped)

    @classmethod
    def from_dimacs_ints(cls, n: int, clauses, **kw) -> "TwoCnf":
        return cls(n, tuple(tuple((abs(x), x < 0) for x in cl) for cl in clauses), **kw)


def parse_dimacs_2cnf(text: str) -> TwoCnf:
    n = m = None
    clauses = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "cnf" or n is not None:
                raise FormatError("expected a single 'p cnf <n> <m>' header", lineno)
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise FormatError("non-integer header field", lineno) from None
            continue
        if n is None:
            raise FormatError("clause before 'p cnf' header", lineno)
        for t in tok:
            try:
                x = int(t)
            except ValueError:
                raise FormatError(f"bad literal {t!r}", lineno) from None
            if x == 0:
                if len(pending) != 2:
                    raise FormatError(f"clause has {len(pending)} literals, expected 2", lineno)
                clauses.append(tuple(pending))
                pending = []
                continue
            if abs(x) > n:
                raise FormatError(f"variable {abs(x)} out of range 1..{n}", lineno)
            pending.append(x)
    if n is None:
        raise FormatError("missing 'p cnf' header")
    if pending:
        raise FormatError("unterminated final clause")
    if m != len(clauses):
        raise FormatError(f"header declares {m} clauses, found {len(clauses)}")
    return TwoCnf.from_dimacs_ints(n, clauses)


def format_dimacs(cnf: TwoCnf) -> str:
    out = [f"p cnf {cnf.num_vars} {cnf.m}"]
    for cl in cnf.clauses:
        out.append(" ".join(str(-v if neg else v) for v, neg in cl) + " 0")
    return "\n".join(out) + "\n"


def read_dimacs(path) -> TwoCnf:
    return parse_dimacs_2cnf(Path(path).read_text())


def _lit_true(lit: Literal, a: TruthAssignment) -> bool:
    var, neg = lit
    return a[var - 1] != neg


def satisfied_clauses(cnf: TwoCnf, a: TruthAssignment) -> list[int]:
    """Indices (0-based) of the clauses that ``a`` satisfies."""
    if len(a) != cnf.num_vars:
        raise InputError(f"assignment has length {len(a)}, expected {cnf.num_vars}")
    return [j for j, (l1, l2) in enumerate(cnf.clauses) if _lit_true(l1, a) or _lit_true(l2, a)]


def count_satisfied(cnf: TwoCnf, a: TruthAssignment) -> int:
    return len(satisfied_clauses(cnf, a))


def assignment_from_int(bits: int, n: int) -> TruthAssignment:
    """Bit ``i-1`` of ``bits`` is the value of ``x_i``."""
    return tuple(bool(bits >> i & 1) for i in range(n))


def assignment_to_int(a: TruthAssignment) -> int:
    return sum(1 << i for i, x in enumerate(a) if x)


class SatExtrema(NamedTuple):
    k_max: int
    argmax: TruthAssignment
    k_min: int
    argmin: TruthAssignment


def sat_extrema(cnf: TwoCnf, max_vars: int = DEFAULT_MAX_VARS) -> SatExtrema:
    """Max and min number of satisfied clauses over all ``2**n`` assignments.

    Witnesses are the assignments with the smallest integer encoding
    (see :func:`assignment_from_int`) among the optimal ones.
    """
    n = cnf.num_vars
    if n > max_vars:
        raise BudgetError(f"{n} variables exceeds enumeration budget {max_vars}")
    # clause j is satisfied unless both literals are false; precompute masks
    masks = []
    for (v1, n1), (v2, n2) in cnf.clauses:
        masks.append((1 << (v1 - 1), 0 if n1 else 1 << (v1 - 1),
                      1 << (v2 - 1), 0 if n2 else 1 << (v2 - 1)))
    best_hi = best_lo = None
    arg_hi = arg_lo = 0
    for bits in range(1 << n):
        cnt = 0
        for b1, t1, b2, t2 in masks:
            if (bits & b1) == t1 or (bits & b2) == t2:
                cnt += 1
        if best_hi is None or cnt > best_hi:
            best_hi, arg_hi = cnt, bits
        if best_lo is None or cnt < best_lo:
            best_lo, arg_lo = cnt, bits
    return SatExtrema(best_hi, assignment_from_int(arg_hi, n),
                      best_lo, assignment_from_int(arg_lo, n))
