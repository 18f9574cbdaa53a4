"""Numerical and symbolic probes of the growth conjectures.

Nothing here asserts a conjecture; the reports only record what is observed.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .freegroup import Word, format_word
from .mpoly import MPoly, compose, format_poly, to_monomial
from .vardi import VardiSet

KAPPA_ENV = "GOLOMBIC_MALLOWS_KAPPA"
# Mallows's constant to nine decimals;
# set GOLOMBIC_MALLOWS_KAPPA to a longer expansion (OEIS A369988) if available.
KAPPA_QUOTED = "0.278877061"


def golden_minus_one() -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 40
        return (Decimal(5).sqrt() - 1) / 2


def mallows_kappa() -> Decimal:
    return Decimal(os.environ.get(KAPPA_ENV, KAPPA_QUOTED))


TARGETS = {"golden": golden_minus_one, "mallows": mallows_kappa}


def is_homogeneous(w: Word) -> bool:
    bases = [b for b, _ in w.powers]
    exps = [m for _, m in w.powers]
    same_sign_bases = all(b >= 0 for b in bases) or all(b <= 0 for b in bases)
    same_sign_exps = all(m > 0 for m in exps) or all(m < 0 for m in exps)
    return same_sign_bases and same_sign_exps


def _dec(q: Fraction, digits: int = 40) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = digits
        return Decimal(q.numerator) / Decimal(q.denominator)


@dataclass
class RatioRow:
    n: int
    ratio: Fraction  # a(n+1) / (a(n) * a(n-1))
    deviation: Decimal

    @property
    def decimal(self) -> str:
        return f"{_dec(self.ratio):.12f}"


@dataclass
class RatioReport:
    kind: str
    seed: Word | None
    target: str
    target_value: Decimal
    rows: list[RatioRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    in_scope: bool = True

    @property
    def final_deviation(self) -> Decimal | None:
        return self.rows[-1].deviation if self.rows else None

    def render(self, fmt: str = "human") -> str:
        seed = format_word(self.seed) if self.seed is not None else "-"
        if fmt == "records":
            recs = [
                {"kind": self.kind, "seed": seed, "n": r.n, "ratio": str(r.ratio),
                 "decimal": r.decimal, "target": self.target, "deviation": f"{r.deviation:.12f}",
                 "in_scope": self.in_scope}
                for r in self.rows
            ]
            return "".join(json.dumps(r) + "\n" for r in recs)
        lines = [f"# ratio a(n+1)/(a(n)a(n-1)) for {self.kind} seed {seed}, "
                 f"target {self.target} = {self.target_value}"]
        if not self.in_scope:
            lines.append("# seed word is not homogeneous: outside conjecture scope")
        lines += [f"# {note}" for note in self.notes]
        for r in self.rows:
            lines.append(f"{r.n:>3}  {r.decimal}  |dev| = {r.deviation:.12f}")
        return "\n".join(lines) + "\n"


def ratio_report(terms: Sequence[int], target: str, *, kind: str = "", seed: Word | None = None) -> RatioReport:
    if len(terms) < 3:
        raise ValueError("need at least three terms")
    try:
        tv = TARGETS[target]()
    except KeyError:
        raise ValueError(f"unknown target {target!r}; use 'golden' or 'mallows'") from None
    rep = RatioReport(kind, seed, target, tv)
    if seed is not None:
        rep.in_scope = is_homogeneous(seed)
    for n in range(2, len(terms)):
        den = terms[n - 1] * terms[n - 2]
        if den == 0:
            rep.notes.append(f"n={n}: a(n)*a(n-1) = 0, skipped")
            continue
        q = Fraction(terms[n], den)
        rep.rows.append(RatioRow(n, q, abs(_dec(q) - tv)))
    return rep


# symbolic sequences --------------------------------------------------------


class TermBudgetExceeded(RuntimeError):
    pass


def variable_names(k: int) -> list[str]:
    out = []
    for j in range(1, k + 1):
        out += [f"m{j}", f"b{j}"]
    return out


def _guard(p: MPoly, budget: int) -> MPoly:
    if len(p) > budget:
        raise TermBudgetExceeded(f"intermediate polynomial has {len(p)} terms (budget {budget})")
    return p


def symbolic_seq_polynomial(kind: str, n: int, k: int, vs: VardiSet, term_budget: int = 200_000) -> MPoly:
    """gol_n or lev_n of (b1^m1 ... bk^mk) as a polynomial in m1, b1, ..., mk, bk.

    Variable x_{2j-1} stands for m_j and x_{2j} for b_j.
    """
    if not 1 <= n <= vs.window:
        raise ValueError(f"n must lie in 1..{vs.window}")
    if k < 1:
        raise ValueError("k must be positive")
    T = [to_monomial(vs.poly(i)) for i in range(1, n + 1)]
    m = [MPoly.var(2 * j - 1) for j in range(1, k + 1)]
    b = [MPoly.var(2 * j) for j in range(1, k + 1)]
    if kind == "golombic":
        G = [MPoly.zero() for _ in range(n)]
        for j in range(k):
            args = [m[j], b[j]] + [G[i] + 1 for i in range(max(n - 2, 0))]
            G = [_guard(G[i] + compose(T[i], args[: i + 1]), term_budget) for i in range(n)]
        return G[n - 1]
    if kind == "levine":
        # l[i][j] for j = 0..k; rows in increasing i so that l_{i,k} (i even)
        # is complete before it appears as an argument
        l: list[list[MPoly]] = []
        for i in range(1, n + 1):
            row = [MPoly.zero()]
            for j in range(k):
                args = [-m[j], -b[j]]
                for q in range(1, i - 1):
                    prev = l[q - 1][j]
                    args.append(-prev if q % 2 else prev - l[q - 1][k])
                term = compose(T[i - 1], args)
                row.append(_guard(row[-1] + (term if i % 2 == 0 else -term), term_budget))
            l.append(row)
        return l[n - 1][k]
    raise ValueError(f"unknown kind {kind!r}")


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@dataclass
class DegreeRow:
    j: int
    variable: str
    degree: int
    expected: int

    @property
    def agrees(self) -> bool:
        return self.degree == self.expected


@dataclass
class DegreeReport:
    kind: str
    n: int
    k: int
    rows: list[DegreeRow]
    poly: MPoly

    @property
    def agrees(self) -> bool:
        return all(r.agrees for r in self.rows)

    def render(self, fmt: str = "human") -> str:
        if fmt == "records":
            return "".join(
                json.dumps({"kind": self.kind, "n": self.n, "k": self.k, "j": r.j,
                            "variable": r.variable, "degree": r.degree,
                            "expected": r.expected, "agree": r.agrees}) + "\n"
                for r in self.rows
            )
        lines = [f"# {self.kind} n={self.n} k={self.k}: degrees vs F_{self.n}/F_{self.n - 1}"]
        for r in self.rows:
            fib = f"F_{self.n}" if r.variable.startswith("m") else f"F_{self.n - 1}"
            verdict = "agree" if r.agrees else "disagree"
            lines.append(f"{r.variable}: degree {r.degree}, {fib} = {r.expected}: {verdict}")
        lines.append(f"F_{self.n}/F_{self.n - 1}: {'agree' if self.agrees else 'disagree'}")
        return "\n".join(lines) + "\n"


def degree_check(kind: str, n: int, k: int, vs: VardiSet, term_budget: int = 200_000) -> DegreeReport:
    p = symbolic_seq_polynomial(kind, n, k, vs, term_budget)
    rows = []
    for j in range(1, k + 1):
        rows.append(DegreeRow(j, f"m{j}", max(p.degree(2 * j - 1), 0), fibonacci(n)))
        rows.append(DegreeRow(j, f"b{j}", max(p.degree(2 * j), 0), fibonacci(n - 1)))
    return DegreeReport(kind, n, k, rows, p)


def format_symbolic(p: MPoly, k: int) -> str:
    return format_poly(p, variable_names(k))
