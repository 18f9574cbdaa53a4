"""Sparse multivariate polynomials over Q in the variables x1, x2, ...

Terms are keyed by exponent vectors (tuples with trailing zeros trimmed).  A
polynomial is tagged with the basis its keys refer to:

* ``monomial``: key r stands for prod x_j**r[j]
* ``binomial``: key r stands for prod C(x_j, r[j])

The discrete derivative and integral with respect to x1 act as index shifts
on the x1-binomial direction.
"""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

MONOMIAL = "monomial"
BINOMIAL = "binomial"
_BASES = (MONOMIAL, BINOMIAL)

Exp = tuple[int, ...]


def _trim(e: Iterable[int]) -> Exp:
    e = tuple(e)
    n = len(e)
    while n and e[n - 1] == 0:
        n -= 1
    return e[:n]


def _add_exp(a: Exp, b: Exp) -> Exp:
    if len(a) < len(b):
        a, b = b, a
    return tuple([x + y for x, y in zip(a, b)]) + a[len(b):]


def _set(e: Exp, i: int, k: int) -> Exp:
    """Return e with position i (0-based) replaced by k, trimmed."""
    if i >= len(e):
        if k == 0:
            return e
        return e + (0,) * (i - len(e)) + (k,)
    return _trim(e[:i] + (k,) + e[i + 1:])


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Signed Stirling number of the first kind s(n, k)."""
    if k > n or k < 0:
        return 0
    if n == k:
        return 1
    if k == 0:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if k > n or k < 0:
        return 0
    if n == k:
        return 1
    if k == 0:
        return 0
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


@lru_cache(maxsize=None)
def _mono_to_binom(k: int) -> tuple[tuple[int, int], ...]:
    # x**k = sum_i S2(k,i) i! C(x,i)
    return tuple(
        (i, stirling2(k, i) * math.factorial(i))
        for i in range(k + 1)
        if stirling2(k, i)
    )


@lru_cache(maxsize=None)
def _binom_to_mono(k: int) -> tuple[tuple[int, Fraction], ...]:
    # C(x,k) = sum_j s(k,j) x**j / k!
    f = math.factorial(k)
    return tuple(
        (j, Fraction(stirling1(k, j), f)) for j in range(k + 1) if stirling1(k, j)
    )


@lru_cache(maxsize=None)
def _binom_product(k: int, l: int) -> tuple[tuple[int, int], ...]:
    # C(u,k) C(u,l) = sum_n n!/((n-k)!(n-l)!(k+l-n)!) C(u,n)
    f = math.factorial
    return tuple(
        (n, f(n) // (f(n - k) * f(n - l) * f(k + l - n)))
        for n in range(max(k, l), k + l + 1)
    )


def binom(u, k: int):
    """C(u, k) = u(u-1)...(u-k+1)/k! for any integer or rational u."""
    if k < 0:
        return 0
    if isinstance(u, int):
        if u >= 0:
            return math.comb(u, k)
        c = math.comb(k - u - 1, k)
        return -c if k & 1 else c
    num = 1
    for j in range(k):
        num *= u - j
    return num / math.factorial(k)


class MPoly:
    """Immutable sparse polynomial; see the module docstring for the bases."""

    __slots__ = ("terms", "basis")

    def __init__(self, terms: Mapping[Iterable[int], Rational] | None = None, basis: str = MONOMIAL):
        if basis not in _BASES:
            raise ValueError(f"unknown basis {basis!r}")
        clean: dict[Exp, Rational] = {}
        for e, c in (terms or {}).items():
            if c:
                e = _trim(e)
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self.basis = basis

    @classmethod
    def _raw(cls, terms: dict, basis: str) -> "MPoly":
        # terms already trimmed and free of zeros
        p = object.__new__(cls)
        p.terms = terms
        p.basis = basis
        return p

    # constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, basis: str = MONOMIAL) -> "MPoly":
        return cls._raw({}, basis)

    @classmethod
    def const(cls, c: Rational, basis: str = MONOMIAL) -> "MPoly":
        return cls._raw({(): c} if c else {}, basis)

    @classmethod
    def var(cls, j: int, basis: str = MONOMIAL) -> "MPoly":
        """The coordinate x_j (1-based); x = C(x, 1) in either basis."""
        if j < 1:
            raise ValueError("variables are numbered from 1")
        return cls._raw({(0,) * (j - 1) + (1,): 1}, basis)

    @classmethod
    def binomial_power(cls, r: Sequence[int]) -> "MPoly":
        """C(x, r) = prod_j C(x_j, r[j])."""
        return cls({tuple(r): 1}, BINOMIAL)

    # basic protocol --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Rational):
            other = MPoly.const(other, self.basis)
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.basis == other.basis:
            return self.terms == other.terms
        return to_monomial(self).terms == to_monomial(other).terms

    def __hash__(self):
        return hash(frozenset(to_monomial(self).terms.items()))

    @property
    def nvars(self) -> int:
        """Largest variable index that occurs."""
        return max((len(e) for e in self.terms), default=0)

    def degree(self, j: int) -> int:
        """Degree in x_j (same in both bases); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[j - 1] if j <= len(e) else 0 for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficients(self):
        return self.terms.values()

    # ring operations -------------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, Rational):
            return MPoly.const(other, self.basis)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    def _linear(self, other, sign: int) -> "MPoly":
        other = self._coerce(other)
        a, b = _same_basis(self, other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) + sign * c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly._raw(out, a.basis)

    def __add__(self, other):
        return self._linear(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._linear(other, -1)

    def __rsub__(self, other):
        return (-self)._linear(other, 1)

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self.terms.items()}, self.basis)

    def scale(self, c: Rational) -> "MPoly":
        if not c:
            return MPoly.zero(self.basis)
        return MPoly._raw({e: c * v for e, v in self.terms.items()}, self.basis)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        other = self._coerce(other)
        a, b = _same_basis(self, other)
        if a.basis == MONOMIAL:
            return MPoly._raw(_mono_mul(a.terms, b.terms), MONOMIAL)
        return MPoly._raw(_binom_mul(a.terms, b.terms), BINOMIAL)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(1, self.basis)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __call__(self, *args):
        if len(args) == 1 and isinstance(args[0], (list, tuple)):
            args = args[0]
        return evaluate(self, args)

    def __repr__(self) -> str:
        return f"MPoly({format_poly(self)!r}, basis={self.basis!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _same_basis(f: MPoly, g: MPoly) -> tuple[MPoly, MPoly]:
    if f.basis == g.basis:
        return f, g
    return to_monomial(f), to_monomial(g)


def _mono_mul(f: dict, g: dict) -> dict:
    if len(f) < len(g):
        f, g = g, f
    out: dict = defaultdict(int)
    for e2, c2 in g.items():
        for e1, c1 in f.items():
            out[_add_exp(e1, e2)] += c1 * c2
    return {e: c for e, c in out.items() if c}


def _binom_mul(f: dict, g: dict) -> dict:
    out: dict = defaultdict(int)
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            n = max(len(e1), len(e2))
            p1 = e1 + (0,) * (n - len(e1))
            p2 = e2 + (0,) * (n - len(e2))
            partial: list[tuple[tuple, int]] = [((), c1 * c2)]
            for k, l in zip(p1, p2):
                partial = [
                    (e + (m,), c * w) for e, c in partial for m, w in _binom_product(k, l)
                ]
            for e, c in partial:
                out[_trim(e)] += c
    return {e: c for e, c in out.items() if c}


# basis changes -------------------------------------------------------------


def _convert_var(terms: dict, i: int, table) -> dict:
    """Apply a univariate change of basis to variable index i (0-based)."""
    out: dict = defaultdict(int)
    for e, c in terms.items():
        k = e[i] if i < len(e) else 0
        if k == 0:
            out[e] += c
            continue
        for j, w in table(k):
            out[_set(e, i, j)] += c * w
    return {e: c for e, c in out.items() if c}


def to_binomial(f: MPoly) -> MPoly:
    if f.basis == BINOMIAL:
        return f
    terms = f.terms
    for i in range(f.nvars):
        terms = _convert_var(terms, i, _mono_to_binom)
    return MPoly._raw(_normalize(terms), BINOMIAL)


def to_monomial(f: MPoly) -> MPoly:
    if f.basis == MONOMIAL:
        return f
    terms = f.terms
    for i in range(f.nvars):
        terms = _convert_var(terms, i, _binom_to_mono)
    return MPoly._raw(_normalize(terms), MONOMIAL)


def _normalize(terms: dict) -> dict:
    # collapse integral Fractions to int so that binomial-basis integer
    # coefficients print and serialise as plain integers
    out = {}
    for e, c in terms.items():
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        out[e] = c
    return out


# discrete calculus in x1 ---------------------------------------------------


def _shift_x1(f: MPoly, step: int) -> MPoly:
    monomial = f.basis == MONOMIAL
    terms = _convert_var(f.terms, 0, _mono_to_binom) if monomial else f.terms
    out: dict = {}
    for e, c in terms.items():
        k = (e[0] if e else 0) + step
        if k < 0:
            continue
        e2 = _set(e, 0, k)
        out[e2] = out.get(e2, 0) + c
    out = {e: c for e, c in out.items() if c}
    if monomial:
        out = _convert_var(out, 0, _binom_to_mono)
    return MPoly._raw(_normalize(out), f.basis)


def dder1(f: MPoly) -> MPoly:
    """Forward difference in x1: f(x1+1, x2, ...) - f(x1, x2, ...)."""
    return _shift_x1(f, -1)


def dint1(f: MPoly) -> MPoly:
    """Discrete integral in x1, the inverse of :func:`dder1` vanishing at x1 = 0."""
    return _shift_x1(f, 1)


# substitution --------------------------------------------------------------


def compose(f: MPoly, args: Sequence[MPoly | None]) -> MPoly:
    """Substitute args[j-1] for x_j; missing or ``None`` entries keep x_j.

    The result is in the monomial basis.
    """
    f = to_monomial(f)
    n = f.nvars
    subs: list[MPoly] = []
    for j in range(1, n + 1):
        g = args[j - 1] if j <= len(args) else None
        subs.append(MPoly.var(j) if g is None else to_monomial(g))
    sub_terms = [s.terms for s in subs]

    def rec(terms: dict, L: int) -> dict:
        # terms involve only x_1..x_L
        if L == 0:
            c = terms.get((), 0)
            return {(): c} if c else {}
        groups: dict[int, dict] = defaultdict(dict)
        for e, c in terms.items():
            k = e[L - 1] if L <= len(e) else 0
            groups[k][_trim(e[: L - 1])] = c
        top = max(groups)
        acc: dict = {}
        for k in range(top, -1, -1):
            if acc:
                acc = _mono_mul(acc, sub_terms[L - 1])
            if k in groups:
                part = rec(groups[k], L - 1)
                for e, c in part.items():
                    v = acc.get(e, 0) + c
                    if v:
                        acc[e] = v
                    else:
                        acc.pop(e, None)
        return acc

    return MPoly._raw(_normalize(rec(f.terms, n)), MONOMIAL)


def restrict(f: MPoly, k: int) -> MPoly:
    """f(x1, ..., xk, 0, 0, ...)."""
    return MPoly._raw({e: c for e, c in f.terms.items() if len(e) <= k}, f.basis)


# evaluation ----------------------------------------------------------------


def evaluate(f: MPoly, a: Sequence) -> Rational:
    """Exact value of f at the point a (missing coordinates read as 0)."""
    a = list(a)
    n = f.nvars
    a += [0] * (n - len(a))
    if f.basis == MONOMIAL:
        cache: dict = {}

        def factor(j, k):
            key = (j, k)
            if key not in cache:
                cache[key] = a[j] ** k
            return cache[key]
    else:
        cache = {}

        def factor(j, k):
            key = (j, k)
            if key not in cache:
                cache[key] = binom(a[j], k)
            return cache[key]

    total = 0
    for e, c in f.terms.items():
        t = c
        for j, k in enumerate(e):
            if k:
                t *= factor(j, k)
                if not t:
                    break
        total += t
    if isinstance(total, Fraction) and total.denominator == 1:
        return total.numerator
    return total


class Horner:
    """Precompiled nested Horner scheme for repeated evaluation.

    The scheme is emitted as straight-line Python source (one temporary per
    variable level) and compiled once; this is several times faster than
    walking a term dictionary for every point.

    With two or more variables the work is split in two stages: the
    polynomials in ``x1`` alone (one per innermost node, which is one pass
    over every term) and the rest of the scheme on top of them.  The first
    stage is memoized on the last ``x1`` seen, so runs of points sharing
    ``x1`` only pay for the much smaller second stage.
    """

    def __init__(self, f: MPoly):
        f = to_monomial(f)
        self.nvars = f.nvars
        tree = _horner_tree(f.terms, self.nvars)
        ns = {"Fraction": Fraction}
        names = ", ".join(f"x{j}" for j in range(1, self.nvars + 1))
        if self.nvars < 2:
            lines = ["def _h(a):"]
            if self.nvars:
                lines.append(f"    {names}, = a[:{self.nvars}]")
            lines.append(f"    return {_emit(tree, self.nvars, lines)}")
            exec(compile("\n".join(lines), "<horner>", "exec"), ns)
            self._fn = ns["_h"]
            return
        leaves: list = []
        lines = ["def _r(c, a):", f"    {names}, = a[:{self.nvars}]"]
        lines.append(f"    return {_emit(tree, self.nvars, lines, leaves)}")
        first = ["def _s(x1):", f"    c = [0] * {len(leaves)}"]
        for i, node in enumerate(leaves):
            expr = _emit(node, 1, first)
            first.append(f"    c[{i}] = {expr}")
        first.append("    return c")
        exec(compile("\n".join(lines + first), "<horner>", "exec"), ns)
        self._stage1, self._stage2 = ns["_s"], ns["_r"]
        self._memo = (None, None)
        self._fn = self._split

    def _split(self, a):
        x1 = a[0]
        key, c = self._memo
        if c is None or key != x1:
            c = self._stage1(x1)
            self._memo = (x1, c)
        return self._stage2(c, a)

    def __call__(self, a: Sequence):
        if len(a) < self.nvars:
            a = list(a) + [0] * (self.nvars - len(a))
        return self._fn(a)


def _horner_tree(terms: dict, L: int):
    if L == 0:
        return terms.get((), 0)
    groups: dict[int, dict] = defaultdict(dict)
    for e, c in terms.items():
        k = e[L - 1] if L <= len(e) else 0
        groups[k][_trim(e[: L - 1])] = c
    return tuple((k, _horner_tree(groups[k], L - 1)) for k in sorted(groups, reverse=True))


def _xpow(L: int, g: int) -> str:
    return f"x{L}" if g == 1 else f"x{L}**{g}"


def _emit(node, L: int, lines: list, leaves: list | None = None) -> str:
    """Append statements computing ``node`` and return an expression for it.

    When ``leaves`` is given, nodes in ``x1`` alone are not expanded: they are
    appended to ``leaves`` and read back as ``c[i]``.
    """
    if L == 0:
        return repr(node) if isinstance(node, int) else f"Fraction({node.numerator}, {node.denominator})"
    if L == 1 and leaves is not None:
        leaves.append(node)
        return f"c[{len(leaves) - 1}]"
    if L == 1 and len(node) < 150:
        expr = None
        prev = None
        for k, c in node:
            lit = _emit(c, 0, lines)
            expr = lit if expr is None else f"({expr})*{_xpow(1, prev - k)} + {lit}"
            prev = k
        return f"({expr})*{_xpow(1, prev)}" if prev else expr
    t = f"t{L}"
    prev = None
    for k, child in node:
        sub = _emit(child, L - 1, lines, leaves)
        if prev is None:
            lines.append(f"    {t} = {sub}")
        else:
            lines.append(f"    {t} = {t}*{_xpow(L, prev - k)} + {sub}")
        prev = k
    if prev:
        lines.append(f"    {t} *= {_xpow(L, prev)}")
    return t


# predicates ----------------------------------------------------------------


def is_strongly_positive(f: MPoly) -> bool:
    return all(c > 0 for c in to_binomial(f).terms.values())


def is_integer_binomial(f: MPoly) -> bool:
    """Integer-valued iff the binomial-basis coordinates are integers."""
    return all(Fraction(c).denominator == 1 for c in to_binomial(f).terms.values())


def denominator_lcm(f: MPoly) -> int:
    d = 1
    for c in to_monomial(f).terms.values():
        d = math.lcm(d, Fraction(c).denominator)
    return d


# text form -----------------------------------------------------------------


def graded_lex_key(e: Exp, nvars: int):
    padded = e + (0,) * (nvars - len(e))
    return (-sum(e), tuple(-x for x in padded))


def sorted_terms(f: MPoly):
    n = f.nvars
    return sorted(f.terms.items(), key=lambda t: graded_lex_key(t[0], n))


def dumps(f: MPoly) -> str:
    n = f.nvars
    lines = [f"mpoly basis={f.basis} nvars={n}"]
    for e, c in sorted_terms(f):
        c = Fraction(c)
        num = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        padded = e + (0,) * (n - len(e))
        lines.append(f"{num} : {' '.join(map(str, padded))}".rstrip())
    return "\n".join(lines) + "\n"


class PolyFormatError(ValueError):
    pass


def loads(text: str) -> MPoly:
    lines = text.splitlines()
    if not lines:
        raise PolyFormatError("empty polynomial text")
    head = lines[0].split()
    try:
        if head[0] != "mpoly":
            raise ValueError
        fields = dict(h.split("=", 1) for h in head[1:])
        basis = fields["basis"]
        nvars = int(fields["nvars"])
    except (ValueError, KeyError, IndexError):
        raise PolyFormatError(f"bad header {lines[0]!r}") from None
    if basis not in _BASES:
        raise PolyFormatError(f"unknown basis {basis!r}")
    terms: dict = {}
    for ln, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            coef, _, exps = line.partition(":")
            c = Fraction(coef.strip())
            e = tuple(int(x) for x in exps.split())
        except ValueError:
            raise PolyFormatError(f"bad term on line {ln}: {line!r}") from None
        if len(e) != nvars or any(x < 0 for x in e) or not _:
            raise PolyFormatError(f"bad exponent vector on line {ln}: {line!r}")
        e = _trim(e)
        if e in terms or c == 0:
            raise PolyFormatError(f"duplicate or zero term on line {ln}")
        terms[e] = c.numerator if c.denominator == 1 else c
    return MPoly._raw(terms, basis)


def format_poly(f: MPoly, names: Sequence[str] | None = None) -> str:
    """Human readable form, e.g. ``x1*x2*x3 + C(x1,2)*x2``."""
    if not f.terms:
        return "0"

    def name(j):
        return names[j] if names and j < len(names) else f"x{j + 1}"

    parts = []
    for e, c in sorted_terms(f):
        factors = []
        for j, k in enumerate(e):
            if not k:
                continue
            if f.basis == BINOMIAL:
                factors.append(name(j) if k == 1 else f"C({name(j)},{k})")
            else:
                factors.append(name(j) if k == 1 else f"{name(j)}^{k}")
        mono = "*".join(factors)
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
