"""Golombic and Levine operators on words, and the brute-force triangle oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from .freegroup import IntTuple, Word, _reduce_pairs, content, length, rev

Kind = Literal["golombic", "levine"]

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    def __init__(self, depth: int, size: int, budget: int):
        super().__init__(
            f"row at depth {depth} would hold up to {size} reduced powers, "
            f"over the budget of {budget}"
        )
        self.depth = depth
        self.size = size
        self.budget = budget


@dataclass(frozen=True)
class TriangleRow:
    depth: int
    word: Word


def _gol_pairs(z: int, w: Word) -> Iterator[tuple[int, int]]:
    s = z
    for b, m in w.powers:
        if b:
            if m > 0:
                for c in range(s, s + m):
                    yield c, b
            else:
                for c in range(s - 1, s + m - 1, -1):
                    yield c, -b
        s += m


def gol_z(z: int, w: Word) -> Word:
    """Gol_z(b^m) = (z^b (z+1)^b ... (z+m-1)^b), extended multiplicatively."""
    return Word._trusted(_reduce_pairs(_gol_pairs(z, w)))


def lev_z(z: int, w: Word) -> Word:
    return rev(gol_z(z, w))


def gol(w: Word) -> Word:
    return gol_z(1, w)


def lev(w: Word) -> Word:
    return lev_z(1, w)


def gol_iter(a: Sequence[int], n: int, w: Word) -> Word:
    """Apply Gol_{a(1)}, then Gol_{a(2)}, ..., then Gol_{a(n)}."""
    a = IntTuple(a)
    for i in range(1, n + 1):
        w = gol_z(a.at(i), w)
    return w


def image_size_bound(w: Word) -> int:
    """Upper bound on the reduced size of Gol_z(w) for any z."""
    return sum(abs(m) for b, m in w.powers if b)


_OPS = {"golombic": gol, "levine": lev}


def operator(kind: Kind):
    try:
        return _OPS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}") from None


def iterate_rows(kind: Kind, w: Word, depth: int, budget: int = DEFAULT_BUDGET):
    """Yield rows 0..depth, refusing any row predicted to exceed ``budget``."""
    op = operator(kind)
    yield TriangleRow(0, w)
    for d in range(1, depth + 1):
        bound = image_size_bound(w)
        if bound > budget:
            raise BudgetExceeded(d, bound, budget)
        w = op(w)
        yield TriangleRow(d, w)


def triangle(kind: Kind, w: Word, depth: int, budget: int = DEFAULT_BUDGET) -> list[TriangleRow]:
    return list(iterate_rows(kind, w, depth, budget))


def _seq_oracle(kind: Kind, w: Word, N: int, budget: int) -> IntTuple:
    if N < 1:
        raise ValueError("N must be at least 1")
    terms = [length(w)]
    # the (n-1)-th row's length is the (n-2)-th row's content
    for row in iterate_rows(kind, w, max(N - 2, 0), budget):
        if len(terms) < N:
            terms.append(content(row.word))
    return IntTuple(terms[:N])


def gol_seq_oracle(w: Word, N: int, budget: int = DEFAULT_BUDGET) -> IntTuple:
    return _seq_oracle("golombic", w, N, budget)


def lev_seq_oracle(w: Word, N: int, budget: int = DEFAULT_BUDGET) -> IntTuple:
    return _seq_oracle("levine", w, N, budget)


@dataclass(frozen=True)
class Orbit:
    kind: str
    seed: Word
    lengths: tuple[int, ...]
    died_at: int | None  # depth at which the word became (), if it did

    @property
    def reached_identity(self) -> bool:
        return self.died_at is not None


def orbit(kind: Kind, w: Word, max_iter: int = 64, budget: int = DEFAULT_BUDGET) -> Orbit:
    """Iterate until the word becomes () or ``max_iter`` rows were produced.

    ``lengths`` holds the lengths of the rows before the identity is reached,
    so for a dying orbit it is the full (finite) sequence.
    """
    op = operator(kind)
    lengths = []
    cur = w
    for d in range(max_iter):
        if not cur:
            return Orbit(kind, w, tuple(lengths), d)
        lengths.append(length(cur))
        bound = image_size_bound(cur)
        if bound > budget:
            raise BudgetExceeded(d + 1, bound, budget)
        cur = op(cur)
    return Orbit(kind, w, tuple(lengths), max_iter if not cur else None)


def conjugate(p: Sequence[int]) -> IntTuple:
    """Conjugate partition: p*(n) = #{k : p(k) >= n}."""
    p = IntTuple(p).trimmed()
    if any(t < 0 for t in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"not a partition: {tuple(p)}")
    if not p:
        return IntTuple()
    return IntTuple(sum(1 for t in p if t >= n) for n in range(1, p[0] + 1))
