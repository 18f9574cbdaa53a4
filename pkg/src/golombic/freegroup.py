"""The free group over the integers.

A word is stored in reduced form: a tuple of ``(base, exponent)`` pairs with
nonzero exponents and distinct adjacent bases.  Finite integer tuples embed
into the free group by giving every term the exponent 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Pair = tuple[int, int]


class WordSyntaxError(ValueError):
    """Raised by :func:`parse_word` on malformed input."""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset


class NotATupleWord(ValueError):
    pass


def _reduce_pairs(raw: Iterable[Pair]) -> tuple[Pair, ...]:
    out: list[list[int]] = []
    for b, m in raw:
        if out and out[-1][0] == b:
            out[-1][1] += m
            if out[-1][1] == 0:
                out.pop()
        elif m != 0:
            out.append([b, m])
    return tuple((b, m) for b, m in out)


@dataclass(frozen=True, init=False)
class Word:
    """Reduced element of F(Z).

    >>> Word([(1, 2), (1, 3)])
    Word('1^5')
    """

    powers: tuple[Pair, ...]

    def __init__(self, powers: Iterable[Pair] = ()):
        object.__setattr__(
            self, "powers", _reduce_pairs((int(b), int(m)) for b, m in powers)
        )

    @classmethod
    def _trusted(cls, powers: tuple[Pair, ...]) -> "Word":
        # caller guarantees reduced form
        w = object.__new__(cls)
        object.__setattr__(w, "powers", powers)
        return w

    @classmethod
    def power(cls, base: int, exponent: int = 1) -> "Word":
        return cls([(base, exponent)])

    def __iter__(self):
        return iter(self.powers)

    def __len__(self) -> int:
        # number of reduced powers, not the homomorphic length
        return len(self.powers)

    def __bool__(self) -> bool:
        return bool(self.powers)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __neg__(self) -> "Word":
        return neg(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)

    @property
    def length(self) -> int:
        return length(self)

    @property
    def content(self) -> int:
        return content(self)

    def is_reduced(self) -> bool:
        ps = self.powers
        return all(m != 0 for _, m in ps) and all(
            ps[i][0] != ps[i + 1][0] for i in range(len(ps) - 1)
        )


IDENTITY = Word()


def reduce(raw: Iterable[Pair]) -> Word:
    return Word(raw)


def concat(v: Word, w: Word) -> Word:
    if not v.powers:
        return w
    if not w.powers:
        return v
    left = list(v.powers)
    right = w.powers
    i = 0
    # melt across the seam, possibly cascading
    while left and i < len(right) and left[-1][0] == right[i][0]:
        m = left[-1][1] + right[i][1]
        if m:
            left[-1] = (right[i][0], m)
            i += 1
            break
        left.pop()
        i += 1
    return Word._trusted(tuple(left) + right[i:])


def inverse(w: Word) -> Word:
    return Word._trusted(tuple((b, -m) for b, m in reversed(w.powers)))


def neg(w: Word) -> Word:
    return Word._trusted(tuple((-b, m) for b, m in w.powers))


def bar(w: Word) -> Word:
    return Word._trusted(tuple((b, -m) for b, m in w.powers))


def rev(w: Word) -> Word:
    return Word._trusted(w.powers[::-1])


def length(w: Word | Iterable[Pair]) -> int:
    return sum(m for _, m in w)


def content(w: Word | Iterable[Pair]) -> int:
    return sum(b * m for b, m in w)


class IntTuple(tuple):
    """Finite integer sequence with index origin 1.

    Trailing zeros may be stored but are ignored by equality, hashing and
    :attr:`length`, matching the convention ``(0,0,1,0) == (0,0,1)``.
    """

    def __new__(cls, terms: Iterable[int] = ()):
        return super().__new__(cls, (int(t) for t in terms))

    def trimmed(self) -> "IntTuple":
        n = len(self)
        while n and self[n - 1] == 0:
            n -= 1
        return IntTuple(self[:n]) if n != len(self) else self

    def __eq__(self, other):
        if isinstance(other, (tuple, list)):
            return tuple(self.trimmed()) == tuple(IntTuple(other).trimmed())
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(tuple(self.trimmed()))

    def __repr__(self) -> str:
        return f"IntTuple({list(self)})"

    def at(self, n: int) -> int:
        """The term a(n), reading 0 beyond the stored terms."""
        if n < 1:
            raise IndexError("index origin is 1")
        return self[n - 1] if n <= len(self) else 0

    @property
    def length(self) -> int:
        """Index of the last nonzero term."""
        return len(self.trimmed())

    @property
    def content(self) -> int:
        return sum(self)


def shift(a: Sequence[int], m: int = 1) -> IntTuple:
    if m < 0:
        raise ValueError("shift amount must be nonnegative")
    return IntTuple(a[m:])


def tail_sum(a: Sequence[int]) -> IntTuple:
    out = []
    acc = 0
    for t in reversed(IntTuple(a).trimmed()):
        acc += t
        out.append(acc)
    return IntTuple(reversed(out))


def embed(a: Sequence[int]) -> Word:
    return Word((t, 1) for t in IntTuple(a).trimmed())


def expand(w: Word) -> IntTuple:
    out: list[int] = []
    for b, m in w.powers:
        if m < 0:
            raise NotATupleWord(f"not a tuple word: {format_word(w)}")
        out.extend([b] * m)
    return IntTuple(out)


_TOKEN = re.compile(r"(-?[0-9]+)(?:\^(-?[0-9]+))?")


def parse_word(text: str) -> Word:
    """Parse ``"1^1 2^2 -3"`` style text; ``"()"`` is the identity."""
    s = text.strip()
    base = len(text) - len(text.lstrip())
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
        base += 1
        if not s.strip():
            return IDENTITY
        if s != s.strip(" "):
            lead = len(s) - len(s.lstrip(" "))
            base += lead
            s = s.strip(" ")
    elif s.startswith("(") or s.endswith(")"):
        pos = base if s.startswith("(") else base + len(s) - 1
        raise WordSyntaxError("unbalanced parenthesis", text, pos)
    if not s:
        raise WordSyntaxError("empty word (write '()' for the identity)", text, base)
    pairs = []
    i = 0
    while i < len(s):
        mt = _TOKEN.match(s, i)
        if mt is None:
            raise WordSyntaxError("expected INT or INT^INT", text, base + i)
        pairs.append((int(mt.group(1)), int(mt.group(2) or 1)))
        i = mt.end()
        if i < len(s):
            if s[i] != " ":
                raise WordSyntaxError(f"unexpected character {s[i]!r}", text, base + i)
            while i < len(s) and s[i] == " ":
                i += 1
    return Word(pairs)


def parse_seed(text: str) -> Word:
    """Accept word grammar or a comma separated tuple such as ``0,0,1``."""
    if "," in text:
        cleaned = text.strip().strip("()")
        try:
            terms = [int(t) for t in cleaned.split(",") if t.strip()]
        except ValueError:
            raise WordSyntaxError("bad tuple shorthand", text, 0) from None
        return embed(terms)
    return parse_word(text)


def format_word(w: Word) -> str:
    if not w.powers:
        return "()"
    return " ".join(str(b) if m == 1 else f"{b}^{m}" for b, m in w.powers)
