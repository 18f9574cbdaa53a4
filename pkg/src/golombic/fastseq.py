"""Fast golombic and Levine numbers from Vardi's polynomials, and the chaining driver.

Golombic: appending a power (b^m) to a word v shifts gol_n by
T_n(m, b, 1 + gol_1 v, 1 + gol_2 v, ...), so one pass over the reduced powers
of w yields gol_1 w, ..., gol_W w.

Levine: the analogous pass needs the even-indexed values lev_2 w, lev_4 w, ...
up to lev_E w (E the largest even number <= W - 2) up front.  Deep terms are
reached by chaining calls on rows L^t(seed), feeding each call's output to the
next one.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .freegroup import IntTuple, Word, content, format_word, length
from .goloper import DEFAULT_BUDGET, BudgetExceeded, Kind, iterate_rows, _seq_oracle
from .vardi import IntegrityError, VardiSet, fused

log = logging.getLogger(__name__)


class InconsistentSeedError(ValueError):
    """The supplied even-indexed Levine numbers contradict the computation."""


class UnreachableError(RuntimeError):
    def __init__(self, message: str, max_index: int):
        super().__init__(message)
        self.max_index = max_index


def even_horizon(W: int) -> int:
    """E = largest even integer <= W - 2 (never negative)."""
    return max(0, 2 * ((W - 2) // 2))


# checkpoints ---------------------------------------------------------------


@dataclass
class Checkpoint:
    """Resumable state of one long fast call, written every ``every`` powers.

    The row word itself is not stored (it can have millions of powers), only
    a digest that identifies it on resume.
    """

    path: Path
    every: int = 1000
    _last: tuple = field(default=(None, ""), repr=False)

    def _digest(self, w: Word) -> str:
        # hashing a long row is costly, so remember the last one (by identity)
        if self._last[0] is not w:
            h = hashlib.sha256()
            for b, m in w.powers:
                h.update(f"{b}^{m} ".encode())
            self._last = (w, h.hexdigest())
        return self._last[1]

    def save(self, kind: str, seed: Word, position: int, window: int, j: int, s: Sequence[int]) -> None:
        data = {
            "kind": kind,
            "row_sha256": self._digest(seed),
            "position": position,
            "window": window,
            "j": j,
            "s": [str(x) for x in s],
        }
        tmp = self.path.with_name(self.path.name + ".tmp")
        tmp.write_text(json.dumps(data) + "\n")
        os.replace(tmp, self.path)

    def resume(self, kind: str, seed: Word, position: int, window: int):
        """Return (j, s) if the stored state belongs to this call, else None."""
        if not self.path.exists():
            return None
        try:
            data = json.loads(self.path.read_text())
            key = (data["kind"], data["position"], data["window"], data["row_sha256"])
        except (ValueError, KeyError):
            log.warning("ignoring unreadable checkpoint %s", self.path)
            return None
        if key != (kind, position, window, self._digest(seed)):
            return None
        return int(data["j"]), [int(x) for x in data["s"]]

    def clear(self) -> None:
        if self.path.exists():
            self.path.unlink()


def _run(kind, w, vs, s, shift, checkpoint, position, progress):
    """Shared j-loop: s(n) += T_n(+-m_j, +-b_j, s - shift)."""
    W = vs.window
    start = 0
    if checkpoint is not None:
        state = checkpoint.resume(kind, w, position, W)
        if state is not None:
            start, s = state
            log.info("resuming %s call at power %d", kind, start)
    sign = 1 if kind == "golombic" else -1
    powers = w.powers
    for j in range(start, len(powers)):
        b, m = powers[j]
        a = [sign * m, sign * b] + [s[i] - shift[i] for i in range(max(W - 2, 0))]
        for n, delta in enumerate(fused(vs, a)):
            s[n] += delta
        if checkpoint is not None and (j + 1) % checkpoint.every == 0:
            checkpoint.save(kind, w, position, W, j + 1, s)
        if progress is not None:
            progress(j + 1, len(powers))
    if checkpoint is not None:
        checkpoint.clear()
    return s


def golombic_numbers(w: Word, vs: VardiSet, *, checkpoint: Checkpoint | None = None,
                     position: int = 0, progress: Callable | None = None) -> IntTuple:
    """(gol_1 w, ..., gol_W w)."""
    W = vs.window
    s = _run("golombic", w, vs, [1] * W, [0] * W, checkpoint, position, progress)
    return IntTuple(x - 1 for x in s)


def levine_numbers(w: Word, vs: VardiSet, h_even: Sequence[int], *,
                   checkpoint: Checkpoint | None = None, position: int = 0,
                   progress: Callable | None = None) -> IntTuple:
    """(lev_1 w, ..., lev_W w) given h_even = (lev_2 w, lev_4 w, ..., lev_E w)."""
    W = vs.window
    E = even_horizon(W)
    if len(h_even) < E // 2:
        raise ValueError(f"need lev_2..lev_{E} (every second term), got {len(h_even)} values")
    h = [0] * W
    for i, v in enumerate(h_even[: E // 2]):
        h[2 * i + 1] = int(v)
    # s(n) carries (-1)^n l_{n,j}
    s = _run("levine", w, vs, [0] * W, h, checkpoint, position, progress)
    out = IntTuple(x if n % 2 == 0 else -x for n, x in enumerate(s, start=1))
    for n in range(2, E + 1, 2):
        if out[n - 1] != h[n - 1]:
            raise InconsistentSeedError(
                f"inconsistent seed values: lev_{n} computed as {out[n - 1]}, supplied {h[n - 1]}"
            )
    return out


# bootstrap -----------------------------------------------------------------


@dataclass
class SeqReport:
    kind: str
    seed: Word
    terms: list[tuple[int, int]]
    method: str
    oracle_checked_prefix: int
    window: int = 0
    schedule: list[int] = field(default_factory=list)
    orbit_died_at: int | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        idx = [n for n, _ in self.terms]
        if idx != list(range(1, len(idx) + 1)):
            raise ValueError("term indices must be contiguous from 1")
        if self.oracle_checked_prefix > len(self.terms):
            raise ValueError("oracle-checked prefix longer than the term list")

    @property
    def values(self) -> IntTuple:
        return IntTuple(v for _, v in self.terms)


def _oracle_report(kind, seed, N, budget, note=None) -> SeqReport:
    vals = _seq_oracle(kind, seed, N, budget)
    rep = SeqReport(kind, seed, list(enumerate(vals, start=1)), "oracle", N)
    rep.orbit_died_at = _death(kind, seed, N, budget)
    if note:
        rep.notes.append(note)
    return rep


def _death(kind, seed, depth, budget):
    for row in iterate_rows(kind, seed, depth, budget):
        if not row.word:
            return row.depth
    return None


def _materialize(kind, seed, depth, budget, W):
    rows = []
    try:
        for row in iterate_rows(kind, seed, depth, budget):
            rows.append(row.word)
            if not row.word:
                break
    except BudgetExceeded as exc:
        reach = exc.depth - 1 + W
        raise UnreachableError(
            f"row {exc.depth} of the {kind} triangle exceeds the row budget of {budget} "
            f"reduced powers; the maximal reachable index with W={W} is {reach}. "
            f"A larger window or a larger --budget would extend it.",
            reach,
        ) from None
    return rows


def _oracle_terms(rows: list[Word]) -> dict[int, int]:
    known = {}
    for t, w in enumerate(rows):
        known[t + 1] = length(w)
    if rows:
        known[len(rows) + 1] = content(rows[-1])
    return known


def _merge(known: dict, n: int, value: int, where: str) -> None:
    if n in known and known[n] != value:
        raise IntegrityError(f"{where}: term {n} is {value}, oracle says {known[n]}")
    known[n] = value


def plan(kind: Kind, N: int, W: int) -> tuple[list[int], int]:
    """Rows t at which fast calls are made, and the deepest row they need.

    Each call at row t yields terms t+1..t+W.  A Levine call at row t also
    needs lev_{t+2}, lev_{t+4}, ..., lev_{t+E}, which come from the oracle
    rows for the first call and from the previous call afterwards.
    """
    if W < 1:
        raise ValueError("window must be at least 1")
    t_last = max(0, N - W)
    if kind == "golombic":
        return [t_last], t_last
    E = even_horizon(W)
    step = W - E
    schedule = list(range(t_last % step, t_last + 1, step))
    return schedule, max(t_last, schedule[0] + E - 2)


def bootstrap(kind: Kind, seed: Word, target_N: int, vs: VardiSet | None,
              budget: int = DEFAULT_BUDGET, *, oracle_only: bool = False, check: int = 0,
              checkpoint: Checkpoint | None = None, progress: Callable | None = None) -> SeqReport:
    """Compute terms 1..target_N of the golombic or Levine sequence based at ``seed``."""
    if target_N < 1:
        raise ValueError("target_N must be at least 1")
    if kind not in ("golombic", "levine"):
        raise ValueError(f"unknown kind {kind!r}")
    W = vs.window if vs is not None else 0
    if oracle_only or W == 0:
        try:
            return _oracle_report(kind, seed, target_N, budget)
        except BudgetExceeded as exc:
            raise UnreachableError(
                f"oracle cannot build row {exc.depth} within the budget of {budget}; "
                f"the maximal reachable index is {exc.depth + 1}",
                exc.depth + 1,
            ) from None

    N = target_N
    E = even_horizon(W)
    schedule, depth = plan(kind, N, W)
    rows = _materialize(kind, seed, depth, budget, W)
    if not rows[-1] and len(rows) - 1 < depth:
        died = len(rows) - 1
        return _oracle_report(kind, seed, N, budget, f"orbit reached () at depth {died}")

    known = _oracle_terms(rows)
    oracle_prefix = max(known)
    for pos, t in enumerate(schedule):
        if kind == "golombic":
            out = golombic_numbers(rows[t], vs, checkpoint=checkpoint, position=pos, progress=progress)
        else:
            h = [known[t + i] for i in range(2, E + 1, 2)]
            out = levine_numbers(rows[t], vs, h, checkpoint=checkpoint, position=pos, progress=progress)
        for n, v in enumerate(out, start=t + 1):
            _merge(known, n, v, f"fast call at row {t}")
        log.info("fast call at row %d gave terms %d..%d", t, t + 1, t + W)

    checked = min(oracle_prefix, N)
    if check:
        vals = _seq_oracle(kind, seed, check, budget)
        for n, v in enumerate(vals, start=1):
            if n <= N and known[n] != v:
                raise IntegrityError(f"--check: term {n} is {known[n]}, oracle says {v}")
        checked = max(checked, min(check, N))

    label = "fast" if len(schedule) == 1 else "chained"
    method = f"{label}(W={W}, schedule={','.join(map(str, schedule))})"
    rep = SeqReport(kind, seed, [(n, known[n]) for n in range(1, N + 1)], method, checked,
                    window=W, schedule=schedule)
    if not rows[-1]:
        rep.orbit_died_at = len(rows) - 1
        rep.notes.append(f"orbit reached () at depth {rep.orbit_died_at}; later terms are 0")
    return rep


# rendering -----------------------------------------------------------------


def render(rep: SeqReport, fmt: str = "human") -> str:
    if fmt == "bfile":
        return "".join(f"{n} {v}\n" for n, v in rep.terms)
    if fmt == "records":
        lines = [
            json.dumps({"kind": rep.kind, "seed": format_word(rep.seed), "n": n, "value": str(v),
                        "oracle_checked": n <= rep.oracle_checked_prefix})
            for n, v in rep.terms
        ]
        return "\n".join(lines) + "\n"
    if fmt != "human":
        raise ValueError(f"unknown format {fmt!r}")
    name = "gol" if rep.kind == "golombic" else "lev"
    out = [f"# {name}({format_word(rep.seed)})  method={rep.method}  "
           f"oracle-checked prefix={rep.oracle_checked_prefix}"]
    out += [f"# {note}" for note in rep.notes]
    out += [f"{n:>3}  {v}" for n, v in rep.terms]
    return "\n".join(out) + "\n"
