"""Vardi's polynomials T_n and their split form used by the fast algorithms.

T_n a is the content of Gol_{a(n)} o ... o Gol_{a(1)} applied to the word (1).
The polynomials are generated by the recursion

    T_1 = x1,   T_n = dint1(T_{n-1}(x2, x3 + T_1, x4 + T_2, ...)),

and each is stored in the binomial basis, where its coordinates are
nonnegative integers.  For evaluation we also keep the split

    T_n = (x1*x2/d_n) * Ttilde_n + x_n * T_{n-1},

with Ttilde_n an integer polynomial in x1..x_{n-1} and d_n minimal.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import logging
import math
import os
import random
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .freegroup import Word, content
from .goloper import gol_iter
from .mpoly import (
    BINOMIAL,
    Horner,
    MPoly,
    compose,
    dder1,
    dint1,
    dumps,
    evaluate,
    is_integer_binomial,
    is_strongly_positive,
    loads,
    PolyFormatError,
    restrict,
    to_binomial,
    to_monomial,
)

log = logging.getLogger(__name__)

try:  # optional: GMP multiplication is several times faster on big arguments
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int

FORMAT_VERSION = "golombic-vardi/1"
CACHE_ENV = "GOLOMBIC_CACHE_DIR"
DEFAULT_WINDOW = 7


class IntegrityError(RuntimeError):
    """An identity that must hold by construction failed: an implementation bug."""


class CacheError(RuntimeError):
    pass


class CorruptCache(CacheError):
    pass


class WindowTooSmall(ValueError):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "golombic" / "vardi"


@dataclass
class VardiSet:
    window: int
    T: list[MPoly]  # T[n-1] is T_n, binomial basis
    tilde: list[tuple[int, MPoly]]  # (d_n, Ttilde_n), monomial basis
    created: str = ""
    content_hash: str = ""
    _horner: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if not self.created:
            self.created = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        if not self.content_hash:
            self.content_hash = _content_hash(self.T, self.tilde)

    def poly(self, n: int) -> MPoly:
        if n == 0:
            return MPoly.const(1, BINOMIAL)
        if not 1 <= n <= self.window:
            raise WindowTooSmall(f"T_{n} not generated (window W={self.window})")
        return self.T[n - 1]

    def horner(self, n: int) -> Horner:
        while len(self._horner) < self.window:
            d, tt = self.tilde[len(self._horner)]
            self._horner.append(Horner(tt))
        return self._horner[n - 1]

    def truncated(self, window: int) -> "VardiSet":
        if window > self.window:
            raise WindowTooSmall(f"window {window} requested, only {self.window} available")
        if window == self.window:
            return self
        return VardiSet(window, self.T[:window], self.tilde[:window], self.created)


def _content_hash(T, tilde) -> str:
    h = hashlib.sha256()
    for p in T:
        h.update(dumps(p).encode())
    for d, p in tilde:
        h.update(f"d={d}\n".encode())
        h.update(dumps(p).encode())
    return h.hexdigest()


def split_tilde(Tn: MPoly, n: int) -> tuple[int, MPoly]:
    """Return (d_n, Ttilde_n) with x1*x2*Ttilde_n = d_n * T_n|_{n-1}."""
    rest = to_monomial(restrict(Tn, n - 1))
    if not rest:
        return 1, MPoly.zero()
    divided = {}
    for e, c in rest.terms.items():
        if len(e) < 2 or e[0] < 1 or e[1] < 1:
            raise IntegrityError(f"T_{n}|_{n - 1} is not divisible by x1*x2 (term {e})")
        divided[(e[0] - 1, e[1] - 1) + e[2:]] = c
    q = MPoly(divided)
    d = 1
    for c in q.terms.values():
        d = math.lcm(d, getattr(c, "denominator", 1))
    q = q.scale(d)
    q = MPoly({e: int(c) for e, c in q.terms.items()})
    return d, q


def _check_poly(Tn: MPoly, n: int) -> None:
    if Tn.nvars > n:
        raise IntegrityError(f"T_{n} uses x_{Tn.nvars}")
    if not is_integer_binomial(Tn):
        raise IntegrityError(f"T_{n} is not integer valued")
    if not is_strongly_positive(Tn):
        raise IntegrityError(f"T_{n} is not strongly positive")


def _check_tilde(Tn: MPoly, n: int, d: int, tt: MPoly) -> None:
    lhs = tt * MPoly({(1, 1): 1})
    rhs = to_monomial(restrict(Tn, n - 1)).scale(d)
    if lhs != rhs:
        raise IntegrityError(f"tilde identity fails for n={n}")
    if any(getattr(c, "denominator", 1) != 1 for c in tt.terms.values()):
        raise IntegrityError(f"Ttilde_{n} has non-integer coefficients")


def generate(W: int, base: VardiSet | None = None, progress=None) -> VardiSet:
    """Generate T_1..T_W, reusing the polynomials in ``base`` if given."""
    if W < 1:
        raise ValueError("window must be at least 1")
    T_bin: list[MPoly] = list(base.T[:W]) if base else []
    tilde: list[tuple[int, MPoly]] = list(base.tilde[:W]) if base else []
    T_mono = [to_monomial(p) for p in T_bin]
    if not T_bin:
        x1 = MPoly.var(1)
        T_mono.append(x1)
        T_bin.append(to_binomial(x1))
        tilde.append((1, MPoly.zero()))
    for n in range(len(T_bin) + 1, W + 1):
        t0 = time.perf_counter()
        args = [MPoly.var(2)] + [MPoly.var(j + 1) + T_mono[j - 2] for j in range(2, n)]
        Tn = dint1(compose(T_mono[n - 2], args))
        Tb = to_binomial(Tn)
        _check_poly(Tb, n)
        d, tt = split_tilde(Tn, n)
        _check_tilde(Tn, n, d, tt)
        T_mono.append(Tn)
        T_bin.append(Tb)
        tilde.append((d, tt))
        dt = time.perf_counter() - t0
        log.info("generated T_%d: %d binomial terms in %.2fs", n, len(Tb), dt)
        if progress:
            progress(n, len(Tb), dt)
    return VardiSet(W, T_bin, tilde)


# evaluation ----------------------------------------------------------------


def _padded(a: Sequence[int], n: int) -> list[int]:
    a = [int(x) for x in a[:n]]
    return a + [0] * (n - len(a))


def eval_T(vs: VardiSet, n: int, a: Sequence[int]) -> int:
    if n == 0:
        return 1
    return evaluate(vs.poly(n), _padded(a, n))


def fused(vs: VardiSet, a: Sequence[int], upto: int | None = None) -> list[int]:
    """(T_1 a, ..., T_W a) via delta_n = a1*a2*Ttilde_n(a)/d_n + a(n)*delta_{n-1}."""
    W = vs.window if upto is None else upto
    a = _padded(a, W)
    # x1, x2 stay small along a row; the later arguments are huge
    a[2:] = [_bigint(x) for x in a[2:]]
    a12 = a[0] * a[1] if W >= 2 else 0
    out = []
    delta = 1
    for n in range(1, W + 1):
        d, tt = vs.tilde[n - 1]
        head = 0
        if tt and a12:
            num = a12 * vs.horner(n)(a)
            head, r = divmod(num, d)
            if r:
                raise IntegrityError(f"inexact division by d_{n}={d}")
        delta = head + a[n - 1] * delta
        out.append(int(delta))
    return out


def eval_T_fused(vs: VardiSet, a: Sequence[int]) -> tuple[int, ...]:
    return tuple(fused(vs, a))


def hat_prefix(vs: VardiSet, a: Sequence[int], L: int) -> tuple[int, ...]:
    """First L terms of a + (-2a(1), 0, T_1 a, T_2 a, ...)."""
    if L < 2:
        raise ValueError("L must be at least 2")
    if L > vs.window + 2:
        raise WindowTooSmall(f"window too small: hat prefix of length {L} needs W >= {L - 2}")
    a = _padded(a, L)
    Ts = fused(vs, a, L - 2) if L > 2 else []
    return (-a[0], a[1]) + tuple(a[n + 1] + Ts[n - 1] for n in range(1, L - 1))


# cache ---------------------------------------------------------------------


def _atomic_write(path: Path, data: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _sha(data: str) -> str:
    return hashlib.sha256(data.encode()).hexdigest()


def save(vs: VardiSet, path: str | os.PathLike) -> Path:
    """Write one file per polynomial plus ``manifest.json``; unchanged files are kept."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    files = {}
    for n in range(1, vs.window + 1):
        d, tt = vs.tilde[n - 1]
        for name, text in ((f"T{n}.mpoly", dumps(vs.T[n - 1])), (f"tilde{n}.mpoly", dumps(tt))):
            digest = _sha(text)
            target = root / name
            if not (target.exists() and _sha(target.read_text()) == digest):
                _atomic_write(target, text)
            files[name] = digest
    manifest = {
        "format": FORMAT_VERSION,
        "window": vs.window,
        "created": vs.created,
        "content_hash": vs.content_hash,
        "d": [d for d, _ in vs.tilde],
        "files": files,
    }
    _atomic_write(root / "manifest.json", json.dumps(manifest, indent=1) + "\n")
    return root


def cached_window(path: str | os.PathLike) -> int:
    """Window of the cache at ``path``, or 0 if there is none."""
    m = Path(path) / "manifest.json"
    if not m.exists():
        return 0
    try:
        return int(json.loads(m.read_text())["window"])
    except (ValueError, KeyError, TypeError):
        raise CorruptCache(f"corrupt cache: unreadable manifest {m}") from None


def load(path: str | os.PathLike, window: int | None = None) -> VardiSet:
    root = Path(path)
    mpath = root / "manifest.json"
    if not mpath.exists():
        raise CacheError(f"no Vardi cache at {root}")
    try:
        manifest = json.loads(mpath.read_text())
        fmt = manifest["format"]
        W = int(manifest["window"])
        files = manifest["files"]
        ds = [int(d) for d in manifest["d"]]
    except (ValueError, KeyError, TypeError):
        raise CorruptCache(f"corrupt cache: unreadable manifest {mpath}") from None
    if fmt != FORMAT_VERSION:
        raise CacheError(f"cache format {fmt!r} does not match {FORMAT_VERSION!r}; regenerate")
    if window is not None and window > W:
        raise WindowTooSmall(
            f"cache at {root} holds T_1..T_{W} but W={window} was requested; "
            f"extend it with `golombic vardi gen {window}`"
        )
    use = W if window is None else window
    T, tilde = [], []
    for n in range(1, use + 1):
        polys = []
        for name in (f"T{n}.mpoly", f"tilde{n}.mpoly"):
            fp = root / name
            try:
                text = fp.read_text()
            except OSError:
                raise CorruptCache(f"corrupt cache: missing {fp}") from None
            if _sha(text) != files.get(name):
                raise CorruptCache(f"corrupt cache: hash mismatch for {fp}")
            try:
                polys.append(loads(text))
            except PolyFormatError as exc:
                raise CorruptCache(f"corrupt cache: {fp}: {exc}") from None
        Tn, tt = polys
        if Tn.nvars > n or not is_integer_binomial(Tn):
            raise CorruptCache(f"corrupt cache: T_{n} fails its invariants")
        if n <= 3:
            try:
                _check_tilde(Tn, n, ds[n - 1], tt)
            except IntegrityError as exc:
                raise CorruptCache(f"corrupt cache: {exc}") from None
        T.append(Tn)
        tilde.append((ds[n - 1], tt))
    vs = VardiSet(use, T, tilde, manifest.get("created", ""))
    if use == W and vs.content_hash != manifest.get("content_hash"):
        raise CorruptCache("corrupt cache: content hash mismatch")
    return vs


def ensure(W: int, path: str | os.PathLike | None = None, progress=None) -> VardiSet:
    """Load T_1..T_W from the cache, generating and saving whatever is missing."""
    root = Path(path) if path is not None else default_cache_dir()
    have = cached_window(root)
    if have >= W:
        return load(root, W)
    base = load(root) if have else None
    vs = generate(W, base, progress)
    save(vs, root)
    return vs


# verification --------------------------------------------------------------

# coordinates >= 3 follow a period-3 pattern of "keep" (False) and "1 - x" (True)
_TWISTS = (
    ((-1, 1), (True, True, False), lambda n: n * n % 3),
    ((1, -1), (False, True, True), lambda n: (n - 1) ** 2 % 3),
    ((-1, -1), (True, False, True), lambda n: (n + 1) ** 2 % 3),
)


def twisted_args(which: int, a: Sequence[int]) -> list[int]:
    signs, pattern, _ = _TWISTS[which]
    out = [signs[0] * a[0], signs[1] * a[1]]
    for j in range(2, len(a)):
        out.append(1 - a[j] if pattern[(j - 2) % 3] else a[j])
    return out


def twist_sign(which: int, n: int) -> int:
    return -1 if _TWISTS[which][2](n) % 2 else 1


@dataclass
class Failure:
    identity: str
    n: int
    witness: tuple


@dataclass
class VerifyReport:
    window: int
    trials: int
    checks: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, identity: str, n: int, good: bool, witness) -> None:
        self.checks[identity] = self.checks.get(identity, 0) + 1
        if not good:
            self.failures.append(Failure(identity, n, tuple(witness)))

    def render(self) -> str:
        lines = [f"verify W={self.window} trials={self.trials}"]
        for name, count in self.checks.items():
            bad = sum(1 for f in self.failures if f.identity == name)
            lines.append(f"  {name:<28} {count - bad}/{count} pass")
        for f in self.failures[:20]:
            lines.append(f"  FAIL {f.identity} n={f.n} at {list(f.witness)}")
        lines.append("all identities pass" if self.ok else f"{len(self.failures)} failures")
        return "\n".join(lines)


IDENTITIES = (
    "(i) variables",
    "(ii) T(0,...)=0",
    "(iii) T(x1,0,...)=0",
    "(iv) T(1,x2,...)",
    "(v) d1 T at x1=0",
    "(vi) split",
    "(vii) hat",
    "(viii) twist",
    "(ix) oracle",
)


def verify(vs: VardiSet, trials: int, seed: int | None = 0, lo: int = -9, hi: int = 9,
           oracle_max_n: int | None = None) -> VerifyReport:
    """Check the defining identities of T_1..T_W on random integer tuples.

    ``oracle_max_n`` caps the n for which the brute-force word iteration is
    run, since that oracle grows like the product of the entries.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    W = vs.window
    rep = VerifyReport(W, trials)
    omax = W if oracle_max_n is None else min(W, oracle_max_n)
    d1 = [dder1(vs.poly(n)) for n in range(1, W + 1)]
    for n in range(1, W + 1):
        rep.record(IDENTITIES[0], n, vs.poly(n).nvars <= n, ())
    for _ in range(trials):
        a = [rng.randint(lo, hi) for _ in range(W + 2)]
        T = [1] + [eval_T(vs, n, a) for n in range(1, W + 1)]
        fusedv = fused(vs, a)
        ahat = hat_prefix(vs, a, W + 2) if W >= 1 else ()
        for n in range(1, W + 1):
            Tn = T[n]
            rep.record("(i) variables", n, eval_T(vs, n, a[:n]) == Tn and fusedv[n - 1] == Tn, a)
            rep.record(IDENTITIES[1], n, eval_T(vs, n, [0] + a[1:]) == 0, a)
            if n >= 2:
                rep.record(IDENTITIES[2], n, eval_T(vs, n, [a[0], 0] + a[2:]) == 0, a)
            prev = eval_T(vs, n - 1, a[1:])
            rep.record(IDENTITIES[3], n, eval_T(vs, n, [1] + a[1:]) == prev, a)
            rep.record(IDENTITIES[4], n, evaluate(d1[n - 1], [0] + a[1:n]) == eval_T(vs, n - 1, a[1:n]), a)
            split = evaluate(restrict(vs.poly(n), n - 1), a[:n]) + a[n - 1] * T[n - 1]
            rep.record(IDENTITIES[5], n, split == Tn, a)
            rep.record(IDENTITIES[6], n, eval_T(vs, n, ahat) == -Tn, a)
            for k in range(3):
                lhs = twist_sign(k, n) * eval_T(vs, n, twisted_args(k, a))
                rep.record(IDENTITIES[7], n, lhs == Tn, a)
            if n <= omax:
                oracle = content(gol_iter(a, n, Word.power(1)))
                rep.record(IDENTITIES[8], n, oracle == Tn, a)
    return rep
