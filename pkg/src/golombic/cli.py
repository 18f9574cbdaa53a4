"""Command-line entry point: ``golombic <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import analysis, fastseq, tables, vardi
from .freegroup import WordSyntaxError, parse_seed
from .goloper import DEFAULT_BUDGET, BudgetExceeded, orbit
from .mpoly import format_poly, to_monomial

KINDS = {"gol": "golombic", "golombic": "golombic", "lev": "levine", "levine": "levine"}
FORMATS = ("human", "bfile", "records")


class CliError(Exception):
    def __init__(self, message: str, status: int = 2):
        super().__init__(message)
        self.status = status


@dataclass
class RunConfig:
    cache_dir: Path
    window: int
    budget: int
    fmt: str
    verbose: int

    def __post_init__(self):
        if self.window < 1:
            raise CliError("--window must be at least 1")
        if self.budget < 1:
            raise CliError("--budget must be at least 1")


class Heartbeat:
    """Progress lines on stderr, at most one every ``every`` seconds."""

    def __init__(self, label: str, every: float = 5.0):
        self.label = label
        self.every = every
        self.last = time.monotonic()

    def __call__(self, done, total, *_):
        now = time.monotonic()
        if now - self.last >= self.every:
            self.last = now
            print(f"[{self.label}] {done}/{total}", file=sys.stderr, flush=True)


def _kind(text: str) -> str:
    try:
        return KINDS[text]
    except KeyError:
        raise argparse.ArgumentTypeError(f"kind must be one of {', '.join(KINDS)}") from None


def _seed(text: str):
    try:
        return parse_seed(text)
    except WordSyntaxError as exc:
        raise CliError(f"cannot parse seed: {exc}") from None


def _config(args) -> RunConfig:
    cache = Path(args.cache_dir) if args.cache_dir else vardi.default_cache_dir()
    return RunConfig(cache, args.window, args.budget, args.format, args.verbose)


def _gen_report(n, terms, dt):
    print(f"T_{n}: {terms} binomial terms ({dt:.1f}s)", file=sys.stderr, flush=True)


def _vardi_set(cfg: RunConfig, window: int | None = None) -> vardi.VardiSet:
    W = window or cfg.window
    return vardi.ensure(W, cfg.cache_dir, _gen_report).truncated(W)


# vardi ---------------------------------------------------------------------


def cmd_vardi(cfg: RunConfig, args) -> int:
    if args.action == "gen":
        have = vardi.cached_window(cfg.cache_dir)
        vs = vardi.ensure(args.value, cfg.cache_dir, _gen_report)
        kept = min(have, args.value)
        print(f"cache {cfg.cache_dir}: T_1..T_{vs.window} available "
              f"({kept} reused, {max(0, vs.window - kept)} generated)")
        return 0

    have = vardi.cached_window(cfg.cache_dir)
    if not have:
        raise CliError(f"no Vardi cache at {cfg.cache_dir}; run `golombic vardi gen W` first")

    if args.action == "show":
        n = args.value
        if not 1 <= n <= have:
            raise CliError(f"T_{n} not generated: the cache holds T_1..T_{have}; "
                           f"run `golombic vardi gen {n}`")
        vs = vardi.load(cfg.cache_dir, n)
        Tn = vs.poly(n)
        d, tt = vs.tilde[n - 1]
        if cfg.fmt == "records":
            print(json.dumps({"n": n, "binomial": format_poly(Tn), "monomial": format_poly(to_monomial(Tn)),
                              "d": d, "tilde": format_poly(tt), "terms": len(Tn)}))
            return 0
        print(f"T_{n} = {format_poly(Tn)}")
        print(f"T_{n} (monomial) = {format_poly(to_monomial(Tn))}")
        print(f"d_{n} = {d}")
        print(f"Ttilde_{n} = {format_poly(tt)}")
        return 0

    # verify
    W = min(have, cfg.window) if args.window_given else have
    vs = vardi.load(cfg.cache_dir, W)
    rep = vardi.verify(vs, args.value, seed=args.seed, oracle_max_n=args.oracle_max_n)
    print(rep.render())
    return 0 if rep.ok else 1


# seq -----------------------------------------------------------------------


def cmd_seq(cfg: RunConfig, args) -> int:
    seed = _seed(args.seed)
    vs = None if args.oracle_only else _vardi_set(cfg)
    ckpt = fastseq.Checkpoint(Path(args.checkpoint)) if args.checkpoint else None
    rep = fastseq.bootstrap(args.kind, seed, args.N, vs, cfg.budget, oracle_only=args.oracle_only,
                            check=args.check, checkpoint=ckpt, progress=Heartbeat("fast call"))
    sys.stdout.write(fastseq.render(rep, cfg.fmt))
    return 0


# tables --------------------------------------------------------------------


def cmd_tables(cfg: RunConfig, args) -> int:
    try:
        table = tables.TABLES[args.id]
    except KeyError:
        raise CliError(f"unknown table {args.id}; choose from {sorted(tables.TABLES)}") from None
    W = cfg.window

    def reachable(N):
        need = tables.required_window(table, N, cfg.budget, fastseq.plan)
        return need is not None and need <= W

    if args.max is None:
        N = max((n for n in range(1, len(table) + 1) if reachable(n)), default=0)
        if N < len(table):
            print(f"# W={W} reaches terms 1..{N} of table {table.id}; pass --window to go further")
    else:
        N = args.max
        if not 1 <= N <= len(table):
            raise CliError(f"table {table.id} has {len(table)} terms")
        if not reachable(N):
            need = tables.required_window(table, N, cfg.budget, fastseq.plan)
            _, depth = fastseq.plan(table.kind, N, W)
            size = tables.row_size_estimate(table, depth)
            why = (f"terms 1..{N} of table {table.id} with W={W} need row {depth} of the "
                   f"{table.kind} triangle, about 10^{len(str(size)) - 1} reduced powers "
                   f"(budget {cfg.budget})")
            if need is None:
                raise CliError(why + "; no window up to 12 brings it within budget")
            raise CliError(why + f"; W={need} is required: run `golombic vardi gen {need}` "
                           f"and retry with --window {need}")
    seed = parse_seed(table.seed)
    ckpt = fastseq.Checkpoint(Path(args.checkpoint)) if args.checkpoint else None
    rep = fastseq.bootstrap(table.kind, seed, N, _vardi_set(cfg), cfg.budget,
                            checkpoint=ckpt, progress=Heartbeat("fast call"))
    bad = [(n, v, table.values[n - 1]) for n, v in rep.terms if v != table.values[n - 1]]
    print(f"# table {table.id}: {table.title}, terms 1..{N}, method={rep.method}")
    for n, got, want in bad:
        print(f"n={n}: computed {got}, expected {want}")
    if bad:
        print(f"table {table.id}: {len(bad)} of {N} terms differ")
        return 1
    print(f"table {table.id}: terms 1..{N} match exactly")
    return 0


# analyze -------------------------------------------------------------------


def cmd_analyze(cfg: RunConfig, args) -> int:
    if args.mode == "ratios":
        seed = _seed(args.seed)
        vs = None if args.oracle_only else _vardi_set(cfg)
        rep = fastseq.bootstrap(args.kind, seed, args.terms, vs, cfg.budget,
                                oracle_only=args.oracle_only)
        target = args.target or ("golden" if args.kind == "golombic" else "mallows")
        rr = analysis.ratio_report(list(rep.values), target, kind=args.kind, seed=seed)
        sys.stdout.write(rr.render("records" if cfg.fmt == "records" else "human"))
        if args.plot:
            from .plotting import plot_ratios

            out = plot_ratios(rr, args.plot)
            print(f"# figure written to {out}", file=sys.stderr)
        return 0

    if args.mode == "degrees":
        vs = _vardi_set(cfg, max(cfg.window, args.n))
        dr = analysis.degree_check(args.kind, args.n, args.k, vs)
        sys.stdout.write(dr.render("records" if cfg.fmt == "records" else "human"))
        if args.show:
            print(analysis.format_symbolic(dr.poly, args.k))
        return 0

    # orbit
    seed = _seed(args.seed)
    orb = orbit(args.kind, seed, args.max_iter, cfg.budget)
    print("(" + ",".join(map(str, orb.lengths)) + ")")
    if orb.reached_identity:
        print(f"reached () at depth {orb.died_at}")
    else:
        print(f"no () within {args.max_iter} iterations")
    return 0


# parser --------------------------------------------------------------------


def _common(sub: bool) -> argparse.ArgumentParser:
    # the copy attached to subcommands must not reset options given before them
    d = (lambda v: argparse.SUPPRESS) if sub else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", "-W", type=int, default=d(None),
                        help=f"number of Vardi polynomials to use (default {vardi.DEFAULT_WINDOW})")
    common.add_argument("--cache-dir", default=d(None),
                        help=f"polynomial cache (default ${vardi.CACHE_ENV} or ~/.cache/golombic/vardi)")
    common.add_argument("--format", choices=FORMATS, default=d("human"))
    common.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET),
                        help="largest triangle row, in reduced powers, that may be built")
    common.add_argument("-v", "--verbose", action="count", default=d(0))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(sub=True)
    p = argparse.ArgumentParser(prog="golombic", description="Exact golombic and Levine sequences via Vardi polynomials.", parents=[_common(sub=False)])
    sub = p.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("vardi", parents=[common], help="generate, show or verify Vardi polynomials")
    pv.add_argument("action", choices=("gen", "show", "verify"))
    pv.add_argument("value", type=int, help="W for gen, n for show, number of trials for verify")
    pv.add_argument("--seed", type=int, default=0, help="random seed for verify")
    pv.add_argument("--oracle-max-n", type=int, default=None,
                    help="largest n checked against brute-force word iteration in verify")

    ps = sub.add_parser("seq", parents=[common], help="compute a golombic or Levine sequence")
    ps.add_argument("kind", type=_kind)
    ps.add_argument("seed", help='seed word such as "2", "1^2 3", or tuple "0,0,1"')
    ps.add_argument("N", type=int)
    ps.add_argument("--check", type=int, default=0, metavar="K",
                    help="cross-check the first K terms against the brute-force oracle")
    ps.add_argument("--oracle-only", action="store_true")
    ps.add_argument("--checkpoint", default=None, metavar="PATH",
                    help="resume file for long fast calls")

    pt = sub.add_parser("tables", parents=[common], help="reproduce a published table")
    pt.add_argument("id", type=int, choices=sorted(tables.TABLES))
    pt.add_argument("--max", type=int, default=None, help="last index to reproduce")
    pt.add_argument("--checkpoint", default=None, metavar="PATH",
                    help="resume file for long fast calls")

    pa = sub.add_parser("analyze", parents=[common], help="ratio, degree and orbit probes")
    asub = pa.add_subparsers(dest="mode", required=True)
    ar = asub.add_parser("ratios", parents=[common])
    ar.add_argument("kind", type=_kind)
    ar.add_argument("seed")
    ar.add_argument("--terms", type=int, default=14)
    ar.add_argument("--target", choices=sorted(analysis.TARGETS), default=None)
    ar.add_argument("--oracle-only", action="store_true")
    ar.add_argument("--plot", default=None, metavar="PATH", help="write a convergence figure")
    ad = asub.add_parser("degrees", parents=[common])
    ad.add_argument("kind", type=_kind)
    ad.add_argument("n", type=int)
    ad.add_argument("k", type=int)
    ad.add_argument("--show", action="store_true", help="also print the polynomial")
    ao = asub.add_parser("orbit", parents=[common])
    ao.add_argument("kind", type=_kind)
    ao.add_argument("seed")
    ao.add_argument("--max-iter", type=int, default=64)
    return p


def parse_args(argv=None) -> argparse.Namespace:
    args = build_parser().parse_args(argv)
    args.window_given = args.window is not None
    if args.window is None:
        args.window = vardi.DEFAULT_WINDOW
    return args


COMMANDS = {"vardi": cmd_vardi, "seq": cmd_seq, "tables": cmd_tables, "analyze": cmd_analyze}


def main(argv=None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg, args)
    except CliError as exc:
        print(f"golombic: {exc}", file=sys.stderr)
        return exc.status
    except fastseq.UnreachableError as exc:
        print(f"golombic: {exc}", file=sys.stderr)
        return 3
    except (vardi.IntegrityError, fastseq.InconsistentSeedError) as exc:
        print(f"golombic: integrity failure: {exc}", file=sys.stderr)
        return 4
    except (vardi.CacheError, vardi.WindowTooSmall, BudgetExceeded) as exc:
        print(f"golombic: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print("golombic: interrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
