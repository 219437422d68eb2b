"""Command-line entry point.

Exit codes: 0 SAT / colorable, 1 UNSAT, 2 input or precondition error,
3 search witness found, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import construct as K
from . import gen, io, repro
from .errors import (BudgetExceeded, DPColorError, InternalInvariantViolation, ParseError, PreconditionViolated,
                     TheoremViolation, UnknownExample)
from .graph import degeneracy, is_star
from .oracle import Mode, check_coloring, solve
from .search import CoverFamily, decide_family, default_budget

EXIT_SAT, EXIT_UNSAT, EXIT_INPUT, EXIT_WITNESS, EXIT_BUDGET = 0, 1, 2, 3, 4

ALGORITHMS = ("ff", "nd", "two-block", "forest", "path", "delta2", "auto")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(graph_file: str, cover_file: str | None = None):
    try:
        g = io.parse_graph(_read(graph_file))
    except ParseError as exc:
        raise InputError(f"{graph_file}: {exc}") from None
    if cover_file is None:
        return g, None
    try:
        h = io.parse_cover(_read(cover_file), g)
    except ParseError as exc:
        raise InputError(f"{cover_file}: {exc}") from None
    return g, h


def _k_of(h, k):
    if k is not None:
        return k
    if h.k is None:
        raise InputError("lists have different sizes; pass --k")
    return h.k


def _mode(text: str) -> Mode:
    try:
        return Mode.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# --- subcommands ---------------------------------------------------------------

def cmd_solve(args, out) -> int:
    g, h = _load(args.graph, args.cover)
    k = _k_of(h, args.k)
    v = solve(g, h, args.mode, k)
    if v.satisfiable:
        out.write(io.coloring_certificate(g, h, v.witness, args.mode, k).to_text())
        return EXIT_SAT
    out.write(io.unsat_certificate(g, h, args.mode, k, v.nodes).to_text())
    return EXIT_UNSAT


def _ff_regime(g, k) -> bool:
    return k >= g.n + degeneracy(g)


def _construct(alg: str, g, h, k):
    """(algorithm actually used, coloring or certificate)."""
    if alg == "auto":
        if _ff_regime(g, k):
            return "ff", K.color_ge_n_plus_d(g, h)
        if g.is_forest() and not is_star(g) and k >= max(g.max_degree, 4):
            return "forest", K.sedp_forest(g, h, k)
        if g.max_degree <= 2 and g.is_forest() and g.is_connected() and g.n != 3 and k >= 3:
            return "path", K.sedp_path(g, h, k)
        if k >= 3 * g.max_degree ** 2:
            return "delta2", K.sedp_delta_squared(g, h, k)
        raise PreconditionViolated(
            f"no algorithm applies: k = {k} < n + d = {g.n + degeneracy(g)}, "
            f"G is not a non-star forest with k >= max(Δ, 4), not a path, and k < 3Δ² = {3 * g.max_degree ** 2}")
    if alg == "ff":
        return alg, K.color_ge_n_plus_d(g, h)
    if alg == "nd":
        return alg, K.solve_or_characterize_tight(g, h)
    if alg == "two-block":
        return alg, K.equitable_forest_two_block(g, h, k)
    if alg == "forest":
        return alg, K.sedp_forest(g, h, k)
    if alg == "path":
        return alg, K.sedp_path(g, h, k)
    if alg == "delta2":
        return alg, K.sedp_delta_squared(g, h, k)
    raise InputError(f"unknown algorithm {alg!r}")


_GUARANTEE = {"ff": Mode.INJECTIVE, "nd": Mode.INJECTIVE, "two-block": Mode.MBOUNDED,
              "forest": Mode.STRONG, "path": Mode.STRONG, "delta2": Mode.STRONG}


def cmd_construct(args, out) -> int:
    g, h = _load(args.graph, args.cover)
    k = _k_of(h, args.k)
    used, res = _construct(args.algorithm, g, h, k)
    if isinstance(res, K.TightCertificate):
        out.write(io.tight_certificate_record(g, h, res).to_text())
        return EXIT_UNSAT
    mode = _GUARANTEE[used]
    chk = check_coloring(g, h, res, mode, k)
    if not chk.ok:
        raise InternalInvariantViolation("; ".join(chk.violations))
    out.write(io.coloring_certificate(g, h, res, mode, k, algorithm=used).to_text())
    return EXIT_SAT


def cmd_repro(args, out) -> int:
    ids = list(repro.REGISTRY_IDS) if args.all or not args.ids else args.ids
    ok = True
    for i in ids:
        r = repro.run(i)
        out.write(r.line() + "\n")
        ok &= r.passed
    return EXIT_SAT if ok else EXIT_UNSAT


def cmd_search(args, out) -> int:
    g, _ = _load(args.graph)
    fam = CoverFamily(args.family, args.palette, args.symmetry)
    budget = default_budget() if args.budget is None else args.budget
    try:
        res = decide_family(g, args.k, args.mode, fam, budget, args.shards, args.workers)
    except BudgetExceeded as exc:
        out.write(f"search outcome=budgetExceeded estimate={exc.estimate} budget={exc.budget}\n")
        return EXIT_BUDGET
    out.write(io.search_report(g, res).to_text())
    return EXIT_WITNESS if res.outcome == "witness" else EXIT_SAT


_GRAPH_KINDS = ("forest", "degenerate", "gnp", "maxdeg2", "bounded")


def cmd_gen(args, out) -> int:
    rng = random.Random(args.seed)
    if args.what == "graph":
        if args.kind == "forest":
            g = gen.random_forest(args.n, rng, args.max_degree)
        elif args.kind == "degenerate":
            g = gen.random_degenerate(args.n, args.d, rng)
        elif args.kind == "gnp":
            g = gen.random_graph(args.n, args.p, rng)
        elif args.kind == "maxdeg2":
            g = gen.random_max_degree_two(args.n, rng)
        else:
            g = gen.random_bounded_degree(args.n, args.max_degree or 3, rng)
        out.write(io.serialize_graph(g))
    else:
        if args.graph is None or args.k is None:
            raise InputError("gen cover needs a graph file and --k")
        g, _ = _load(args.graph)
        out.write(io.serialize_cover(gen.random_cover(g, args.k, rng, args.palette, args.partial)))
    return EXIT_SAT


def cmd_verify(args, out) -> int:
    try:
        cert = io.parse_certificate(_read(args.certificate))
    except ParseError as exc:
        raise InputError(f"{args.certificate}: {exc}") from None
    g, h = _load(args.graph, args.cover)
    if cert.kind in ("coloring", "unsat", "tightStructure") and h is None:
        raise InputError(f"a {cert.kind} certificate needs the cover file")
    bad = io.recheck(cert, g, h)
    if bad:
        out.write("INVALID " + "; ".join(bad) + "\n")
        return EXIT_UNSAT
    out.write(f"OK {cert.kind}\n")
    return EXIT_SAT


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dpcolor", description="Equitable DP-coloring toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="exact oracle on a graph and cover")
    s.add_argument("graph")
    s.add_argument("cover")
    s.add_argument("--mode", type=_mode, default=Mode.MBOUNDED)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("construct", help="run a constructive algorithm")
    s.add_argument("graph")
    s.add_argument("cover")
    s.add_argument("--algorithm", "-a", choices=ALGORITHMS, default="auto")
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("repro", help="re-derive registered witness examples")
    s.add_argument("ids", nargs="*")
    s.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_repro)

    s = sub.add_parser("search", help="decide a cover family exhaustively")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--mode", type=_mode, default=Mode.MBOUNDED)
    s.add_argument("--family", default="plainFull")
    s.add_argument("--palette", type=int)
    s.add_argument("--symmetry", default="globalColorPerm")
    s.add_argument("--budget", type=int, help="max covers (default: $DPCOLOR_BUDGET or 5000000)")
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("gen", help="seeded random graph or cover")
    s.add_argument("what", choices=("graph", "cover"))
    s.add_argument("graph", nargs="?", help="graph file (for 'cover')")
    s.add_argument("--seed", type=int, default=gen.DEFAULT_SEED)
    s.add_argument("--kind", choices=_GRAPH_KINDS, default="forest")
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--p", type=float, default=0.3)
    s.add_argument("--max-degree", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--palette", type=int)
    s.add_argument("--partial", type=float, default=0.0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", help="re-check a certificate against its inputs")
    s.add_argument("certificate")
    s.add_argument("graph")
    s.add_argument("cover", nargs="?")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        return args.func(args, out)
    except (InputError, PreconditionViolated, UnknownExample, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except DPColorError as exc:
        if isinstance(exc, (InternalInvariantViolation, TheoremViolation)):
            err.write(f"internal error: {exc}\n")
            return 70
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
