"""Command-line interface: ``lsdom {gen,graph,solve,construct,verify,bounds}``.

Exit codes: 0 success / proven optimal, 1 usage or parse error, 2 feasible
but not proven optimal (budget ran out), 3 infeasible demand, 4 a set
failed verification or contradicted a bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import List, Optional

from . import bounds as bnd
from . import constructions as cons
from .errors import ConstructionFailed, Infeasible, LsdomError, NotCanonicalQStep
from .graph import LatinSquareGraph
from .latin import cyclic, detect_structure, q_step, random_isotopy_square, read_square
from .solver import DOMINATING, DominationCertificate, ktuple, solve_exact, verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_INFEASIBLE = 3
EXIT_VERIFY = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _fmt_set(triples) -> str:
    return " ".join(f"({r},{c},{s})" for r, c, s in triples)


def _write(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _structure_of(square) -> bnd.Structure:
    kind, q, m = detect_structure(square)
    if kind == "qstep":
        return bnd.Structure(bnd.QSTEP, q, m)
    return bnd.Structure(kind)


def cmd_gen(args) -> int:
    if args.kind == "cyclic":
        if args.n is None:
            raise UsageError("--kind cyclic needs --n")
        square = cyclic(args.n)
    elif args.kind == "qstep":
        if args.q is None or args.m is None:
            raise UsageError("--kind qstep needs --q and --m")
        square = q_step(args.q, args.m)
    else:
        if args.q is not None and args.m is not None:
            square, _ = random_isotopy_square(q=args.q, m=args.m, seed=args.seed)
        elif args.n is not None:
            square, _ = random_isotopy_square(args.n, seed=args.seed)
        else:
            raise UsageError("--kind random needs --n (cyclic base) or --q and --m (q-step base)")
    if args.out in (None, "-"):
        sys.stdout.write(square.to_text())
    else:
        _write(args.out, square.to_text())
        print(f"order {square.n} kind {args.kind}")
    return EXIT_OK


def cmd_graph(args) -> int:
    graph = LatinSquareGraph(read_square(args.input))
    stats = graph.stats()
    print(f"vertices {stats['vertices']}")
    print(f"edges {stats['edges']}")
    if stats["min_degree"] == stats["max_degree"]:
        print(f"degree {stats['min_degree']}")
    else:
        print(f"degree {stats['min_degree']}..{stats['max_degree']}")
    if args.edges:
        _write(args.edges, graph.edge_list_text())
    return EXIT_OK


def _mode(args):
    if args.mode == "dom":
        return DOMINATING
    if args.k is None:
        raise UsageError("--mode ktt needs --k")
    return ktuple(args.k)


def cmd_solve(args) -> int:
    square = read_square(args.input)
    graph = LatinSquareGraph(square)
    cert = solve_exact(
        graph,
        _mode(args),
        budget=args.budget,
        deterministic=args.deterministic,
        threads=args.threads,
        backend=args.backend,
    )
    print(cert.size)
    print(_fmt_set(cert.triples()))
    if not cert.optimal:
        print(f"budget exhausted after {cert.nodes} nodes; size not proven optimal", file=sys.stderr)
    if args.out:
        _write(args.out, cert.to_text())
    return EXIT_OK if cert.optimal else EXIT_BUDGET


def cmd_construct(args) -> int:
    square = read_square(args.input) if args.input else None
    method = args.method
    if method == "ktds":
        if square is None:
            square = _square_from_flags(args)
        if args.k is None:
            raise UsageError("--method ktds needs --k")
        vset = cons.ktds_construction(square, args.k)
        mode, name = ktuple(args.k), cons.KTDS
    elif method == "qstep":
        if args.q is None or args.m is None:
            if square is None:
                raise UsageError("--method qstep needs --q and --m")
            kind, q, m = detect_structure(square)
            if kind == "general":
                raise NotCanonicalQStep("input is not a canonical q-step square; pass --q and --m")
            args.q, args.m = q, m
        vset = cons.qstep_1tds_construction(args.q, args.m, square)
        square = square or q_step(args.q, args.m)
        mode, name = ktuple(1), cons.QSTEP
    elif method == "cyclic":
        n = square.n if square is not None else args.n
        if n is None:
            raise UsageError("--method cyclic needs an input square or --n")
        if square is not None and square != cyclic(n):
            raise UsageError("--method cyclic applies only to the canonical cyclic square")
        square = cyclic(n)
        vset = cons.cyclic_domination_construction(n)
        mode, name = DOMINATING, cons.CYCLIC
    else:
        if square is None:
            square = _square_from_flags(args)
        vset, _ = cons.general_domination_construction(square, seed=args.seed)
        mode, name = DOMINATING, cons.GENERAL
    graph = LatinSquareGraph(square)
    result = verify(graph, vset, mode)
    if not result.ok:
        print(f"construction failed verification at {len(result.violations)} vertices", file=sys.stderr)
        return EXIT_VERIFY
    cert = cons.certificate(square, vset, mode, name)
    print(f"size {cert.size}")
    print(_fmt_set(cert.triples()))
    if args.out:
        _write(args.out, cert.to_text())
    return EXIT_OK


def _square_from_flags(args):
    if args.q is not None and args.m is not None:
        return q_step(args.q, args.m)
    if args.n is not None:
        return cyclic(args.n)
    raise UsageError("give an input square, --n (cyclic) or --q/--m (q-step)")


def cmd_verify(args) -> int:
    with open(args.cert, encoding="utf-8") as fh:
        cert = DominationCertificate.from_text(fh.read())
    graph = LatinSquareGraph(cert.square)
    cap = 3 * (cert.square.n - 1)
    if cert.mode.is_total and cert.mode.k > cap:
        raise Infeasible(cert.mode.k, cap)
    failed = False
    result = verify(graph, cert.vset, cert.mode)
    if result.ok:
        print(f"verify: ok ({cert.mode}, size {cert.size})")
    else:
        failed = True
        print(f"verify: FAILED at {len(result.violations)} vertices")
        for v in result.violations:
            print(f"  ({v.vertex.r},{v.vertex.c},{v.vertex.s}) short by {v.shortfall}")
    if cert.square.n >= 2:
        report = bnd.bounds_for(cert.square.n, cert.mode, _structure_of(cert.square))
        check = bnd.consistency_check(report, cert)
        if check.ok:
            print(f"bounds: ok (lower {report.lower.value}, upper {report.upper.value})")
        else:
            failed = True
            for line in check.contradictions:
                print(f"bounds: CONTRADICTION {line}")
    return EXIT_VERIFY if failed else EXIT_OK


BOUND_FIELDS = ["n", "mode", "k", "lower", "lower_source", "upper", "upper_source", "exact", "exact_source"]


def _bound_row(report) -> dict:
    return {
        "n": report.n,
        "mode": report.mode.kind,
        "k": report.mode.k,
        "lower": report.lower.value,
        "lower_source": f"{report.lower.label}: {report.lower.formula}",
        "upper": report.upper.value,
        "upper_source": f"{report.upper.label}: {report.upper.formula}",
        "exact": "" if report.exact is None else report.exact.value,
        "exact_source": "" if report.exact is None else report.exact.label,
    }


def cmd_bounds(args) -> int:
    if args.structure == "qstep":
        if args.q is None or args.m is None:
            raise UsageError("--structure qstep needs --q and --m")
        structure = bnd.Structure(bnd.QSTEP, args.q, args.m)
        n_lo = n_hi = args.q * args.m
        if args.n is not None and args.n != n_lo:
            raise UsageError(f"--n {args.n} disagrees with q*m = {n_lo}")
    else:
        if args.n is None:
            raise UsageError("bounds needs --n")
        structure = bnd.Structure(args.structure)
        n_lo, n_hi = args.n, args.to if args.to is not None else args.n
    rows = []
    for n in range(n_lo, n_hi + 1):
        if args.k is None:
            rows.append(_bound_row(bnd.gamma_bounds(n, structure)))
            continue
        try:
            rows.append(_bound_row(bnd.ktds_bounds(n, args.k, structure)))
        except Infeasible:
            if n_lo == n_hi:
                raise
    if args.csv:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=BOUND_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _write(args.csv, buf.getvalue())
        if args.csv != "-":
            print(f"wrote {len(rows)} rows to {args.csv}")
        return EXIT_OK
    print(f"{'n':>3} {'mode':<5} {'k':>3} {'lower':>5} {'upper':>5} {'exact':>5}  sources")
    for row in rows:
        print(
            f"{row['n']:>3} {row['mode']:<5} {row['k']:>3} {row['lower']:>5} {row['upper']:>5} {row['exact']!s:>5}"
            f"  lower[{row['lower_source']}] upper[{row['upper_source']}]"
            + (f" exact[{row['exact_source']}]" if row["exact_source"] else "")
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lsdom", description="Domination on latin square graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a latin square in text grid format")
    p.add_argument("--kind", choices=["cyclic", "qstep", "random"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("graph", help="print latin square graph statistics")
    p.add_argument("input")
    p.add_argument("--edges", help="write the edge list ('r1 c1 r2 c2' lines) here")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("solve", help="exact minimum dominating / kTDS set")
    p.add_argument("input")
    p.add_argument("--mode", choices=["dom", "ktt"], default="dom")
    p.add_argument("--k", type=int)
    p.add_argument("--budget", type=int, help="node limit for the search")
    p.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--backend", choices=["cython", "python"])
    p.add_argument("--out", help="write the certificate document here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("construct", help="run a constructive builder")
    p.add_argument("input", nargs="?")
    p.add_argument("--method", choices=["ktds", "qstep", "cyclic", "general"], required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a certificate against the verifier and the bounds")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="tabulate lower/upper/exact bounds")
    p.add_argument("--n", type=int)
    p.add_argument("--to", type=int, help="last order of a range starting at --n")
    p.add_argument("--k", type=int)
    p.add_argument("--structure", choices=["general", "cyclic", "qstep"], default="general")
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--csv", help="write CSV here ('-' for stdout)")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ConstructionFailed as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, LsdomError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
