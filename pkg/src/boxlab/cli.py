"""Command-line surface: construction subcommands, verification, generators,
and a small benchmark harness.

Exit codes: 0 success, 2 parse error, 3 parameter error, 4 verification or
randomized failure.  Every run that involves randomness reports the seed it
used, so any output can be regenerated exactly.
"""

import argparse
import concurrent.futures
import csv
import sys
import time
from pathlib import Path
from typing import List, Optional

from .builders import TreeDecomposition, validate_tree_decomposition
from .core import BoxRepresentation, Graph
from .errors import (
    BoxlabError,
    ParameterError,
    ParseError,
    RandomizedFailureError,
    StructuralError,
    VerificationError,
)
from .exact import exact_boxicity, exact_dimension
from .files import (
    canonical_json,
    load_json,
    parse_graph,
    parse_layering,
    parse_poset,
    parse_tree_decomposition,
    parse_vertex_set,
    write_graph,
    write_poset,
)
from .generators import (
    bipartite_graph,
    comatching_graph,
    crown_poset,
    gnp_graph,
    grid_graph,
    height2_poset,
)
from .pipelines import (
    Certificate,
    Layering,
    bounded_degree_rep,
    check_certificate,
    genus_rep,
    layered_tw_rep,
)
from .reductions import dimension_pipeline
from .resampling import partition_bounded_mono
from .seeds import fresh_seed
from .suitable import build_suitable, verify_suitable

EXIT_PARSE = 2
EXIT_PARAMETER = 3
EXIT_FAILURE = 4


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _seed_of(args) -> int:
    if args.seed is None:
        return fresh_seed()
    return args.seed


def _default_out(path: str, suffix: str) -> str:
    return str(Path(path).with_suffix(suffix))


def _write_certificate(cert: Certificate, g: Graph, input_path: str,
                       out: Optional[str]) -> int:
    report = check_certificate(g, cert)
    if not report.ok:
        print(f"verification failed: {report.summary()}", file=sys.stderr)
        return EXIT_FAILURE
    target = out or _default_out(input_path, ".cert.json")
    Path(target).write_text(canonical_json(cert.to_json()))
    print(f"{cert.construction} n={g.n} d={cert.d} target_d={cert.target_d} "
          f"fallback={str(cert.fallback).lower()} seed={cert.seed} "
          f"verified=true -> {target}")
    return 0


def cmd_suitable(args) -> int:
    seed = _seed_of(args)
    fam = build_suitable(args.n, args.k, seed)
    if args.verify is not None:
        ok = verify_suitable(fam, mode=args.verify, seed=seed)
        if not ok:
            print("suitability check failed", file=sys.stderr)
            return EXIT_FAILURE
    obj = {
        "n": fam.n,
        "k": fam.k,
        "seed": seed,
        "size": len(fam.perms),
        "perms": [list(p) for p in fam.perms],
    }
    if args.verify is not None:
        obj["verified"] = args.verify
    _emit(canonical_json(obj), args.out)
    return 0


def cmd_partition(args) -> int:
    g = parse_graph(_read(args.graph))
    seed = _seed_of(args)
    part = partition_bounded_mono(g, args.d, args.k, seed, unsafe=args.unsafe)
    obj = {"d": args.d, "k": part.k, "seed": seed, "classes": list(part.cls)}
    _emit(canonical_json(obj), args.out)
    return 0


def cmd_degree(args) -> int:
    g = parse_graph(_read(args.graph))
    seed = _seed_of(args)
    if (args.d is None) != (args.k is None):
        raise ParameterError("give both --d and --k or neither")
    cert = bounded_degree_rep(g, seed, d=args.d, k=args.k, unsafe=args.unsafe)
    return _write_certificate(cert, g, args.graph, args.out)


def cmd_genus(args) -> int:
    g = parse_graph(_read(args.graph))
    cut = parse_vertex_set(_read(args.cut))
    rep_obj = load_json(_read(args.rep))
    if isinstance(rep_obj, dict) and "boxes" in rep_obj and "d" in rep_obj:
        rep_gx = BoxRepresentation.from_json(int(rep_obj["d"]), rep_obj["boxes"])
    else:
        raise ParseError("rep file must be JSON with 'd' and 'boxes'")
    seed = _seed_of(args)
    cert = genus_rep(g, args.g, cut, rep_gx, seed,
                     deletion_threshold=args.deletion_threshold)
    return _write_certificate(cert, g, args.graph, args.out)


def cmd_ltw(args) -> int:
    g = parse_graph(_read(args.graph))
    bags, tree_edges, n = parse_tree_decomposition(_read(args.td))
    if n != g.n:
        raise ParameterError("decomposition and graph disagree on n")
    td = TreeDecomposition(bags, tuple(tree_edges))
    validate_tree_decomposition(g, td)
    layering = Layering(tuple(parse_layering(_read(args.layers), g.n)))
    seed = _seed_of(args)
    cert = layered_tw_rep(g, td, layering, seed=seed)
    return _write_certificate(cert, g, args.graph, args.out)


def cmd_dim(args) -> int:
    p = parse_poset(_read(args.poset))
    seed = _seed_of(args)
    res = dimension_pipeline(p, seed)
    target = args.out or _default_out(args.poset, ".dim.json")
    Path(target).write_text(canonical_json(res.to_json()))
    cert = res.box_certificate
    print(f"dim n={p.n} k={res.k} box_d={cert.d} target_d={cert.target_d} "
          f"seed={seed} verified=true -> {target}")
    return 0


def cmd_oracle(args) -> int:
    if args.kind == "bx":
        g = parse_graph(_read(args.input))
        value, rep = exact_boxicity(g)
        obj = {"kind": "bx", "value": value,
               "witness": {"d": rep.d, "boxes": rep.to_json()}}
    elif args.kind == "dim":
        p = parse_poset(_read(args.input))
        value, realizer = exact_dimension(p)
        from .core import order_sequence
        obj = {"kind": "dim", "value": value,
               "witness": {"orders": [list(order_sequence(o))
                                      for o in realizer.orders]}}
    else:
        raise ParameterError(f"unknown oracle kind {args.kind!r}")
    _emit(canonical_json(obj), args.out)
    return 0


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    cert = Certificate.from_json(load_json(_read(args.certificate)))
    report = check_certificate(g, cert)
    if report.ok:
        print(f"{cert.construction} n={g.n} d={cert.d} target_d={cert.target_d} "
              f"verified=true")
        return 0
    for violation in report.violations[:10]:
        print(f"violation: {violation}", file=sys.stderr)
    if report.total > 10:
        print(f"... and {report.total - 10} more", file=sys.stderr)
    return EXIT_FAILURE


def cmd_gen(args) -> int:
    family = args.family
    seed = _seed_of(args)
    if family == "gnp":
        g = gnp_graph(args.n, args.p, seed, max_degree=args.dmax)
        text = write_graph(g)
    elif family == "bipartite":
        g = bipartite_graph(args.na, args.nb, args.p, seed,
                            cap_a=args.ca, cap_b=args.cb)
        text = write_graph(g)
    elif family == "grid":
        text = write_graph(grid_graph(args.rows, args.cols))
    elif family == "comatching":
        text = write_graph(comatching_graph(args.n))
    elif family == "crown":
        text = write_poset(crown_poset(args.n))
    elif family == "height2":
        text = write_poset(height2_poset(args.na, args.nb, args.p, seed))
    else:
        raise ParameterError(f"unknown family {family!r}")
    _emit(text, args.out)
    return 0


def _bench_trial(task) -> tuple:
    dmax, n, p, seed, verify = task
    g = gnp_graph(n, p, seed, max_degree=dmax)
    start = time.perf_counter()
    cert = bounded_degree_rep(g, seed)
    elapsed = time.perf_counter() - start
    if verify:
        report = check_certificate(g, cert)
        if not report.ok:
            raise VerificationError("benchmark certificate failed re-check", report)
    return (g.max_degree(), g.n, cert.d, cert.target_d, round(elapsed, 4), seed)


def cmd_bench(args) -> int:
    if args.target != "degree":
        raise ParameterError(f"unknown bench target {args.target!r}")
    if args.trials < 1:
        raise ParameterError("need at least one trial")
    master = _seed_of(args)
    n = args.n if args.n is not None else 5 * args.dmax
    p = min(1.0, args.dmax / max(1, n - 1))
    from .seeds import derive_seed
    tasks = [(args.dmax, n, p, derive_seed(master, "bench", i), not args.no_verify)
             for i in range(args.trials)]
    rows: List[tuple] = [None] * args.trials
    if args.jobs == 1:
        for i, task in enumerate(tasks):
            rows[i] = _bench_trial(task)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futs = {pool.submit(_bench_trial, t): i for i, t in enumerate(tasks)}
            for fut in concurrent.futures.as_completed(futs):
                rows[futs[fut]] = fut.result()
    header = ["delta", "n", "d", "target_d", "seconds", "seed"]
    if args.out is None:
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)
    else:
        path = Path(args.out)
        new_file = not path.exists() or path.stat().st_size == 0
        with path.open("a", newline="") as fh:
            writer = csv.writer(fh)
            if new_file:
                writer.writerow(header)
            writer.writerows(rows)
        print(f"bench degree trials={args.trials} master_seed={master} -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxlab",
        description="Machine-verified box representations and poset realizers.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_seed(p):
        p.add_argument("--seed", type=int, default=None,
                       help="64-bit seed (default: fresh, recorded in output)")

    def add_out(p):
        p.add_argument("-o", "--out", default=None, help="output path")

    p = sub.add_parser("suitable", help="build a k-suitable permutation family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", choices=("exhaustive", "sampled"), default=None)
    add_seed(p)
    add_out(p)
    p.set_defaults(func=cmd_suitable)

    p = sub.add_parser("partition", help="partition with bounded class degrees")
    p.add_argument("graph")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--unsafe", action="store_true",
                   help="skip the parameter feasibility check")
    add_seed(p)
    add_out(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("degree", help="box representation from the degree pipeline")
    p.add_argument("graph")
    p.add_argument("--d", type=int, default=None, help="override class degree bound")
    p.add_argument("--k", type=int, default=None, help="override class count")
    p.add_argument("--unsafe", action="store_true",
                   help="skip the partition feasibility check")
    add_seed(p)
    add_out(p)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("genus", help="box representation from a cutting set")
    p.add_argument("graph")
    p.add_argument("--g", type=int, required=True, help="genus of the input graph")
    p.add_argument("--cut", required=True, help="vertex set file for X")
    p.add_argument("--rep", required=True,
                   help="JSON rep of the graph minus X ({'d':..,'boxes':..})")
    p.add_argument("--deletion-threshold", type=int, default=10_000,
                   help="largest |X| handled by vertex deletion")
    add_seed(p)
    add_out(p)
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("ltw", help="box representation from a layered decomposition")
    p.add_argument("graph")
    p.add_argument("--td", required=True, help="tree decomposition file")
    p.add_argument("--layers", required=True, help="layering file")
    add_seed(p)
    add_out(p)
    p.set_defaults(func=cmd_ltw)

    p = sub.add_parser("dim", help="realizer of a poset via its comparability graph")
    p.add_argument("poset")
    add_seed(p)
    add_out(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("oracle", help="exact small-instance baselines")
    p.add_argument("kind", choices=("bx", "dim"))
    p.add_argument("input")
    add_out(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="re-check a certificate against its graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a deterministic test instance")
    p.add_argument("family",
                   help="gnp | bipartite | grid | comatching | crown | height2")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--na", type=int, default=10)
    p.add_argument("--nb", type=int, default=10)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--ca", type=int, default=None, help="degree cap, first side")
    p.add_argument("--cb", type=int, default=None, help="degree cap, second side")
    p.add_argument("--rows", type=int, default=5)
    p.add_argument("--cols", type=int, default=5)
    add_seed(p)
    add_out(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="timing harness, CSV output")
    p.add_argument("target", help="degree")
    p.add_argument("--dmax", type=int, default=100)
    p.add_argument("--n", type=int, default=None, help="default 5*dmax")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-verify", action="store_true",
                   help="skip the external certificate re-check (timing only)")
    add_seed(p)
    add_out(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except (RandomizedFailureError, VerificationError, StructuralError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except BoxlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
