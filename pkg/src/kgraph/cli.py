"""Command-line front end.

Exit codes: 0 success or property holds, 1 a checked property fails (the
report carries a certificate), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path as FilePath

from . import io
from .boundary import CyclicGraphError, aperiodicity_report, boundary_paths, boundary_prefix
from .ck import (
    OperatorFamily, boundary_representation, check_ck_family, check_classical_relations,
    check_generator_family, check_variant_relations, restrict,
)
from .core import f_n_report, pi_closure, theta_support
from .extensions import is_exhaustive, lambda_min
from .fixtures import fixture, omega
from .paths import KGraph, parse_degree
from .skeleton import InvalidSkeleton, product_skeleton, validate_skeleton


class UsageError(Exception):
    pass


def _skeleton(spec: str):
    path = FilePath(spec)
    if path.exists():
        return io.read_graph(path)
    try:
        return fixture(spec)
    except KeyError:
        raise UsageError(f"{spec}: no such file or fixture") from None


def _graph(spec: str) -> KGraph:
    return KGraph(_skeleton(spec))


def _paths(g: KGraph, text: str | None):
    if not text:
        return []
    return [g.parse(t) for t in text.split(",") if t.strip()]


def _degree(g: KGraph, text: str):
    n = parse_degree(text)
    if len(n) != g.k:
        raise UsageError(f"degree {text!r} has {len(n)} coordinates; the graph has rank {g.k}")
    return n


def _family(g: KGraph, spec: str | None) -> OperatorFamily:
    if spec is None:
        return boundary_representation(g)
    return OperatorFamily.from_dict(json.loads(FilePath(spec).read_text(encoding="utf-8")), g)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _check_text(title: str, report) -> str:
    lines = [f"{title}: {'PASS' if report.passed else 'FAIL'}"]
    for rel, ok in report.verdicts.items():
        lines.append(f"  {rel:<28} {'ok' if ok else 'FAILS'} ({report.checked.get(rel, 0)} instances)")
    for c in report.counterexamples[:20]:
        extra = " ".join(f"{k}={v}" for k, v in c.detail)
        lines.append(f"  counterexample {c.relation}: {', '.join(c.paths)} at {c.position} {extra}".rstrip())
    if report.vertex_nonzero is not None:
        lines.append(f"  every vertex projection nonzero: {report.vertex_nonzero}")
    return "\n".join(lines)


# -- commands ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    report = validate_skeleton(_skeleton(args.graph))
    text = "valid" if report.ok else "\n".join(f"{v.kind}: {', '.join(v.ids)}" for v in report.violations)
    _emit(args, report.to_dict(), text)
    return 0 if report.ok else 1


def cmd_paths(args) -> int:
    g = _graph(args.graph)
    if args.degree is None:
        found = g.paths_up_to(args.vertex) if args.vertex else g.all_paths()
    else:
        n = _degree(g, args.degree)
        if args.leq:
            found = g.paths_leq(args.vertex, n)
        elif args.vertex:
            found = g.paths_with_range(args.vertex, n)
        else:
            found = sorted(p for v in g.vertices for p in g.paths_with_range(v, n))
    payload = {"schema": "kgraph.paths/1", "count": len(found),
               "paths": [{"path": str(p), "range": p.range, "source": p.source, "degree": list(p.degree)} for p in found]}
    _emit(args, payload, "\n".join(f"{p}  {p.range}<-{p.source}  d={p.degree}" for p in found) + f"\n{len(found)} paths")
    return 0


def cmd_lmin(args) -> int:
    g = _graph(args.graph)
    lam, mu = g.parse(args.lam), g.parse(args.mu)
    pairs = lambda_min(g, lam, mu)
    payload = {"schema": "kgraph.lmin/1", "lambda": str(lam), "mu": str(mu),
               "pairs": [[str(p.alpha), str(p.beta)] for p in pairs]}
    _emit(args, payload, "\n".join(f"({p.alpha}, {p.beta})" for p in pairs) or "empty")
    return 0


def cmd_exhaustive(args) -> int:
    g = _graph(args.graph)
    cert = is_exhaustive(g, args.vertex, _paths(g, args.set))
    text = "exhaustive" if cert.verdict else f"not exhaustive; witness {cert.witness}"
    _emit(args, cert.to_dict(), text)
    return 0 if cert.verdict else 1


def cmd_pi(args) -> int:
    g = _graph(args.graph)
    pc = pi_closure(g, _paths(g, args.set))
    payload = {"schema": "kgraph.pi/1", "base": [str(p) for p in pc.base],
               "closed": [str(p) for p in pc.closed], "degree_bound": list(pc.degree_bound)}
    _emit(args, payload, " ".join(str(p) for p in pc.closed))
    return 0


def cmd_core(args) -> int:
    g = _graph(args.graph)
    report = theta_support(g, pi_closure(g, _paths(g, args.set)))
    lines = [f"block d={b.degree} s={b.source} size={b.size}: {' '.join(map(str, b.members))}" for b in report.blocks]
    lines.append(f"vanishing: {' '.join(map(str, report.vanishing)) or '-'}")
    lines.append(f"dimension {report.total_dimension}")
    _emit(args, report.to_dict(), "\n".join(lines))
    return 0


def cmd_fn(args) -> int:
    g = _graph(args.graph)
    report = f_n_report(g, _degree(g, args.degree))
    lines = [f"source {v} degree {m}: size {len(ms)}" for v, m, ms in report.blocks]
    lines.append(f"dimension {report.total_dimension}")
    _emit(args, report.to_dict(), "\n".join(lines))
    return 0


def cmd_boundary(args) -> int:
    g = _graph(args.graph)
    if args.vertex and args.steps is not None:
        rng = random.Random(args.seed) if args.random else None
        trace = boundary_prefix(g, args.vertex, args.steps, rng)
        _emit(args, {"schema": "kgraph.prefix/1", **trace.to_dict()}, str(trace.current))
        return 0
    xs = boundary_paths(g)
    if args.vertex:
        xs = [x for x in xs if x.range == args.vertex]
    payload = {"schema": "kgraph.boundary/1",
               "paths": [{"path": str(x.path), "range": x.range, "degree": list(x.degree), "n_x": list(x.n_x)} for x in xs]}
    _emit(args, payload, "\n".join(f"{x.path}  d={x.degree}  n_x={x.n_x}" for x in xs))
    return 0


def cmd_boundary_rep(args) -> int:
    g = _graph(args.graph)
    fam = boundary_representation(g)
    if args.generators:
        fam = restrict(g, fam)
    _emit(args, fam.to_dict(), json.dumps(fam.to_dict(), ensure_ascii=False))
    return 0


def cmd_aperiodicity(args) -> int:
    g = _graph(args.graph)
    depth = _degree(g, args.depth) if args.depth else None
    report = aperiodicity_report(g, depth, samples=args.samples, seed=args.seed)
    lines = [report.verdict]
    for v, info in report.per_vertex.items():
        lines.append(f"  {v}: via {info['boundary_path']}, {len(info['undistinguished'])} undistinguished pairs")
    _emit(args, report.to_dict(), "\n".join(lines))
    return 1 if report.verdict == "EXACT_FAILS" else 0


def cmd_check(args) -> int:
    g = _graph(args.graph)
    fam = _family(g, args.family)
    extra = [_paths(g, s) for s in args.extra_set or []]
    report = check_ck_family(g, fam, extra)
    _emit(args, report.to_dict(), _check_text("Cuntz-Krieger relations", report))
    return 0 if report.passed else 1


def cmd_check_generators(args) -> int:
    g = _graph(args.graph)
    gen = _family(g, args.family)
    if args.family is None:
        gen = restrict(g, gen)
    extra = [_paths(g, s) for s in args.extra_set or []]
    report = check_generator_family(g, gen, extra)
    _emit(args, report.to_dict(), _check_text("generator relations", report))
    return 0 if report.passed else 1


def cmd_check_classical(args) -> int:
    g = _graph(args.graph)
    fam = _family(g, args.family)
    bound = _degree(g, args.bound) if args.bound else None
    if args.variant == "classical":
        report = check_classical_relations(g, fam, bound)
    else:
        sets = [_paths(g, s) for s in args.extra_set or []]
        report = check_variant_relations(g, fam, args.variant, bound, sets)
    _emit(args, report.to_dict(), _check_text(f"{args.variant} relations", report))
    return 0 if report.passed else 1


def _emit_graph(args, sk) -> int:
    report = validate_skeleton(sk)
    if not report.ok:
        raise InvalidSkeleton(report)
    print(io.dumps(sk))
    return 0


def cmd_omega(args) -> int:
    return _emit_graph(args, omega(args.k, parse_degree(args.m)))


def cmd_product(args) -> int:
    return _emit_graph(args, product_skeleton(_skeleton(args.first), _skeleton(args.second)))


def cmd_fixture(args) -> int:
    return _emit_graph(args, fixture(args.name))


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the structured report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised steps (default 0)")

    parser = argparse.ArgumentParser(prog="kgraph", description="k-graph combinatorics and relation checks.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_, graph=True):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        if graph:
            p.add_argument("graph", help="graph document (JSON file) or fixture name such as G_SQUARE")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "validate a skeleton")

    p = add("paths", cmd_paths, "enumerate paths")
    p.add_argument("--vertex", help="range vertex")
    p.add_argument("--degree", help="degree such as 1,1")
    p.add_argument("--leq", action="store_true", help="list the paths of vΛ^{<=n} instead")

    p = add("lmin", cmd_lmin, "minimal common extensions of two paths")
    p.add_argument("lam")
    p.add_argument("mu")

    p = add("exhaustive", cmd_exhaustive, "decide whether a path set is exhaustive")
    p.add_argument("--vertex", required=True)
    p.add_argument("--set", default="", help="comma-separated paths, e.g. e,g.h")

    p = add("pi", cmd_pi, "closure of a finite path set")
    p.add_argument("--set", required=True)

    p = add("core", cmd_core, "matrix-unit blocks of the core approximation")
    p.add_argument("--set", required=True)

    p = add("fn", cmd_fn, "matrix blocks of the F_n subalgebra")
    p.add_argument("--degree", required=True)

    p = add("boundary", cmd_boundary, "boundary paths (acyclic) or a greedy prefix")
    p.add_argument("--vertex")
    p.add_argument("--steps", type=int, help="run the greedy construction for this many rounds")
    p.add_argument("--random", action="store_true", help="choose edges at random (uses --seed)")

    p = add("boundary-rep", cmd_boundary_rep, "boundary-path representation as an operator family")
    p.add_argument("--generators", action="store_true", help="restrict to vertices and edges")

    p = add("aperiodicity", cmd_aperiodicity, "aperiodicity evidence report")
    p.add_argument("--depth", help="degree bound for cyclic graphs, e.g. 3,3")
    p.add_argument("--samples", type=int, default=8)

    for name, func, help_ in (
        ("check", cmd_check, "check the Cuntz-Krieger relations"),
        ("check-generators", cmd_check_generators, "check the generator-level relations"),
        ("check-classical", cmd_check_classical, "check the classical or variant relations"),
    ):
        p = add(name, func, help_)
        p.add_argument("--family", help="operator family JSON (default: boundary representation)")
        p.add_argument("--extra-set", action="append", help="additional exhaustive set to test (repeatable)")
        if name == "check-classical":
            p.add_argument("--variant", choices=["classical", "A1", "A2"], default="classical")
            p.add_argument("--bound", help="largest degree n to test")

    p = add("omega", cmd_omega, "emit the graph OMEGA(k, m)", graph=False)
    p.add_argument("k", type=int)
    p.add_argument("m", help="coordinates such as 1,1")

    p = add("product", cmd_product, "emit the product of two graphs", graph=False)
    p.add_argument("first")
    p.add_argument("second")

    p = add("fixture", cmd_fixture, "emit a built-in fixture", graph=False)
    p.add_argument("name")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InvalidSkeleton, io.DocumentError, CyclicGraphError) as err:
        print(f"kgraph: {err}", file=sys.stderr)
    except (KeyError, ValueError, OSError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else err
        print(f"kgraph: {msg}", file=sys.stderr)
    return 2


def main() -> None:
    sys.exit(run())
