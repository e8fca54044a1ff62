"""Operator families as exact sparse matrices, and checkers for the
Cuntz-Krieger relations in their several forms.

Matrices act on the free abelian group with basis the boundary paths (for the
boundary representation) or any labelled basis.  Everything is integer
arithmetic; identities are tested with ``==`` and no tolerance.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

import scipy.sparse as sp

from . import matrices as mx
from .boundary import CyclicGraphError, boundary_paths
from .core import PiClosure, t_extension_set, theta_support
from .extensions import is_exhaustive, lambda_min
from .paths import Degree, KGraph, Path, degrees_below, vee


class MissingAssignment(KeyError):
    """An operator was needed for a path the family does not assign."""


class InconsistentFactorisation(ValueError):
    """Two factorisations of one path gave different products of generators."""


@dataclass(eq=False)
class OperatorFamily:
    basis: tuple[str, ...]
    assign: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.basis)

    def op(self, p: Path) -> sp.csr_array:
        try:
            return self.assign[p]
        except KeyError:
            raise MissingAssignment(str(p)) from None

    def star(self, p: Path) -> sp.csr_array:
        t = self.op(p)
        cache = self.__dict__.setdefault("_adjoints", {})
        hit = cache.get(p)
        if hit is None or hit[0] is not t:
            hit = cache[p] = (t, mx.adjoint(t))
        return hit[1]

    def range_projection(self, p: Path) -> sp.csr_array:
        t = self.op(p)
        return mx.mul(t, mx.adjoint(t))

    def has(self, p: Path) -> bool:
        return p in self.assign

    def paths(self) -> list[Path]:
        return sorted(self.assign)

    def same_as(self, other: "OperatorFamily") -> bool:
        if self.basis != other.basis or set(self.assign) != set(other.assign):
            return False
        return all(mx.equal(self.assign[p], other.assign[p]) for p in self.assign)

    def to_dict(self) -> dict:
        return {
            "schema": "kgraph.family/1",
            "basis": list(self.basis),
            "ops": {str(p): mx.to_triplets(self.assign[p]) for p in self.paths()},
        }

    @classmethod
    def from_dict(cls, d: dict, g: KGraph) -> "OperatorFamily":
        n = len(d["basis"])
        assign = {g.parse(k): mx.from_triplets(n, v) for k, v in d["ops"].items()}
        return cls(tuple(d["basis"]), assign)


@dataclass(eq=False)
class GeneratorFamily(OperatorFamily):
    """A family assigned on vertices and edges only."""

    def __post_init__(self):
        for p in self.assign:
            if len(p.edges) > 1:
                raise ValueError(f"generator families assign vertices and edges only, got {p}")


def boundary_representation(g: KGraph) -> OperatorFamily:
    """``S_lam e_x = e_{lam x}`` when ``s(lam) = r(x)``, else 0, on the boundary paths."""
    if not g.is_acyclic():
        raise CyclicGraphError("the boundary representation needs a finite basis (acyclic graph)")
    xs = boundary_paths(g)
    index = {b.path: i for i, b in enumerate(xs)}
    by_range = defaultdict(list)
    for b in xs:
        by_range[b.range].append(b.path)
    n = len(xs)
    assign = {}
    for lam in g.all_paths():
        trip = [(index[g.compose(lam, x)], index[x], 1) for x in by_range[lam.source]]
        assign[lam] = mx.from_triplets(n, trip)
    return OperatorFamily(tuple(str(b.path) for b in xs), assign)


def restrict(g: KGraph, fam: OperatorFamily) -> GeneratorFamily:
    keep = {p: t for p, t in fam.assign.items() if len(p.edges) <= 1}
    return GeneratorFamily(fam.basis, keep)


def _word_product(gen: OperatorFamily, g: KGraph, word) -> sp.csr_array:
    return mx.mul(*(gen.op(g.edge(e)) for e in word))


def extend_generators(g: KGraph, gen: OperatorFamily, bound: Degree | None = None) -> OperatorFamily:
    """Products of generators along a factorisation, for every path (of degree
    ``<= bound`` on cyclic graphs).  Each product is recomputed along the
    reverse colour order and must agree."""
    for v in g.vertices:
        gen.op(g.vertex(v))
    for eid in g.edges:
        gen.op(g.edge(eid))
    assign = {}
    for lam in g.all_paths(bound):
        if lam.is_vertex:
            assign[lam] = gen.op(lam)
            continue
        first = _word_product(gen, g, lam.edges)
        colors = sorted((g.color(e) for e in lam.edges), reverse=True)
        second = _word_product(gen, g, g.word_with_colors(lam, colors))
        if not mx.equal(first, second):
            raise InconsistentFactorisation(f"factorisations of {lam} give different operators")
        assign[lam] = first
    return OperatorFamily(gen.basis, assign)


# -- reports -------------------------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    relation: str
    paths: tuple[str, ...]
    position: tuple[int, int] | None
    detail: tuple[tuple[str, int | str], ...] = ()

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "paths": list(self.paths),
            "position": None if self.position is None else list(self.position),
            "detail": dict(self.detail),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Counterexample":
        pos = d["position"]
        return cls(d["relation"], tuple(d["paths"]), None if pos is None else tuple(pos),
                   tuple(d["detail"].items()))


@dataclass(frozen=True)
class CheckReport:
    verdicts: dict
    counterexamples: tuple[Counterexample, ...] = ()
    checked: dict = field(default_factory=dict)
    vertex_nonzero: bool | None = None

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def failures(self, relation: str) -> list[Counterexample]:
        return [c for c in self.counterexamples if c.relation == relation]

    def to_dict(self) -> dict:
        return {
            "schema": "kgraph.check/1",
            "passed": self.passed,
            "verdicts": dict(self.verdicts),
            "checked": dict(self.checked),
            "vertex_nonzero": self.vertex_nonzero,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        return cls(dict(d["verdicts"]), tuple(Counterexample.from_dict(c) for c in d["counterexamples"]),
                   dict(d["checked"]), d["vertex_nonzero"])


class _Tally:
    def __init__(self):
        self.verdicts: dict = {}
        self.checked: dict = defaultdict(int)
        self.found: list = []

    def open(self, relation: str) -> None:
        self.verdicts.setdefault(relation, True)

    def expect(self, relation: str, lhs, rhs, paths, detail=()) -> bool:
        self.open(relation)
        self.checked[relation] += 1
        pos = mx.difference_at(lhs, rhs)
        if pos is None:
            return True
        self.verdicts[relation] = False
        self.found.append(Counterexample(relation, tuple(str(p) for p in paths), pos, tuple(detail)))
        return False

    def report(self, vertex_nonzero=None) -> CheckReport:
        return CheckReport(dict(self.verdicts), tuple(self.found), dict(self.checked), vertex_nonzero)


def _vertex_relation(tally: _Tally, g: KGraph, fam: OperatorFamily, tag="(i)") -> None:
    tally.open(tag)
    ts = {v: fam.op(g.vertex(v)) for v in g.vertices}
    for v, t in ts.items():
        tally.expect(tag, t, mx.adjoint(t), [v])
        tally.expect(tag, mx.mul(t, t), t, [v])
    for v, w in combinations(g.vertices, 2):
        tally.expect(tag, mx.mul(ts[v], ts[w]), mx.zeros(fam.size), [v, w])


def _gap_product(g: KGraph, fam: OperatorFamily, v: str, paths) -> sp.csr_array:
    tv = fam.op(g.vertex(v))
    return mx.mul(tv, *(sp.csr_array(tv - fam.range_projection(p)) for p in paths))


def edge_exhaustive_sets(g: KGraph, v: str) -> list[tuple[Path, ...]]:
    """Every exhaustive set of edges with range ``v``."""
    edges = [g.edge(e) for c in range(1, g.k + 1) for e in g.edges_at(v, c)]
    out = []
    for r in range(1, len(edges) + 1):
        for E in combinations(edges, r):
            if is_exhaustive(g, v, E).verdict:
                out.append(E)
    return out


def _extra_sets(g: KGraph, sets) -> list[tuple[str, tuple[Path, ...]]]:
    out = []
    for E in sets:
        E = tuple(sorted(set(E)))
        if not E:
            raise ValueError("an empty set is never exhaustive")
        v = E[0].range
        if not is_exhaustive(g, v, E).verdict:
            raise ValueError(f"{[str(p) for p in E]} is not exhaustive at {v}")
        out.append((v, E))
    return out


def _tested_sets(g: KGraph, extra_sets=()) -> list[tuple[str, tuple[Path, ...]]]:
    tested = [(v, E) for v in g.vertices for E in edge_exhaustive_sets(g, v)]
    for item in _extra_sets(g, extra_sets):
        if item not in tested:
            tested.append(item)
    return tested


def _relation_iv(tally: _Tally, g: KGraph, fam: OperatorFamily, extra_sets=(), tag="(iv)") -> None:
    tally.open(tag)
    tested = _tested_sets(g, extra_sets)
    zero = mx.zeros(fam.size)
    for v, E in tested:
        if not all(fam.has(p) for p in E):
            continue
        tally.expect(tag, _gap_product(g, fam, v, E), zero, E)


def _lmin_sum(g: KGraph, fam: OperatorFamily, lam: Path, mu: Path):
    pairs = lambda_min(g, lam, mu)
    if not all(fam.has(p.alpha) and fam.has(p.beta) for p in pairs):
        return None
    return mx.total((mx.mul(fam.op(p.alpha), fam.star(p.beta)) for p in pairs), fam.size)


def _relations_i_to_iii(tally: _Tally, g: KGraph, fam: OperatorFamily) -> None:
    _vertex_relation(tally, g, fam)
    paths = fam.paths()
    by_range = defaultdict(list)
    for p in paths:
        by_range[p.range].append(p)
    tally.open("(ii)")
    for lam in paths:
        for mu in by_range[lam.source]:
            lm = g.compose(lam, mu)
            if fam.has(lm):
                tally.expect("(ii)", mx.mul(fam.op(lam), fam.op(mu)), fam.op(lm), [lam, mu])
    tally.open("(iii)")
    # one product per λ: t*_λ against every t_µ laid side by side
    n = fam.size
    parts = {p: mx.coo_parts(fam.op(p)) for p in paths}
    everything = mx.side_by_side(dict(enumerate(parts.values())), len(paths), n)
    for lam in paths:
        mus, rhs = [], {}
        for mu in paths:
            if lambda_min(g, lam, mu):
                total = _lmin_sum(g, fam, lam, mu)
                if total is None:
                    tally.checked["(iii) skipped"] += 1
                    continue
                rhs[len(mus)] = mx.coo_parts(total)
            mus.append(mu)
        if len(mus) == len(paths):
            stacked = everything
        else:
            stacked = mx.side_by_side({i: parts[mu] for i, mu in enumerate(mus)}, len(mus), n)
        lhs = mx.mul(fam.star(lam), stacked)
        bad = mx.differences_by_block(lhs, mx.side_by_side(rhs, len(mus), n), n) if n else {}
        tally.checked["(iii)"] += len(mus)
        for i, mu in enumerate(mus):
            if i in bad:
                tally.verdicts["(iii)"] = False
                tally.found.append(Counterexample("(iii)", (str(lam), str(mu)), bad[i]))


def _vertices_nonzero(g: KGraph, fam: OperatorFamily) -> bool:
    return all(not mx.is_zero(fam.op(g.vertex(v))) for v in g.vertices)


def check_ck_family(g: KGraph, fam: OperatorFamily, extra_sets=()) -> CheckReport:
    """Relations (i)-(iv).  Relation (iv) runs over every exhaustive set of
    edges at each vertex plus any ``extra_sets`` (each must be exhaustive)."""
    tally = _Tally()
    _relations_i_to_iii(tally, g, fam)
    _relation_iv(tally, g, fam, extra_sets)
    return tally.report(_vertices_nonzero(g, fam))


def check_generator_family(g: KGraph, gen: OperatorFamily, extra_sets=()) -> CheckReport:
    """The generator-level relations: vertex projections, equal products across
    every two-generator factorisation, the ``Λmin`` sums for pairs of edges, and
    the gap products over exhaustive edge sets."""
    gens = [g.vertex(v) for v in g.vertices] + [g.edge(e) for e in sorted(g.edges)]
    for p in gens:
        gen.op(p)
    tally = _Tally()
    _vertex_relation(tally, g, gen)

    tally.open("(ii)")
    by_product = defaultdict(list)
    for lam in gens:
        for alpha in gens:
            if lam.source == alpha.range:
                by_product[g.compose(lam, alpha)].append((lam, alpha))
    for _, pairs in sorted(by_product.items()):
        lam, alpha = pairs[0]
        ref = mx.mul(gen.op(lam), gen.op(alpha))
        for mu, beta in pairs[1:]:
            tally.expect("(ii)", ref, mx.mul(gen.op(mu), gen.op(beta)), [lam, alpha, mu, beta])

    tally.open("(iii)")
    edges = [p for p in gens if not p.is_vertex]
    for lam in edges:
        for mu in edges:
            rhs = _lmin_sum(g, gen, lam, mu)
            tally.expect("(iii)", mx.mul(gen.star(lam), gen.op(mu)), rhs, [lam, mu])

    _relation_iv(tally, g, gen, extra_sets)
    return tally.report(_vertices_nonzero(g, gen))


# -- classical and variant relations ------------------------------------------------------

def _assigned_bound(g: KGraph, fam: OperatorFamily) -> Degree:
    top = (0,) * g.k
    for p in fam.assign:
        top = vee(top, p.degree)
    return top


def _ranks(lhs, rhs) -> tuple[tuple[str, int], ...]:
    return (("lhs_rank", mx.rank(lhs)), ("rhs_rank", mx.rank(rhs)),
            ("lhs_trace", mx.trace(lhs)), ("rhs_trace", mx.trace(rhs)))


def _sum_relation(tally: _Tally, g: KGraph, fam: OperatorFamily, bound: Degree | None, tag: str) -> None:
    tally.open(tag)
    bound = _assigned_bound(g, fam) if bound is None else tuple(bound)
    for v in g.vertices:
        tv = fam.op(g.vertex(v))
        for n in degrees_below(bound):
            ps = g.paths_leq(v, n)
            if not all(fam.has(p) for p in ps):
                tally.checked[f"{tag} skipped"] += 1
                continue
            rhs = mx.total((fam.range_projection(p) for p in ps), fam.size)
            if not tally.expect(tag, tv, rhs, [v] + ps):
                last = tally.found.pop()
                tally.found.append(Counterexample(
                    tag, last.paths, last.position, (("n", ",".join(map(str, n))),) + _ranks(tv, rhs)
                ))


def check_classical_relations(g: KGraph, fam: OperatorFamily, bound: Degree | None = None) -> CheckReport:
    """Relations (i)-(iii) together with ``t_v = Σ_{vΛ^{<=n}} t_λ t*_λ`` for every ``n <= bound``."""
    tally = _Tally()
    _relations_i_to_iii(tally, g, fam)
    _sum_relation(tally, g, fam, bound, "A1")
    return tally.report(_vertices_nonzero(g, fam))


def check_variant_relations(g: KGraph, fam: OperatorFamily, variant: str,
                            bound: Degree | None = None, sets=()) -> CheckReport:
    """``A1``: the sum over ``vΛ^{<=n}``.  ``A2``: ``t_v = Σ_E t_λ t*_λ`` for exhaustive
    ``E`` not containing ``v`` (edge-level sets plus ``sets``)."""
    tally = _Tally()
    if variant == "A1":
        _sum_relation(tally, g, fam, bound, "A1")
    elif variant == "A2":
        tally.open("A2")
        tested = [(v, E) for v, E in _tested_sets(g, sets) if all(not p.is_vertex for p in E)]
        for v, E in tested:
            tv = fam.op(g.vertex(v))
            rhs = mx.total((fam.range_projection(p) for p in E), fam.size)
            if not tally.expect("A2", tv, rhs, E):
                last = tally.found.pop()
                tally.found.append(Counterexample("A2", last.paths, last.position, _ranks(tv, rhs)))
    else:
        raise ValueError(f"unknown variant {variant!r}; expected A1 or A2")
    return tally.report(_vertices_nonzero(g, fam))


# -- core matrices -------------------------------------------------------------------------

def residual_projection(g: KGraph, fam: OperatorFamily, pc: PiClosure, lam: Path) -> sp.csr_array:
    """``t_λt*_λ ∏ (t_λt*_λ - t_{λν}t*_{λν})`` over the proper extensions ``λν`` in the closure."""
    p = fam.range_projection(lam)
    factors = [sp.csr_array(p - fam.range_projection(g.compose(lam, nu)))
               for nu in t_extension_set(g, pc, lam.degree, lam.source, lam)]
    return mx.mul(p, *factors)


def matrix_unit(g: KGraph, fam: OperatorFamily, pc: PiClosure, lam: Path, mu: Path) -> sp.csr_array:
    return mx.mul(residual_projection(g, fam, pc, lam), fam.op(lam), fam.star(mu))


def _unit_pairs(pc: PiClosure) -> list[tuple[Path, Path]]:
    return [(a, b) for members in pc.classes().values() for a in members for b in members]


def check_core_identities(g: KGraph, fam: OperatorFamily, pc: PiClosure) -> CheckReport:
    tally = _Tally()
    n = fam.size
    zero = mx.zeros(n)
    report = theta_support(g, pc)
    Q = {lam: residual_projection(g, fam, pc, lam) for lam in pc.closed}

    tally.open("partition")
    for v in pc.ranges():
        tv = fam.op(g.vertex(v))
        here = pc.with_range(v)
        gap = mx.mul(tv, *(sp.csr_array(tv - fam.range_projection(p)) for p in here))
        tally.expect("partition", sp.csr_array(gap + mx.total((Q[p] for p in here), n)), tv, [v] + here)

    tally.open("range-resolution")
    for mu in pc.closed:
        ext = [mu] + [g.compose(mu, nu) for nu in t_extension_set(g, pc, mu.degree, mu.source, mu)]
        tally.expect("range-resolution", fam.range_projection(mu), mx.total((Q[p] for p in ext), n), ext)

    units = _unit_pairs(pc)
    theta = {(a, b): mx.mul(Q[a], fam.op(a), fam.star(b)) for a, b in units}
    tally.open("matrix-units")
    tally.open("unit-adjoints")
    for (a, b), t in theta.items():
        tally.expect("unit-adjoints", mx.adjoint(t), theta[(b, a)], [a, b])
        for (c, d), u in theta.items():
            rhs = theta[(a, d)] if b == c else zero
            tally.expect("matrix-units", mx.mul(t, u), rhs, [a, b, c, d])

    tally.open("vanishing-iff-exhaustive")
    dead = set(report.vanishing)
    for lam in pc.closed:
        is_dead = mx.is_zero(theta[(lam, lam)])
        if is_dead != (lam in dead):
            tally.verdicts["vanishing-iff-exhaustive"] = False
            tally.found.append(Counterexample("vanishing-iff-exhaustive", (str(lam),), None,
                                              (("matrix_zero", int(is_dead)), ("listed", int(lam in dead)))))
        tally.checked["vanishing-iff-exhaustive"] += 1

    tally.open("extendor-bound")
    tally.open("extendor-product")
    for block in report.blocks:
        xi = block.witness
        for lam in block.members:
            lx = g.compose(lam, xi)
            if not fam.has(lx):
                continue
            P = fam.range_projection(lx)
            tally.expect("extendor-bound", mx.mul(Q[lam], P), P, [lam, xi])
            for s, t in units:
                if s.degree != lam.degree or s.source != lam.source:
                    continue
                rhs = mx.mul(fam.op(lx), fam.star(g.compose(t, xi))) if s == lam else zero
                tally.expect("extendor-product", mx.mul(P, theta[(s, t)]), rhs, [lam, xi, s, t])
    return tally.report()


def structural_suite(g: KGraph, fam: OperatorFamily, pc: PiClosure | None = None) -> CheckReport:
    """Consequences of the relations: commuting range projections, same-degree
    isometry relations, the range-sum bound, and (given a closure) the core
    identities."""
    tally = _Tally()
    n = fam.size
    paths = fam.paths()
    R = {p: fam.range_projection(p) for p in paths}
    tally.open("commuting-range-projections")
    for a, b in combinations(paths, 2):
        tally.expect("commuting-range-projections", mx.mul(R[a], R[b]), mx.mul(R[b], R[a]), [a, b])
    tally.open("same-degree-isometries")
    for a in paths:
        for b in paths:
            if a.degree != b.degree:
                continue
            rhs = fam.op(g.vertex(a.source)) if a == b else mx.zeros(n)
            tally.expect("same-degree-isometries", mx.mul(fam.star(a), fam.op(b)), rhs, [a, b])
    tally.open("range-sum-bound")
    groups = defaultdict(list)
    for p in paths:
        groups[(p.range, p.degree)].append(p)
    for (v, _), ps in sorted(groups.items()):
        s = mx.total((R[p] for p in ps), n)
        tally.expect("range-sum-bound", mx.mul(fam.op(g.vertex(v)), s), s, ps)
        tally.expect("range-sum-bound", mx.mul(s, s), s, ps)
    base = tally.report()
    if pc is None:
        return base
    core = check_core_identities(g, fam, pc)
    return CheckReport(
        {**base.verdicts, **core.verdicts},
        base.counterexamples + core.counterexamples,
        {**base.checked, **core.checked},
        _vertices_nonzero(g, fam),
    )


# -- negative fixtures ---------------------------------------------------------------------

def zeroed(fam: OperatorFamily, p: Path) -> OperatorFamily:
    """``fam`` with the operator of ``p`` replaced by 0."""
    assign = dict(fam.assign)
    assign[p] = mx.zeros(fam.size)
    return type(fam)(fam.basis, assign)


def with_extra_projection(g: KGraph, fam: OperatorFamily, v: str, label: str = "extra") -> OperatorFamily:
    """Direct sum with a one-dimensional space on which only ``t_v`` acts (as 1)."""
    n = fam.size
    assign = {}
    for p, t in fam.assign.items():
        trip = mx.to_triplets(t)
        if p.is_vertex and p.range == v:
            trip.append([n, n, 1])
        assign[p] = mx.from_triplets(n + 1, trip)
    return type(fam)(fam.basis + (label,), assign)


def broken_square(g: KGraph, gen: OperatorFamily, edge: str) -> OperatorFamily:
    """A generator family with one edge zeroed, which breaks every square through it."""
    return zeroed(gen, g.edge(edge))
