"""Boundary paths: exact enumeration on acyclic graphs, the greedy prefix
construction, and evidence reports for aperiodicity condition (B)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .paths import Degree, KGraph, Path, add, degrees_below, leq, wedge

EXACT_HOLDS = "EXACT_HOLDS"
EXACT_FAILS = "EXACT_FAILS"
INCONCLUSIVE = "INCONCLUSIVE"


class CyclicGraphError(ValueError):
    """Raised where an exact answer needs a finite path space."""


@dataclass(frozen=True, order=True)
class BoundaryPath:
    path: Path
    n_x: Degree

    @property
    def range(self) -> str:
        return self.path.range

    @property
    def degree(self) -> Degree:
        return self.path.degree


def satisfies_boundary_condition(g: KGraph, x: Path, n_x: Degree) -> bool:
    """Whether ``n_x`` witnesses that the finite path ``x`` is a boundary path."""
    m = x.degree
    if not leq(n_x, m):
        return False
    zero = (0,) * g.k
    for n in degrees_below(m):
        if not leq(n_x, n):
            continue
        vertex = g.segment(x, zero, n).source
        for i in range(g.k):
            if n[i] == m[i] and g.receives(vertex, i + 1):
                return False
    return True


def minimal_n_x(g: KGraph, x: Path) -> Degree | None:
    """Greedy coordinatewise descent from ``d(x)``; None if ``x`` is not a boundary path."""
    n = list(x.degree)
    if not satisfies_boundary_condition(g, x, tuple(n)):
        return None
    for i in range(g.k):
        while n[i] > 0:
            n[i] -= 1
            if not satisfies_boundary_condition(g, x, tuple(n)):
                n[i] += 1
                break
    return tuple(n)


def boundary_paths(g: KGraph) -> list[BoundaryPath]:
    """All boundary paths of an acyclic graph, sorted by range then path."""
    if not g.is_acyclic():
        raise CyclicGraphError("boundary paths are infinite on a cyclic graph")
    out = []
    for v in g.vertices:
        for x in g.paths_up_to(v):
            if any(g.receives(x.source, c) for c in range(1, g.k + 1)):
                continue
            out.append(BoundaryPath(x, minimal_n_x(g, x)))
    return sorted(out, key=lambda b: (b.range, b.path))


def boundary_paths_at(g: KGraph, v: str) -> list[BoundaryPath]:
    return [b for b in boundary_paths(g) if b.range == v]


def prepend(g: KGraph, lam: Path, x: BoundaryPath) -> BoundaryPath:
    """``lam x`` with ``n_{lam x} = n_x + d(lam)``."""
    return BoundaryPath(g.compose(lam, x.path), add(x.n_x, lam.degree))


def tail(g: KGraph, x: BoundaryPath, n: Degree) -> BoundaryPath:
    """``x(n, d(x))`` with ``n = (n_x - n) v 0``."""
    n_x = tuple(max(a - b, 0) for a, b in zip(x.n_x, n))
    return BoundaryPath(g.segment(x.path, n, x.degree), n_x)


@dataclass(frozen=True)
class PrefixTrace:
    vertex: str
    segments: tuple[tuple[int, str | None], ...]
    current: Path

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "segments": [[i, e] for i, e in self.segments],
            "current": str(self.current),
        }

    @classmethod
    def from_dict(cls, d: dict, g: KGraph) -> "PrefixTrace":
        return cls(d["vertex"], tuple((i, e) for i, e in d["segments"]), g.parse(d["current"]))


def boundary_prefix(g: KGraph, v: str, steps: int, rng: random.Random | None = None) -> PrefixTrace:
    """Run the greedy boundary-path construction for ``steps`` rounds.

    Round ``i`` appends an edge of colour ``[i]`` (``i`` mod ``k``, 1-based) when
    the current source receives one, else nothing.  Without ``rng`` the first
    edge by id is used.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    current = g.vertex(v)
    segments = []
    for i in range(1, steps + 1):
        color = (i - 1) % g.k + 1
        options = g.edges_at(current.source, color)
        if not options:
            segments.append((i, None))
            continue
        eid = rng.choice(options) if rng is not None else options[0]
        current = g.compose(current, g.edge(eid))
        segments.append((i, eid))
    return PrefixTrace(v, tuple(segments), current)


def _prefix_reaching(g: KGraph, v: str, depth: Degree, rng=None) -> Path:
    # any finite path prefixes some boundary path, so capping coordinates at depth is safe
    current = g.vertex(v)
    stalled = 0
    i = 0
    while stalled < g.k and not leq(depth, current.degree):
        i += 1
        color = (i - 1) % g.k + 1
        options = g.edges_at(current.source, color)
        if not options or current.degree[color - 1] >= depth[color - 1]:
            stalled += 1
            continue
        stalled = 0
        eid = rng.choice(options) if rng is not None else options[0]
        current = g.compose(current, g.edge(eid))
    return current


@dataclass(frozen=True)
class AperiodicityReport:
    verdict: str
    per_vertex: dict = field(default_factory=dict)
    depth: Degree | None = None

    def to_dict(self) -> dict:
        return {
            "schema": "kgraph.aperiodicity/1",
            "verdict": self.verdict,
            "depth": None if self.depth is None else list(self.depth),
            "vertices": {
                v: {
                    "holds": info["holds"],
                    "boundary_path": info["boundary_path"],
                    "undistinguished": [list(p) for p in info["undistinguished"]],
                }
                for v, info in self.per_vertex.items()
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AperiodicityReport":
        per_vertex = {
            v: {
                "holds": info["holds"],
                "boundary_path": info["boundary_path"],
                "undistinguished": [tuple(p) for p in info["undistinguished"]],
            }
            for v, info in d["vertices"].items()
        }
        return cls(d["verdict"], per_vertex, None if d["depth"] is None else tuple(d["depth"]))


def _paths_with_source_upto(g: KGraph, v: str, bound: Degree) -> list[Path]:
    return sorted(p for n in degrees_below(bound) for p in g.paths_with_source(v, n))


def aperiodicity_report(g: KGraph, depth: Degree | None = None, samples: int = 8, seed: int = 0) -> AperiodicityReport:
    """Condition (B): some boundary path at each ``v`` separates distinct ``lam, mu`` in ``Λv``.

    Exact on acyclic graphs.  On cyclic graphs only evidence is reported: pairs of
    paths of degree ``<= depth`` that no sampled boundary prefix separates yet.
    """
    if g.is_acyclic():
        per_vertex = {}
        for v in g.vertices:
            into = g.all_paths()
            into = [p for p in into if p.source == v]
            best = None
            for x in boundary_paths_at(g, v):
                clash = [
                    (str(a), str(b))
                    for a, b in combinations(into, 2)
                    if g.compose(a, x.path) == g.compose(b, x.path)
                ]
                if best is None or len(clash) < len(best[1]):
                    best = (x, clash)
            x, clash = best
            per_vertex[v] = {"holds": not clash, "boundary_path": str(x.path), "undistinguished": clash}
        ok = all(info["holds"] for info in per_vertex.values())
        return AperiodicityReport(EXACT_HOLDS if ok else EXACT_FAILS, per_vertex)

    if depth is None:
        raise ValueError("a cyclic graph needs a depth for the evidence report")
    rng = random.Random(seed)
    zero = (0,) * g.k
    per_vertex = {}
    for v in g.vertices:
        into = _paths_with_source_upto(g, v, depth)
        prefixes = [_prefix_reaching(g, v, depth)]
        prefixes += [_prefix_reaching(g, v, depth, rng) for _ in range(samples)]
        best = None
        for x in prefixes:
            clash = []
            for a, b in combinations(into, 2):
                ax, bx = g.compose(a, x), g.compose(b, x)
                cut = wedge(ax.degree, bx.degree)
                if g.segment(ax, zero, cut) == g.segment(bx, zero, cut):
                    clash.append((str(a), str(b)))
            if best is None or len(clash) < len(best[1]):
                best = (x, clash)
        x, clash = best
        per_vertex[v] = {"holds": None, "boundary_path": str(x), "undistinguished": clash}
    return AperiodicityReport(INCONCLUSIVE, per_vertex, tuple(depth))
