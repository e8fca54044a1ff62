"""Finite presentations of k-graphs: a k-coloured directed graph plus commuting squares.

A skeleton lists vertices, coloured edges and the squares ``x y = u w`` that
identify the two factorisations of each degree ``e_i + e_j`` path.  It presents a
k-graph exactly when the squares give, for every pair of colours ``i < j``, a
bijection between composable ``(i, j)`` edge pairs and composable ``(j, i)`` edge
pairs, and the squares are associative on every three-coloured edge triple.

Paths are written range-first: ``x y`` means ``source(x) == range(y)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

MISSING_SQUARE = "missing-square"
DUPLICATE_SQUARE = "duplicate-square"
NON_BIJECTIVE = "non-bijective"
CUBE_FAILURE = "cube-failure"
DANGLING_ENDPOINT = "dangling-endpoint"

VIOLATION_KINDS = (MISSING_SQUARE, DUPLICATE_SQUARE, NON_BIJECTIVE, CUBE_FAILURE, DANGLING_ENDPOINT)


@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    range: str
    source: str


@dataclass(frozen=True)
class Square:
    """The identity ``first[0] first[1] == second[0] second[1]``."""

    first: tuple[str, str]
    second: tuple[str, str]


@dataclass(frozen=True)
class Skeleton:
    rank: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    squares: tuple[Square, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "squares", tuple(self.squares))

    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def summary(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.squares)


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "ids": list(self.ids)}

    @classmethod
    def from_dict(cls, d: dict) -> "Violation":
        return cls(d["kind"], tuple(d["ids"]))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "schema": "kgraph.validation/1",
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ValidationReport":
        return cls(tuple(Violation.from_dict(v) for v in d["violations"]))


class InvalidSkeleton(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        shown = ", ".join(f"{v.kind}{list(v.ids)}" for v in report.violations[:5])
        super().__init__(f"skeleton does not present a k-graph: {shown}")


def _oriented(sq: Square, edges: dict[str, Edge]) -> tuple[tuple[str, str], tuple[str, str]] | None:
    """Return the square as (ascending pair, descending pair), or None if ill-typed."""
    x, y = (edges[i] for i in sq.first)
    u, w = (edges[i] for i in sq.second)
    if x.color > y.color:
        x, y, u, w = u, w, x, y
    if not (x.color < y.color and u.color == y.color and w.color == x.color):
        return None
    if x.source != y.range or u.source != w.range:
        return None
    if x.range != u.range or y.source != w.source:
        return None
    return (x.id, y.id), (u.id, w.id)


def square_maps(skel: Skeleton) -> dict[tuple[str, str], tuple[str, str]]:
    """Bidirectional swap table for the well-typed squares of ``skel``.

    Maps each mixed-colour composable pair to its other factorisation.  Only
    meaningful for skeletons that pass :func:`validate_skeleton`.
    """
    edges = skel.edge_map()
    swap = {}
    for sq in skel.squares:
        o = _oriented(sq, edges)
        if o is not None:
            asc, desc = o
            swap[asc] = desc
            swap[desc] = asc
    return swap


def _composable_pairs(skel: Skeleton, edges: dict[str, Edge]) -> Iterable[tuple[Edge, Edge]]:
    by_range = defaultdict(list)
    for e in edges.values():
        by_range[e.range].append(e)
    for x in sorted(edges.values(), key=lambda e: e.id):
        for y in sorted(by_range[x.source], key=lambda e: e.id):
            if x.color != y.color:
                yield x, y


def validate_skeleton(skel: Skeleton) -> ValidationReport:
    """Check that ``skel`` presents a k-graph; lists every violation found."""
    out: list[Violation] = []
    verts = set(skel.vertices)
    edges: dict[str, Edge] = {}
    for e in skel.edges:
        bad = e.id in edges or e.range not in verts or e.source not in verts
        bad = bad or not (1 <= e.color <= skel.rank)
        if bad:
            out.append(Violation(DANGLING_ENDPOINT, (e.id,)))
        else:
            edges[e.id] = e

    typed: list[tuple[tuple[str, str], tuple[str, str]]] = []
    for sq in skel.squares:
        ids = sq.first + sq.second
        if any(i not in edges for i in ids):
            out.append(Violation(DANGLING_ENDPOINT, ids))
            continue
        o = _oriented(sq, edges)
        if o is None:
            out.append(Violation(NON_BIJECTIVE, ids))
        else:
            typed.append(o)

    forward: dict[tuple[str, str], tuple[str, str]] = {}
    backward: dict[tuple[str, str], tuple[str, str]] = {}
    for asc, desc in typed:
        if asc in forward:
            out.append(Violation(DUPLICATE_SQUARE, asc + desc))
            continue
        if desc in backward:
            out.append(Violation(NON_BIJECTIVE, asc + desc))
            continue
        forward[asc] = desc
        backward[desc] = asc

    for x, y in _composable_pairs(skel, edges):
        pair = (x.id, y.id)
        if pair not in forward and pair not in backward:
            out.append(Violation(MISSING_SQUARE, pair))

    if not out:
        out.extend(_cube_failures(edges, {**forward, **backward}))
    return ValidationReport(tuple(out))


def _cube_failures(edges: dict[str, Edge], swap: dict) -> list[Violation]:
    def at(word, i):
        w = list(word)
        w[i], w[i + 1] = swap[(w[i], w[i + 1])]
        return tuple(w)

    by_range = defaultdict(list)
    for e in edges.values():
        by_range[e.range].append(e)
    bad = []
    for a in sorted(edges.values(), key=lambda e: e.id):
        for b in by_range[a.source]:
            if b.color <= a.color:
                continue
            for c in by_range[b.source]:
                if c.color <= b.color:
                    continue
                word = (a.id, b.id, c.id)
                left = at(at(at(word, 0), 1), 0)
                right = at(at(at(word, 1), 0), 1)
                if left != right:
                    bad.append(Violation(CUBE_FAILURE, word))
    return bad


def product_skeleton(a: Skeleton, b: Skeleton) -> Skeleton:
    """Cartesian product: a ``(k_a + k_b)``-graph on vertex pairs ``"va*vb"``."""
    for s in (a, b):
        rep = validate_skeleton(s)
        if not rep.ok:
            raise InvalidSkeleton(rep)

    def pair(x, y):
        return f"{x}*{y}"

    k1 = a.rank
    vertices = tuple(pair(va, vb) for va, vb in product(a.vertices, b.vertices))
    edges = []
    for e in a.edges:
        for vb in b.vertices:
            edges.append(Edge(pair(e.id, vb), e.color, pair(e.range, vb), pair(e.source, vb)))
    for va in a.vertices:
        for f in b.edges:
            edges.append(Edge(pair(va, f.id), f.color + k1, pair(va, f.range), pair(va, f.source)))

    squares = []
    for sq in a.squares:
        for vb in b.vertices:
            squares.append(Square(tuple(pair(i, vb) for i in sq.first), tuple(pair(i, vb) for i in sq.second)))
    for sq in b.squares:
        for va in a.vertices:
            squares.append(Square(tuple(pair(va, i) for i in sq.first), tuple(pair(va, i) for i in sq.second)))
    for e in a.edges:
        for f in b.edges:
            # (e, r(f)) (s(e), f) == (r(e), f) (e, s(f))
            squares.append(Square(
                (pair(e.id, f.range), pair(e.source, f.id)),
                (pair(e.range, f.id), pair(e.id, f.source)),
            ))
    return Skeleton(a.rank + b.rank, vertices, tuple(edges), tuple(squares))
