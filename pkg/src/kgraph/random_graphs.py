"""Seeded random skeletons for property tests and the acceptance suite."""

from __future__ import annotations

import random

import numpy as np

from .skeleton import Edge, Skeleton, Square


def _vertices(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(n))


def random_1graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 9, acyclic: bool = True) -> Skeleton:
    """A directed graph on at most ``max_vertices`` vertices, possibly with parallel edges.

    When ``acyclic``, every edge has range index below its source index.
    """
    n = rng.randint(1, max_vertices)
    vs = _vertices(n)
    edges = []
    for i in range(rng.randint(0, max_edges)):
        if acyclic:
            if n < 2:
                break
            r, s = sorted(rng.sample(range(n), 2))
        else:
            r, s = rng.randrange(n), rng.randrange(n)
        edges.append(Edge(f"e{i}", 1, vs[r], vs[s]))
    return Skeleton(1, vs, tuple(edges))


def _adjacency(rng: random.Random, n: int, density: float, acyclic: bool) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.int64)
    for r in range(n):
        for s in range(n):
            if acyclic and s <= r:
                continue
            if rng.random() < density:
                a[r, s] = 1
    return a


def random_2graph(rng: random.Random, n_vertices: int = 4, acyclic: bool = True,
                  density: float = 0.45, attempts: int = 10_000) -> Skeleton:
    """A 2-graph from commuting 0/1 adjacency matrices with a random pairing of
    the blue-red and red-blue paths between each pair of vertices.

    ``a[r, s] = 1`` means an edge with range ``r`` and source ``s``.  Samples are
    rejected until the matrices commute, both colours occur and at least one
    square exists.
    """
    if acyclic and n_vertices < 3:
        raise ValueError("an acyclic 2-graph with a square needs at least 3 vertices")
    for _ in range(attempts):
        a1 = _adjacency(rng, n_vertices, density, acyclic)
        a2 = _adjacency(rng, n_vertices, density, acyclic)
        if not a1.any() or not a2.any():
            continue
        if not np.array_equal(a1 @ a2, a2 @ a1) or not (a1 @ a2).any():
            continue
        return _assemble(rng, a1, a2)
    raise RuntimeError("no commuting pair found; raise attempts or change density")


def _assemble(rng: random.Random, a1: np.ndarray, a2: np.ndarray) -> Skeleton:
    n = a1.shape[0]
    vs = _vertices(n)
    blue, red = [], []
    for r in range(n):
        for s in range(n):
            if a1[r, s]:
                blue.append(Edge(f"b{len(blue)}", 1, vs[r], vs[s]))
            if a2[r, s]:
                red.append(Edge(f"r{len(red)}", 2, vs[r], vs[s]))
    squares = []
    for r in vs:
        for s in vs:
            br = [(x.id, y.id) for x in blue for y in red if x.range == r and x.source == y.range and y.source == s]
            rb = [(u.id, w.id) for u in red for w in blue if u.range == r and u.source == w.range and w.source == s]
            rng.shuffle(rb)
            squares.extend(Square(p, q) for p, q in zip(br, rb))
    return Skeleton(2, vs, tuple(blue + red), tuple(squares))


def random_skeletons(kind: str, count: int, seed: int = 0, **kwargs) -> list[Skeleton]:
    """``count`` skeletons of ``kind`` in {"1graph", "2graph", "2graph-cyclic"} from one seed."""
    rng = random.Random(seed)
    if kind == "1graph":
        return [random_1graph(rng, **kwargs) for _ in range(count)]
    if kind == "2graph":
        return [random_2graph(rng, acyclic=True, **kwargs) for _ in range(count)]
    if kind == "2graph-cyclic":
        kwargs.setdefault("n_vertices", 3)
        return [random_2graph(rng, acyclic=False, **kwargs) for _ in range(count)]
    raise ValueError(f"unknown kind {kind!r}")
