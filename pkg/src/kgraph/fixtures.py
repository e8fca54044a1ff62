"""Built-in example skeletons."""

from __future__ import annotations

import re
from itertools import product

from .skeleton import Edge, Skeleton, Square

FIXTURE_NAMES = ("G_LAMBDA1", "G_SQUARE", "G_LOOP2", "G_NONORTH", "OMEGA(k,m)")


def omega_vertex(p) -> str:
    return "_".join(str(c) for c in p)


def omega(k: int, m) -> Skeleton:
    """The k-graph whose morphisms are pairs ``p <= q <= m`` with degree ``q - p``.

    Vertex ``p`` is named by its coordinates joined with ``_``; the edge from
    ``p + e_i`` to ``p`` is named ``"<p>:<i>"``.
    """
    if isinstance(m, int):
        m = (m,)
    m = tuple(m)
    if len(m) != k or any(c < 0 for c in m):
        raise ValueError(f"OMEGA needs {k} non-negative coordinates, got {m}")
    points = list(product(*(range(c + 1) for c in m)))
    vertices = tuple(omega_vertex(p) for p in points)

    def bump(p, i):
        q = list(p)
        q[i] += 1
        return tuple(q)

    def inside(p):
        return all(a <= b for a, b in zip(p, m))

    def edge_id(p, i):
        return f"{omega_vertex(p)}:{i + 1}"

    edges = []
    squares = []
    for p in points:
        for i in range(k):
            q = bump(p, i)
            if inside(q):
                edges.append(Edge(edge_id(p, i), i + 1, omega_vertex(p), omega_vertex(q)))
        for i in range(k):
            for j in range(i + 1, k):
                top = bump(bump(p, i), j)
                if inside(top):
                    squares.append(Square(
                        (edge_id(p, i), edge_id(bump(p, i), j)),
                        (edge_id(p, j), edge_id(bump(p, j), i)),
                    ))
    return Skeleton(k, vertices, tuple(edges), tuple(squares))


def g_lambda1() -> Skeleton:
    # non-locally-convex: v1 receives one edge of each colour, neither extends
    return Skeleton(
        2,
        ("v1", "u", "w"),
        (Edge("lambda1", 1, "v1", "u"), Edge("mu1", 2, "v1", "w")),
    )


def g_square() -> Skeleton:
    return Skeleton(
        2,
        ("v", "a", "b", "w"),
        (
            Edge("e", 1, "v", "a"),
            Edge("f", 2, "a", "w"),
            Edge("g", 2, "v", "b"),
            Edge("h", 1, "b", "w"),
        ),
        (Square(("e", "f"), ("g", "h")),),
    )


def g_loop2() -> Skeleton:
    return Skeleton(
        2,
        ("v",),
        (Edge("e", 1, "v", "v"), Edge("f", 2, "v", "v")),
        (Square(("e", "f"), ("f", "e")),),
    )


def g_nonorth() -> Skeleton:
    """G_SQUARE plus a second square ``e' f' = g' h'`` at ``v`` unrelated to ``g``."""
    base = g_square()
    return Skeleton(
        2,
        base.vertices + ("a'", "b'", "w'"),
        base.edges + (
            Edge("e'", 1, "v", "a'"),
            Edge("f'", 2, "a'", "w'"),
            Edge("g'", 2, "v", "b'"),
            Edge("h'", 1, "b'", "w'"),
        ),
        base.squares + (Square(("e'", "f'"), ("g'", "h'")),),
    )


_NAMED = {
    "G_LAMBDA1": g_lambda1,
    "G_SQUARE": g_square,
    "G_LOOP2": g_loop2,
    "G_NONORTH": g_nonorth,
}

_OMEGA_RE = re.compile(r"^OMEGA\(\s*(\d+)\s*,\s*(\(?[\d,\s]*\)?)\s*\)$")


def fixture(name: str) -> Skeleton:
    """Look up a fixture by name; ``OMEGA(k,m)`` accepts e.g. ``OMEGA(2,(1,1))``."""
    name = name.strip()
    if name in _NAMED:
        return _NAMED[name]()
    match = _OMEGA_RE.match(name)
    if match:
        k = int(match.group(1))
        coords = [c for c in match.group(2).strip("()").split(",") if c.strip()]
        return omega(k, tuple(int(c) for c in coords))
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
