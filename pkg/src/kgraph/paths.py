"""Morphisms of a k-graph as colour-sorted edge words.

Every path has a unique factorisation into edges whose colours are
non-decreasing, so a path is stored as that word together with its range,
source and degree.  Any other factorisation is reached by swapping adjacent
mixed-colour pairs through the commuting squares.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .skeleton import InvalidSkeleton, Skeleton, square_maps, validate_skeleton

Degree = tuple[int, ...]


def vee(m: Degree, n: Degree) -> Degree:
    return tuple(max(a, b) for a, b in zip(m, n))


def wedge(m: Degree, n: Degree) -> Degree:
    return tuple(min(a, b) for a, b in zip(m, n))


def leq(m: Degree, n: Degree) -> bool:
    return all(a <= b for a, b in zip(m, n))


def add(m: Degree, n: Degree) -> Degree:
    return tuple(a + b for a, b in zip(m, n))


def sub(m: Degree, n: Degree) -> Degree:
    out = tuple(a - b for a, b in zip(m, n))
    if any(c < 0 for c in out):
        raise ValueError(f"{m} - {n} is not in N^k")
    return out


def unit(k: int, i: int) -> Degree:
    """The generator ``e_i`` (colours are 1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(k))


def degrees_below(n: Degree) -> list[Degree]:
    out = [()]
    for c in n:
        out = [d + (x,) for d in out for x in range(c + 1)]
    return out


def parse_degree(text: str) -> Degree:
    return tuple(int(c) for c in text.replace("(", "").replace(")", "").split(",") if c.strip())


@dataclass(frozen=True, order=True)
class Path:
    # field order gives the lexicographic-on-edge-ids ordering
    edges: tuple[str, ...]
    range: str
    source: str
    degree: Degree

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else self.range

    def __repr__(self) -> str:
        return f"Path({self})"


class KGraph:
    """A validated skeleton together with its path calculus."""

    def __init__(self, skeleton: Skeleton):
        report = validate_skeleton(skeleton)
        if not report.ok:
            raise InvalidSkeleton(report)
        self.skeleton = skeleton
        self.k = skeleton.rank
        self.vertices = skeleton.vertices
        self._vset = set(skeleton.vertices)
        self.edges = skeleton.edge_map()
        self._swap = square_maps(skeleton)
        # edges_at[v][c]: colour-c edges with range v, sorted by id
        self._at = defaultdict(lambda: defaultdict(list))
        self._into = defaultdict(lambda: defaultdict(list))
        for e in sorted(skeleton.edges, key=lambda e: e.id):
            self._at[e.range][e.color].append(e.id)
            self._into[e.source][e.color].append(e.id)
        self._segment_cache: dict = {}
        self._lmin_cache: dict = {}
        self._range_cache: dict = {}

    # -- basic accessors -------------------------------------------------
    def vertex(self, v: str) -> Path:
        if v not in self._vset:
            raise KeyError(f"unknown vertex {v!r}")
        return Path((), v, v, (0,) * self.k)

    def edge(self, eid: str) -> Path:
        e = self.edges[eid]
        return Path((eid,), e.range, e.source, unit(self.k, e.color))

    def edges_at(self, v: str, color: int) -> list[str]:
        """Ids of colour-``color`` edges with range ``v``."""
        return list(self._at[v][color])

    def receives(self, v: str, color: int) -> bool:
        return bool(self._at[v][color])

    def color(self, eid: str) -> int:
        return self.edges[eid].color

    def swap(self, x: str, y: str) -> tuple[str, str]:
        """The other factorisation of the two-edge path ``x y`` (colours differ)."""
        return self._swap[(x, y)]

    # -- normal forms ----------------------------------------------------
    def _check_word(self, word: Sequence[str]) -> None:
        for eid in word:
            if eid not in self.edges:
                raise KeyError(f"unknown edge {eid!r}")
        for a, b in zip(word, word[1:]):
            if self.edges[a].source != self.edges[b].range:
                raise ValueError(f"edges {a} and {b} are not composable")

    def _sorted_word(self, word: Sequence[str]) -> tuple[str, ...]:
        w = list(word)
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - 1):
                if self.color(w[i]) > self.color(w[i + 1]):
                    w[i], w[i + 1] = self._swap[(w[i], w[i + 1])]
                    changed = True
        return tuple(w)

    def _from_sorted(self, word: tuple[str, ...]) -> Path:
        deg = [0] * self.k
        for eid in word:
            deg[self.color(eid) - 1] += 1
        return Path(word, self.edges[word[0]].range, self.edges[word[-1]].source, tuple(deg))

    def normal_form(self, word: Sequence[str], at: str | None = None) -> Path:
        """The path represented by the composable edge sequence ``word``.

        An empty ``word`` needs ``at`` to name the vertex it sits at.
        """
        word = tuple(word)
        if not word:
            if at is None:
                raise ValueError("an empty edge sequence needs an anchor vertex")
            return self.vertex(at)
        self._check_word(word)
        if at is not None and self.edges[word[0]].range != at:
            raise ValueError(f"path {'.'.join(word)} does not have range {at}")
        return self._from_sorted(self._sorted_word(word))

    def parse(self, text: str) -> Path:
        """Parse the dot syntax ``e.f.g`` (any factorisation) or a vertex id."""
        text = text.strip()
        if text in self._vset:
            return self.vertex(text)
        return self.normal_form([t for t in text.split(".") if t])

    def compose(self, lam: Path, mu: Path) -> Path:
        if lam.source != mu.range:
            raise ValueError(f"cannot compose {lam} with {mu}: {lam.source} != {mu.range}")
        if lam.is_vertex:
            return mu
        if mu.is_vertex:
            return lam
        return self._from_sorted(self._sorted_word(lam.edges + mu.edges))

    def word_with_colors(self, lam: Path, colors: Sequence[int]) -> tuple[str, ...]:
        """Factorise ``lam`` into edges following the colour sequence ``colors``."""
        w = list(lam.edges)
        if sorted(colors) != sorted(self.color(e) for e in w):
            raise ValueError("colour sequence does not match the degree")
        for p, c in enumerate(colors):
            q = next(j for j in range(p, len(w)) if self.color(w[j]) == c)
            while q > p:
                w[q - 1], w[q] = self._swap[(w[q - 1], w[q])]
                q -= 1
        return tuple(w)

    def segment(self, lam: Path, m: Degree, n: Degree) -> Path:
        """``lam(m, n)``, with ``m`` and ``n`` first clamped to ``d(lam)``."""
        if not leq(m, n):
            raise ValueError(f"segment needs m <= n, got {m}, {n}")
        d = lam.degree
        m, n = wedge(m, d), wedge(n, d)
        key = (lam, m, n)
        hit = self._segment_cache.get(key)
        if hit is not None:
            return hit
        if m == n:
            if m == d:
                out = self.vertex(lam.source)
            elif m == (0,) * self.k:
                out = self.vertex(lam.range)
            else:
                head = self.segment(lam, (0,) * self.k, m)
                out = self.vertex(head.source)
        else:
            blocks = [m, sub(n, m), sub(d, n)]
            colors = [c + 1 for b in blocks for c in range(self.k) for _ in range(b[c])]
            w = self.word_with_colors(lam, colors)
            lo, hi = sum(m), sum(n)
            out = self._from_sorted(self._sorted_word(w[lo:hi]))
        self._segment_cache[key] = out
        return out

    # -- enumeration -----------------------------------------------------
    def paths_with_range(self, v: str, n: Degree) -> list[Path]:
        """All paths of degree ``n`` with range ``v``, lexicographic on edge ids."""
        n = tuple(n)
        key = (v, n)
        hit = self._range_cache.get(key)
        if hit is not None:
            return list(hit)
        self.vertex(v)
        colors = [c + 1 for c in range(self.k) for _ in range(n[c])]
        words: list[tuple[str, ...]] = [()]
        ends = {(): v}
        for c in colors:
            nxt = []
            for w in words:
                for eid in self._at[ends[w]][c]:
                    w2 = w + (eid,)
                    ends[w2] = self.edges[eid].source
                    nxt.append(w2)
            words = nxt
        out = [self._from_sorted(w) if w else self.vertex(v) for w in words]
        self._range_cache[key] = tuple(out)
        return out

    def paths_with_source(self, v: str, n: Degree) -> list[Path]:
        """All paths of degree ``n`` with source ``v``, lexicographic on edge ids."""
        self.vertex(v)
        colors = [c + 1 for c in range(self.k) for _ in range(n[c])]
        words: list[tuple[str, ...]] = [()]
        starts = {(): v}
        for c in reversed(colors):
            nxt = []
            for w in words:
                for eid in self._into[starts[w]][c]:
                    w2 = (eid,) + w
                    starts[w2] = self.edges[eid].range
                    nxt.append(w2)
            words = nxt
        return sorted(self._from_sorted(w) if w else self.vertex(v) for w in words)

    def paths_up_to(self, v: str, bound: Degree | None = None) -> list[Path]:
        """All paths with range ``v`` and degree ``<= bound``.

        ``bound=None`` enumerates all of ``vΛ`` and requires an acyclic graph.
        """
        if bound is None and not self.is_acyclic():
            raise ValueError("unbounded enumeration needs an acyclic graph")
        out = []

        def walk(word, end, color, deg):
            out.append(self._from_sorted(word) if word else self.vertex(v))
            for c in range(color, self.k + 1):
                if bound is not None and deg[c - 1] >= bound[c - 1]:
                    continue
                for eid in self._at[end][c]:
                    d2 = list(deg)
                    d2[c - 1] += 1
                    walk(word + (eid,), self.edges[eid].source, c, d2)

        walk((), v, 1, [0] * self.k)
        return sorted(out)

    def all_paths(self, bound: Degree | None = None) -> list[Path]:
        return sorted(p for v in self.vertices for p in self.paths_up_to(v, bound))

    def paths_leq(self, v: str, n: Degree) -> list[Path]:
        """``vΛ^{<=n}``: paths of degree ``<= n`` that cannot be extended in any
        coordinate where they fall short of ``n``."""
        out = []
        for m in degrees_below(tuple(n)):
            for lam in self.paths_with_range(v, m):
                if all(m[i] == n[i] or not self.receives(lam.source, i + 1) for i in range(self.k)):
                    out.append(lam)
        return sorted(out)

    def is_acyclic(self) -> bool:
        cached = getattr(self, "_acyclic", None)
        if cached is not None:
            return cached
        succ = defaultdict(set)
        for e in self.edges.values():
            succ[e.range].add(e.source)
        state = {}

        def visit(u):
            state[u] = 1
            for w in succ[u]:
                s = state.get(w)
                if s == 1 or (s is None and not visit(w)):
                    return False
            state[u] = 2
            return True

        self._acyclic = all(state.get(u) == 2 or visit(u) for u in self.vertices)
        return self._acyclic


def is_acyclic(skeleton: Skeleton) -> bool:
    return KGraph(skeleton).is_acyclic()


def display(paths: Iterable[Path]) -> list[str]:
    return [str(p) for p in paths]
