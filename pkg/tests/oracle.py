"""Brute-force reference implementations used as test oracles.

Nothing here touches the library's normal forms: a morphism is the set of all
composable edge words equivalent under swapping adjacent mixed-colour pairs
through a square, and every question is answered by enumerating such classes.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

import numpy as np


class WordModel:
    def __init__(self, skel):
        self.k = skel.rank
        self.vertices = list(skel.vertices)
        self.edges = {e.id: e for e in skel.edges}
        self.swap = {}
        for sq in skel.squares:
            self.swap[tuple(sq.first)] = tuple(sq.second)
            self.swap[tuple(sq.second)] = tuple(sq.first)

    # words -------------------------------------------------------------
    def rng(self, word, at):
        return self.edges[word[0]].range if word else at

    def src(self, word, at):
        return self.edges[word[-1]].source if word else at

    def degree(self, word):
        d = [0] * self.k
        for e in word:
            d[self.edges[e].color - 1] += 1
        return tuple(d)

    def cls(self, word, at=None):
        """The equivalence class of ``word`` (a frozenset of words), tagged by its vertex."""
        word = tuple(word)
        seen = {word}
        todo = deque([word])
        while todo:
            w = todo.popleft()
            for i in range(len(w) - 1):
                pair = (w[i], w[i + 1])
                if pair in self.swap:
                    w2 = w[:i] + self.swap[pair] + w[i + 2:]
                    if w2 not in seen:
                        seen.add(w2)
                        todo.append(w2)
        anchor = at if not word else self.edges[word[0]].range
        return (anchor, frozenset(seen))

    def words_from(self, v, length):
        """All composable words of exactly ``length`` edges with range ``v``."""
        out = [()]
        ends = {(): v}
        for _ in range(length):
            nxt = []
            for w in out:
                for e in self.edges.values():
                    if e.range == ends[w]:
                        w2 = w + (e.id,)
                        ends[w2] = e.source
                        nxt.append(w2)
            out = nxt
        return out

    def morphisms(self, v, max_len):
        """Classes of words with range ``v`` of length ``<= max_len``."""
        out = set()
        for n in range(max_len + 1):
            for w in self.words_from(v, n):
                out.add(self.cls(w, v))
        return out

    def all_morphisms(self, max_len):
        return set().union(*(self.morphisms(v, max_len) for v in self.vertices))

    @staticmethod
    def rep(c):
        return min(c[1])

    def c_degree(self, c):
        return self.degree(self.rep(c))

    def c_range(self, c):
        return c[0]

    def c_source(self, c):
        return self.src(self.rep(c), c[0])

    def concat(self, a, b):
        return self.cls(self.rep(a) + self.rep(b), a[0])

    def prefix(self, c, n):
        """The class of the degree-``n`` initial segment, or None if ``n`` exceeds the degree."""
        for w in c[1]:
            if self.degree(w[: sum(n)]) == tuple(n):
                return self.cls(w[: sum(n)], c[0])
        return None

    def suffix(self, c, n):
        for w in c[1]:
            if self.degree(w[: sum(n)]) == tuple(n):
                head = w[: sum(n)]
                return self.cls(w[sum(n):], self.src(head, c[0]))
        return None

    def display(self, c):
        """Colour-sorted spelling (ties broken by the smallest word) to compare with library output."""
        best = min(c[1], key=lambda w: ([self.edges[e].color for e in w], w))
        return ".".join(best) if best else c[0]

    # combinatorics -----------------------------------------------------
    def lmin(self, a, b, max_len):
        top = tuple(max(x, y) for x, y in zip(self.c_degree(a), self.c_degree(b)))
        out = set()
        for c in self.morphisms(a[0], max_len):
            if self.c_degree(c) != top:
                continue
            if self.prefix(c, self.c_degree(a)) == a and self.prefix(c, self.c_degree(b)) == b:
                alpha = self.suffix(c, self.c_degree(a))
                beta = self.suffix(c, self.c_degree(b))
                out.add((self.display(alpha), self.display(beta)))
        return sorted(out)

    def exhaustive(self, v, E, max_len):
        """True iff every class at ``v`` has a common extension with some member of ``E``."""
        for mu in self.morphisms(v, max_len):
            if not any(self.lmin(mu, lam, max_len + sum(self.c_degree(lam))) for lam in E):
                return False
        return True

    def receives(self, v, color):
        return any(e.range == v and e.color == color for e in self.edges.values())

    def maximal(self, v, max_len):
        """Classes at ``v`` whose source receives no edge at all."""
        return [c for c in self.morphisms(v, max_len)
                if not any(self.receives(self.c_source(c), i) for i in range(1, self.k + 1))]

    def boundary_nx(self, c):
        """The minimal elements of the set of valid ``n_x``, by exhaustive search."""
        m = self.c_degree(c)
        grid = [()]
        for x in m:
            grid = [g + (i,) for g in grid for i in range(x + 1)]

        def ok(nx):
            for n in grid:
                if not all(a <= b for a, b in zip(nx, n)):
                    continue
                vert = self.c_source(self.prefix(c, n))
                if any(n[i] == m[i] and self.receives(vert, i + 1) for i in range(self.k)):
                    return False
            return True

        good = [nx for nx in grid if ok(nx)]
        below = lambda a, b: a != b and all(x <= y for x, y in zip(a, b))
        return sorted(nx for nx in good if not any(below(o, nx) for o in good))


def boundary_matrices(model: WordModel, max_len: int):
    """Dense integer matrices of the boundary representation, built from classes."""
    basis = sorted((c for v in model.vertices for c in model.maximal(v, max_len)), key=model.display)
    index = {c: i for i, c in enumerate(basis)}
    n = len(basis)
    ops = {}
    for lam in model.all_morphisms(max_len):
        m = np.zeros((n, n), dtype=np.int64)
        for x in basis:
            if x[0] == model.c_source(lam):
                m[index[model.concat(lam, x)], index[x]] = 1
        ops[model.display(lam)] = m
    return [model.display(c) for c in basis], ops


def closure_by_intersection(closed_ok, base, universe):
    """Intersection of every subset of ``universe`` containing ``base`` that passes ``closed_ok``."""
    extra = [p for p in universe if p not in base]
    result = None
    for r in range(len(extra) + 1):
        for add in combinations(extra, r):
            F = set(base) | set(add)
            if closed_ok(F):
                result = F if result is None else result & F
    return result
