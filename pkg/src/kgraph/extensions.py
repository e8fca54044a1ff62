"""Common extensions of paths and the exhaustive-set decision procedure."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .paths import Degree, KGraph, Path, sub, unit, vee


@dataclass(frozen=True, order=True)
class MinimalPair:
    alpha: Path
    beta: Path


def lambda_min(g: KGraph, lam: Path, mu: Path) -> list[MinimalPair]:
    """Pairs ``(alpha, beta)`` with ``lam alpha == mu beta`` of degree ``d(lam) v d(mu)``."""
    if lam.range != mu.range:
        return []
    key = (lam, mu)
    hit = g._lmin_cache.get(key)
    if hit is not None:
        return list(hit)
    top = vee(lam.degree, mu.degree)
    out = []
    zero = (0,) * g.k
    for alpha in g.paths_with_range(lam.source, sub(top, lam.degree)):
        ext = g.compose(lam, alpha)
        if g.segment(ext, zero, mu.degree) == mu:
            out.append(MinimalPair(alpha, g.segment(ext, mu.degree, top)))
    out.sort()
    g._lmin_cache[key] = tuple(out)
    return out


def _common_range(paths) -> str:
    ranges = {p.range for p in paths}
    if len(ranges) != 1:
        raise ValueError(f"paths must share a range, got {sorted(ranges)}")
    return ranges.pop()


def mce(g: KGraph, paths: Iterable[Path]) -> list[Path]:
    """Common extensions of degree ``V d(alpha)`` restricting to every member."""
    paths = sorted(set(paths))
    if not paths:
        return []
    _common_range(paths)
    top = paths[0].degree
    for p in paths[1:]:
        top = vee(top, p.degree)
    zero = (0,) * g.k
    first = paths[0]
    out = []
    for alpha in g.paths_with_range(first.source, sub(top, first.degree)):
        ext = g.compose(first, alpha)
        if all(g.segment(ext, zero, p.degree) == p for p in paths[1:]):
            out.append(ext)
    return sorted(out)


def vee_closure(g: KGraph, paths: Iterable[Path]) -> list[Path]:
    """``vF``: the union of ``MCE(G)`` over the non-empty subsets ``G`` of ``F``."""
    paths = sorted(set(paths))
    out = set()
    for r in range(1, len(paths) + 1):
        for sub_ in combinations(paths, r):
            out.update(mce(g, sub_))
    return sorted(out)


def ext_set(g: KGraph, mu: Path, paths: Iterable[Path]) -> list[Path]:
    out = set()
    for lam in paths:
        out.update(p.alpha for p in lambda_min(g, mu, lam))
    return sorted(out)


def i_set(g: KGraph, paths: Iterable[Path]) -> list[Path]:
    zero = (0,) * g.k
    out = set()
    for lam in paths:
        for i in range(1, g.k + 1):
            if lam.degree[i - 1] > 0:
                out.add(g.segment(lam, zero, unit(g.k, i)))
    return sorted(out)


def l_weight(paths: Iterable[Path]) -> int:
    paths = list(paths)
    if not paths:
        return 0
    return sum(max(p.degree[i] for p in paths) for i in range(len(paths[0].degree)))


# -- exhaustiveness -------------------------------------------------------------

@dataclass(frozen=True)
class StateRecord:
    vertex: str
    paths: tuple[str, ...]
    verdict: bool


@dataclass(frozen=True)
class ExhaustivenessCertificate:
    vertex: str
    paths: tuple[Path, ...]
    verdict: bool
    witness: Path | None
    visited_states: tuple[StateRecord, ...]

    def to_dict(self) -> dict:
        return {
            "schema": "kgraph.exhaustive/1",
            "vertex": self.vertex,
            "set": [str(p) for p in self.paths],
            "verdict": self.verdict,
            "witness": None if self.witness is None else str(self.witness),
            "visited_states": [
                {"vertex": s.vertex, "set": list(s.paths), "verdict": s.verdict}
                for s in self.visited_states
            ],
        }

    @classmethod
    def from_dict(cls, d: dict, g: KGraph) -> "ExhaustivenessCertificate":
        return cls(
            d["vertex"],
            tuple(g.parse(p) for p in d["set"]),
            d["verdict"],
            None if d["witness"] is None else g.parse(d["witness"]),
            tuple(StateRecord(s["vertex"], tuple(s["set"]), s["verdict"]) for s in d["visited_states"]),
        )


def _state_key(v: str, paths: Iterable[Path]) -> tuple[str, tuple[str, ...]]:
    return v, tuple(sorted(str(p) for p in paths))


def is_exhaustive(g: KGraph, v: str, paths: Iterable[Path]) -> ExhaustivenessCertificate:
    """Decide whether ``paths`` is exhaustive at ``v``, with a certificate.

    ``E`` is exhaustive iff it is non-empty and, for every edge ``f`` at ``v``,
    ``Ext(f; E)`` is exhaustive at ``s(f)``.  States are explored once each;
    a state is false exactly when it can reach an empty ``Ext`` (least fixpoint),
    so dependency cycles that never fail come out true.
    """
    paths = tuple(sorted(set(paths)))
    g.vertex(v)
    for p in paths:
        if p.range != v:
            raise ValueError(f"{p} does not have range {v}")

    start = _state_key(v, paths)
    sets = {start: paths}
    succ: dict = {}
    order = [start]
    queue = deque([start])
    while queue:
        key = queue.popleft()
        u, E = key[0], sets[key]
        if not E or any(p.is_vertex for p in E):
            succ[key] = []
            continue
        nxt = []
        for c in range(1, g.k + 1):
            for eid in g.edges_at(u, c):
                f = g.edge(eid)
                E2 = tuple(ext_set(g, f, E))
                k2 = _state_key(f.source, E2)
                nxt.append((eid, k2))
                if k2 not in sets:
                    sets[k2] = E2
                    order.append(k2)
                    queue.append(k2)
        succ[key] = nxt

    preds = defaultdict(list)
    for key, nxt in succ.items():
        for eid, k2 in nxt:
            preds[k2].append((eid, key))
    # step[key] = (edge, next state) on a shortest chain to an empty set
    false = {key: None for key in order if not sets[key]}
    step: dict = {}
    frontier = deque(false)
    while frontier:
        k2 = frontier.popleft()
        for eid, key in preds[k2]:
            if key not in false:
                false[key] = None
                step[key] = (eid, k2)
                frontier.append(key)

    witness = None
    if start in false:
        word = []
        key = start
        while key in step:
            eid, key = step[key]
            word.append(eid)
        witness = g.normal_form(word, at=v)
    visited = tuple(StateRecord(key[0], key[1], key not in false) for key in order)
    return ExhaustivenessCertificate(v, paths, start not in false, witness, visited)


def refutes(g: KGraph, mu: Path, paths: Iterable[Path]) -> bool:
    """True when ``mu`` has no minimal common extension with any member of ``paths``."""
    return all(not lambda_min(g, lam, mu) for lam in paths)


def is_exhaustive_brute(g: KGraph, v: str, paths: Iterable[Path], bound: Degree | None = None) -> Path | None:
    """Search ``vΛ`` (up to ``bound``) for a refuting path; None if there is none."""
    paths = list(paths)
    for mu in sorted(g.paths_up_to(v, bound), key=lambda p: (sum(p.degree), p)):
        if refutes(g, mu, paths):
            return mu
    return None


def is_locally_convex(g: KGraph) -> bool:
    for v in g.vertices:
        for i in range(1, g.k + 1):
            for j in range(1, g.k + 1):
                if i == j or not g.receives(v, j):
                    continue
                for eid in g.edges_at(v, i):
                    if not g.receives(g.edges[eid].source, j):
                        return False
    return True


def row_finiteness_report(g: KGraph) -> dict[str, tuple[int, ...]]:
    """Per vertex, the number of edges of each colour with that range."""
    return {v: tuple(len(g.edges_at(v, c)) for c in range(1, g.k + 1)) for v in g.vertices}
