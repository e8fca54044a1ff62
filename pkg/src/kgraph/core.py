"""Finite-dimensional pieces of the gauge-invariant core.

For a finite path set ``E`` the closure ``ΠE`` indexes a finite-dimensional
subalgebra spanned by matrix units ``Θ(λ, µ)``, one matrix-unit system per
class of paths sharing degree and source.  Which units vanish is graph data:
``Θ(λ, µ) = 0`` exactly when the extension set ``T(λ)`` is exhaustive.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .extensions import is_exhaustive, lambda_min, vee_closure
from .paths import Degree, KGraph, Path, degrees_below, leq, vee


@dataclass(frozen=True)
class PiClosure:
    base: tuple[Path, ...]
    closed: tuple[Path, ...]
    degree_bound: Degree

    def __contains__(self, p: Path) -> bool:
        return p in self._members

    @property
    def _members(self) -> frozenset:
        return frozenset(self.closed)

    def with_range(self, v: str) -> list[Path]:
        return [p for p in self.closed if p.range == v]

    def ranges(self) -> list[str]:
        return sorted({p.range for p in self.closed})

    def classes(self) -> dict[tuple[Degree, str], list[Path]]:
        out = defaultdict(list)
        for p in self.closed:
            out[(p.degree, p.source)].append(p)
        return dict(sorted(out.items()))


def _bound(g: KGraph, paths) -> Degree:
    top = (0,) * g.k
    for p in paths:
        top = vee(top, p.degree)
    return top


def pi_closure(g: KGraph, paths: Iterable[Path]) -> PiClosure:
    """Smallest superset of ``paths`` closed under: ``λ, µ, σ`` in the set with
    ``d(λ) = d(µ)``, ``s(λ) = s(µ)`` and ``(α, β) ∈ Λmin(µ, σ)`` give ``λα``."""
    base = tuple(sorted(set(paths)))
    closed = set(base)
    changed = True
    while changed:
        changed = False
        classes = defaultdict(list)
        for p in closed:
            classes[(p.degree, p.source)].append(p)
        new = set()
        for members in classes.values():
            for mu in members:
                for sigma in closed:
                    for pair in lambda_min(g, mu, sigma):
                        for lam in members:
                            ext = g.compose(lam, pair.alpha)
                            if ext not in closed:
                                new.add(ext)
        if new:
            closed |= new
            changed = True
    return PiClosure(base, tuple(sorted(closed)), _bound(g, base))


def satisfies_closure_rule(g: KGraph, paths: Iterable[Path]) -> bool:
    """Check the four-path form of the closure rule directly."""
    F = set(paths)
    for lam in F:
        for mu in F:
            if lam.degree != mu.degree or lam.source != mu.source:
                continue
            for sigma in F:
                for tau in F:
                    if sigma.degree != tau.degree or sigma.source != tau.source:
                        continue
                    for pair in lambda_min(g, mu, sigma):
                        if g.compose(lam, pair.alpha) not in F or g.compose(tau, pair.beta) not in F:
                            return False
    return True


def splice_tower(g: KGraph, paths: Iterable[Path]) -> list[list[Path]]:
    """The increasing sets ``E_0 ⊂ E_1 ⊂ ...`` built by splicing segments of
    members of ``vE_{i-1}``, up to the first repeat."""
    current = sorted(set(paths))
    tower = [current]
    while True:
        pool = vee_closure(g, current)
        spliced = set(pool)
        frontier = list(pool)
        while frontier:
            pi = frontier.pop()
            for lam in pool:
                if lam.degree == pi.degree or not leq(pi.degree, lam.degree):
                    continue
                piece = g.segment(lam, pi.degree, lam.degree)
                if piece.range != pi.source:
                    continue
                out = g.compose(pi, piece)
                if out not in spliced:
                    spliced.add(out)
                    frontier.append(out)
        nxt = sorted(spliced)
        if nxt == current:
            return tower
        tower.append(nxt)
        current = nxt


def t_extension_set(g: KGraph, pc: PiClosure, n: Degree, v: str, representative: Path | None = None) -> list[Path]:
    """``T(n, v)``: the non-trivial ``ν`` with ``λν ∈ ΠE`` for ``λ`` of degree ``n`` and source ``v``."""
    n = tuple(n)
    if representative is None:
        reps = [p for p in pc.closed if p.degree == n and p.source == v]
        if not reps:
            raise ValueError(f"no path of degree {n} with source {v} in the closure")
        representative = reps[0]
    lam = representative
    out = set()
    for p in pc.closed:
        if p.degree != n and leq(n, p.degree) and g.segment(p, (0,) * g.k, n) == lam:
            out.add(g.segment(p, n, p.degree))
    return sorted(out)


@dataclass(frozen=True)
class Block:
    degree: Degree
    source: str
    members: tuple[Path, ...]
    witness: Path

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CoreBlockReport:
    blocks: tuple[Block, ...]
    vanishing: tuple[Path, ...]
    closed: tuple[Path, ...] = field(default=())

    @property
    def total_dimension(self) -> int:
        return sum(b.size ** 2 for b in self.blocks)

    def block_of(self, lam: Path) -> Block | None:
        for b in self.blocks:
            if lam in b.members:
                return b
        return None

    def to_dict(self) -> dict:
        return {
            "schema": "kgraph.core/1",
            "closure": [str(p) for p in self.closed],
            "blocks": [
                {
                    "degree": list(b.degree),
                    "source": b.source,
                    "size": b.size,
                    "members": [str(p) for p in b.members],
                    "witness": str(b.witness),
                }
                for b in self.blocks
            ],
            "vanishing": [str(p) for p in self.vanishing],
            "dimension": self.total_dimension,
        }

    @classmethod
    def from_dict(cls, d: dict, g: KGraph) -> "CoreBlockReport":
        blocks = tuple(
            Block(tuple(b["degree"]), b["source"], tuple(g.parse(p) for p in b["members"]), g.parse(b["witness"]))
            for b in d["blocks"]
        )
        return cls(blocks, tuple(g.parse(p) for p in d["vanishing"]), tuple(g.parse(p) for p in d["closure"]))


def theta_support(g: KGraph, pc: PiClosure) -> CoreBlockReport:
    """Split ``ΠE`` into surviving matrix-unit blocks and vanishing paths.

    Each surviving block records a refuting path ``ξ`` for its extension set.
    """
    blocks = []
    vanishing = []
    for (n, v), members in pc.classes().items():
        T = t_extension_set(g, pc, n, v, members[0])
        cert = is_exhaustive(g, v, T)
        if cert.verdict:
            vanishing.extend(members)
        else:
            blocks.append(Block(n, v, tuple(sorted(members)), cert.witness))
    return CoreBlockReport(tuple(blocks), tuple(sorted(vanishing)), pc.closed)


def expand_in_theta_basis(g: KGraph, pc: PiClosure, lam: Path, mu: Path,
                          report: CoreBlockReport | None = None) -> list[tuple[Path, Path]]:
    """Index pairs ``(λν, µν)`` of the non-vanishing units summing to ``t_λ t*_µ``."""
    if lam not in pc or mu not in pc:
        raise ValueError("both paths must lie in the closure")
    if lam.degree != mu.degree or lam.source != mu.source:
        raise ValueError("paths must share degree and source")
    report = report or theta_support(g, pc)
    dead = set(report.vanishing)
    nus = [g.vertex(lam.source)] + t_extension_set(g, pc, lam.degree, lam.source, lam)
    out = []
    for nu in nus:
        a, b = g.compose(lam, nu), g.compose(mu, nu)
        if a not in dead:
            out.append((a, b))
    return out


# -- formal elements and the gauge expectation ------------------------------------

@dataclass(frozen=True)
class FormalElement:
    """A finite combination ``Σ c_{λ,µ} s_λ s*_µ`` with ``s(λ) = s(µ)`` for every term."""

    terms: tuple[tuple[Path, Path, Fraction], ...]

    @classmethod
    def from_terms(cls, terms) -> "FormalElement":
        acc: dict = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, dict) else ((k[:2], k[2]) for k in terms)
        for (lam, mu), c in items:
            if lam.source != mu.source:
                raise ValueError(f"term ({lam}, {mu}) has mismatched sources")
            acc[(lam, mu)] += Fraction(c)
        return cls(tuple(sorted((lam, mu, c) for (lam, mu), c in acc.items() if c != 0)))

    def as_dict(self) -> dict:
        return {(lam, mu): c for lam, mu, c in self.terms}

    def __add__(self, other: "FormalElement") -> "FormalElement":
        merged = self.as_dict()
        for lam, mu, c in other.terms:
            merged[(lam, mu)] = merged.get((lam, mu), 0) + c
        return FormalElement.from_terms(merged)

    def scale(self, c) -> "FormalElement":
        return FormalElement.from_terms({(lam, mu): c * x for lam, mu, x in self.terms})


def gauge_expectation(a: FormalElement) -> FormalElement:
    """Keep exactly the terms with ``d(λ) = d(µ)``."""
    return FormalElement(tuple(t for t in a.terms if t[0].degree == t[1].degree))


# -- F_n blocks ---------------------------------------------------------------------

@dataclass(frozen=True)
class FnReport:
    n: Degree
    blocks: tuple[tuple[str, Degree, tuple[Path, ...]], ...]

    @property
    def total_dimension(self) -> int:
        return sum(len(m) ** 2 for _, _, m in self.blocks)

    def to_dict(self) -> dict:
        return {
            "schema": "kgraph.fn/1",
            "n": list(self.n),
            "blocks": [
                {"source": v, "degree": list(m), "size": len(members), "members": [str(p) for p in members]}
                for v, m, members in self.blocks
            ],
            "dimension": self.total_dimension,
        }

    @classmethod
    def from_dict(cls, d: dict, g: KGraph) -> "FnReport":
        return cls(tuple(d["n"]), tuple(
            (b["source"], tuple(b["degree"]), tuple(g.parse(p) for p in b["members"])) for b in d["blocks"]
        ))


def f_n_report(g: KGraph, n: Degree) -> FnReport:
    """Matrix blocks of ``F_n``: paths in ``Λ^{<=n}`` grouped by (source, degree)."""
    n = tuple(n)
    groups = defaultdict(list)
    for v in g.vertices:
        for lam in g.paths_leq(v, n):
            groups[(lam.source, lam.degree)].append(lam)
    blocks = tuple((v, m, tuple(sorted(ps))) for (v, m), ps in sorted(groups.items()))
    return FnReport(n, blocks)


def closure_degrees(pc: PiClosure) -> list[Degree]:
    return [m for m in degrees_below(pc.degree_bound) if any(p.degree == m for p in pc.closed)]
