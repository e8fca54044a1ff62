from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from kgraph.core import (
    CoreBlockReport, FnReport, FormalElement, expand_in_theta_basis, f_n_report, gauge_expectation,
    pi_closure, satisfies_closure_rule, splice_tower, t_extension_set, theta_support,
)
from kgraph.extensions import is_exhaustive, lambda_min, refutes, vee_closure
from kgraph.fixtures import fixture
from kgraph.paths import KGraph, leq

from oracle import WordModel, closure_by_intersection
from strategies import acyclic_2graphs

# closures and block data from the word-class oracle and the intersection
# definition of the closure, frozen
FROZEN = {
    ("G_SQUARE", ("e", "g")): (["e", "e.f", "g"], 1),
    ("G_LAMBDA1", ("lambda1", "mu1")): (["lambda1", "mu1"], 2),
}


def P(g, *names):
    return [g.parse(n) for n in names]


def shown(ps):
    return [str(p) for p in ps]


def test_closure_examples(graphs):
    sq = graphs("G_SQUARE")
    assert shown(pi_closure(sq, P(sq, "e", "g")).closed) == ["e", "e.f", "g"]
    l1 = graphs("G_LAMBDA1")
    assert shown(pi_closure(l1, P(l1, "lambda1", "mu1")).closed) == ["lambda1", "mu1"]
    for p in sq.all_paths():
        assert pi_closure(sq, [p]).closed == (p,)


def _oracle_closed(model, classes):
    def closed_ok(F):
        F = set(F)
        for lam in F:
            for mu in F:
                if model.c_degree(classes[lam]) != model.c_degree(classes[mu]):
                    continue
                if model.c_source(classes[lam]) != model.c_source(classes[mu]):
                    continue
                for sigma in F:
                    if classes[mu][0] != classes[sigma][0]:
                        continue
                    for alpha, _ in model.lmin(classes[mu], classes[sigma], 8):
                        ext = model.concat(classes[lam], classes[alpha] if alpha in classes else None)
                        if model.display(ext) not in F:
                            return False
        return True
    return closed_ok


@pytest.mark.parametrize("name, base", [
    ("G_SQUARE", ("e", "g")), ("G_LAMBDA1", ("lambda1", "mu1")), ("G_SQUARE", ("e",)),
    ("OMEGA(2,(1,1))", ("0_0:1", "0_0:2")), ("G_NONORTH", ("e", "g'")),
])
def test_closure_is_smallest_closed_superset(name, base, graphs):
    g = graphs(name)
    model = WordModel(fixture(name))
    classes = {model.display(c): c for c in model.all_morphisms(6)}
    pc = pi_closure(g, P(g, *base))
    ranges = {g.parse(b).range for b in base}
    universe = [str(p) for p in g.all_paths() if p.range in ranges and leq(p.degree, pc.degree_bound)]
    expected = closure_by_intersection(_oracle_closed(model, classes), set(base), universe)
    assert set(shown(pc.closed)) == expected
    if (name, base) in FROZEN:
        closed, dim = FROZEN[(name, base)]
        assert shown(pc.closed) == closed
        assert theta_support(g, pc).total_dimension == dim


def _random_sets(g, size):
    paths = g.all_paths()
    for v in g.vertices:
        at = [p for p in paths if p.range == v]
        yield from combinations(at, min(size, len(at)))


@given(acyclic_2graphs(), st.integers(1, 3))
def test_closure_invariants(sk, size):
    g = KGraph(sk)
    for E in list(_random_sets(g, size))[:8]:
        pc = pi_closure(g, E)
        assert set(E) <= set(pc.closed)
        assert all(leq(p.degree, pc.degree_bound) for p in pc.closed)
        assert satisfies_closure_rule(g, pc.closed)
        assert vee_closure(g, pc.closed) == sorted(pc.closed)
        tower = splice_tower(g, E)
        assert set(pc.closed) <= set(tower[-1])
        assert satisfies_closure_rule(g, tower[-1])
        assert all(set(a) <= set(b) for a, b in zip(tower, tower[1:]))


@given(acyclic_2graphs(), st.integers(1, 3))
def test_extension_set_representative_independent(sk, size):
    g = KGraph(sk)
    for E in list(_random_sets(g, size))[:8]:
        pc = pi_closure(g, E)
        for (n, v), members in pc.classes().items():
            sets = {tuple(t_extension_set(g, pc, n, v, lam)) for lam in members}
            assert len(sets) == 1


def test_extension_set_examples(graphs):
    sq = graphs("G_SQUARE")
    pc = pi_closure(sq, P(sq, "e", "g"))
    assert t_extension_set(sq, pc, (1, 0), "a") == P(sq, "f")
    assert t_extension_set(sq, pc, (0, 1), "b") == P(sq, "h")
    assert t_extension_set(sq, pc, (1, 1), "w") == []
    l1 = graphs("G_LAMBDA1")
    assert t_extension_set(l1, pi_closure(l1, P(l1, "lambda1", "mu1")), (1, 0), "u") == []
    with pytest.raises(ValueError):
        t_extension_set(sq, pc, (2, 0), "v")


def test_theta_support_examples(graphs):
    sq = graphs("G_SQUARE")
    report = theta_support(sq, pi_closure(sq, P(sq, "e", "g")))
    assert shown(report.vanishing) == ["e", "g"]
    assert [(b.degree, b.source, b.size) for b in report.blocks] == [((1, 1), "w", 1)]
    assert report.total_dimension == 1
    l1 = graphs("G_LAMBDA1")
    report = theta_support(l1, pi_closure(l1, P(l1, "lambda1", "mu1")))
    assert sorted(b.size for b in report.blocks) == [1, 1] and report.total_dimension == 2
    for name in ("G_SQUARE", "G_LOOP2", "G_LAMBDA1"):
        g = graphs(name)
        for v in g.vertices:
            r = theta_support(g, pi_closure(g, [g.vertex(v)]))
            assert r.total_dimension == 1 and not r.vanishing


@given(acyclic_2graphs(), st.integers(1, 3))
def test_blocks_follow_exhaustiveness(sk, size):
    g = KGraph(sk)
    for E in list(_random_sets(g, size))[:6]:
        pc = pi_closure(g, E)
        report = theta_support(g, pc)
        in_blocks = {p for b in report.blocks for p in b.members}
        assert in_blocks | set(report.vanishing) == set(pc.closed)
        assert not in_blocks & set(report.vanishing)
        for b in report.blocks:
            T = t_extension_set(g, pc, b.degree, b.source)
            assert not is_exhaustive(g, b.source, T).verdict
            assert b.witness.range == b.source and refutes(g, b.witness, T)
        assert report.total_dimension == sum(b.size ** 2 for b in report.blocks)


def test_expand_examples(graphs):
    sq = graphs("G_SQUARE")
    pc = pi_closure(sq, P(sq, "e", "g"))
    assert expand_in_theta_basis(sq, pc, sq.parse("e"), sq.parse("e")) == [(sq.parse("e.f"), sq.parse("e.f"))]
    l1 = graphs("G_LAMBDA1")
    pc1 = pi_closure(l1, P(l1, "lambda1", "mu1"))
    lam = l1.parse("lambda1")
    assert expand_in_theta_basis(l1, pc1, lam, lam) == [(lam, lam)]
    pv = pi_closure(sq, [sq.vertex("w")])
    assert expand_in_theta_basis(sq, pv, sq.vertex("w"), sq.vertex("w")) == [(sq.vertex("w"), sq.vertex("w"))]
    with pytest.raises(ValueError):
        expand_in_theta_basis(sq, pc, sq.parse("e"), sq.parse("g"))


def test_gauge_expectation_examples(graphs):
    l1 = graphs("G_LAMBDA1")
    sq = graphs("G_SQUARE")
    lam = l1.parse("lambda1")
    a = FormalElement.from_terms({(lam, lam): 2, (sq.parse("f"), sq.vertex("w")): 3})
    assert gauge_expectation(a) == FormalElement.from_terms({(lam, lam): 2})
    with pytest.raises(ValueError):
        FormalElement.from_terms({(sq.parse("e.f"), sq.parse("e")): 1})


@st.composite
def formal_elements(draw):
    g = KGraph(fixture("G_NONORTH"))
    paths = g.all_paths()
    pairs = [(a, b) for a in paths for b in paths if a.source == b.source]
    picked = draw(st.lists(st.sampled_from(pairs), max_size=6))
    coeffs = draw(st.lists(st.fractions(max_denominator=5), min_size=len(picked), max_size=len(picked)))
    return FormalElement.from_terms([(a, b, c) for (a, b), c in zip(picked, coeffs)])


@given(formal_elements(), formal_elements(), st.fractions(max_denominator=4))
def test_gauge_expectation_laws(a, b, c):
    ea = gauge_expectation(a)
    assert gauge_expectation(ea) == ea
    assert gauge_expectation(a + b.scale(c)) == ea + gauge_expectation(b).scale(c)
    assert all(x.degree == y.degree for x, y, _ in ea.terms)
    if all(x.degree == y.degree for x, y, _ in a.terms):
        assert ea == a


def test_f_n_examples(graphs):
    l1 = graphs("G_LAMBDA1")
    report = f_n_report(l1, (1, 1))
    with_edges = [(v, m) for v, m, ms in report.blocks if sum(m) > 0]
    assert sorted(with_edges) == [("u", (1, 0)), ("w", (0, 1))]
    line = graphs("OMEGA(1,2)")
    assert [len(ms) for _, _, ms in f_n_report(line, (2,)).blocks] == [1, 1, 1]
    for name in ("G_SQUARE", "G_LAMBDA1", "G_LOOP2"):
        g = graphs(name)
        r = f_n_report(g, (0, 0))
        assert len(r.blocks) == len(g.vertices) and r.total_dimension == len(g.vertices)


@given(acyclic_2graphs())
def test_f_n_blocks_partition_leq_paths(sk):
    g = KGraph(sk)
    for n in [(1, 0), (1, 1), (2, 1)]:
        r = f_n_report(g, n)
        members = sorted(p for _, _, ms in r.blocks for p in ms)
        assert members == sorted(p for v in g.vertices for p in g.paths_leq(v, n))
        for v, m, ms in r.blocks:
            assert all(p.source == v and p.degree == m for p in ms)


def test_report_roundtrips(graphs):
    sq = graphs("G_SQUARE")
    report = theta_support(sq, pi_closure(sq, P(sq, "e", "g")))
    assert CoreBlockReport.from_dict(report.to_dict(), sq) == report
    fn = f_n_report(sq, (1, 1))
    assert FnReport.from_dict(fn.to_dict(), sq) == fn
