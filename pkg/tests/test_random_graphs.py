from __future__ import annotations

import random

import pytest

from kgraph.paths import KGraph
from kgraph.random_graphs import random_1graph, random_2graph, random_skeletons
from kgraph.skeleton import validate_skeleton


@pytest.mark.parametrize("kind", ["1graph", "2graph", "2graph-cyclic"])
def test_random_skeletons_are_valid_and_seeded(kind):
    first = random_skeletons(kind, 10, seed=7)
    assert first == random_skeletons(kind, 10, seed=7)
    assert first != random_skeletons(kind, 10, seed=8)
    assert all(validate_skeleton(sk).ok for sk in first)
    acyclic = [KGraph(sk).is_acyclic() for sk in first]
    assert all(acyclic) if kind != "2graph-cyclic" else not all(acyclic)


def test_random_1graph_bounds():
    rng = random.Random(3)
    for _ in range(50):
        sk = random_1graph(rng)
        assert 1 <= len(sk.vertices) <= 6 and len(sk.edges) <= 9
        assert KGraph(sk).is_acyclic()


def test_random_2graph_has_both_colours_and_a_square():
    for sk in random_skeletons("2graph", 10, seed=1):
        assert {e.color for e in sk.edges} == {1, 2}
        assert sk.squares


def test_random_2graph_rejects_tiny_acyclic():
    with pytest.raises(ValueError):
        random_2graph(random.Random(0), n_vertices=2, acyclic=True)
    with pytest.raises(ValueError):
        random_skeletons("3graph", 1)
