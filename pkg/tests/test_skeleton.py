from __future__ import annotations

import pytest
from hypothesis import given

from kgraph.fixtures import FIXTURE_NAMES, fixture, omega
from kgraph.skeleton import (
    CUBE_FAILURE, DANGLING_ENDPOINT, DUPLICATE_SQUARE, MISSING_SQUARE, NON_BIJECTIVE,
    Edge, InvalidSkeleton, Skeleton, Square, ValidationReport, product_skeleton, square_maps,
    validate_skeleton,
)
from kgraph.paths import KGraph

from conftest import ALL_FIXTURES
from strategies import acyclic_2graphs, cyclic_2graphs, one_graphs


@pytest.mark.parametrize("name", ALL_FIXTURES + ["OMEGA(2,(2,2))", "OMEGA(3,(1,1,1))", "OMEGA(1,0)"])
def test_fixtures_validate(name):
    assert validate_skeleton(fixture(name)).ok


@pytest.mark.parametrize("name, counts", [
    ("OMEGA(1,3)", (4, 3, 0)),
    ("G_LAMBDA1", (3, 2, 0)),
    ("G_LOOP2", (1, 2, 1)),
    ("G_SQUARE", (4, 4, 1)),
    ("OMEGA(2,(1,1))", (4, 4, 1)),
])
def test_fixture_sizes(name, counts):
    assert fixture(name).summary() == counts


def test_lambda1_matches_example():
    sk = fixture("G_LAMBDA1")
    edges = {e.id: e for e in sk.edges}
    assert set(sk.vertices) == {"v1", "u", "w"}
    assert (edges["lambda1"].color, edges["lambda1"].range, edges["lambda1"].source) == (1, "v1", "u")
    assert (edges["mu1"].color, edges["mu1"].range, edges["mu1"].source) == (2, "v1", "w")


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture("G_NOPE")
    assert "G_SQUARE" in FIXTURE_NAMES


def test_deleted_square_is_missing():
    sk = fixture("G_SQUARE")
    report = validate_skeleton(Skeleton(2, sk.vertices, sk.edges, ()))
    assert not report.ok
    assert report.kinds() == {MISSING_SQUARE}
    assert any(set(v.ids) >= {"e", "f"} for v in report.violations)


def test_ill_typed_square_is_non_bijective():
    sk = fixture("G_LOOP2")
    report = validate_skeleton(Skeleton(2, sk.vertices, sk.edges, (Square(("e", "f"), ("e", "f")),)))
    assert NON_BIJECTIVE in report.kinds()


def test_duplicate_square():
    sk = fixture("G_SQUARE")
    report = validate_skeleton(Skeleton(2, sk.vertices, sk.edges, sk.squares + sk.squares))
    assert DUPLICATE_SQUARE in report.kinds()


def test_dangling_endpoint_is_reported_not_raised():
    sk = Skeleton(1, ("v",), (Edge("e", 1, "v", "nowhere"),))
    report = validate_skeleton(sk)
    assert report.kinds() == {DANGLING_ENDPOINT}
    with pytest.raises(InvalidSkeleton):
        KGraph(sk)


def test_bad_color_is_reported():
    sk = Skeleton(1, ("v",), (Edge("e", 3, "v", "v"),))
    assert not validate_skeleton(sk).ok


def _cube_counterexample():
    # three pairs of loops at one vertex; squares a_i b_j = b_j a_(i+j) and
    # b_j c_l = c_l b_(j+l) (mod 2) are bijective but the two rewriting orders disagree
    edges = [Edge(f"{c}{i}", n, "v", "v") for n, c in ((1, "a"), (2, "b"), (3, "c")) for i in (0, 1)]
    sq = []
    for i in (0, 1):
        for j in (0, 1):
            sq.append(Square((f"a{i}", f"b{j}"), (f"b{j}", f"a{(i + j) % 2}")))
            sq.append(Square((f"b{i}", f"c{j}"), (f"c{j}", f"b{(i + j) % 2}")))
            sq.append(Square((f"a{i}", f"c{j}"), (f"c{j}", f"a{i}")))
    return Skeleton(3, ("v",), tuple(edges), tuple(sq))


def test_cube_failure():
    report = validate_skeleton(_cube_counterexample())
    assert report.kinds() == {CUBE_FAILURE}


def test_report_roundtrip():
    sk = fixture("G_SQUARE")
    report = validate_skeleton(Skeleton(2, sk.vertices, sk.edges, ()))
    assert ValidationReport.from_dict(report.to_dict()) == report


def test_product_omega_lines_matches_omega_square():
    p = product_skeleton(fixture("OMEGA(1,1)"), fixture("OMEGA(1,1)"))
    assert validate_skeleton(p).ok
    assert p.summary() == omega(2, (1, 1)).summary()


def test_product_with_point_keeps_lambda1():
    p = product_skeleton(fixture("G_LAMBDA1"), fixture("OMEGA(1,0)"))
    assert p.rank == 3
    assert p.summary() == (3, 2, 0)
    assert all(e.color != 3 for e in p.edges)
    assert validate_skeleton(p).ok


def test_product_of_loops():
    p = product_skeleton(fixture("G_LOOP2"), fixture("G_LOOP2"))
    assert p.summary() == (1, 4, 6)
    assert validate_skeleton(p).ok


def _swap_is_involution(sk):
    swap = square_maps(sk)
    return all(swap[swap[pair]] == pair for pair in swap)


@given(acyclic_2graphs())
def test_random_2graphs_valid(sk):
    assert validate_skeleton(sk).ok
    assert _swap_is_involution(sk)


@given(cyclic_2graphs())
def test_random_cyclic_2graphs_valid(sk):
    assert validate_skeleton(sk).ok
    assert _swap_is_involution(sk)


@given(one_graphs(), acyclic_2graphs(n_vertices=(3,)))
def test_product_of_valid_is_valid(a, b):
    p = product_skeleton(a, b)
    assert validate_skeleton(p).ok
    assert p.rank == a.rank + b.rank


@given(acyclic_2graphs())
def test_dropping_a_square_is_caught(sk):
    if not sk.squares:
        return
    broken = Skeleton(sk.rank, sk.vertices, sk.edges, sk.squares[1:])
    assert MISSING_SQUARE in validate_skeleton(broken).kinds()
