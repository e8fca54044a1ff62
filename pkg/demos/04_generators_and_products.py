"""
Generators, products and random graphs
======================================
"""

import random

from kgraph import KGraph, fixture
from kgraph.ck import (
    boundary_representation, broken_square, check_ck_family, check_generator_family,
    extend_generators, restrict,
)
from kgraph.random_graphs import random_2graph
from kgraph.skeleton import product_skeleton

sq = KGraph(fixture("G_SQUARE"))
fam = boundary_representation(sq)
gen = restrict(sq, fam)

# vertices and edges determine everything else
print("generators pass:", check_generator_family(sq, gen).passed)
print("extension equals the original:", extend_generators(sq, gen).same_as(fam))

# zeroing h breaks the square e f = g h
bad = check_generator_family(sq, broken_square(sq, gen, "h"))
print("broken square:", [c.paths for c in bad.failures("(ii)")])

# two intervals multiply to a square grid
grid = KGraph(product_skeleton(fixture("OMEGA(1,1)"), fixture("OMEGA(1,1)")))
print(len(grid.all_paths()), "paths in the product;",
      len(KGraph(fixture("OMEGA(2,(1,1))")).all_paths()), "in the grid graph")

# a random acyclic 2-graph, checked end to end
g = KGraph(random_2graph(random.Random(11), n_vertices=4))
print(len(g.vertices), "vertices,", len(g.edges), "edges,", len(g.all_paths()), "paths")
print("boundary family passes:", check_ck_family(g, boundary_representation(g)).passed)
