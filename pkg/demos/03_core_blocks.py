"""
Finite-dimensional blocks of the core
=====================================

A finite set of paths generates a closed set; its spanning matrix units
split into full matrix blocks, one per degree and source, except where
the leftover extensions are exhaustive.
"""

from kgraph import KGraph, fixture
from kgraph import matrices as mx
from kgraph.ck import boundary_representation, check_core_identities, residual_projection
from kgraph.core import pi_closure, theta_support

sq = KGraph(fixture("G_SQUARE"))
pc = pi_closure(sq, [sq.parse("e"), sq.parse("g")])
print("closure:", [str(p) for p in pc.closed])

report = theta_support(sq, pc)
for b in report.blocks:
    print(f"block degree {b.degree} source {b.source}: {[str(m) for m in b.members]}")
print("vanishing:", [str(p) for p in report.vanishing], "dimension:", report.total_dimension)

# the same facts, as matrices in the boundary representation
fam = boundary_representation(sq)
for lam in pc.closed:
    print(lam, "residual projection has rank", mx.rank(residual_projection(sq, fam, pc, lam)))
print(check_core_identities(sq, fam, pc).verdicts)

l1 = KGraph(fixture("G_LAMBDA1"))
print("G_LAMBDA1 dimension:",
      theta_support(l1, pi_closure(l1, [l1.parse("lambda1"), l1.parse("mu1")])).total_dimension)
