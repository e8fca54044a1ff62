"""
Boundary paths as integer matrices
==================================

Each path acts on the span of the boundary paths by prepending itself.
The matrices are exact 0/1 sparse arrays, so every relation is checked
with equality.
"""

from kgraph import KGraph, fixture
from kgraph.boundary import boundary_paths
from kgraph.ck import boundary_representation, check_ck_family, check_variant_relations

l1 = KGraph(fixture("G_LAMBDA1"))
for x in boundary_paths(l1):
    print("boundary path", x.path, "with n_x =", x.n_x)

fam = boundary_representation(l1)
print(fam.op(l1.vertex("v1")).toarray())

report = check_ck_family(l1, fam)
print("relations (i)-(iv):", report.verdicts, "vertices nonzero:", report.vertex_nonzero)

# the sum relation over paths of degree <= n fails, with a rank witness
for c in check_variant_relations(l1, fam, "A1").counterexamples:
    print("A1 fails at n =", dict(c.detail)["n"], dict(c.detail))

# on the square, e and g are exhaustive but their range projections overlap
sq = KGraph(fixture("G_SQUARE"))
fs = boundary_representation(sq)
eg = [sq.parse("e"), sq.parse("g")]
print("product form holds:", check_ck_family(sq, fs, [eg]).passed)
print("sum form holds:", check_variant_relations(sq, fs, "A2", sets=[eg]).passed)
