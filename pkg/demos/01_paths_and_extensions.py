"""
Paths, common extensions and exhaustive sets
============================================

A 2-graph is given by coloured edges and squares.  Here the square e f = g h
is the only relation.
"""

from kgraph import KGraph, fixture
from kgraph.extensions import is_exhaustive, lambda_min

g = KGraph(fixture("G_SQUARE"))

# every path, in colour-sorted normal form
for p in g.all_paths():
    print(f"{str(p):6} range {p.range}  source {p.source}  degree {p.degree}")

# g.h is another spelling of e.f
print("g.h normalises to", g.parse("g.h"), "- same path:", g.parse("g.h") == g.parse("e.f"))

# e and g meet exactly once, at the corner of the square
for pair in lambda_min(g, g.parse("e"), g.parse("g")):
    print("minimal common extension via", pair.alpha, "and", pair.beta)

# so {e} already catches every path at v
print("{e} exhaustive at v:", is_exhaustive(g, "v", [g.parse("e")]).verdict)

# on the other graph, lambda1 and mu1 never meet
l1 = KGraph(fixture("G_LAMBDA1"))
cert = is_exhaustive(l1, "v1", [l1.parse("lambda1")])
print("{lambda1} exhaustive at v1:", cert.verdict, "- witness", cert.witness)
