"""Endomorphism algebras shrink as a diagram of graphs grows.

The object is H_1 of two disjoint circles, Z^2.  Adding arrows one at a
time (a swap of the circles, then a map collapsing the second circle) cuts
the commutant from all 2x2 matrices down to the scalars, after which it
stays put.
"""

from noricat.category import hom_at_stage, tilde_T, tower
from noricat.diagram import SubdiagramChain
from noricat.graphs import CellularMap, Edge, Graph, GraphPair, build_diagram, homology

X = Graph(("a", "b"), (Edge("la", "a", "a"), Edge("lb", "b", "b")))
swap = CellularMap(X, X, {"a": "b", "b": "a"}, {"la": ("lb", 1), "lb": ("la", 1)})
kill = CellularMap(X, X, {"a": "a", "b": "b"}, {"la": ("la", 1), "lb": None})
print("H_1 =", homology(X).h1, " H_0 =", homology(X).h0)

D, T = build_diagram({"c": GraphPair(X)},
                     [("swap", "c", "c", swap), ("kill", "c", "c", kill),
                      ("id", "c", "c", CellularMap.identity(X))])
chain = SubdiagramChain((D.sub(["c"], []), D.sub(["c"], ["swap"]),
                         D.sub(["c"], ["swap", "kill"]), D))
tw = tower(T, chain)
print("dims along the chain:", [A.dim for A in tw.algebras])
for rep in tw.report:
    print(f"  stage {rep.stage_index}: image ranks {list(rep.ranks)} -> {rep.status}")

# Hom out of the tautological module only gets bigger as the stage is refined
X0 = tilde_T(T, chain[0], "c")
print("rank Hom(X0, X0) per stage:", [hom_at_stage(X0, X0, E).rank for E in chain])
