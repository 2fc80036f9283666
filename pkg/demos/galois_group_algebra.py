"""The commutant of a finite Galois-type stage is the group algebra.

A finite group G acts on itself; the diagram has one object ``l`` carrying
the regular permutation representation, loops for every right translation,
and an arrow to a second G-set.  Everything commuting with those loops and
arrows turns out to be Z[G], and the equivalence criterion passes.
"""

from noricat.criterion import TargetPresentation, TestMap, full_criterion
from noricat.galois import (build_galois_diagram, compare_with_group_algebra,
                            equivariant_map_from_point, galois_stage_end, group_algebra,
                            permutation_module, regular_gset, symmetric_group)
from noricat.linalg import IntMat

G = symmetric_group(3)
B = regular_gset(G)
inst = build_galois_diagram(G, B, [equivariant_map_from_point(B, 0)], coproduct=True)

A = galois_stage_end(inst)
cmp = compare_with_group_algebra(A, inst)
print(f"|G| = {G.order}, dim End = {A.dim}")
print("Z[G] -> End is", "an isomorphism" if cmp.isomorphism else "not an isomorphism")

# target: permutation modules over Z[G], one per object
ZG = group_algebra(G)
modules = {name: permutation_module(S, "Z", ZG) for name, S in inst.gsets.items()}
target = TargetPresentation(inst.rep, ZG, modules, {o: o for o in inst.diagram.objects},
                            list(modules))

report = full_criterion(inst.rep, target, [TestMap("l", inst.rep.matrix("phi0"), name="phi0")],
                        inst.galois_stage)
print("criterion:", report.overall)

# a map that forgets all but one coordinate is not G-equivariant
proj = IntMat([[1, 0, 0, 0, 0, 0]], 1, 6)
report = full_criterion(inst.rep, target, [TestMap("l", proj, name="proj")], inst.galois_stage)
(bad,) = report.failures()
print("criterion with proj:", report.overall)
print("  kernel vector", bad.certificate["kernelGen"], "is sent to", bad.certificate["image"],
      "by basis element", bad.certificate["basisIndex"])
