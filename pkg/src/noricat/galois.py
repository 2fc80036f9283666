"""Finite groups, G-sets, permutation modules and the two-object Galois stage.

The Galois object ``l`` is the regular G-set with one loop per group element
h, acting by the G-set automorphism x ↦ x·h.  A second object carries the
permutation module of a G-set B with arrows l -> B given by equivariant
maps.  The commutant of such a stage contains the image of R[G] (g acts by
its permutation action on every object), and for B = G it is exactly that
image.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .commutant import AbstractAlgebra, EndAlgebra, StageModule, compute_end, free_module
from .diagram import Arrow, Coproduct, Diagram, Representation
from .linalg import IntMat, image_lattice, matrix_class, rank


@dataclass(frozen=True)
class FiniteGroup:
    """A group given by its multiplication table: table[g][h] = g·h."""

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = ""

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if any(len(r) != n or any(not 0 <= x < n for x in r) for r in t):
            raise ValueError("multiplication table must be n x n with entries in range(n)")
        e = self.identity
        if any(t[e][g] != g or t[g][e] != g for g in range(n)):
            raise ValueError("identity element does not act as identity")
        for g in range(n):
            if e not in t[g]:
                raise ValueError(f"element {g} has no inverse")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError("multiplication table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self.table[g].index(self.identity)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table],
                "identity": self.identity}

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]], name: str = "") -> "FiniteGroup":
        """Closure of permutation generators; element 0 is the identity."""
        deg = len(generators[0])
        ident = tuple(range(deg))
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in generators:
                    c = tuple(g[a[i]] for i in range(deg))
                    if c not in seen:
                        seen.add(c)
                        elems.append(c)
                        nxt.append(c)
            frontier = nxt
        idx = {p: i for i, p in enumerate(elems)}
        # (p·q)(i) = p(q(i))
        table = [[idx[tuple(p[q[i]] for i in range(deg))] for q in elems] for p in elems]
        return cls(tuple(map(tuple, table)), 0, name)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"C{n}")


def symmetric_group(n: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else [tuple(range(n))]
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return FiniteGroup.from_permutations(gens, f"S{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(n * m)]
             for a in range(n * m)]
    return FiniteGroup(tuple(map(tuple, table)), G.identity * m + H.identity,
                       f"{G.name}x{H.name}")


@dataclass(frozen=True)
class GSet:
    """A left G-set on range(size): action[g][x] = g·x."""

    group: FiniteGroup
    action: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in row) for row in self.action)
        object.__setattr__(self, "action", a)
        G = self.group
        if len(a) != G.order:
            raise ValueError("one action row per group element is required")
        m = len(a[0]) if a else 0
        if any(len(r) != m or any(not 0 <= x < m for x in r) for r in a):
            raise ValueError("action rows must be permutations of range(size)")
        if any(sorted(r) != list(range(m)) for r in a):
            raise ValueError("each group element must act by a permutation")
        if a[G.identity] != tuple(range(m)):
            raise ValueError("identity does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                if any(a[g][a[h][x]] != a[gh][x] for x in range(m)):
                    raise ValueError("action is not compatible with the group law")

    @property
    def size(self) -> int:
        return len(self.action[0]) if self.action else 0

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for x in range(self.size):
            if x not in seen:
                orb = sorted({self.action[g][x] for g in range(self.group.order)})
                seen.update(orb)
                out.append(orb)
        return out

    def permutation_matrix(self, g: int) -> IntMat:
        m = self.size
        rows = [[0] * m for _ in range(m)]
        for x in range(m):
            rows[self.action[g][x]][x] = 1
        return IntMat(rows, m, m)

    def is_equivariant(self, other: "GSet", phi: Sequence[int]) -> bool:
        return all(phi[self.action[g][x]] == other.action[g][phi[x]]
                   for g in range(self.group.order) for x in range(self.size))

    def to_json(self) -> dict:
        return {"size": self.size, "action": [list(r) for r in self.action]}


def regular_gset(G: FiniteGroup) -> GSet:
    return GSet(G, G.table, "regular")


def trivial_gset(G: FiniteGroup, m: int) -> GSet:
    return GSet(G, tuple(tuple(range(m)) for _ in range(G.order)), "trivial")


def coset_gset(G: FiniteGroup, subgroup: Sequence[int]) -> GSet:
    """G acting on the left cosets gH."""
    H = sorted(set(subgroup))
    cosets: list[frozenset] = []
    for g in range(G.order):
        c = frozenset(G.mul(g, h) for h in H)
        if c not in cosets:
            cosets.append(c)
    idx = {c: i for i, c in enumerate(cosets)}
    action = []
    for g in range(G.order):
        action.append(tuple(idx[frozenset(G.mul(g, x) for x in c)] for c in cosets))
    return GSet(G, tuple(action), f"G/H{H}")


def disjoint_union_gset(A: GSet, B: GSet) -> GSet:
    n = A.size
    return GSet(A.group, tuple(r + tuple(x + n for x in s) for r, s in zip(A.action, B.action)),
                f"{A.name}+{B.name}")


def gsets_from_json(obj: Mapping) -> tuple[FiniteGroup, list[GSet]]:
    G = FiniteGroup(tuple(map(tuple, obj["table"])), obj.get("identity", 0))
    if G.order != obj.get("order", G.order):
        raise ValueError("declared order does not match the table")
    return G, [GSet(G, tuple(map(tuple, s["action"]))) for s in obj.get("sets", [])]


# ---------------------------------------------------------------------------
# algebras and modules


def group_algebra(G: FiniteGroup, ring: str = "Z") -> AbstractAlgebra:
    """R[G] with basis indexed by the group elements."""
    n = G.order
    sc = [[[int(G.table[i][j] == k) for k in range(n)] for j in range(n)] for i in range(n)]
    return AbstractAlgebra(ring, sc, [int(k == G.identity) for k in range(n)],
                           f"{ring}[{G.name or 'G'}]")


def permutation_module(A: GSet, ring: str = "Z", algebra: AbstractAlgebra | None = None) -> StageModule:
    """R[A] over R[G], basis element g acting by its permutation matrix."""
    alg = algebra if algebra is not None else group_algebra(A.group, ring)
    cls = matrix_class(ring)
    action = [cls(A.permutation_matrix(g).entries, A.size, A.size) for g in range(A.group.order)]
    return free_module(alg, action, A.size)


def one_dimensional_module(algebra: AbstractAlgebra, G: FiniteGroup, character: Sequence[int]) -> StageModule:
    """Rank-one module with g acting by character[g] (e.g. the sign of S_n)."""
    cls = matrix_class(algebra.ring)
    return free_module(algebra, [cls([[character[g]]], 1, 1) for g in range(G.order)], 1)


# ---------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class GaloisInstance:
    """A G-set diagram: diagram, representation, the G-set of each object, the Galois stage."""

    group: FiniteGroup
    diagram: Diagram
    rep: Representation
    gsets: Mapping[str, GSet] = field(hash=False, compare=False)
    galois_stage: Diagram = None


def _map_matrix(A: GSet, B: GSet, phi: Sequence[int]) -> IntMat:
    rows = [[0] * A.size for _ in range(B.size)]
    for x in range(A.size):
        rows[phi[x]][x] = 1
    return IntMat(rows, B.size, A.size)


def equivariant_map_from_point(B: GSet, b: int) -> list[int]:
    """The G-map G -> B sending the identity to b (x ↦ x·b)."""
    return [B.action[x][b] for x in range(B.group.order)]


def build_galois_diagram(G: FiniteGroup, B: GSet, maps: Sequence[Sequence[int]] = (),
                         ring: str = "Z", coproduct: bool = False,
                         extra_sets: Mapping[str, GSet] | None = None) -> GaloisInstance:
    """Objects ``l`` (regular G-set with loops x ↦ x·h) and ``X`` (= B) with arrows l -> X.

    Each entry of ``maps`` is an equivariant function G -> B given as the list
    of images.  With ``coproduct=True`` the object ``l+X`` (the disjoint union)
    and its two inclusions are added and declared as a coproduct witness.
    """
    if B.group != G:
        raise ValueError("B is a G-set for a different group")
    L = regular_gset(G)
    gsets = {"l": L, "X": B}
    objects = ["l", "X"]
    arrows, mats = [], {}
    for h in range(G.order):
        rh = [G.mul(x, h) for x in range(G.order)]
        aid = f"rho{h}"
        arrows.append(Arrow(aid, "l", "l"))
        mats[aid] = _map_matrix(L, L, rh)
    for k, phi in enumerate(maps):
        phi = list(phi)
        if len(phi) != G.order or not L.is_equivariant(B, phi):
            raise ValueError(f"map {k} is not G-equivariant")
        aid = f"phi{k}"
        arrows.append(Arrow(aid, "l", "X"))
        mats[aid] = _map_matrix(L, B, phi)
    galois = Diagram(tuple(objects), tuple(arrows))
    cops = []
    if coproduct:
        U = disjoint_union_gset(L, B)
        gsets["l+X"] = U
        objects.append("l+X")
        arrows += [Arrow("i", "l", "l+X"), Arrow("iPrime", "X", "l+X")]
        mats["i"] = _map_matrix(L, U, list(range(L.size)))
        mats["iPrime"] = _map_matrix(B, U, [L.size + x for x in range(B.size)])
        cops.append(Coproduct("l", "X", "l+X", "i", "iPrime"))
    for name, S in (extra_sets or {}).items():
        gsets[name] = S
        objects.append(name)
    D = Diagram(tuple(objects), tuple(arrows), tuple(cops))
    cls = matrix_class(ring)
    rep = Representation(D, ring, {o: gsets[o].size for o in objects},
                         {k: cls(m.entries, m.rows, m.cols) for k, m in mats.items()})
    return GaloisInstance(G, D, rep, gsets, galois)


@dataclass(frozen=True)
class GroupAlgebraComparison:
    group_order: int
    commutant_dim: int
    image_rank: int
    injective: bool
    surjective: bool
    homomorphism: bool

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective

    def to_json(self) -> dict:
        return {"order": self.group_order, "commutant_dim": self.commutant_dim,
                "image_rank": self.image_rank, "injective": self.injective,
                "surjective": self.surjective, "homomorphism": self.homomorphism,
                "isomorphism": self.isomorphism}


def group_element_tuple(inst: GaloisInstance, A: EndAlgebra, g: int) -> dict:
    cls = matrix_class(A.ring)
    return {p: cls(inst.gsets[p].permutation_matrix(g).entries, A.sizes[p], A.sizes[p])
            for p in A.objects}


def compare_with_group_algebra(A: EndAlgebra, inst: GaloisInstance) -> GroupAlgebraComparison:
    """Compare R[G] -> End(T|_E), g ↦ (its permutation action on each object)."""
    G = inst.group
    n = G.order
    coords = [A.coords(group_element_tuple(inst, A, g)) for g in range(n)]
    M = matrix_class(A.ring).from_columns(coords, A.dim)
    r = rank(M)
    injective = r == n
    if A.ring == "Z":
        surjective = A.dim == 0 or image_lattice(M) == IntMat.identity(A.dim)
    else:
        surjective = r == A.dim
    hom = coords[G.identity] == list(A.unit_coords) and all(
        A.multiply(coords[g], coords[h]) == coords[G.mul(g, h)]
        for g in range(n) for h in range(n))
    return GroupAlgebraComparison(n, A.dim, r, injective, surjective, hom)


def galois_stage_end(inst: GaloisInstance) -> EndAlgebra:
    return compute_end(inst.rep, inst.galois_stage)


def instance_to_json(inst: GaloisInstance) -> dict:
    """Diagram file for the CLI, with the Galois stage declared as ``galois``."""
    out = inst.rep.to_json()
    E = inst.galois_stage
    out["stages"] = {"galois": {"objects": list(E.objects), "arrows": [a.id for a in E.arrows]}}
    return out


def target_to_json(inst: GaloisInstance, extra: Mapping[str, GSet] | None = None,
                   generators: Sequence[str] | None = None) -> dict:
    """Target file: permutation modules of every object's G-set plus ``extra`` ones."""
    modules = {name: {"gset": S.to_json()} for name, S in inst.gsets.items()
               if name in inst.diagram.objects}
    for name, S in (extra or {}).items():
        modules[name] = {"gset": S.to_json()}
    gens = list(generators) if generators is not None else list(modules)
    return {"group": inst.group.to_json(), "modules": modules,
            "S": {o: o for o in inst.diagram.objects}, "generators": gens}
