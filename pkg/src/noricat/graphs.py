"""Cellular homology of finite graphs and pairs of graphs.

Graphs are 1-dimensional CW complexes (loops and multi-edges allowed).  The
relative chain complex C_*(X)/C_*(Y) gives H_1(X, Y) = ker ∂̄ and
H_0(X, Y) = coker ∂̄, both free.  Edges are oriented from the endpoint that
comes first in the vertex list, so ∂e = head - tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from .diagram import Arrow, Coproduct, Diagram, Representation
from .linalg import (FgAbGroup, IntMat, Span, cokernel, cokernel_projection, image_lattice,
                     kernel_lattice, solve_linear)


@dataclass(frozen=True)
class Edge:
    id: Hashable
    a: Hashable
    b: Hashable


@dataclass(frozen=True)
class Graph:
    vertices: tuple = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(
            e if isinstance(e, Edge) else Edge(*e) for e in self.edges))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex identifiers")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise ValueError("duplicate edge identifiers")
        for e in self.edges:
            if e.a not in vs or e.b not in vs:
                raise ValueError(f"edge {e.id!r} references an undeclared vertex")

    @cached_property
    def vindex(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def eindex(self) -> dict:
        return {e.id: i for i, e in enumerate(self.edges)}

    def edge(self, eid) -> Edge:
        return self.edges[self.eindex[eid]]

    def orient(self, e: Edge) -> tuple:
        """(tail, head) under the canonical orientation."""
        ia, ib = self.vindex[e.a], self.vindex[e.b]
        return (e.a, e.b) if ia <= ib else (e.b, e.a)

    def boundary(self) -> IntMat:
        """∂_1 as a |V| x |E| matrix."""
        rows = [[0] * len(self.edges) for _ in self.vertices]
        for j, e in enumerate(self.edges):
            t, h = self.orient(e)
            rows[self.vindex[h]][j] += 1
            rows[self.vindex[t]][j] -= 1
        return IntMat(rows, len(self.vertices), len(self.edges))

    def subgraph(self, vertices: Iterable, edges: Iterable = ()) -> "Graph":
        vs, es = set(vertices), set(edges)
        unknown = (vs - set(self.vertices)) | (es - set(self.eindex))
        if unknown:
            raise ValueError(f"subcomplex references unknown cells {sorted(map(str, unknown))}")
        sub_edges = tuple(e for e in self.edges if e.id in es)
        for e in sub_edges:
            if e.a not in vs or e.b not in vs:
                raise ValueError(f"subcomplex is not closed: edge {e.id!r} lacks an endpoint")
        return Graph(tuple(v for v in self.vertices if v in vs), sub_edges)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return set(self.vertices) <= set(other.vertices) and set(self.edges) <= set(other.edges)

    def components(self) -> list[list]:
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v
        for e in self.edges:
            ra, rb = find(e.a), find(e.b)
            if ra != rb:
                parent[max(ra, rb, key=self.vindex.get)] = min(ra, rb, key=self.vindex.get)
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def empty_sub(self) -> "Graph":
        return Graph()

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"id": e.id, "a": e.a, "b": e.b} for e in self.edges]}


@dataclass(frozen=True)
class GraphPair:
    """(X, Y, degree) with Y a subcomplex of X and degree in {0, 1}."""

    X: Graph
    Y: Graph = field(default_factory=Graph)
    degree: int = 1

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ValueError("graph pairs only carry degrees 0 and 1")
        # re-derive Y from X so it inherits X's vertex order (and hence orientations)
        Y = self.X.subgraph(self.Y.vertices, [e.id for e in self.Y.edges])
        for e in self.Y.edges:
            if self.X.edge(e.id) != e:
                raise ValueError(f"subcomplex edge {e.id!r} differs from the edge in X")
        object.__setattr__(self, "Y", Y)

    def to_json(self) -> dict:
        out = self.X.to_json()
        out["Y"] = {"vertices": list(self.Y.vertices), "edges": [e.id for e in self.Y.edges]}
        out["degree"] = self.degree
        return out


def pair_from_json(obj: Mapping) -> GraphPair:
    X = Graph(tuple(obj["vertices"]), tuple(Edge(e["id"], e["a"], e["b"]) for e in obj["edges"]))
    Yobj = obj.get("Y") or {"vertices": [], "edges": []}
    yedges = [e["id"] if isinstance(e, Mapping) else e for e in Yobj.get("edges", [])]
    Y = X.subgraph(Yobj.get("vertices", []), yedges)
    return GraphPair(X, Y, int(obj.get("degree", 1)))


# ---------------------------------------------------------------------------
# homology


class PairHomology:
    """Relative homology of (X, Y) with the chain-level data used for induced maps."""

    def __init__(self, X: Graph, Y: Graph):
        self.X, self.Y = X, Y
        ys_v, ys_e = set(Y.vertices), {e.id for e in Y.edges}
        self.rel_vertices = [v for v in X.vertices if v not in ys_v]
        self.rel_edges = [e.id for e in X.edges if e.id not in ys_e]
        d = X.boundary()
        self.dbar = d.submatrix([X.vindex[v] for v in self.rel_vertices],
                                [X.eindex[e] for e in self.rel_edges])
        self.cycles = kernel_lattice(self.dbar) if self.rel_edges else IntMat.zeros(0, 0)
        self.h1 = FgAbGroup(self.cycles.cols)
        self.h0 = cokernel(self.dbar) if self.rel_vertices else FgAbGroup()
        if not self.h0.is_free:
            raise AssertionError("relative H_0 of a graph pair must be free")
        if self.rel_vertices:
            self.projection = cokernel_projection(self.dbar, "Z")
        else:
            self.projection = IntMat.zeros(0, 0)
        if self.projection.rows != self.h0.free_rank:
            raise AssertionError("H_0 projection rank mismatch")
        lifts = []
        for k in range(self.projection.rows):
            e = [int(i == k) for i in range(self.projection.rows)]
            lifts.append(solve_linear(self.projection, e, "Z").particular)
        self.h0_lifts = IntMat.from_columns(lifts, len(self.rel_vertices))

    def group(self, degree: int) -> FgAbGroup:
        return self.h1 if degree == 1 else self.h0

    def rank(self, degree: int) -> int:
        return self.group(degree).free_rank

    # chain-level helpers ----------------------------------------------------
    def cycle_chain(self, k: int) -> list[int]:
        """k-th H_1 basis cycle as a full chain in C_1(X)."""
        v = [0] * len(self.X.edges)
        for e, c in zip(self.rel_edges, self.cycles.col(k)):
            v[self.X.eindex[e]] = c
        return v

    def h0_chain(self, k: int) -> list[int]:
        v = [0] * len(self.X.vertices)
        for u, c in zip(self.rel_vertices, self.h0_lifts.col(k)):
            v[self.X.vindex[u]] = c
        return v

    def h1_coords(self, chain: Sequence[int]) -> list[int]:
        """Coordinates of a relative cycle (full C_1(X) chain) in the H_1 basis."""
        rel = [chain[self.X.eindex[e]] for e in self.rel_edges]
        if not self.cycles.cols:
            if any(rel):
                raise ValueError("chain is not a relative cycle")
            return []
        sol = Span(self.cycles, "Z").solve(rel)
        if sol is None:
            raise ValueError("chain is not a relative cycle")
        return sol

    def h0_coords(self, chain: Sequence[int]) -> list[int]:
        rel = [chain[self.X.vindex[v]] for v in self.rel_vertices]
        return self.projection.apply(rel)


def relative_homology(P: GraphPair) -> PairHomology:
    return PairHomology(P.X, P.Y)


def homology(X: Graph, Y: Graph | None = None) -> PairHomology:
    return PairHomology(X, Y if Y is not None else Graph())


# ---------------------------------------------------------------------------
# cellular maps


@dataclass(frozen=True)
class CellularMap:
    """A graph map X -> X'.

    ``edge_map[e]`` is ``(e', sign)`` (sign relative to the canonical
    orientations) or ``None`` for an edge collapsed to the common image of its
    endpoints.
    """

    source: Graph
    target: Graph
    vertex_map: Mapping
    edge_map: Mapping

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))
        object.__setattr__(self, "edge_map", {k: (tuple(v) if v is not None else None)
                                              for k, v in dict(self.edge_map).items()})
        problems = self.problems()
        if problems:
            raise ValueError("invalid cellular map: " + "; ".join(problems))

    def problems(self) -> list[str]:
        out = []
        X, X2 = self.source, self.target
        for v in X.vertices:
            if self.vertex_map.get(v) not in X2.vindex:
                out.append(f"vertex {v!r} has no valid image")
        if out:
            return out
        for e in X.edges:
            if e.id not in self.edge_map:
                out.append(f"edge {e.id!r} has no assignment")
                continue
            t, h = X.orient(e)
            ft, fh = self.vertex_map[t], self.vertex_map[h]
            img = self.edge_map[e.id]
            if img is None:
                if ft != fh:
                    out.append(f"edge {e.id!r} collapsed but endpoints map apart")
                continue
            eid, sign = img
            if eid not in X2.eindex or sign not in (1, -1):
                out.append(f"edge {e.id!r} maps to an invalid edge")
                continue
            t2, h2 = X2.orient(X2.edge(eid))
            want = (t2, h2) if sign == 1 else (h2, t2)
            if (ft, fh) != want:
                out.append(f"edge {e.id!r}: endpoints incompatible with image edge {eid!r}")
        return out

    def carries(self, Y: Graph, Y2: Graph) -> bool:
        """f(Y) ⊆ Y'."""
        ys2_v, ys2_e = set(Y2.vertices), {e.id for e in Y2.edges}
        if any(self.vertex_map[v] not in ys2_v for v in Y.vertices):
            return False
        for e in Y.edges:
            img = self.edge_map[e.id]
            if img is not None and img[0] not in ys2_e:
                return False
        return True

    def chain_map(self, degree: int) -> IntMat:
        X, X2 = self.source, self.target
        if degree == 0:
            rows = [[0] * len(X.vertices) for _ in X2.vertices]
            for j, v in enumerate(X.vertices):
                rows[X2.vindex[self.vertex_map[v]]][j] += 1
            return IntMat(rows, len(X2.vertices), len(X.vertices))
        rows = [[0] * len(X.edges) for _ in X2.edges]
        for j, e in enumerate(X.edges):
            img = self.edge_map[e.id]
            if img is not None:
                rows[X2.eindex[img[0]]][j] += img[1]
        return IntMat(rows, len(X2.edges), len(X.edges))

    def restrict(self, Y: Graph, Y2: Graph) -> "CellularMap":
        """The map Y -> Y' induced by f (requires f(Y) ⊆ Y')."""
        if not self.carries(Y, Y2):
            raise ValueError("map does not carry the subcomplex into the target subcomplex")
        return CellularMap(Y, Y2, {v: self.vertex_map[v] for v in Y.vertices},
                           {e.id: self.edge_map[e.id] for e in Y.edges})

    def then(self, g: "CellularMap") -> "CellularMap":
        """g ∘ self."""
        if g.source != self.target:
            raise ValueError("maps are not composable")
        em = {}
        for e, img in self.edge_map.items():
            if img is None:
                em[e] = None
            else:
                img2 = g.edge_map[img[0]]
                em[e] = None if img2 is None else (img2[0], img[1] * img2[1])
        return CellularMap(self.source, g.target,
                           {v: g.vertex_map[w] for v, w in self.vertex_map.items()}, em)

    @staticmethod
    def identity(X: Graph) -> "CellularMap":
        return CellularMap(X, X, {v: v for v in X.vertices}, {e.id: (e.id, 1) for e in X.edges})

    @staticmethod
    def inclusion(Y: Graph, X: Graph) -> "CellularMap":
        if not Y.is_subgraph_of(X):
            raise ValueError("not a subgraph")
        return CellularMap(Y, X, {v: v for v in Y.vertices}, {e.id: (e.id, 1) for e in Y.edges})


def induced_map(f: CellularMap, degree: int, Y: Graph | None = None,
                Y2: Graph | None = None) -> IntMat:
    """f_*: H_degree(X, Y) -> H_degree(X', Y') on the canonical homology bases."""
    Y = Y if Y is not None else Graph()
    Y2 = Y2 if Y2 is not None else Graph()
    if not f.carries(Y, Y2):
        raise ValueError("induced_map: f does not carry Y into Y'")
    src, tgt = PairHomology(f.source, Y), PairHomology(f.target, Y2)
    return _induced(f, degree, src, tgt)


def _induced(f: CellularMap, degree: int, src: PairHomology, tgt: PairHomology) -> IntMat:
    C = f.chain_map(degree)
    cols = []
    if degree == 1:
        for k in range(src.h1.free_rank):
            cols.append(tgt.h1_coords(C.apply(src.cycle_chain(k))))
        return IntMat.from_columns(cols, tgt.h1.free_rank)
    for k in range(src.h0.free_rank):
        cols.append(tgt.h0_coords(C.apply(src.h0_chain(k))))
    return IntMat.from_columns(cols, tgt.h0.free_rank)


def pair_map_matrix(f: CellularMap, P: GraphPair, P2: GraphPair) -> IntMat:
    if P.degree != P2.degree:
        raise ValueError("maps of pairs preserve the degree")
    if f.source != P.X or f.target != P2.X:
        raise ValueError("map does not match the pairs' ambient graphs")
    return induced_map(f, P.degree, P.Y, P2.Y)


def boundary_map(X: Graph, Y: Graph, Z: Graph | None = None) -> IntMat:
    """Connecting map ∂: H_1(X, Y) -> H_0(Y, Z) of the triple Z ⊆ Y ⊆ X."""
    Z = Z if Z is not None else Graph()
    if not (Y.is_subgraph_of(X) and Z.is_subgraph_of(Y)):
        raise ValueError("boundary_map: need Z ⊆ Y ⊆ X")
    src, tgt = PairHomology(X, Y), PairHomology(Y, Z)
    d = X.boundary()
    cols = []
    for k in range(src.h1.free_rank):
        bd = d.apply(src.cycle_chain(k))
        # the boundary of a relative cycle is supported on Y
        chain_y = [0] * len(Y.vertices)
        for v, c in zip(X.vertices, bd):
            if c:
                if v not in Y.vindex:
                    raise AssertionError("relative cycle with boundary outside Y")
                chain_y[Y.vindex[v]] = c
        cols.append(tgt.h0_coords(chain_y))
    return IntMat.from_columns(cols, tgt.h0.free_rank)


# ---------------------------------------------------------------------------
# long exact sequence


@dataclass(frozen=True)
class LesReport:
    status: str
    groups: tuple[tuple[str, FgAbGroup], ...]
    failures: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"status": self.status,
                "groups": {name: str(g) for name, g in self.groups},
                "failures": list(self.failures)}


def _lattice_eq(A: IntMat, B: IntMat) -> bool:
    if A.rows != B.rows:
        return False
    if A.rows == 0:
        return True
    ia = image_lattice(A) if A.cols else IntMat.zeros(A.rows, 0)
    ib = image_lattice(B) if B.cols else IntMat.zeros(B.rows, 0)
    return ia == ib


def les_maps(X: Graph, Y: Graph, Z: Graph | None = None) -> dict:
    """The five maps of the homology sequence of Z ⊆ Y ⊆ X, plus the six groups."""
    Z = Z if Z is not None else Graph()
    if not (Y.is_subgraph_of(X) and Z.is_subgraph_of(Y)):
        raise ValueError("les_check: need Z ⊆ Y ⊆ X")
    hYZ, hXZ, hXY = PairHomology(Y, Z), PairHomology(X, Z), PairHomology(X, Y)
    inc = CellularMap.inclusion(Y, X)
    ident = CellularMap.identity(X)
    return {
        "groups": (("H1(Y,Z)", hYZ.h1), ("H1(X,Z)", hXZ.h1), ("H1(X,Y)", hXY.h1),
                   ("H0(Y,Z)", hYZ.h0), ("H0(X,Z)", hXZ.h0), ("H0(X,Y)", hXY.h0)),
        "maps": [
            ("i1", _induced(inc, 1, hYZ, hXZ)),
            ("j1", _induced(ident, 1, hXZ, hXY)),
            ("delta", boundary_map(X, Y, Z)),
            ("i0", _induced(inc, 0, hYZ, hXZ)),
            ("j0", _induced(ident, 0, hXZ, hXY)),
        ],
    }


def les_check(X: Graph, Y: Graph, Z: Graph | None = None) -> LesReport:
    """Exactness of 0 -> H1(Y,Z) -> H1(X,Z) -> H1(X,Y) -> H0(Y,Z) -> H0(X,Z) -> H0(X,Y) -> 0."""
    data = les_maps(X, Y, Z)
    maps = data["maps"]
    failures = []
    first = maps[0][1]
    if first.cols and kernel_lattice(first).cols:
        failures.append("H1(Y,Z) -> H1(X,Z) is not injective")
    for (n1, A), (n2, B) in zip(maps, maps[1:]):
        ker = kernel_lattice(B) if B.cols else IntMat.zeros(0, 0)
        if B.cols and not _lattice_eq(A, ker):
            failures.append(f"im {n1} != ker {n2}")
        if not B.cols and A.rows:
            failures.append(f"shape mismatch between {n1} and {n2}")
    last = maps[-1][1]
    if last.rows and not _lattice_eq(last, IntMat.identity(last.rows)):
        failures.append("H0(X,Z) -> H0(X,Y) is not surjective")
    return LesReport("FAIL" if failures else "PASS", data["groups"], tuple(failures))


# ---------------------------------------------------------------------------
# graph rewriting


def disjoint_union(X1: Graph, X2: Graph, tags=("L", "R")) -> tuple[Graph, CellularMap, CellularMap]:
    """X1 ⊔ X2 with its two canonical inclusions; cells are renamed ``tag/id``."""
    def ren(tag, x):
        return f"{tag}/{x}"
    verts = [ren(tags[0], v) for v in X1.vertices] + [ren(tags[1], v) for v in X2.vertices]
    edges = [Edge(ren(tags[0], e.id), ren(tags[0], e.a), ren(tags[0], e.b)) for e in X1.edges]
    edges += [Edge(ren(tags[1], e.id), ren(tags[1], e.a), ren(tags[1], e.b)) for e in X2.edges]
    U = Graph(tuple(verts), tuple(edges))
    incs = []
    for tag, X in zip(tags, (X1, X2)):
        incs.append(CellularMap(X, U, {v: ren(tag, v) for v in X.vertices},
                                {e.id: (ren(tag, e.id), 1) for e in X.edges}))
    return U, incs[0], incs[1]


def disjoint_union_pair(P1: GraphPair, P2: GraphPair):
    """(X1 ⊔ X2, Y1 ⊔ Y2) with inclusions; degrees must agree."""
    if P1.degree != P2.degree:
        raise ValueError("disjoint union of pairs of different degree")
    U, i1, i2 = disjoint_union(P1.X, P2.X)
    YU = U.subgraph([i1.vertex_map[v] for v in P1.Y.vertices] +
                    [i2.vertex_map[v] for v in P2.Y.vertices],
                    [i1.edge_map[e.id][0] for e in P1.Y.edges] +
                    [i2.edge_map[e.id][0] for e in P2.Y.edges])
    return GraphPair(U, YU, P1.degree), i1, i2


def contract_edge(P: GraphPair, eid) -> tuple[GraphPair, CellularMap]:
    """Collapse a non-loop edge; the quotient map is a homotopy equivalence of pairs.

    Edges outside Y with both endpoints in Y are refused (the collapse would
    change Y).
    """
    X = P.X
    e = X.edge(eid)
    if e.a == e.b:
        raise ValueError("cannot contract a loop")
    in_y = eid in {f.id for f in P.Y.edges}
    ya, yb = e.a in P.Y.vindex, e.b in P.Y.vindex
    if not in_y and ya and yb:
        raise ValueError("contracting this edge would identify two points of Y")
    if ya and not yb:
        keep, drop = e.a, e.b
    elif yb and not ya:
        keep, drop = e.b, e.a
    else:
        keep, drop = X.orient(e)
    vmap = {v: (keep if v == drop else v) for v in X.vertices}
    verts = tuple(v for v in X.vertices if v != drop)
    edges = []
    emap = {}
    for f in X.edges:
        if f.id == eid:
            emap[f.id] = None
            continue
        nf = Edge(f.id, vmap[f.a], vmap[f.b])
        edges.append(nf)
    Q = Graph(verts, tuple(edges))
    for f in X.edges:
        if f.id == eid:
            continue
        t, h = X.orient(f)
        t2, h2 = Q.orient(Q.edge(f.id))
        emap[f.id] = (f.id, 1 if (vmap[t], vmap[h]) == (t2, h2) else -1)
    YQ = Q.subgraph({vmap[v] for v in P.Y.vertices}, [f.id for f in P.Y.edges if f.id != eid])
    return GraphPair(Q, YQ, P.degree), CellularMap(X, Q, vmap, emap)


def subdivide_edge(X: Graph, eid, midpoint=None) -> tuple[Graph, CellularMap]:
    """Split an edge in two at a new vertex; returns the subdivision and the comparison map.

    The comparison map sends the first half onto the original edge and
    collapses the second half onto the head, which is cellular and a
    homotopy equivalence.
    """
    e = X.edge(eid)
    t, h = X.orient(e)
    m = midpoint if midpoint is not None else f"{eid}/mid"
    e1, e2 = f"{eid}/1", f"{eid}/2"
    verts = X.vertices + (m,)
    edges = tuple(f for f in X.edges if f.id != eid) + (Edge(e1, t, m), Edge(e2, m, h))
    S = Graph(verts, edges)
    vmap = {v: v for v in X.vertices}
    vmap[m] = h
    emap = {f.id: (f.id, 1) for f in X.edges if f.id != eid}
    # e1 runs t -> m (m is listed last), mapping onto t -> h
    emap[e1] = (eid, 1)
    emap[e2] = None
    return S, CellularMap(S, X, vmap, emap)


# ---------------------------------------------------------------------------
# diagrams


def build_diagram(pairs: Mapping[str, GraphPair],
                  maps: Sequence[tuple[str, str, str, CellularMap]] = (),
                  triples: Sequence[tuple[str, str, str]] = (),
                  coproducts: Sequence[tuple[str, str]] = ()) -> tuple[Diagram, Representation]:
    """Diagram of graph pairs with induced maps and boundary arrows.

    ``maps`` are (arrow id, source pair, target pair, cellular map);
    ``triples`` are (arrow id, (X, Y, 1), (Y, Z, 0)) giving δ arrows;
    ``coproducts`` lists pairs of objects of equal degree for which the
    disjoint union object and its inclusions are added.
    """
    pairs = dict(pairs)
    objects = list(pairs)
    arrows, mats = [], {}
    cops = []
    for aid, s, t, f in maps:
        arrows.append(Arrow(aid, s, t))
        mats[aid] = pair_map_matrix(f, pairs[s], pairs[t])
    for aid, s, t in triples:
        P, Q = pairs[s], pairs[t]
        if P.degree != 1 or Q.degree != 0:
            raise ValueError(f"boundary arrow {aid}: expected degrees 1 -> 0")
        if set(Q.X.vertices) != set(P.Y.vertices) or set(Q.X.edges) != set(P.Y.edges):
            raise ValueError(f"boundary arrow {aid}: target ambient graph is not the source's Y")
        arrows.append(Arrow(aid, s, t))
        mats[aid] = boundary_map(P.X, P.Y, P.Y.subgraph(Q.Y.vertices, [e.id for e in Q.Y.edges]))
    for p, q in coproducts:
        U, i1, i2 = disjoint_union_pair(pairs[p], pairs[q])
        name = f"{p}+{q}"
        if name not in pairs:
            pairs[name] = U
            objects.append(name)
        ia, ib = f"incl:{p}->{name}", f"incl:{q}->{name}"
        arrows += [Arrow(ia, p, name), Arrow(ib, q, name)]
        mats[ia] = pair_map_matrix(i1, pairs[p], U)
        mats[ib] = pair_map_matrix(i2, pairs[q], U)
        cops.append(Coproduct(p, q, name, ia, ib))
    values = {o: relative_homology(pairs[o]).rank(pairs[o].degree) for o in objects}
    D = Diagram(tuple(objects), tuple(arrows), tuple(cops))
    return D, Representation(D, "Z", values, mats)


def pi0_representation(pairs: Mapping[str, GraphPair],
                       maps: Sequence[tuple[str, str, str, CellularMap]] = ()) -> Representation:
    """Degree-0 representation (X, Y) ↦ coker(H_0(Y) -> H_0(X)) = Z[π0 X] / Z[π0 Y]."""
    data = {}
    for name, P in pairs.items():
        if P.degree != 0:
            raise ValueError(f"pi0_representation: pair {name} has degree {P.degree}")
        hX = PairHomology(P.X, Graph())
        hY = PairHomology(P.Y, Graph())
        inc = _induced(CellularMap.inclusion(P.Y, P.X), 0, hY, hX)
        group = cokernel(inc) if inc.rows else FgAbGroup()
        if not group.is_free:
            raise AssertionError("π0 quotient should be free")
        proj = cokernel_projection(inc, "Z") if inc.rows else IntMat.zeros(0, 0)
        lifts = [solve_linear(proj, [int(i == k) for i in range(proj.rows)], "Z").particular
                 for k in range(proj.rows)]
        data[name] = (hX, proj, IntMat.from_columns(lifts, inc.rows))
    arrows, mats = [], {}
    for aid, s, t, f in maps:
        hX, _, lift = data[s]
        hX2, proj2, _ = data[t]
        if not f.carries(pairs[s].Y, pairs[t].Y):
            raise ValueError(f"map {aid} does not carry Y into Y'")
        fstar = _induced(f, 0, hX, hX2)
        mats[aid] = proj2 @ fstar @ lift
        arrows.append(Arrow(aid, s, t))
    D = Diagram(tuple(pairs), tuple(arrows))
    return Representation(D, "Z", {n: d[1].rows for n, d in data.items()}, mats)
