"""Random instance generators and sympy-based oracles shared by the tests."""

import random

import sympy
from sympy import QQ, ZZ, Matrix as SMatrix
from sympy import kronecker_product
from sympy.polys.matrices import DomainMatrix
from sympy.matrices.normalforms import invariant_factors, smith_normal_decomp

from noricat.diagram import Arrow, Diagram, Representation
from noricat.graphs import CellularMap, Edge, Graph, GraphPair
from noricat.linalg import FgAbGroup, IntMat


# verdicts of the acceptance criteria, filled in by test_acceptance and
# printed by conftest at the end of the run
ACCEPTANCE: dict = {}


# ---------------------------------------------------------------------------
# representations


def random_rep(rng, ring="Z", max_objects=4, max_arrows=5, max_rank=4, entry=3):
    nobj = rng.randint(1, max_objects)
    objects = [f"p{i}" for i in range(nobj)]
    values = {p: rng.randint(0, max_rank) for p in objects}
    arrows, mats = [], {}
    for k in range(rng.randint(0, max_arrows)):
        s, t = rng.choice(objects), rng.choice(objects)
        aid = f"a{k}"
        arrows.append(Arrow(aid, s, t))
        rows = [[rng.randint(-entry, entry) for _ in range(values[s])] for _ in range(values[t])]
        mats[aid] = IntMat(rows, values[t], values[s])
    D = Diagram(tuple(objects), tuple(arrows))
    if ring == "Q":
        mats = {k: m.to_rat() for k, m in mats.items()}
    return Representation(D, ring, values, mats)


def brute_nullity(T, E=None):
    """Nullity of the commutation equations, assembled with Kronecker products.

    Uses column-major vec: vec(M X) = (I ⊗ M) vec(X) and vec(X M) = (Mᵀ ⊗ I) vec(X).
    The rank is taken by sympy over QQ.
    """
    E = E or T.diagram
    values, mats = T.values, T.matrices
    offsets, total = {}, 0
    for p in E.objects:
        offsets[p] = total
        total += values[p] ** 2
    if total == 0:
        return 0
    blocks = []
    for a in E.arrows:
        n, m = values[a.src], values[a.dst]
        if n == 0 or m == 0:
            continue
        M = SMatrix(mats[a.id].tolist())
        left = kronecker_product(sympy.eye(n), M)          # acts on vec(X_src)
        right = kronecker_product(M.T, sympy.eye(m))       # acts on vec(X_dst)
        row = sympy.zeros(m * n, total)
        row[:, offsets[a.src]:offsets[a.src] + n * n] += left
        row[:, offsets[a.dst]:offsets[a.dst] + m * m] -= right
        blocks.append(row)
    if not blocks:
        return total
    A = sympy.Matrix.vstack(*blocks)
    return total - DomainMatrix.from_Matrix(A).convert_to(QQ).rank()


# ---------------------------------------------------------------------------
# sympy integer oracles


def _sym(A):
    return SMatrix(A.rows, A.cols, [int(x) for r in A.entries for x in r])


def sympy_group(M, nrows):
    """Z^nrows / column span of M, via sympy's invariant factors."""
    if nrows == 0:
        return FgAbGroup()
    if M is None or M.cols == 0:
        return FgAbGroup(nrows)
    inv = [abs(int(d)) for d in invariant_factors(_sym(M), domain=ZZ)]
    nz = [d for d in inv if d]
    return FgAbGroup(nrows - len(nz), tuple(d for d in nz if d > 1))


def sympy_int_kernel(M):
    """Integer kernel basis (columns) from sympy's Smith decomposition S = U M V."""
    if M.cols == 0:
        return IntMat.zeros(0, 0)
    if M.rows == 0:
        return IntMat.identity(M.cols)
    S, U, V = smith_normal_decomp(_sym(M), domain=ZZ)
    r = sum(1 for i in range(min(S.shape)) if S[i, i] != 0)
    cols = [[int(V[i, j]) for i in range(M.cols)] for j in range(r, M.cols)]
    return IntMat.from_columns(cols, M.cols)


def sympy_int_solve(A, B):
    """Integer X with A X = B (columns solved independently), or None."""
    S, U, V = smith_normal_decomp(_sym(A), domain=ZZ)
    C = U * _sym(B)
    Y = sympy.zeros(A.cols, B.cols)
    for j in range(B.cols):
        for i in range(A.rows):
            d = S[i, i] if i < min(S.shape) else 0
            if d == 0:
                if C[i, j] != 0:
                    return None
            else:
                if C[i, j] % d:
                    return None
                Y[i, j] = C[i, j] // d
    X = V * Y
    return IntMat([[int(X[i, j]) for j in range(B.cols)] for i in range(A.cols)], A.cols, B.cols)


def oracle_kernel_group(F, R1, R2):
    """ker(Z^n/R1 -> Z^m/R2) computed only with sympy's Smith form."""
    n, m = F.cols, F.rows
    if n == 0:
        return FgAbGroup()
    M = F.hstack(R2) if R2.cols else F
    K = sympy_int_kernel(M) if M.rows else IntMat.identity(M.cols)
    L = K.submatrix(range(n), None)
    if L.cols == 0:
        return FgAbGroup()
    # L/im(R1) = Z^{cols L} / (ker L + L^{-1}(R1))
    rel = sympy_int_kernel(L)
    if R1.cols:
        X1 = sympy_int_solve(L, R1)
        assert X1 is not None, "relations of the source do not lie in the kernel"
        rel = rel.hstack(X1) if rel.cols else X1
    return sympy_group(rel, L.cols)


def oracle_cokernel_group(F, R2):
    M = F.hstack(R2) if R2.cols else F
    return sympy_group(M, F.rows)


def same_group(a, b):
    return a.free_rank == b.free_rank and tuple(a.torsion) == tuple(b.torsion)


# ---------------------------------------------------------------------------
# graphs


def random_graph(rng, max_vertices=5, max_edges=6, loops=True, prefix=""):
    nv = rng.randint(1, max_vertices)
    verts = [f"{prefix}v{i}" for i in range(nv)]
    edges = []
    for k in range(rng.randint(0, max_edges)):
        a, b = rng.choice(verts), rng.choice(verts)
        if a == b and not loops:
            continue
        edges.append(Edge(f"{prefix}e{k}", a, b))
    return Graph(tuple(verts), tuple(edges))


def random_subgraph(rng, X, keep=0.5):
    vs = [v for v in X.vertices if rng.random() < keep]
    vset = set(vs)
    es = [e.id for e in X.edges if e.a in vset and e.b in vset and rng.random() < 0.7]
    return X.subgraph(vs, es)


def random_triple(rng, **kw):
    X = random_graph(rng, **kw)
    Y = random_subgraph(rng, X, 0.6)
    Z = random_subgraph(rng, Y, 0.5)
    return X, Y, Z


def random_pair(rng, degree=None, **kw):
    X = random_graph(rng, **kw)
    Y = random_subgraph(rng, X, 0.5)
    return GraphPair(X, Y, rng.choice((0, 1)) if degree is None else degree)


def image_subgraph(f, Y):
    vs = {f.vertex_map[v] for v in Y.vertices}
    es = [f.edge_map[e.id][0] for e in Y.edges if f.edge_map[e.id] is not None]
    return f.target.subgraph(vs, es)


def random_cellular_map(rng, X, max_vertices=5, extra_edges=2):
    """A random cellular map out of X; the target is built to accommodate it."""
    nv = rng.randint(1, max_vertices)
    verts = [f"w{i}" for i in range(nv)]
    vmap = {v: rng.choice(verts) for v in X.vertices}
    edges, between = [], {}
    k = 0
    for e in X.edges:
        u, w = vmap[e.a], vmap[e.b]
        if u == w and rng.random() < 0.5:
            continue
        key = (u, w) if u <= w else (w, u)
        if key not in between or rng.random() < 0.3:
            edges.append(Edge(f"f{k}", u, w))
            between.setdefault(key, []).append(f"f{k}")
            k += 1
    for _ in range(rng.randint(0, extra_edges)):
        u, w = rng.choice(verts), rng.choice(verts)
        edges.append(Edge(f"f{k}", u, w))
        between.setdefault((u, w) if u <= w else (w, u), []).append(f"f{k}")
        k += 1
    X2 = Graph(tuple(verts), tuple(edges))
    emap = {}
    for e in X.edges:
        t, h = X.orient(e)
        ft, fh = vmap[t], vmap[h]
        key = (ft, fh) if ft <= fh else (fh, ft)
        choices = between.get(key, [])
        if ft == fh and (not choices or rng.random() < 0.5):
            emap[e.id] = None
            continue
        eid = rng.choice(choices)
        t2, h2 = X2.orient(X2.edge(eid))
        if ft == fh:
            emap[e.id] = (eid, rng.choice((1, -1)))
        else:
            emap[e.id] = (eid, 1 if (ft, fh) == (t2, h2) else -1)
    return CellularMap(X, X2, vmap, emap)


def seeded(seed):
    return random.Random(seed)
