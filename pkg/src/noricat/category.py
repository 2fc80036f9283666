"""Stage-wise model of the universal abelian category C(T).

Objects live at a finite stage E and are modules over End(T|_E); morphisms
are carrier maps commuting with the actions after refining both ends to a
common stage.  Over Z carriers are presented as Z^n / relations so that
kernels and cokernels (which may have torsion) stay inside the model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .commutant import (EndAlgebra, RestrictionMap, StageModule, compute_end, free_module,
                        module_structure, restriction_map)
from .diagram import Diagram, Representation, SubdiagramChain
from .linalg import (FgAbGroup, IntMat, Matrix, Span, block_diag, canonical_basis,
                     cokernel as group_cokernel, cokernel_projection, det, image_lattice,
                     inverse_Q, kernel_basis, kernel_lattice, matrix_class, rank, smith_normal_form,
                     solve_linear, solve_matrix)

# ---------------------------------------------------------------------------
# presented modules over an arbitrary algebra


def _normalize(n: int, relations: Matrix, ring: str):
    """Standard presentation of R^n / span(relations).

    Returns (q, lift, new_relations): q is the quotient map onto the new
    generators, lift a section with q·lift = I, and new_relations a diagonal
    relation matrix (empty over Q).
    """
    cls = matrix_class(ring)
    if ring == "Q":
        if relations.cols == 0 or relations.is_zero():
            return cls.identity(n), cls.identity(n), cls.zeros(n, 0)
        q = cokernel_projection(relations, "Q")
        piv = [next(j for j, x in enumerate(r) if x != 0) for r in q.entries]
        lift = cls.from_columns([[int(i == p) for i in range(n)] for p in piv], n)
        return q, lift, cls.zeros(q.rows, 0)
    if relations.cols == 0 or n == 0:
        return cls.identity(n), cls.identity(n), cls.zeros(n, 0)
    snf = smith_normal_form(relations)
    diag = snf.diagonal
    rr = snf.rank
    kept = [i for i in range(n) if i >= rr or diag[i] > 1]
    q = snf.U.submatrix(kept, None)
    lift = snf.U_inv.submatrix(None, kept)
    tors = [(k, diag[i]) for k, i in enumerate(kept) if i < rr]
    rel = cls.from_columns([[d if r == k else 0 for r in range(len(kept))] for k, d in tors],
                           len(kept))
    return q, lift, rel


def is_module_map(F: Matrix, X: StageModule, Y: StageModule) -> bool:
    """Whether F: gens(X) -> gens(Y) is a well-defined map of modules."""
    if F.shape != (Y.ngens, X.ngens) or X.algebra.dim != Y.algebra.dim:
        return False
    span = Y.relation_span if Y.relations.cols else None
    for r in X.relations.columns():
        img = F.apply(r)
        if span is None:
            if any(img):
                return False
        elif not span.contains(img):
            return False
    return all(Y.equal_mod_relations(F @ MX, MY @ F) for MX, MY in zip(X.action, Y.action))


def module_cokernel(F: Matrix, X: StageModule, Y: StageModule) -> tuple[StageModule, Matrix]:
    """Cokernel module and the projection gens(Y) -> gens(coker)."""
    ring = Y.ring
    rel = Y.relations.hstack(F) if Y.relations.cols else F
    q, lift, newrel = _normalize(Y.ngens, rel, ring)
    action = [q @ M @ lift for M in Y.action]
    return StageModule(Y.algebra, q.rows, newrel, action), q


def module_kernel(F: Matrix, X: StageModule, Y: StageModule) -> tuple[StageModule, Matrix]:
    """Kernel module and the inclusion gens(ker) -> gens(X)."""
    ring = X.ring
    cls = matrix_class(ring)
    m = X.ngens
    if ring == "Q":
        B = kernel_basis(F, "Q") if m else cls.zeros(0, 0)
        action = [solve_matrix(B, M @ B, "Q") for M in X.action]
        return StageModule(X.algebra, B.cols, cls.zeros(B.cols, 0), action), B
    system = F.hstack(-Y.relations) if Y.relations.cols else F
    K = kernel_lattice(system) if system.cols else IntMat.zeros(0, 0)
    Lg = K.submatrix(range(m), None)
    B = image_lattice(Lg) if Lg.cols else IntMat.zeros(m, 0)
    if X.relations.cols:
        C = solve_matrix(B, X.relations, "Z")
    else:
        C = IntMat.zeros(B.cols, 0)
    q, lift, rel = _normalize(B.cols, C, "Z")
    action = []
    for M in X.action:
        N = solve_matrix(B, M @ B, "Z") if B.cols else IntMat.zeros(0, 0)
        action.append(q @ N @ lift)
    return StageModule(X.algebra, q.rows, rel, action), B @ lift


@dataclass(frozen=True)
class HomGroup:
    """Hom(X, Y) over the algebra: a group, representative generators and the lattice of lifts.

    ``lattice`` has as columns a basis of all valid lifts vec(F) (row-major)
    including the maps that vanish modulo the target relations.
    """

    group: FgAbGroup
    generators: tuple[Matrix, ...]
    lattice: Matrix
    shape: tuple[int, int]
    ring: str

    @property
    def rank(self) -> int:
        return self.group.free_rank

    def contains(self, F: Matrix) -> bool:
        if F.shape != self.shape:
            return False
        if not self.lattice.cols:
            return F.is_zero()
        return Span(self.lattice, self.ring).contains(F.flat())

    def lattice_basis(self) -> list[Matrix]:
        n, m = self.shape
        cls = matrix_class(self.ring)
        return [cls([c[i * m:(i + 1) * m] for i in range(n)], n, m) for c in self.lattice.columns()]

    def is_contained_in(self, other: "HomGroup") -> bool:
        return all(other.contains(F) for F in self.lattice_basis())


def module_hom(X: StageModule, Y: StageModule) -> HomGroup:
    """All module maps X -> Y, solved as one linear system."""
    ring = X.ring
    cls = matrix_class(ring)
    n, m = Y.ngens, X.ngens
    nF = n * m
    rX, rY = X.relations.cols, Y.relations.cols
    if ring == "Q":
        rX = rY = 0
    nGR = rY * rX
    nGi = rY * m
    nvars = nF + nGR + nGi * len(X.action)
    rows = []
    RX, RY = X.relations, Y.relations
    for a in range(n):
        for t in range(rX):
            row = [0] * nvars
            for b in range(m):
                row[a * m + b] += RX[b, t]
            for s in range(rY):
                row[nF + s * rX + t] -= RY[a, s]
            rows.append(row)
    for i, (MX, MY) in enumerate(zip(X.action, Y.action)):
        off = nF + nGR + i * nGi
        for a in range(n):
            for b in range(m):
                row = [0] * nvars
                for c in range(m):
                    row[a * m + c] += MX[c, b]
                for c in range(n):
                    row[c * m + b] -= MY[a, c]
                for s in range(rY):
                    row[off + s * m + b] -= RY[a, s]
                rows.append(row)
    system = cls(rows, len(rows), nvars)
    K = kernel_basis(system, ring) if nvars else cls.zeros(0, 0)
    Lg = K.submatrix(range(nF), None)
    if ring == "Q":
        L = canonical_basis(Lg, "Q") if Lg.cols else cls.zeros(nF, 0)
        L = cls.from_columns([c for c in L.columns() if any(c)], nF)
        gens = tuple(cls([c[i * m:(i + 1) * m] for i in range(n)], n, m) for c in L.columns())
        return HomGroup(FgAbGroup(L.cols), gens, L, (n, m), ring)
    L = image_lattice(Lg) if Lg.cols else IntMat.zeros(nF, 0)
    # maps landing in the relations of Y are zero in Hom
    null = [[RY[a, s] if b == bb else 0 for a in range(n) for b in range(m)]
            for s in range(rY) for bb in range(m)]
    C = solve_matrix(L, IntMat.from_columns(null, nF), "Z") if null else IntMat.zeros(L.cols, 0)
    q, lift, rel = _normalize(L.cols, C, "Z")
    G = L @ lift
    gens = tuple(IntMat([c[i * m:(i + 1) * m] for i in range(n)], n, m) for c in G.columns())
    group = group_cokernel(rel) if q.rows else FgAbGroup()
    return HomGroup(group, gens, L, (n, m), ring)


def is_surjective(F: Matrix, X: StageModule, Y: StageModule) -> bool:
    return module_cokernel(F, X, Y)[0].carrier.is_trivial


def is_injective(F: Matrix, X: StageModule, Y: StageModule) -> bool:
    return module_kernel(F, X, Y)[0].carrier.is_trivial


# ---------------------------------------------------------------------------
# objects and morphisms of C(T)


@dataclass(frozen=True)
class CObject:
    """An object of C(T) presented at a finite stage of T's diagram."""

    rep: Representation
    module: StageModule

    @property
    def stage(self) -> Diagram:
        return self.module.algebra.stage

    @property
    def algebra(self) -> EndAlgebra:
        return self.module.algebra

    def to_json(self) -> dict:
        out = self.algebra.to_json()
        out.update(self.module.to_json())
        return out


@dataclass(frozen=True)
class CMorphism:
    """A carrier map commuting with the actions at a common stage."""

    source: CObject
    target: CObject
    matrix: Matrix
    stage: Diagram = None

    def __post_init__(self):
        stage = self.stage or self.source.stage.union(self.target.stage)
        object.__setattr__(self, "stage", stage)
        X, Y = refine(self.source, stage), refine(self.target, stage)
        if not is_module_map(self.matrix, X.module, Y.module):
            raise ValueError("matrix does not commute with the stage actions")

    def refined(self) -> tuple[CObject, CObject]:
        return refine(self.source, self.stage), refine(self.target, self.stage)

    def to_json(self) -> dict:
        return {"stage": self.stage.to_json(), "matrix": self.matrix.to_json(),
                "source": self.source.to_json(), "target": self.target.to_json()}


def tilde_T(T: Representation, E: Diagram, p: str) -> CObject:
    """T̃(p) at stage E."""
    return CObject(T, module_structure(T, E, p))


def forgetful(X: CObject) -> FgAbGroup:
    """F_T: the underlying abelian group (or vector space)."""
    return X.module.carrier


def zero_object(T: Representation, E: Diagram) -> CObject:
    A = compute_end(T, E)
    return CObject(T, free_module(A, [matrix_class(A.ring).zeros(0, 0)] * A.dim, 0))


def refine(X: CObject, E: Diagram) -> CObject:
    """Pull the action of X back along End(T|_E) -> End(T|_{stage(X)})."""
    if not X.stage.is_subdiagram_of(E):
        raise ValueError("refine: target stage does not contain the object's stage")
    if E == X.stage:
        return X
    if not E.is_subdiagram_of(X.rep.diagram):
        raise ValueError("refine: stage is not a subdiagram of T's diagram")
    big = compute_end(X.rep, E)
    r = restriction_map(big, X.stage)
    M = X.module
    action = [M.act(r.matrix.col(j)) for j in range(big.dim)]
    return CObject(X.rep, StageModule(big, M.ngens, M.relations, action))


def hom_at_stage(X: CObject, Y: CObject, E: Diagram | None = None) -> HomGroup:
    """Hom(X, Y) computed at the stage E (default: the union of the two stages)."""
    if E is None:
        E = X.stage.union(Y.stage)
    if not (X.stage.is_subdiagram_of(E) and Y.stage.is_subdiagram_of(E)):
        raise ValueError("hom_at_stage: E is not a common refinement")
    return module_hom(refine(X, E).module, refine(Y, E).module)


def kernel(f: CMorphism) -> CObject:
    return kernel_inclusion(f).source


def cokernel(f: CMorphism) -> CObject:
    return cokernel_projection_of(f).target


def kernel_inclusion(f: CMorphism) -> CMorphism:
    X, Y = f.refined()
    K, inc = module_kernel(f.matrix, X.module, Y.module)
    Kobj = CObject(f.source.rep, K)
    if not is_module_map(inc, K, X.module):
        raise AssertionError("induced kernel action failed verification")
    return CMorphism(Kobj, X, inc, f.stage)


def cokernel_projection_of(f: CMorphism) -> CMorphism:
    X, Y = f.refined()
    Q, proj = module_cokernel(f.matrix, X.module, Y.module)
    Qobj = CObject(f.source.rep, Q)
    if not (Q.relations_preserved() and is_module_map(proj, Y.module, Q)):
        raise AssertionError("induced cokernel action failed verification")
    return CMorphism(Y, Qobj, proj, f.stage)


def direct_sum(X: CObject, Y: CObject) -> CObject:
    E = X.stage.union(Y.stage)
    Xr, Yr = refine(X, E).module, refine(Y, E).module
    cls = matrix_class(Xr.ring)
    action = [block_diag([a, b], cls) for a, b in zip(Xr.action, Yr.action)]
    rel = block_diag([Xr.relations, Yr.relations], cls)
    return CObject(X.rep, StageModule(Xr.algebra, Xr.ngens + Yr.ngens, rel, action))


def compose(g: CMorphism, f: CMorphism) -> CMorphism:
    return CMorphism(f.source, g.target, g.matrix @ f.matrix, f.stage.union(g.stage))


@dataclass(frozen=True)
class IsoResult:
    """ISO with a certificate (forward, backward), or UNKNOWN after a bounded search."""

    status: str
    forward: Matrix | None = None
    backward: Matrix | None = None


def _inverse_map(F: Matrix, X: StageModule, Y: StageModule) -> Matrix | None:
    ring = X.ring
    if ring == "Q" or (not X.relations.cols and not Y.relations.cols):
        if F.rows != F.cols:
            return None
        d = det(F)
        if d == 0 or (ring == "Z" and d not in (1, -1)):
            return None
        inv = inverse_Q(F)
        return inv if ring == "Q" else inv.to_int()
    # G F = I + R_X H1 and F G = I + R_Y H2, solved jointly for G, H1, H2
    n, m = Y.ngens, X.ngens
    rX, rY = X.relations.cols, Y.relations.cols
    nG = m * n
    nvars = nG + rX * m + rY * n
    rows, rhs = [], []
    for a in range(m):
        for b in range(m):
            row = [0] * nvars
            for c in range(n):
                row[a * n + c] += F[c, b]
            for s in range(rX):
                row[nG + s * m + b] -= X.relations[a, s]
            rows.append(row)
            rhs.append(int(a == b))
    for a in range(n):
        for b in range(n):
            row = [0] * nvars
            for c in range(m):
                row[c * n + b] += F[a, c]
            for s in range(rY):
                row[nG + rX * m + s * n + b] -= Y.relations[a, s]
            rows.append(row)
            rhs.append(int(a == b))
    sol = solve_linear(IntMat(rows, len(rows), nvars), rhs, "Z")
    if sol is None:
        return None
    g = sol.particular[:nG]
    return IntMat([g[i * n:(i + 1) * n] for i in range(m)], m, n)


def find_isomorphism(X: CObject, Y: CObject, E: Diagram | None = None,
                     bound: int = 2, max_candidates: int = 20000) -> IsoResult:
    """Bounded search for an isomorphism X ≅ Y among small combinations of Hom generators."""
    if E is None:
        E = X.stage.union(Y.stage)
    Xm, Ym = refine(X, E).module, refine(Y, E).module
    if Xm.carrier != Ym.carrier:
        return IsoResult("UNKNOWN")
    H = module_hom(Xm, Ym)
    basis = H.lattice_basis()
    coeffs = range(-bound, bound + 1)
    count = 0
    cls = matrix_class(Xm.ring)
    for combo in itertools.product(coeffs, repeat=len(basis)):
        count += 1
        if count > max_candidates:
            break
        if not any(combo):
            if basis:
                continue
        F = cls.zeros(Ym.ngens, Xm.ngens)
        for c, B in zip(combo, basis):
            if c:
                F = F + B.scale(c)
        G = _inverse_map(F, Xm, Ym)
        if G is not None and is_module_map(G, Ym, Xm):
            return IsoResult("ISO", F, G)
    return IsoResult("UNKNOWN")


# ---------------------------------------------------------------------------
# pro-algebra tower


@dataclass(frozen=True)
class StageReport:
    stage_index: int
    ranks: tuple[int, ...]
    status: str

    def to_json(self) -> dict:
        return {"stage": self.stage_index, "ranks": list(self.ranks), "status": self.status}


@dataclass(frozen=True)
class EndTower:
    chain: SubdiagramChain
    algebras: tuple[EndAlgebra, ...]
    maps: tuple[RestrictionMap, ...]
    image_ranks: tuple[int, ...]
    report: tuple[StageReport, ...] = field(default=())

    def to_json(self) -> dict:
        return {"dims": [A.dim for A in self.algebras],
                "image_ranks": list(self.image_ranks),
                "stabilization": [r.to_json() for r in self.report]}


def tower(T: Representation, chain: SubdiagramChain, verify: bool = True) -> EndTower:
    """End(T|_{E_k}) along a chain, the restriction maps, and a stabilization report.

    For each stage E_i the report lists rank Im(End(T|_{E_j}) -> End(T|_{E_i}))
    for j >= i and flags STABILIZED when the last two ranks agree.
    """
    chain.check_within(T.diagram)
    algebras = tuple(compute_end(T, E) for E in chain)
    maps = tuple(restriction_map(algebras[k + 1], chain[k]) for k in range(len(chain) - 1))
    if verify:
        for r in maps:
            if not r.is_algebra_hom():
                raise AssertionError("restriction map is not an algebra homomorphism")
    report = []
    for i in range(len(chain)):
        ranks = tuple(restriction_map(algebras[j], chain[i]).image_rank
                      for j in range(i, len(chain)))
        status = "STABILIZED" if len(ranks) >= 2 and ranks[-1] == ranks[-2] else "NOT-YET"
        report.append(StageReport(i, ranks, status))
    return EndTower(chain, algebras, maps, tuple(r.image_rank for r in maps), tuple(report))
