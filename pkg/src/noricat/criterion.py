"""Checkers for the hypotheses under which the universal category is equivalent to a target.

Conditions:

* (a) every declared coproduct p ⊔ p' is sent to a direct sum, i.e. the block
  map [T(i) | T(i')] is invertible over R;
* (b) every declared generator N of the target is a quotient of some S(p);
* (c) for a carrier map f out of T(p), ker(f) is stable under End(T|_E).

plus the graph-of-f reformulation of module maps, the descent of the stage
action along an epimorphism (the module V(N, α)), and the rational version of
(c) together with the identity ker_Z(f) = T(p) ∩ ker_Q(f).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .category import is_module_map, is_surjective, module_hom
from .commutant import (EndAlgebra, InvarianceViolation, StageModule, _enc, compute_end,
                        free_module, invariance_violation, module_structure)
from .diagram import Diagram, Representation, base_change_Q
from .linalg import (IntMat, Matrix, RatMat, Span, block_diag, canonical_basis,
                     clear_denominators, cokernel, det, image_lattice, kernel_basis,
                     lattice_equal, matrix_class, rank, saturate, smith_normal_form,
                     solve_linear, to_ring)

PASS, FAIL, NOT_CHECKED, NOT_FOUND = "PASS", "FAIL", "NOT-CHECKED", "NOT-FOUND"


@dataclass(frozen=True)
class CheckResult:
    """One verdict.  ``certificate`` holds the witness data for the verdict."""

    condition: str
    status: str
    subject: str = ""
    certificate: Mapping = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out = {"condition": self.condition, "status": self.status}
        if self.subject:
            out["subject"] = self.subject
        out.update(self.certificate)
        return out


def _violation_result(condition: str, subject: str, v: InvarianceViolation | None,
                      extra: Mapping | None = None) -> CheckResult:
    cert = dict(extra or {})
    if v is None:
        return CheckResult(condition, PASS, subject, cert)
    cert.update(v.to_json())
    return CheckResult(condition, FAIL, subject, cert)


# ---------------------------------------------------------------------------
# kernels of carrier maps


def map_kernel(f: Matrix, ring: str, target_relations: Matrix | None = None) -> Matrix:
    """Basis (columns) of ker(f: R^n -> R^k / span(target_relations)).

    Over Z the result is the full preimage lattice; without relations this is
    the saturated kernel lattice.
    """
    f = to_ring(f, ring)
    n = f.cols
    cls = matrix_class(ring)
    if n == 0:
        return cls.zeros(0, 0)
    rel = to_ring(target_relations, ring) if target_relations is not None else None
    if rel is not None and rel.rows != f.rows:
        raise ValueError(f"target relations have {rel.rows} rows, map has {f.rows}")
    system = f.hstack(-rel) if rel is not None and rel.cols else f
    if system.rows == 0:
        return cls.identity(n)
    K = kernel_basis(system, ring)
    if not K.cols:
        return cls.zeros(n, 0)
    Kf = K.submatrix(range(n), None)
    if ring == "Z":
        L = image_lattice(Kf)
        return IntMat.from_columns([c for c in L.columns() if any(c)], n)
    nz = [c for c in Kf.columns() if any(c)]
    if not nz:
        return cls.zeros(n, 0)
    R = RatMat.from_columns(nz, n)
    B = canonical_basis(R, "Q")
    return RatMat.from_columns([c for c in B.columns() if any(c)], n)


# ---------------------------------------------------------------------------
# condition (a)


def check_condition_a(T: Representation, pairs: Sequence | None = None) -> list[CheckResult]:
    """Invertibility of [T(i) | T(i')] for each declared coproduct.

    ``pairs`` selects (p, p') pairs to test; a requested pair with no
    coproduct entry is reported NOT-CHECKED.  With no coproducts at all the
    result is a single NOT-CHECKED item.
    """
    D = T.diagram
    table = {(c.p, c.q): c for c in D.coproducts}
    wanted = list(table) if pairs is None else [tuple(p) for p in pairs]
    if not wanted:
        return [CheckResult("a", NOT_CHECKED, "", {"reason": "empty coproduct table"})]
    values, mats = T.values, T.matrices
    out = []
    for key in wanted:
        c = table.get(key)
        subject = f"{key[0]}+{key[1]}"
        if c is None:
            out.append(CheckResult("a", NOT_CHECKED, subject, {"reason": "no coproduct entry"}))
            continue
        B = mats[c.i].hstack(mats[c.i_prime])
        cert = {"sum": c.sum, "i": c.i, "iPrime": c.i_prime}
        if B.rows != B.cols:
            cert.update(reason="block map is not square",
                        shape=[B.rows, B.cols], ranks=[values[c.p], values[c.q], values[c.sum]])
            out.append(CheckResult("a", FAIL, subject, cert))
            continue
        d = det(B) if B.rows else 1
        cert["det"] = _enc(d)
        ok = d in (1, -1) if T.ring == "Z" else d != 0
        if not ok:
            if d == 0:
                v = kernel_basis(B, T.ring)
                cert["kernelVector"] = [_enc(x) for x in v.col(0)]
            else:
                cert["invariantFactors"] = list(smith_normal_form(B).diagonal)
        out.append(CheckResult("a", PASS if ok else FAIL, subject, cert))
    return out


# ---------------------------------------------------------------------------
# condition (c) and the graph-of-f reformulation


def check_condition_c(T: Representation, E: Diagram, p: str, f: Matrix,
                      target_relations: Matrix | None = None) -> CheckResult:
    """PASS iff ker(f) ⊆ T(p) is stable under End(T|_E); FAIL carries the violating data."""
    if p not in E.objects:
        raise ValueError(f"object {p!r} is not in the stage")
    n = T.values[p]
    if f.cols != n:
        raise ValueError(f"map has {f.cols} columns but T({p}) has rank {n}")
    M = module_structure(T, E, p)
    K = map_kernel(f, T.ring, target_relations)
    v = invariance_violation(M, K) if K.cols else None
    return _violation_result("c", p, v, {"kernelRank": K.cols})


def graph_map(f: Matrix, ring: str) -> Matrix:
    """g = [f | −I]: T(p) ⊕ T(p') -> T(p'), whose kernel is the graph of f."""
    f = to_ring(f, ring)
    return f.hstack(-matrix_class(ring).identity(f.rows))


@dataclass(frozen=True)
class ModuleMapRoutes:
    direct: str
    graph_route: str
    violation: Mapping | None = None

    @property
    def agree(self) -> bool:
        return self.direct == self.graph_route

    @property
    def status(self) -> str:
        return self.direct

    def to_json(self) -> dict:
        out = {"condition": "module-map", "status": self.direct, "graphRoute": self.graph_route,
               "agree": self.agree}
        if self.violation:
            out.update(self.violation)
        return out


def check_module_map_routes(T: Representation, E: Diagram, p: str, p2: str, f: Matrix) -> ModuleMapRoutes:
    """Whether f: T(p) -> T(p2) is a map of End(T|_E)-modules, by two routes.

    The direct route tests f·a_p = a_{p2}·f on the basis.  The second route
    tests stability of ker[f | −I] (the graph of f) in T(p) ⊕ T(p2).
    """
    for q in (p, p2):
        if q not in E.objects:
            raise ValueError(f"object {q!r} is not in the stage")
    if f.shape != (T.values[p2], T.values[p]):
        raise ValueError(f"map shape {f.shape} does not match T({p2}) x T({p})")
    A = compute_end(T, E)
    f = to_ring(f, T.ring)
    direct = PASS
    violation = None
    for i in range(A.dim):
        if f @ A.component(i, p) != A.component(i, p2) @ f:
            direct = FAIL
            violation = {"basisIndex": i}
            break
    cls = matrix_class(T.ring)
    S = free_module(A, [block_diag([A.component(i, p), A.component(i, p2)], cls)
                        for i in range(A.dim)], f.cols + f.rows)
    K = map_kernel(graph_map(f, T.ring), T.ring)
    v = invariance_violation(S, K) if K.cols else None
    route = PASS if v is None else FAIL
    if v is not None and violation is None:
        violation = v.to_json()
    elif v is not None:
        violation = {**v.to_json(), "basisIndex": violation["basisIndex"]}
    return ModuleMapRoutes(direct, route, violation)


# ---------------------------------------------------------------------------
# the module V(N, α)


@dataclass(frozen=True)
class DescentResult:
    status: str
    module: StageModule | None = None
    certificate: Mapping = field(default_factory=dict)
    unique: bool | None = None

    def to_json(self) -> dict:
        out = {"condition": "V", "status": self.status}
        out.update(self.certificate)
        if self.module is not None:
            out["module"] = self.module.to_json()
            out["unique"] = self.unique
        return out


def _lift_through(alpha: Matrix, rel: Matrix, ring: str) -> Matrix | None:
    """X with alpha·X ≡ I modulo rel, or None when alpha is not onto the quotient."""
    k = alpha.rows
    system = alpha.hstack(rel) if rel.cols else alpha
    cols = []
    for j in range(k):
        s = solve_linear(system, [int(i == j) for i in range(k)], ring)
        if s is None:
            return None
        cols.append(s.particular[:alpha.cols])
    return matrix_class(ring).from_columns(cols, alpha.cols)


def descent_is_unique(alpha: Matrix, rel: Matrix, ring: str) -> bool:
    """Every D with D·alpha ≡ 0 (mod rel) is itself ≡ 0, so a descended action is unique."""
    k, n = alpha.shape
    r = rel.cols
    cls = matrix_class(ring)
    # unknowns: vec(D) (k*k, row-major) then Y (r x n) with D·alpha − rel·Y = 0
    nv = k * k + r * n
    rows = []
    for a in range(k):
        for b in range(n):
            row = [0] * nv
            for c in range(k):
                row[a * k + c] += alpha[c, b]
            for s in range(r):
                row[k * k + s * n + b] -= rel[a, s]
            rows.append(row)
    if not rows or nv == 0:
        return True
    K = kernel_basis(cls(rows, len(rows), nv), ring)
    span = Span(rel, ring) if r else None
    for v in K.columns():
        D = cls([v[a * k:(a + 1) * k] for a in range(k)], k, k)
        for c in D.columns():
            if span is None:
                if any(c):
                    return False
            elif not span.contains(c):
                return False
    return True


def build_V(T: Representation, E: Diagram, p: str, alpha: Matrix,
            N_relations: Matrix | None = None) -> DescentResult:
    """Descend the End(T|_E)-action on T(p) along α: T(p) ↠ N = R^k / N_relations."""
    ring = T.ring
    cls = matrix_class(ring)
    alpha = to_ring(alpha, ring)
    k = alpha.rows
    rel = to_ring(N_relations, ring) if N_relations is not None else cls.zeros(k, 0)
    if ring == "Q" and rel.cols:
        raise ValueError("over Q the target carrier is given without relations")
    lift = _lift_through(alpha, rel, ring)
    if lift is None:
        return DescentResult(FAIL, None, {"reason": "alpha is not surjective"})
    c = check_condition_c(T, E, p, alpha, rel)
    if not c.passed:
        return DescentResult(FAIL, None, dict(c.certificate, reason="kernel not invariant"))
    A = compute_end(T, E)
    action = [alpha @ A.component(i, p) @ lift for i in range(A.dim)]
    V = StageModule(A, k, rel, action)
    M = module_structure(T, E, p)
    if not (V.relations_preserved() and is_module_map(alpha, M, V)):
        raise AssertionError("descended action failed verification")
    return DescentResult(PASS, V, {"object": p}, descent_is_unique(alpha, rel, ring))


def v_independent(first: DescentResult, second: DescentResult) -> bool:
    """Two descents onto the same carrier give the same action (identity is an isomorphism)."""
    if first.module is None or second.module is None:
        raise ValueError("both descents must have succeeded")
    V1, V2 = first.module, second.module
    if V1.algebra is not V2.algebra and V1.algebra.stage != V2.algebra.stage:
        raise ValueError("descents were taken at different stages")
    return all(V1.equal_mod_relations(a, b) for a, b in zip(V1.action, V2.action))


# ---------------------------------------------------------------------------
# refined criterion over Q


@dataclass(frozen=True)
class SaturationIdentity:
    holds: bool
    kernel_Z: IntMat
    kernel_Q_cap: IntMat

    def to_json(self) -> dict:
        return {"holds": self.holds, "kerZ": self.kernel_Z.to_json(),
                "latticeCapKerQ": self.kernel_Q_cap.to_json()}


def kernel_saturation_identity(f: Matrix, target_relations: Matrix | None = None) -> SaturationIdentity:
    """Compare ker_Z(f) with Z^n ∩ ker_Q(f).

    The target is Z^k / span(target_relations); the identity is guaranteed when
    that quotient is torsion-free and can fail otherwise.
    """
    n = f.cols
    fz = clear_denominators(f) if isinstance(f, RatMat) else f
    KZ = map_kernel(fz, "Z", target_relations)
    KQ = map_kernel(fz.to_rat(), "Q", target_relations.to_rat() if target_relations is not None
                    else None)
    cap = saturate(KQ) if KQ.cols else IntMat.zeros(n, 0)
    same = (KZ.cols == 0 and cap.cols == 0) or (KZ.cols == cap.cols and lattice_equal(KZ, cap))
    return SaturationIdentity(same, KZ, cap)


def check_refined_c_prime(T: Representation, E: Diagram, p: str, f_Q: Matrix) -> CheckResult:
    """Condition (c) for T ⊗ Q with a rational map, plus the saturation identity.

    The identity is checked for the integral representative of f_Q (rows
    cleared of denominators), whose target is torsion-free.
    """
    if T.ring != "Z":
        raise ValueError("check_refined_c_prime expects a representation over Z")
    if f_Q.cols != T.values[p]:
        raise ValueError(f"map has {f_Q.cols} columns but T({p}) has rank {T.values[p]}")
    TQ = base_change_Q(T)
    res = check_condition_c(TQ, E, p, to_ring(f_Q, "Q"))
    ident = kernel_saturation_identity(clear_denominators(to_ring(f_Q, "Q")))
    cert = dict(res.certificate, saturationIdentity=ident.holds)
    status = res.status if ident.holds else FAIL
    return CheckResult("c'", status, p, cert)


# ---------------------------------------------------------------------------
# target presentations and the full criterion


class TargetPresentation:
    """A finite presentation of a candidate target category.

    ``modules`` maps names to modules over ``algebra``; ``S`` sends each
    diagram object to a module name; ``generators`` lists the module names
    asserted to exhaust the target up to quotients.  Construction checks that
    forgetting S recovers T on objects and arrows.
    """

    def __init__(self, T: Representation, algebra, modules: Mapping[str, StageModule],
                 S: Mapping[str, str], generators: Sequence[str] = ()):
        self.T = T
        self.algebra = algebra
        self.modules = dict(modules)
        self.S = dict(S)
        self.generators = list(generators)
        problems = self.problems()
        if problems:
            raise ValueError("inconsistent target presentation: " + "; ".join(problems))

    def G(self, name: str):
        return self.modules[name].carrier

    def module_of(self, p: str) -> StageModule:
        return self.modules[self.S[p]]

    def problems(self) -> list[str]:
        out = []
        T = self.T
        if getattr(self.algebra, "ring", None) != T.ring:
            out.append("algebra ring differs from the representation ring")
        for name, M in self.modules.items():
            if M.algebra is not self.algebra:
                out.append(f"module {name} is over a different algebra")
        for g in self.generators:
            if g not in self.modules:
                out.append(f"unknown generator module {g}")
        values = T.values
        for p in T.diagram.objects:
            if p not in self.S or self.S[p] not in self.modules:
                out.append(f"object {p} has no image module")
                continue
            M = self.modules[self.S[p]]
            if M.relations.cols or M.ngens != values[p]:
                out.append(f"carrier of S({p}) is not T({p})")
        if out:
            return out
        for a in T.diagram.arrows:
            F = to_ring(T.matrix(a.id), T.ring)
            if not is_module_map(F, self.module_of(a.src), self.module_of(a.dst)):
                out.append(f"T({a.id}) is not a map S({a.src}) -> S({a.dst})")
        return out


def _candidates(gens: Sequence[Matrix], bound: int, limit: int, seed: int = 0):
    """Maps to try for surjectivity, cheapest first, coefficients in [-bound, bound]."""
    yield from gens
    for F, G in itertools.combinations(gens, 2):
        yield F + G
        yield F - G
    k = len(gens)
    if (2 * bound + 1) ** k <= limit:
        coeff_iter = itertools.product(range(-bound, bound + 1), repeat=k)
    else:
        rnd = random.Random(seed)
        coeff_iter = (tuple(rnd.randint(-bound, bound) for _ in range(k)) for _ in range(limit))
    for coeffs in coeff_iter:
        if sum(1 for c in coeffs if c) < 2:
            continue
        F = None
        for c, G in zip(coeffs, gens):
            if c:
                F = G.scale(c) if F is None else F + G.scale(c)
        yield F


def check_condition_b(target: TargetPresentation, bound: int = 2,
                      limit: int = 2000) -> list[CheckResult]:
    """Each declared generator must be a quotient of some S(p).

    PASS comes with a surjection.  FAIL is certified either by a generator
    count (N needs more generators than T(p) has, for every p) or by the
    images of all module maps S(p) -> N failing to cover N.  Otherwise the
    bounded search (single generators, the identity when it is a module map,
    pairwise sums and differences, then small combinations: all of them when
    there are at most ``limit``, else ``limit`` seeded random ones) ends in
    NOT-FOUND.
    """
    if not target.generators:
        return [CheckResult("b", NOT_CHECKED, "", {"reason": "no declared generators"})]
    out = []
    objects = list(target.T.diagram.objects)
    for name in target.generators:
        N = target.modules[name]
        mu = N.carrier.free_rank + len(N.carrier.torsion)
        found, blocked = None, {}
        for p in objects:
            X = target.module_of(p)
            if mu > X.ngens:
                blocked[p] = {"reason": "generator count", "needed": mu, "available": X.ngens}
                continue
            H = module_hom(X, N)
            lifts = H.lattice_basis()
            if lifts:
                images = lifts[0]
                for F in lifts[1:]:
                    images = images.hstack(F)
            else:
                images = matrix_class(N.ring).zeros(N.ngens, 0)
            if not _covers(images, N):
                blocked[p] = {"reason": "images of all maps do not cover the module"}
                continue
            cands = _candidates(H.generators, bound, limit)
            if X.ngens == N.ngens:
                I = matrix_class(N.ring).identity(N.ngens)
                if is_module_map(I, X, N):
                    cands = itertools.chain([I], cands)
            for F in cands:
                if is_surjective(F, X, N):
                    found = (p, F)
                    break
            if found:
                break
        if found:
            out.append(CheckResult("b", PASS, name, {"object": found[0],
                                                     "surjection": found[1].to_json()}))
        elif len(blocked) == len(objects):
            out.append(CheckResult("b", FAIL, name, {"obstructions": blocked}))
        else:
            out.append(CheckResult("b", NOT_FOUND, name, {"bound": bound}))
    return out


def _covers(images: Matrix, N: StageModule) -> bool:
    """Whether the columns of ``images`` together with the relations span R^ngens."""
    if N.ngens == 0:
        return True
    B = images.hstack(N.relations) if N.relations.cols else images
    if not B.cols:
        return False
    if N.ring == "Q":
        return rank(B) == N.ngens
    return cokernel(B).is_trivial


@dataclass(frozen=True)
class TestMap:
    """A carrier map f: T(p) -> R^k / relations used for condition (c)."""

    object: str
    matrix: Matrix
    relations: Matrix | None = None
    name: str = ""


@dataclass(frozen=True)
class CriterionReport:
    condition_a: tuple[CheckResult, ...]
    condition_b: tuple[CheckResult, ...]
    condition_c: tuple[CheckResult, ...]

    @property
    def overall(self) -> str:
        items = self.condition_a + self.condition_b + self.condition_c
        if any(r.status == FAIL for r in items):
            return FAIL
        if all(r.status == PASS for r in items) and items:
            return PASS
        return "INCOMPLETE"

    def failures(self) -> list[CheckResult]:
        return [r for r in self.condition_a + self.condition_b + self.condition_c
                if r.status == FAIL]

    def to_json(self) -> dict:
        return {"overall": self.overall,
                "condition_a": [r.to_json() for r in self.condition_a],
                "condition_b": [r.to_json() for r in self.condition_b],
                "condition_c": [r.to_json() for r in self.condition_c]}


def full_criterion(T: Representation, target: TargetPresentation, test_maps: Sequence[TestMap],
                   E: Diagram | None = None, bound: int = 2) -> CriterionReport:
    """Run (a) over the coproduct table, (b) over the declared generators, (c) over test maps.

    Overall is PASS only when every item passes; any FAIL makes it FAIL, and
    anything NOT-CHECKED or NOT-FOUND leaves it INCOMPLETE.
    """
    if target.T is not T and target.T != T:
        raise ValueError("target presentation was built for a different representation")
    E = E if E is not None else T.diagram
    a = tuple(check_condition_a(T))
    b = tuple(check_condition_b(target, bound))
    c = []
    for k, tm in enumerate(test_maps):
        r = check_condition_c(T, E, tm.object, tm.matrix, tm.relations)
        c.append(CheckResult("c", r.status, tm.name or f"map{k}@{tm.object}", r.certificate))
    if not c:
        c.append(CheckResult("c", NOT_CHECKED, "", {"reason": "no test maps"}))
    return CriterionReport(a, b, tuple(c))
