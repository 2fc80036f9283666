"""Commutant algebras End(T|_E) of a diagram representation and their modules.

An element of End(T|_E) is a tuple (a_p) of endomorphisms, one per object of
E, with T(a)·a_p = a_q·T(a) for every arrow a: p -> q of E.  The algebra is
stored as a canonical basis of its solution lattice (Hermite form over Z,
reduced echelon form over Q) with lazily computed structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .diagram import Diagram, Representation, restrict
from .linalg import (FgAbGroup, IntMat, Matrix, RatMat, Span, cokernel, kernel_basis,
                     matrix_class, rank)


class EndAlgebra:
    """End(T|_E) with a canonical basis of commuting tuples."""

    def __init__(self, rep: Representation, basis_rows: Matrix):
        self.rep = rep
        self.stage: Diagram = rep.diagram
        self.ring = rep.ring
        self.objects = rep.diagram.objects
        values = rep.values
        self.sizes = {p: values[p] for p in self.objects}
        self.offsets = {}
        off = 0
        for p in self.objects:
            self.offsets[p] = off
            off += self.sizes[p] ** 2
        self.nvars = off
        self.basis_rows = basis_rows
        self.dim = basis_rows.rows
        self._pivots = [next(j for j, x in enumerate(r) if x != 0) for r in basis_rows.entries]

    def __repr__(self):
        return f"EndAlgebra(stage={list(self.objects)}, ring={self.ring}, dim={self.dim})"

    # tuples <-> flat vectors ------------------------------------------------
    def flatten(self, tup: dict[str, Matrix]) -> list:
        v = []
        for p in self.objects:
            v.extend(tup[p].flat())
        return v

    def unflatten(self, v: Sequence) -> dict[str, Matrix]:
        cls = matrix_class(self.ring)
        out = {}
        for p in self.objects:
            n, o = self.sizes[p], self.offsets[p]
            out[p] = cls([v[o + i * n: o + (i + 1) * n] for i in range(n)], n, n)
        return out

    def component(self, i: int, p: str) -> Matrix:
        n, o = self.sizes[p], self.offsets[p]
        row = self.basis_rows.row(i)
        return matrix_class(self.ring)([row[o + k * n: o + (k + 1) * n] for k in range(n)], n, n)

    @cached_property
    def basis(self) -> tuple[dict[str, Matrix], ...]:
        return tuple(self.unflatten(self.basis_rows.row(i)) for i in range(self.dim))

    def element(self, coords: Sequence) -> dict[str, Matrix]:
        v = [0] * self.nvars
        for c, row in zip(coords, self.basis_rows.entries):
            if c:
                v = [a + c * b for a, b in zip(v, row)]
        return self.unflatten(v)

    def coords(self, v) -> list:
        """Coordinates of a tuple (dict) or flat vector in the basis; raises if outside."""
        if isinstance(v, dict):
            v = self.flatten(v)
        B = self.basis_rows
        c = []
        for i, pc in enumerate(self._pivots):
            s = v[pc] - sum(c[j] * B[j, pc] for j in range(i))
            piv = B[i, pc]
            if self.ring == "Z":
                if s % piv:
                    raise ValueError("tuple is not in the commutant lattice")
                c.append(s // piv)
            else:
                c.append(Fraction(s) / piv)
        recon = [0] * self.nvars
        for ci, row in zip(c, B.entries):
            if ci:
                recon = [a + ci * b for a, b in zip(recon, row)]
        if list(recon) != list(v):
            raise ValueError("tuple is not in the commutant")
        return c

    def identity(self) -> dict[str, Matrix]:
        cls = matrix_class(self.ring)
        return {p: cls.identity(self.sizes[p]) for p in self.objects}

    @cached_property
    def unit_coords(self) -> list:
        return self.coords(self.identity())

    def multiply(self, x: Sequence, y: Sequence) -> list:
        a, b = self.element(x), self.element(y)
        return self.coords({p: a[p] @ b[p] for p in self.objects})

    @cached_property
    def structure_constants(self) -> list[list[list]]:
        """c[i][j][k] with b_i·b_j = sum_k c[i][j][k] b_k."""
        B = self.basis
        return [[self.coords({p: B[i][p] @ B[j][p] for p in self.objects})
                 for j in range(self.dim)] for i in range(self.dim)]

    def commutes(self, tup: dict[str, Matrix]) -> bool:
        mats = self.rep.matrices
        return all(mats[a.id] @ tup[a.src] == tup[a.dst] @ mats[a.id] for a in self.stage.arrows)

    def to_json(self) -> dict:
        sc = []
        if self.dim <= 24:
            for i, row in enumerate(self.structure_constants):
                for j, cs in enumerate(row):
                    for k, c in enumerate(cs):
                        if c:
                            sc.append([i, j, k, _enc(c)])
        return {"stage": self.stage.to_json(), "ring": self.ring, "dim": self.dim,
                "basis": [{p: m.to_json()["entries"] for p, m in b.items()} for b in self.basis],
                "structure": sc, "unit": [_enc(c) for c in self.unit_coords]}


def _enc(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def commutation_system(T: Representation, E: Diagram | None = None) -> Matrix:
    """The linear system in the Σ value(p)² tuple entries whose kernel is End(T|_E)."""
    if E is not None:
        T = restrict(T, E)
    values, mats = T.values, T.matrices
    offsets, off = {}, 0
    for p in T.diagram.objects:
        offsets[p] = off
        off += values[p] ** 2
    rows = []
    for a in T.diagram.arrows:
        M = mats[a.id]
        np_, nq = values[a.src], values[a.dst]
        op, oq = offsets[a.src], offsets[a.dst]
        # (M a_p - a_q M)[r, c] = 0
        for r in range(nq):
            for c in range(np_):
                row = [0] * off
                for k in range(np_):
                    row[op + k * np_ + c] += M[r, k]
                for k in range(nq):
                    row[oq + r * nq + k] -= M[k, c]
                rows.append(row)
    return matrix_class(T.ring)(rows, len(rows), off)


@lru_cache(maxsize=512)
def _compute_end(TE: Representation) -> EndAlgebra:
    C = commutation_system(TE)
    K = kernel_basis(C, TE.ring)
    return EndAlgebra(TE, K.T)


def compute_end(T: Representation, E: Diagram | None = None) -> EndAlgebra:
    """End(T|_E) for a subdiagram E (default: the whole diagram)."""
    T.check()
    if E is None:
        E = T.diagram
    if not E.is_subdiagram_of(T.diagram):
        raise ValueError("compute_end: E is not a subdiagram")
    return _compute_end(restrict(T, E))


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class StageModule:
    """A module over an algebra, presented as R^ngens / column-span(relations).

    ``action[i]`` is the matrix of basis element i on the generators.  Over Q
    the relations are always empty.
    """

    algebra: object
    ngens: int
    relations: Matrix
    action: tuple[Matrix, ...]
    carrier: FgAbGroup = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        if self.relations.rows != self.ngens:
            raise ValueError("relation matrix has the wrong number of rows")
        if len(self.action) != self.algebra.dim:
            raise ValueError("one action matrix per algebra basis element is required")
        if self.ring == "Z":
            carrier = cokernel(self.relations) if self.ngens else FgAbGroup()
        else:
            carrier = FgAbGroup(self.ngens - rank(self.relations) if self.relations.cols
                                else self.ngens)
        object.__setattr__(self, "carrier", carrier)

    @property
    def ring(self) -> str:
        return self.algebra.ring

    @cached_property
    def relation_span(self) -> Span:
        return Span(self.relations, self.ring)

    def relations_preserved(self) -> bool:
        span = self.relation_span
        return all(span.contains(M.apply(r)) for M in self.action for r in self.relations.columns())

    def equal_mod_relations(self, A: Matrix, B: Matrix) -> bool:
        """Whether A and B (maps into this module's generators) agree modulo relations."""
        D = A - B
        if not self.relations.cols:
            return D.is_zero()
        span = self.relation_span
        return all(span.contains(c) for c in D.columns())

    def is_algebra_map(self) -> bool:
        """action(b_i)·action(b_j) = Σ c_ijk action(b_k) and the unit acts as 1 (mod relations)."""
        A = self.algebra
        cls = matrix_class(self.ring)
        n = self.ngens
        unit = cls.zeros(n, n)
        for c, M in zip(A.unit_coords, self.action):
            if c:
                unit = unit + M.scale(c)
        if not self.equal_mod_relations(unit, cls.identity(n)):
            return False
        sc = A.structure_constants
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = cls.zeros(n, n)
                for k, c in enumerate(sc[i][j]):
                    if c:
                        rhs = rhs + self.action[k].scale(c)
                if not self.equal_mod_relations(lhs, rhs):
                    return False
        return True

    def act(self, coords: Sequence) -> Matrix:
        cls = matrix_class(self.ring)
        out = cls.zeros(self.ngens, self.ngens)
        for c, M in zip(coords, self.action):
            if c:
                out = out + M.scale(c)
        return out

    def to_json(self) -> dict:
        return {"carrier": self.carrier.to_json(), "generators": self.ngens,
                "relations": self.relations.to_json(),
                "action": {str(i): M.to_json() for i, M in enumerate(self.action)}}


def free_module(algebra, action: Sequence[Matrix], n: int) -> StageModule:
    return StageModule(algebra, n, matrix_class(algebra.ring).zeros(n, 0), tuple(action))


def module_structure(T: Representation, E: Diagram, p: str) -> StageModule:
    """T̃(p): T(p) with its tautological End(T|_E)-action."""
    if p not in E.objects:
        raise ValueError(f"module_structure: object {p!r} is not in the stage")
    A = compute_end(T, E)
    return free_module(A, [A.component(i, p) for i in range(A.dim)], A.sizes[p])


@dataclass(frozen=True)
class RestrictionMap:
    """End(T|_E') -> End(T|_E) in coordinates: column j = image of basis element j."""

    source: EndAlgebra
    target: EndAlgebra
    matrix: Matrix

    @property
    def image_rank(self) -> int:
        return rank(self.matrix)

    @property
    def is_surjective(self) -> bool:
        if self.target.ring == "Q":
            return self.image_rank == self.target.dim
        from .linalg import image_lattice
        return image_lattice(self.matrix) == matrix_class("Z").identity(self.target.dim) \
            if self.target.dim else True

    def apply(self, coords: Sequence) -> list:
        return self.matrix.apply(list(coords))

    def compose(self, inner: "RestrictionMap") -> "RestrictionMap":
        """self ∘ inner, for inner: E'' -> E' and self: E' -> E."""
        if inner.target.stage != self.source.stage:
            raise ValueError("restriction maps are not composable")
        return RestrictionMap(inner.source, self.target, self.matrix @ inner.matrix)

    def is_algebra_hom(self) -> bool:
        S, Tg = self.source, self.target
        cols = self.matrix.columns()
        if self.apply(S.unit_coords) != list(Tg.unit_coords):
            return False
        for i in range(S.dim):
            for j in range(S.dim):
                if self.apply(S.multiply(_unit(S.dim, i), _unit(S.dim, j))) != \
                        Tg.multiply(cols[i], cols[j]):
                    return False
        return True


def _unit(n: int, i: int) -> list[int]:
    return [int(k == i) for k in range(n)]


def restriction_map(A: EndAlgebra, E: Diagram) -> RestrictionMap:
    """Drop tuple components outside E and re-express in the End(T|_E) basis."""
    if not E.is_subdiagram_of(A.stage):
        raise ValueError("restriction_map: E is not contained in the source stage")
    B = compute_end(A.rep, E)
    cols = []
    for i in range(A.dim):
        tup = A.basis[i]
        cols.append(B.coords({p: tup[p] for p in E.objects}))
    return RestrictionMap(A, B, matrix_class(A.ring).from_columns(cols, B.dim))


# ---------------------------------------------------------------------------
# invariance


@dataclass(frozen=True)
class InvarianceViolation:
    basis_index: int
    generator: tuple
    image: tuple

    def to_json(self) -> dict:
        return {"basisIndex": self.basis_index, "kernelGen": [_enc(x) for x in self.generator],
                "image": [_enc(x) for x in self.image]}


def invariance_violation(M: StageModule, L: Matrix) -> InvarianceViolation | None:
    """First (basis element, generator) with action·generator outside span(L) + relations."""
    if L.rows != M.ngens:
        raise ValueError(f"generators have {L.rows} coordinates, carrier has {M.ngens}")
    span = Span(L.hstack(M.relations) if M.relations.cols else L, M.ring)
    for i, A in enumerate(M.action):
        for g in L.columns():
            img = A.apply(g)
            if not span.contains(img):
                return InvarianceViolation(i, tuple(g), tuple(img))
    return None


def is_invariant_subspace(M: StageModule, L: Matrix) -> bool:
    """Whether the submodule generated by the columns of L is stable under every basis element."""
    return invariance_violation(M, L) is None


class AbstractAlgebra:
    """A finite-rank algebra given by structure constants c[i][j][k] and unit coordinates."""

    def __init__(self, ring: str, structure_constants: Sequence[Sequence[Sequence]],
                 unit_coords: Sequence, name: str = ""):
        self.ring = ring
        self.structure_constants = [[list(c) for c in row] for row in structure_constants]
        self.unit_coords = list(unit_coords)
        self.dim = len(self.unit_coords)
        self.name = name
        if len(self.structure_constants) != self.dim or any(
                len(row) != self.dim or any(len(c) != self.dim for c in row)
                for row in self.structure_constants):
            raise ValueError("structure constants must be a dim x dim x dim table")

    def __repr__(self):
        return f"AbstractAlgebra({self.name or '?'}, ring={self.ring}, dim={self.dim})"

    def multiply(self, x: Sequence, y: Sequence) -> list:
        out = [0] * self.dim
        sc = self.structure_constants
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in enumerate(sc[i][j]):
                    if c:
                        out[k] += xi * yj * c
        return out

    def is_associative(self) -> bool:
        n = self.dim
        e = [[int(k == i) for k in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                ij = self.multiply(e[i], e[j])
                for k in range(n):
                    if self.multiply(ij, e[k]) != self.multiply(e[i], self.multiply(e[j], e[k])):
                        return False
        return True

    def is_unital(self) -> bool:
        n = self.dim
        for i in range(n):
            e = [int(k == i) for k in range(n)]
            if self.multiply(self.unit_coords, e) != e or self.multiply(e, self.unit_coords) != e:
                return False
        return True

    def to_json(self) -> dict:
        sc = [[i, j, k, _enc(c)] for i, row in enumerate(self.structure_constants)
              for j, cs in enumerate(row) for k, c in enumerate(cs) if c]
        return {"ring": self.ring, "dim": self.dim, "structure": sc,
                "unit": [_enc(c) for c in self.unit_coords]}

    @classmethod
    def from_json(cls, obj) -> "AbstractAlgebra":
        n = obj["dim"]
        sc = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, c in obj["structure"]:
            sc[i][j][k] = Fraction(c) if isinstance(c, str) else c
        return cls(obj.get("ring", "Z"), sc, obj["unit"], obj.get("name", ""))
