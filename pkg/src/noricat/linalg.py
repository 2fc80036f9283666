"""Exact integer and rational linear algebra.

Dense matrices with arbitrary-precision integer (``IntMat``) or rational
(``RatMat``) entries, Smith and Hermite normal forms, integer kernels and
images, saturation, cokernels and exact linear solving.  Nothing in here
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class Matrix:
    """Immutable dense matrix.  Use :class:`IntMat` or :class:`RatMat`."""

    ring = "?"
    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, entries: Iterable[Iterable] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(self._coerce(x) for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"ragged or mis-sized matrix literal for shape {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    # constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int):
        columns = list(columns)
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def diag(cls, values: Sequence):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def flat(self) -> list:
        return [x for r in self.entries for x in r]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None):
        rows = range(self.rows) if rows is None else list(rows)
        cols = range(self.cols) if cols is None else list(cols)
        return type(self)([[self.entries[i][j] for j in cols] for i in rows],
                          len(rows), len(cols))

    @property
    def T(self):
        return type(self)([[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)], self.cols, self.rows)

    # arithmetic ---------------------------------------------------------
    def _result_type(self, other):
        if isinstance(self, RatMat) or isinstance(other, RatMat):
            return RatMat
        return IntMat

    def __matmul__(self, other: "Matrix"):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cls = self._result_type(other)
        ocols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self.entries]
        return cls(out, self.rows, other.cols)

    def apply(self, v: Sequence) -> list:
        """Matrix times column vector given as a sequence."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(r, v)) for r in self.entries]

    def __add__(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        cls = self._result_type(other)
        return cls([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                   self.rows, self.cols)

    def __sub__(self, other: "Matrix"):
        return self + (-other)

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self.entries], self.rows, self.cols)

    def scale(self, c):
        cls = RatMat if (isinstance(self, RatMat) or isinstance(c, Fraction)) else IntMat
        return cls([[c * a for a in r] for r in self.entries], self.rows, self.cols)

    def hstack(self, *others: "Matrix"):
        cls = self._result_type(others[0]) if others else type(self)
        for o in others:
            if o.rows != self.rows:
                raise ValueError("hstack row mismatch")
            cls = RatMat if (cls is RatMat or isinstance(o, RatMat)) else IntMat
        rows = [list(r) for r in self.entries]
        for o in others:
            for i, r in enumerate(o.entries):
                rows[i].extend(r)
        return cls(rows, self.rows, self.cols + sum(o.cols for o in others))

    def vstack(self, *others: "Matrix"):
        cls = type(self)
        for o in others:
            if o.cols != self.cols:
                raise ValueError("vstack column mismatch")
            if isinstance(o, RatMat):
                cls = RatMat
        rows = list(self.entries)
        for o in others:
            rows.extend(o.entries)
        return cls(rows, len(rows), self.cols)

    def to_rat(self) -> "RatMat":
        return RatMat(self.entries, self.rows, self.cols)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self.entries)))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.tolist()!r})"

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
            return x
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[enc(x) for x in r] for r in self.entries]}


class IntMat(Matrix):
    """Matrix over Z."""

    ring = "Z"
    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        if hasattr(x, "__index__"):
            return int(x)
        raise TypeError(f"non-integer entry {x!r} in IntMat")


class RatMat(Matrix):
    """Matrix over Q; entries are kept as ``Fraction`` in lowest terms."""

    ring = "Q"
    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, float):
            raise TypeError("floating point entries are not allowed")
        return Fraction(x)

    def to_int(self) -> IntMat:
        return IntMat(self.entries, self.rows, self.cols)

    def denominator_lcm(self) -> int:
        d = 1
        for r in self.entries:
            for x in r:
                d = d * x.denominator // gcd(d, x.denominator)
        return d


def matrix_class(ring: str):
    if ring == "Z":
        return IntMat
    if ring == "Q":
        return RatMat
    raise ValueError(f"unknown ring {ring!r}")


def parse_entry(x):
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"floating point literal {x!r} not allowed; use 'p/q'")
    return x


def matrix_from_json(obj: dict, ring: str | None = None) -> Matrix:
    """Parse ``{"rows": r, "cols": c, "entries": [[...], ...]}``.

    Entries are integers or ``"p/q"`` strings.  Without an explicit ring the
    result is an IntMat when every entry is integral.
    """
    rows, cols = obj["rows"], obj["cols"]
    entries = [[parse_entry(x) for x in row] for row in obj["entries"]]
    if rows == 0:
        entries = []
    if ring is None:
        integral = all(not isinstance(x, Fraction) or x.denominator == 1
                       for r in entries for x in r)
        ring = "Z" if integral else "Q"
    return matrix_class(ring)(entries, rows, cols)


def block_diag(mats: Sequence[Matrix], cls=IntMat) -> Matrix:
    n = sum(m.rows for m in mats)
    k = sum(m.cols for m in mats)
    out = [[0] * k for _ in range(n)]
    r0 = c0 = 0
    for m in mats:
        if isinstance(m, RatMat):
            cls = RatMat
        for i in range(m.rows):
            for j in range(m.cols):
                out[r0 + i][c0 + j] = m[i, j]
        r0 += m.rows
        c0 += m.cols
    return cls(out, n, k)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbGroup:
    """Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    presentation: IntMat | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"torsion {t} is not a divisibility chain")
        if any(d < 2 for d in t):
            raise ValueError("torsion factors must be >= 2")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_invariants(cls, free_rank: int, diagonal: Iterable[int], presentation=None):
        """Build from a Smith diagonal, dropping 1s."""
        return cls(free_rank, tuple(d for d in diagonal if d > 1), presentation)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def order(self) -> int | None:
        """Cardinality, or ``None`` for infinite groups."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        diag = [0] * (len(self.torsion) + len(other.torsion))
        m = IntMat.diag(list(self.torsion) + list(other.torsion)) if diag else IntMat.zeros(0, 0)
        t = cokernel(m) if diag else FgAbGroup()
        return FgAbGroup(self.free_rank + other.free_rank, t.torsion)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


# ---------------------------------------------------------------------------
# elimination over Q


def rref(A: Matrix) -> tuple[RatMat, list[int]]:
    """Reduced row echelon form over Q with zero rows dropped, plus pivot columns."""
    m = [[Fraction(x) for x in r] for r in A.entries]
    pivots: list[int] = []
    r = 0
    for c in range(A.cols):
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return RatMat(m[:r], r, A.cols), pivots


def rank(A: Matrix) -> int:
    if isinstance(A, IntMat):
        return _int_rank(A)
    return len(rref(A)[1])


def _int_rank(A: IntMat) -> int:
    # fraction-free elimination
    m = [list(r) for r in A.entries]
    rk = 0
    for c in range(A.cols):
        p = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[rk], m[p] = m[p], m[rk]
        piv = m[rk][c]
        for i in range(rk + 1, len(m)):
            if m[i][c]:
                f = m[i][c]
                m[i] = [piv * x - f * y for x, y in zip(m[i], m[rk])]
                g = 0
                for x in m[i]:
                    g = gcd(g, x)
                if g > 1:
                    m[i] = [x // g for x in m[i]]
        rk += 1
    return rk


def det(A: Matrix):
    """Exact determinant (Bareiss for integer input)."""
    n = A.rows
    if n != A.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if isinstance(A, RatMat):
        m = [list(r) for r in A.entries]
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                f = m[i][c] / m[c][c]
                if f:
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return d
    m = [list(r) for r in A.entries]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def nullspace_Q(A: Matrix) -> RatMat:
    """Columns form the canonical basis of the rational kernel of A."""
    R, pivots = rref(A)
    free = [j for j in range(A.cols) if j not in set(pivots)]
    cols = []
    for f in free:
        v = [Fraction(0)] * A.cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i, f]
        cols.append(v)
    return RatMat.from_columns(cols, A.cols)


def inverse_Q(A: Matrix) -> RatMat:
    n = A.rows
    if n != A.cols:
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(A.to_rat().hstack(RatMat.identity(n)))
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R.submatrix(range(n), range(n, 2 * n))


# ---------------------------------------------------------------------------
# Hermite normal form and integer lattices


def _hnf_rows(rows: list[list[int]], ncols: int, track: list[list[int]] | None = None):
    """In-place row-style Hermite reduction.  Returns the pivot columns.

    Rows are reduced so that pivots are positive, entries below pivots vanish
    and entries above a pivot lie in [0, pivot).  ``track`` (if given) receives
    the same row operations.
    """
    pivots: list[int] = []
    r = 0
    n = len(rows)

    def swap(a, b):
        rows[a], rows[b] = rows[b], rows[a]
        if track is not None:
            track[a], track[b] = track[b], track[a]

    def addmul(dst, src, f):
        # row[dst] -= f * row[src]
        rows[dst] = [x - f * y for x, y in zip(rows[dst], rows[src])]
        if track is not None:
            track[dst] = [x - f * y for x, y in zip(track[dst], track[src])]

    def negate(i):
        rows[i] = [-x for x in rows[i]]
        if track is not None:
            track[i] = [-x for x in track[i]]

    for c in range(ncols):
        if r >= n:
            break
        while True:
            nz = [i for i in range(r, n) if rows[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(rows[i][c]))
            swap(r, p)
            done = True
            for i in range(r + 1, n):
                if rows[i][c]:
                    addmul(i, r, rows[i][c] // rows[r][c])
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < n and rows[r][c] != 0:
            if rows[r][c] < 0:
                negate(r)
            piv = rows[r][c]
            for i in range(r):
                q = rows[i][c] // piv
                if q:
                    addmul(i, r, q)
            pivots.append(c)
            r += 1
    return pivots


def hnf_rows(B: Matrix) -> IntMat:
    """Canonical row Hermite normal form of the row lattice of B (zero rows dropped)."""
    rows = [list(r) for r in B.entries]
    piv = _hnf_rows(rows, B.cols)
    return IntMat(rows[: len(piv)], len(piv), B.cols)


def hnf_with_transform(A: IntMat) -> tuple[IntMat, IntMat, list[int]]:
    """Row HNF H = W·A with W unimodular; also returns the pivot columns."""
    rows = [list(r) for r in A.entries]
    track = [[int(i == j) for j in range(A.rows)] for i in range(A.rows)]
    piv = _hnf_rows(rows, A.cols, track)
    return IntMat(rows, A.rows, A.cols), IntMat(track, A.rows, A.rows), piv


def canonical_basis(B: Matrix, ring: str = "Z") -> Matrix:
    """Canonical basis (as columns) of the column span of B over the given ring."""
    if ring == "Z":
        return hnf_rows(B.T).T
    R, _ = rref(B.T)
    return R.T


def image_lattice(A: IntMat) -> IntMat:
    """HNF basis (columns) of the Z-span of the columns of A."""
    return canonical_basis(A, "Z")


def kernel_lattice(A: Matrix) -> IntMat:
    """Columns give the canonical basis of {x in Z^cols : A x = 0}.

    Rational input is cleared of denominators row by row first.
    """
    if isinstance(A, RatMat):
        A = clear_denominators(A)
    n = A.cols
    if n == 0:
        return IntMat.zeros(0, 0)
    rows = [list(r) for r in A.T.entries]
    track = [[int(i == j) for j in range(n)] for i in range(n)]
    piv = _hnf_rows(rows, A.rows, track)
    kern = track[len(piv):]
    if not kern:
        return IntMat.zeros(n, 0)
    return hnf_rows(IntMat(kern, len(kern), n)).T


def clear_denominators(A: Matrix) -> IntMat:
    """Scale each row by the lcm of its denominators; row spaces are unchanged."""
    if isinstance(A, IntMat):
        return A
    out = []
    for r in A.entries:
        d = 1
        for x in r:
            d = d * x.denominator // gcd(d, x.denominator)
        out.append([int(x * d) for x in r])
    return IntMat(out, A.rows, A.cols)


def primitive_columns(A: Matrix) -> IntMat:
    """Scale each column to a primitive integer vector (same rational direction)."""
    cols = []
    for c in A.columns():
        d = 1
        for x in c:
            x = Fraction(x)
            d = d * x.denominator // gcd(d, x.denominator)
        v = [int(Fraction(x) * d) for x in c]
        g = 0
        for x in v:
            g = gcd(g, x)
        cols.append([x // g for x in v] if g else v)
    return IntMat.from_columns(cols, A.rows)


def lattice_contains(L: IntMat, v: Sequence[int]) -> bool:
    """Whether the column vector v lies in the Z-span of the columns of L."""
    return solve_linear(L, v, ring="Z") is not None


def lattice_equal(A: IntMat, B: IntMat) -> bool:
    return A.rows == B.rows and image_lattice(A) == image_lattice(B)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """U·A·V = S with U, V unimodular and S diagonal with d1 | d2 | ..."""

    U: IntMat
    S: IntMat
    V: IntMat
    U_inv: IntMat = field(repr=False, compare=False, default=None)
    V_inv: IntMat = field(repr=False, compare=False, default=None)

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def to_json(self) -> dict:
        return {"U": self.U.to_json(), "S": self.S.to_json(), "V": self.V.to_json(),
                "diagonal": self.diagonal}


def smith_normal_form(A: Matrix) -> SmithDecomposition:
    """Smith normal form by smallest-pivot elimination with full transform tracking."""
    if not isinstance(A, IntMat):
        A = IntMat(A.entries, A.rows, A.cols)
    m, n = A.shape
    S = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # Row op: row[a] += f*row[b]  (U left-multiplied; U^{-1}: col[b] -= f*col[a])
    def row_add(a, b, f):
        S[a] = [x + f * y for x, y in zip(S[a], S[b])]
        U[a] = [x + f * y for x, y in zip(U[a], U[b])]
        for r in Ui:
            r[b] -= f * r[a]

    def row_swap(a, b):
        S[a], S[b] = S[b], S[a]
        U[a], U[b] = U[b], U[a]
        for r in Ui:
            r[a], r[b] = r[b], r[a]

    def row_neg(a):
        S[a] = [-x for x in S[a]]
        U[a] = [-x for x in U[a]]
        for r in Ui:
            r[a] = -r[a]

    # Col op: col[a] += f*col[b]  (V right-multiplied; V^{-1}: row[b] -= f*row[a])
    def col_add(a, b, f):
        for r in S:
            r[a] += f * r[b]
        for r in V:
            r[a] += f * r[b]
        Vi[b] = [x - f * y for x, y in zip(Vi[b], Vi[a])]

    def col_swap(a, b):
        for r in S:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]
        Vi[a], Vi[b] = Vi[b], Vi[a]

    t = 0
    while t < min(m, n):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t]:
                    row_add(i, t, -(S[i][t] // S[t][t]))
                    if S[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if S[t][j]:
                    col_add(j, t, -(S[t][j] // S[t][t]))
                    if S[t][j]:
                        changed = True
            if changed:
                # a remainder survived; move the smallest entry of row/col t to the pivot
                cand = [(abs(S[i][t]), i, t) for i in range(t, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t, n) if S[t][j]]
                _, pi, pj = min(cand)
                if pi != t:
                    row_swap(t, pi)
                if pj != t:
                    col_swap(t, pj)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % S[t][t]), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if S[t][t] < 0:
            row_neg(t)
        t += 1

    return SmithDecomposition(IntMat(U, m, m), IntMat(S, m, n), IntMat(V, n, n),
                              IntMat(Ui, m, m), IntMat(Vi, n, n))


def cokernel(A: Matrix) -> FgAbGroup:
    """Z^rows / column-span(A) in invariant-factor form."""
    if A.rows == 0:
        return FgAbGroup(presentation=A)
    snf = smith_normal_form(A)
    diag = snf.diagonal
    r = snf.rank
    return FgAbGroup.from_invariants(A.rows - r, diag[:r], presentation=A)


def saturate(L: Matrix) -> IntMat:
    """Basis (columns, HNF) of (Q-span of L) ∩ Z^rows.

    The columns of L must be linearly independent over Q.
    """
    if isinstance(L, RatMat):
        L = primitive_columns(L)
    k = L.cols
    if rank(L) != k:
        raise ValueError("saturate: columns are linearly dependent")
    if k == 0:
        return IntMat.zeros(L.rows, 0)
    snf = smith_normal_form(L)
    # L = U^{-1} S V^{-1}; the first k columns of U^{-1} span the saturation
    return image_lattice(snf.U_inv.submatrix(None, range(k)))


# ---------------------------------------------------------------------------
# solving


@dataclass(frozen=True)
class Solution:
    """Particular solution plus a basis (columns) of the homogeneous solutions."""

    particular: tuple
    kernel: Matrix


def solve_linear(A: Matrix, b: Sequence, ring: str | None = None) -> Solution | None:
    """Solve A x = b exactly over Z or Q; ``None`` when inconsistent over that ring."""
    b = list(b)
    if len(b) != A.rows:
        raise ValueError(f"dimension mismatch: A has {A.rows} rows, b has {len(b)} entries")
    if ring is None:
        ring = "Q" if isinstance(A, RatMat) or any(
            isinstance(x, Fraction) and x.denominator != 1 for x in b) else "Z"
    if ring == "Q":
        aug = A.to_rat().hstack(RatMat.from_columns([b], A.rows))
        R, piv = rref(aug)
        if A.cols in piv:
            return None
        x = [Fraction(0)] * A.cols
        for i, pc in enumerate(piv):
            x[pc] = R[i, A.cols]
        return Solution(tuple(x), nullspace_Q(A))
    if isinstance(A, RatMat) or any(isinstance(x, Fraction) for x in b):
        aug = clear_denominators(A.to_rat().hstack(RatMat.from_columns([b], A.rows)))
        A = aug.submatrix(None, range(A.cols))
        b = list(aug.col(A.cols))
    b = [int(x) for x in b]
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    diag = snf.diagonal
    r = snf.rank
    y = [0] * A.cols
    for i in range(len(c)):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    x = snf.V.apply(y)
    ker = kernel_lattice(A) if r < A.cols else IntMat.zeros(A.cols, 0)
    return Solution(tuple(x), ker)


def solve_matrix(A: Matrix, B: Matrix, ring: str) -> Matrix | None:
    """Solve A X = B column by column; ``None`` if any column is inconsistent."""
    cols = []
    for j in range(B.cols):
        s = solve_linear(A, B.col(j), ring)
        if s is None:
            return None
        cols.append(s.particular)
    return matrix_class(ring).from_columns(cols, A.cols)


# ---------------------------------------------------------------------------
# ring-dispatched helpers used by the algebra modules


def kernel_basis(A: Matrix, ring: str) -> Matrix:
    """Canonical kernel basis: saturated HNF lattice over Z, RREF-based over Q."""
    if ring == "Z":
        return kernel_lattice(A)
    K = nullspace_Q(A)
    return canonical_basis(K, "Q") if K.cols else K


def cokernel_projection(A: Matrix, ring: str) -> Matrix:
    """Rows of a surjection P with P·A = 0.  Over Z, ker P = im A only if coker A is free."""
    if ring == "Z":
        K = kernel_lattice(A.T)
    else:
        K = kernel_basis(A.T, "Q")
    return K.T


def to_ring(A: Matrix, ring: str) -> Matrix:
    if ring == "Q":
        return A.to_rat() if isinstance(A, IntMat) else A
    if isinstance(A, RatMat):
        return A.to_int()
    return A


def kron(A: Matrix, B: Matrix) -> Matrix:
    cls = RatMat if isinstance(A, RatMat) or isinstance(B, RatMat) else IntMat
    rows = []
    for i in range(A.rows):
        for k in range(B.rows):
            rows.append([A[i, j] * B[k, l] for j in range(A.cols) for l in range(B.cols)])
    return cls(rows, A.rows * B.rows, A.cols * B.cols)


class Span:
    """Column span of A over a ring, factored once for repeated membership queries."""

    def __init__(self, A: Matrix, ring: str):
        self.A = A
        self.ring = ring
        if ring == "Z":
            A = clear_denominators(A) if isinstance(A, RatMat) else A
            self._snf = smith_normal_form(A)
            self._diag = self._snf.diagonal
        else:
            R, piv = rref(A.to_rat().T)
            # rows of R span the column space; pivot coordinates read off membership
            self._R, self._piv = R, piv
            self._sol_cache = None

    def solve(self, v: Sequence) -> list | None:
        """Coefficients x with A x = v, or ``None``."""
        if self.ring == "Z":
            if any(isinstance(x, Fraction) and x.denominator != 1 for x in v):
                return None
            c = self._snf.U.apply([int(x) for x in v])
            y = [0] * self.A.cols
            for i, ci in enumerate(c):
                d = self._diag[i] if i < len(self._diag) else 0
                if d == 0:
                    if ci:
                        return None
                elif ci % d:
                    return None
                else:
                    y[i] = ci // d
            return self._snf.V.apply(y)
        s = solve_linear(self.A.to_rat(), v, "Q")
        return None if s is None else list(s.particular)

    def contains(self, v: Sequence) -> bool:
        if self.ring == "Z":
            return self.solve(v) is not None
        v = [Fraction(x) for x in v]
        w = list(v)
        for i, pc in enumerate(self._piv):
            f = w[pc]
            if f:
                row = self._R.row(i)
                w = [a - f * b for a, b in zip(w, row)]
        return all(x == 0 for x in w)
