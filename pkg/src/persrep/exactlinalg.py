"""Exact scalars and dense matrix algorithms over Q, F_p and Z.

Everything is deterministic: Gaussian elimination pivots on the leftmost
nonzero column with the smallest row index, and the Smith reduction picks
the entry of smallest absolute value, ties broken by position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple


class RingError(Exception):
    """Base class for coefficient-ring failures."""


class UnsupportedRingError(RingError):
    """The operation is not available over this ring."""


class Ring:
    kind: str = ""
    is_field: bool = False

    def canon(self, x):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def inv(self, a):
        raise UnsupportedRingError(f"no inverses over {self.kind}")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def scalar_to_json(self, a):
        raise NotImplementedError

    def scalar_from_json(self, v):
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(tuple(sorted(self.descriptor().items())))

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor()})"


def _parse_number(v, allow_fraction: bool):
    if isinstance(v, bool):
        raise RingError(f"bad scalar {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise RingError(f"bad scalar literal {v!r}") from exc
    raise RingError(f"bad scalar {v!r}")


class RationalRing(Ring):
    kind = "rational"
    is_field = True

    def canon(self, x):
        return _parse_number(x, allow_fraction=True)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def scalar_to_json(self, a):
        return str(a)

    def scalar_from_json(self, v):
        return self.canon(v)

    def descriptor(self):
        return {"kind": "rational"}


class IntegerRing(Ring):
    kind = "integer"
    is_field = False

    def canon(self, x):
        q = _parse_number(x, allow_fraction=False)
        if q.denominator != 1:
            raise RingError(f"not an integer: {x!r}")
        return int(q)

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scalar_to_json(self, a):
        return int(a)

    def scalar_from_json(self, v):
        return self.canon(v)

    def descriptor(self):
        return {"kind": "integer"}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField(Ring):
    kind = "prime_field"
    is_field = True

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise RingError(f"modulus must be prime, got {p!r}")
        self.p = p

    def canon(self, x):
        q = _parse_number(x, allow_fraction=False)
        if q.denominator != 1:
            raise RingError(f"not a residue: {x!r}")
        return int(q) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def scalar_to_json(self, a):
        return int(a)

    def scalar_from_json(self, v):
        return self.canon(v)

    def descriptor(self):
        return {"kind": "prime_field", "p": self.p}


QQ = RationalRing()
ZZ = IntegerRing()


def ring_from_descriptor(d: dict) -> Ring:
    if not isinstance(d, dict) or "kind" not in d:
        raise RingError(f"bad ring descriptor: {d!r}")
    kind = d["kind"]
    if kind == "rational":
        extra = set(d) - {"kind"}
    elif kind == "integer":
        extra = set(d) - {"kind"}
    elif kind == "prime_field":
        extra = set(d) - {"kind", "p"}
    else:
        raise RingError(f"unknown ring kind {kind!r}")
    if extra:
        raise RingError(f"unknown fields in ring descriptor: {sorted(extra)}")
    if kind == "rational":
        return QQ
    if kind == "integer":
        return ZZ
    if "p" not in d:
        raise RingError("prime_field descriptor needs p")
    return PrimeField(d["p"])


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over a fixed ring."""

    ring: Ring
    nrows: int
    ncols: int
    rows: tuple

    @staticmethod
    def from_rows(ring: Ring, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        rows = [tuple(ring.canon(x) for x in r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError(f"expected {ncols} columns, got {width}")
            ncols = width
        elif ncols is None:
            ncols = 0
        return Matrix(ring, len(rows), ncols, tuple(rows))

    @staticmethod
    def identity(ring: Ring, n: int) -> "Matrix":
        one, zero = ring.one(), ring.zero()
        return Matrix(ring, n, n, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)
        ))

    @staticmethod
    def zeros(ring: Ring, m: int, n: int) -> "Matrix":
        zero = ring.zero()
        return Matrix(ring, m, n, tuple(tuple(zero for _ in range(n)) for _ in range(m)))

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.ncols, self.nrows,
                      tuple(tuple(self.rows[i][j] for i in range(self.nrows))
                            for j in range(self.ncols)))

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ring != other.ring:
            raise RingError("mixed rings in matrix product")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.nrows}x{self.ncols} times {other.nrows}x{other.ncols}")
        R = self.ring
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = R.zero()
                for k in range(self.ncols):
                    acc = R.add(acc, R.mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return Matrix(R, self.nrows, other.ncols, tuple(out))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ring != other.ring:
            raise RingError("mixed rings in vstack")
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.ring, self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def is_zero(self) -> bool:
        R = self.ring
        return all(R.is_zero(x) for r in self.rows for x in r)

    def to_json(self) -> list:
        return [[self.ring.scalar_to_json(x) for x in r] for r in self.rows]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ring, self.nrows, self.ncols, self.rows))


def _require_field(mat: Matrix, op: str):
    if not mat.ring.is_field:
        raise UnsupportedRingError(f"{op} needs a field ring, got {mat.ring.kind}")


def _echelon(mat: Matrix) -> Tuple[List[list], List[int]]:
    """Row echelon form; returns (mutable rows, pivot column list)."""
    R = mat.ring
    rows = [list(r) for r in mat.rows]
    pivots: List[int] = []
    r = 0
    for c in range(mat.ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not R.is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = R.inv(rows[r][c])
        rows[r] = [R.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not R.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat: Matrix) -> int:
    """Row rank by exact Gaussian elimination (fields only)."""
    _require_field(mat, "rank")
    _, pivots = _echelon(mat)
    return len(pivots)


def kernel_basis(mat: Matrix) -> Matrix:
    """Basis of the right null space {x : mat.x = 0}, one vector per row."""
    _require_field(mat, "kernel_basis")
    R = mat.ring
    rows, pivots = _echelon(mat)
    pivot_set = set(pivots)
    free_cols = [c for c in range(mat.ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [R.zero()] * mat.ncols
        v[fc] = R.one()
        for r, pc in enumerate(pivots):
            v[pc] = R.neg(rows[r][fc])
        basis.append(v)
    return Matrix.from_rows(R, basis, ncols=mat.ncols)


def determinant(mat: Matrix):
    """Exact determinant of a square matrix (any shipped ring)."""
    if mat.nrows != mat.ncols:
        raise ValueError("determinant of a non-square matrix")
    if mat.nrows == 0:
        return mat.ring.one()
    if mat.ring.kind == "integer":
        work = Matrix.from_rows(QQ, [[Fraction(x) for x in r] for r in mat.rows])
        d = determinant(work)
        return int(d)
    R = mat.ring
    rows = [list(r) for r in mat.rows]
    det = R.one()
    n = mat.nrows
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if not R.is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            return R.zero()
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = R.neg(det)
        det = R.mul(det, rows[c][c])
        inv = R.inv(rows[c][c])
        for i in range(c + 1, n):
            if not R.is_zero(rows[i][c]):
                f = R.mul(inv, rows[i][c])
                rows[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return det


def smith_normal_form(mat: Matrix) -> Tuple[List[int], Matrix, Matrix]:
    """Smith reduction over Z: L * mat * R = diag(d1..dr), d1 | d2 | ... | dr.

    Returns (invariant factors, L, R); both transforms are unimodular and
    the factors are positive.  Fields should use rank() instead.
    """
    if mat.ring.kind != "integer":
        raise UnsupportedRingError(f"smith_normal_form needs the integer ring, got {mat.ring.kind}")
    m, n = mat.nrows, mat.ncols
    A = [list(r) for r in mat.rows]
    L = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    R = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):
        # row_i -= q * row_j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        L[i] = [a - q * b for a, b in zip(L[i], L[j])]

    def col_op(i, j, q):
        # col_i -= q * col_j
        for row in A:
            row[i] -= q * row[j]
        for row in R:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    t = 0
    limit = min(m, n)
    while t < limit:
        # pivot: smallest absolute value in the trailing block, ties by position
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a != 0 and (best is None or abs(a) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        while True:
            # clear the pivot column and row; a nonzero remainder becomes
            # a smaller candidate pivot, so re-select and repeat
            dirty = False
            for i in range(t + 1, m):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    row_op(i, t, q)
                    if A[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    col_op(j, t, q)
                    if A[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the whole trailing block for the chain
            offender = None
            d = A[t][t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % d != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]
        t += 1

    factors = [A[i][i] for i in range(min(m, n)) if A[i][i] != 0]
    Lm = Matrix.from_rows(ZZ, L, ncols=m)
    Rm = Matrix.from_rows(ZZ, R, ncols=n)
    return factors, Lm, Rm


class RowSpace:
    """Membership tests in the row span of a fixed matrix."""

    def __init__(self, mat: Matrix):
        self.ring = mat.ring
        self.ncols = mat.ncols
        if mat.ring.is_field:
            rows, pivots = _echelon(mat)
            self._rows = [rows[i] for i in range(len(pivots))]
            self._pivots = pivots
        elif mat.ring.kind == "integer":
            self._factors, _, self._R = smith_normal_form(mat)
        else:
            raise UnsupportedRingError(f"no row-space test over {mat.ring.kind}")

    def contains(self, vec: Sequence) -> bool:
        R = self.ring
        v = [R.canon(x) for x in vec]
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        if R.is_field:
            for r, pc in zip(self._rows, self._pivots):
                f = v[pc]
                if not R.is_zero(f):
                    v = [R.sub(x, R.mul(f, y)) for x, y in zip(v, r)]
            return all(R.is_zero(x) for x in v)
        w = [sum(v[i] * self._R.rows[i][j] for i in range(self.ncols))
             for j in range(self.ncols)]
        r = len(self._factors)
        for j in range(self.ncols):
            if j < r:
                if w[j] % self._factors[j] != 0:
                    return False
            elif w[j] != 0:
                return False
        return True


def row_space_contains(mat: Matrix, vec: Sequence) -> bool:
    return RowSpace(mat).contains(vec)


def rows_in_row_space(candidate: Matrix, space: Matrix) -> bool:
    """True when every row of candidate lies in the row span of space."""
    rs = RowSpace(space)
    return all(rs.contains(r) for r in candidate.rows)


@dataclass(frozen=True)
class FpPresentation:
    """Finitely presented module R^n / (row span of relations)."""

    ring: Ring
    n: int
    relations: Matrix

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise RingError("relation matrix ring differs from presentation ring")
        if self.relations.ncols != self.n:
            raise ValueError(
                f"relation matrix has {self.relations.ncols} columns for {self.n} generators"
            )

    @staticmethod
    def make(ring: Ring, n: int, rows: Sequence[Sequence]) -> "FpPresentation":
        return FpPresentation(ring, n, Matrix.from_rows(ring, rows, ncols=n))

    @staticmethod
    def free(ring: Ring, n: int) -> "FpPresentation":
        return FpPresentation(ring, n, Matrix.from_rows(ring, [], ncols=n))

    def dim(self) -> int:
        """Dimension of the cokernel (fields only)."""
        if not self.ring.is_field:
            raise UnsupportedRingError("dim needs a field ring")
        return self.n - rank(self.relations)

    def invariants(self) -> tuple:
        """(free rank, nontrivial invariant factors) over Z."""
        if self.ring.kind != "integer":
            raise UnsupportedRingError("invariants need the integer ring")
        factors, _, _ = smith_normal_form(self.relations)
        free = self.n - len(factors)
        torsion = tuple(d for d in factors if d != 1)
        return free, torsion


def presentation_iso(p1: FpPresentation, p2: FpPresentation) -> bool:
    """Whether two presented modules are abstractly isomorphic.

    Fields compare dimensions; Z compares free rank and nontrivial
    invariant factors.  Other rings are rejected.
    """
    if p1.ring != p2.ring:
        raise RingError("presentations over different rings")
    if p1.ring.is_field:
        return p1.dim() == p2.dim()
    if p1.ring.kind == "integer":
        return p1.invariants() == p2.invariants()
    raise UnsupportedRingError(f"no isomorphism test over {p1.ring.kind}")


def map_is_well_defined(T: Matrix, src: FpPresentation, dst: FpPresentation) -> bool:
    """Whether the column-convention matrix T sends src relations into dst relations."""
    if T.nrows != dst.n or T.ncols != src.n:
        raise ValueError(f"map shape {T.nrows}x{T.ncols} does not match {dst.n}x{src.n}")
    if src.relations.nrows == 0:
        return True
    images = src.relations.mul(T.transpose())
    return rows_in_row_space(images, dst.relations)


def induced_rank(T: Matrix, src: FpPresentation, dst: FpPresentation) -> int:
    """Rank of the induced map on cokernels (fields; Z lifts to Q)."""
    if T.nrows != dst.n or T.ncols != src.n:
        raise ValueError("map shape mismatch")
    if T.ring.kind == "integer":
        T = _lift_to_qq(T)
        dst = FpPresentation(QQ, dst.n, _lift_to_qq(dst.relations))
    stacked = T.transpose().vstack(dst.relations)
    return rank(stacked) - rank(dst.relations)


def _lift_to_qq(mat: Matrix) -> Matrix:
    return Matrix.from_rows(QQ, [[Fraction(x) for x in r] for r in mat.rows], ncols=mat.ncols)


def induced_is_iso(T: Matrix, src: FpPresentation, dst: FpPresentation) -> bool:
    """Whether T induces an isomorphism of the presented modules.

    Over a field this is a dimension and rank check.  Over Z the map must
    be surjective (trivial cokernel of image plus relations) and injective
    (everything mapping into the target relations already lies in the
    source relations).
    """
    if src.ring != dst.ring or T.ring != src.ring:
        raise RingError("mixed rings in induced_is_iso")
    if T.nrows != dst.n or T.ncols != src.n:
        raise ValueError("map shape mismatch")
    if src.ring.is_field:
        d1, d2 = src.dim(), dst.dim()
        return d1 == d2 and induced_rank(T, src, dst) == d1
    if src.ring.kind != "integer":
        raise UnsupportedRingError(f"no isomorphism test over {src.ring.kind}")
    if src.invariants() != dst.invariants():
        return False
    stacked = T.transpose().vstack(dst.relations)
    factors, L, _ = smith_normal_form(stacked)
    if len(factors) != dst.n or any(d != 1 for d in factors):
        return False  # not surjective
    # injectivity: the left kernel of [T^t; dst.relations], projected to the
    # first src.n coordinates, generates every x with x.T^t in the target
    # relation span; each such x must already lie in the source relation span
    r = len(factors)
    src_space = RowSpace(src.relations)
    for i in range(r, stacked.nrows):
        x = L.rows[i][: src.n]
        if not src_space.contains(x):
            return False
    return True


def matrices_equal_mod_relations(A: Matrix, B: Matrix, dst: FpPresentation) -> bool:
    """Whether two column-convention maps agree up to the target relations."""
    if A.nrows != B.nrows or A.ncols != B.ncols:
        raise ValueError("shape mismatch")
    R = A.ring
    diff = Matrix(R, A.nrows, A.ncols, tuple(
        tuple(R.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A.rows, B.rows)
    ))
    if diff.is_zero():
        return True
    return rows_in_row_space(diff.transpose(), dst.relations)
