"""Exact arithmetic over prime fields / rationals and the linear-algebra kernel.

Prime-field matrices are numpy int64 arrays with entries normalised to
``[0, p)``.  Rational matrices hold ``fractions.Fraction`` entries.  Every
result is exact: the BLAS product inside :func:`matmul_mod` is taken only
when all intermediate sums are integers below ``2**53`` (hence exactly
representable in binary64), otherwise an integer-chunked path is used.

Ranks, reduced echelon forms and kernel bases are canonical: the RREF of a
matrix is unique, so none of them depend on chunking or pivot search order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FieldMismatchError

_F64_LIMIT = 2 ** 53  # largest magnitude at which binary64 is exact on integers


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p for a prime p not in {2, 3}, with p < 2**30."""

    kind = "prime"
    __slots__ = ("p",)

    def __init__(self, p: int):
        if p in (2, 3):
            raise ValueError("characteristic 2 and 3 are not supported")
        if p >= 2 ** 30:
            raise ValueError("prime too large for the exact kernels")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def char(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def normalize(self, a):
        return int(a) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    """The rational numbers, as an exact cross-check backend."""

    kind = "rational"
    char = 0
    __slots__ = ()

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def normalize(self, a):
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


@dataclass(frozen=True)
class Scalar:
    """A field element tagged by its field descriptor."""

    field: object
    value: object

    @staticmethod
    def of(field, v) -> "Scalar":
        return Scalar(field, field.normalize(v))

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError("field mismatch")
            return other.value
        return self.field.normalize(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._coerce(other)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._coerce(other)))

    def __bool__(self):
        return self.value != self.field.zero


# ---------------------------------------------------------------------------
# exact mod-p kernels on raw int64 arrays


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact ``(A @ B) % p`` for int64 arrays with entries in ``[0, p)``."""
    m, k = A.shape
    k2, n = B.shape
    assert k == k2
    if k == 0 or m == 0 or n == 0:
        return np.zeros((m, n), dtype=np.int64)
    if k * (p - 1) * (p - 1) < _F64_LIMIT:
        # every partial sum is a nonnegative integer < 2**53, hence exact
        prod = A.astype(np.float64) @ B.astype(np.float64)
        return np.rint(prod).astype(np.int64) % p
    # integer-chunked fallback: each block's dot products stay below 2**62
    kb = max(1, (2 ** 62) // ((p - 1) * (p - 1)))
    acc = np.zeros((m, n), dtype=np.int64)
    for s in range(0, k, kb):
        acc = (acc + A[:, s:s + kb] @ B[s:s + kb, :]) % p
    return acc


def _normalize_chunk(chunk: np.ndarray, p: int) -> np.ndarray:
    c = np.asarray(chunk, dtype=np.int64)
    if c.ndim != 2:
        raise ValueError("chunk must be 2-D")
    return np.ascontiguousarray(c % p)


class RowReducer:
    """Incremental reduced-row-echelon accumulator over F_p.

    Feed row blocks through :meth:`absorb`; the object maintains the unique
    RREF basis of the row space seen so far.  Because the RREF is canonical,
    rank, pivot columns and kernel bases are independent of how rows are
    split into blocks.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self._rows = np.zeros((0, ncols), dtype=np.int64)
        self._pivcols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._pivcols)

    def absorb(self, chunk: np.ndarray) -> None:
        p = self.p
        C = _normalize_chunk(chunk, p)
        if C.shape[1] != self.ncols:
            raise ValueError("chunk width mismatch")
        if C.shape[0] == 0:
            return
        if self._pivcols:
            coeff = C[:, self._pivcols]
            if coeff.any():
                C = (C - matmul_mod(coeff, self._rows, p)) % p
        piv_rows: list[int] = []
        new_pivs: list[int] = []
        live = np.ones(C.shape[0], dtype=bool)
        col_has = C.any(axis=0)
        for c in np.flatnonzero(col_has):
            nz = np.flatnonzero(live & (C[:, c] != 0))
            if nz.size == 0:
                continue
            r = int(nz[0])
            C[r] = (C[r] * pow(int(C[r, c]), -1, p)) % p
            col = C[:, c]
            others = np.flatnonzero(col)
            others = others[others != r]
            if others.size:
                # pivot rows stay in C so later eliminations keep them reduced
                C[others] = (C[others] - np.outer(col[others], C[r])) % p
            live[r] = False
            piv_rows.append(r)
            new_pivs.append(int(c))
            if not live.any():
                break
        if not piv_rows:
            return
        K = C[piv_rows]
        if self._pivcols:
            coeff = self._rows[:, new_pivs]
            if coeff.any():
                self._rows = (self._rows - matmul_mod(coeff, K, p)) % p
        self._rows = np.vstack([self._rows, K])
        self._pivcols.extend(new_pivs)

    def rref(self) -> tuple[tuple[int, ...], np.ndarray]:
        """Pivot columns and RREF rows, sorted by pivot column."""
        order = np.argsort(np.array(self._pivcols, dtype=np.int64), kind="stable")
        pivs = tuple(self._pivcols[i] for i in order)
        return pivs, self._rows[order]

    def kernel(self) -> np.ndarray:
        """Columns spanning the null space of the absorbed matrix."""
        pivs, rows = self.rref()
        pivset = set(pivs)
        free = np.array([c for c in range(self.ncols) if c not in pivset],
                        dtype=np.int64)
        K = np.zeros((self.ncols, len(free)), dtype=np.int64)
        if len(free):
            K[free, np.arange(len(free))] = 1
            if pivs:
                K[np.array(pivs, dtype=np.int64), :] = (-rows[:, free]) % self.p
        return K


def rank_modp(A, p: int, chunk_rows: int = 256) -> int:
    """Exact rank over F_p of a 2-D array or an iterable of row blocks."""
    if isinstance(A, np.ndarray):
        red = RowReducer(A.shape[1], p)
        for s in range(0, A.shape[0], chunk_rows):
            red.absorb(A[s:s + chunk_rows])
        return red.rank
    A = iter(A)
    red = None
    for chunk in A:
        chunk = np.asarray(chunk, dtype=np.int64)
        if red is None:
            red = RowReducer(chunk.shape[1], p)
        red.absorb(chunk)
    return 0 if red is None else red.rank


def rref_modp(A: np.ndarray, p: int) -> tuple[tuple[int, ...], np.ndarray]:
    red = RowReducer(A.shape[1], p)
    for s in range(0, A.shape[0], 256):
        red.absorb(A[s:s + 256])
    return red.rref()


def kernel_modp(A: np.ndarray, p: int) -> np.ndarray:
    red = RowReducer(A.shape[1], p)
    for s in range(0, A.shape[0], 256):
        red.absorb(A[s:s + 256])
    return red.kernel()


def solve_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Solve A @ X = B over F_p; raises ValueError when inconsistent.

    A must have full column rank (solutions unique), which is the only case
    the callers need.
    """
    m, n = A.shape
    aug = np.hstack([A % p, B % p]).astype(np.int64)
    pivs, rows = rref_modp(aug, p)
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    seen = set()
    for r, c in enumerate(pivs):
        if c >= n:
            raise ValueError("inconsistent linear system")
        X[c] = rows[r, n:]
        seen.add(c)
    if len(seen) != n:
        raise ValueError("solution not unique: matrix has a nontrivial kernel")
    return X


# ---------------------------------------------------------------------------
# rational (Fraction) elimination, plain and small


def rref_frac(rows: list[list[Fraction]]) -> tuple[tuple[int, ...], list[list[Fraction]]]:
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return (), []
    ncols = len(rows[0])
    pivcols: list[int] = []
    basis: list[list[Fraction]] = []
    for row in rows:
        for r, c in zip(basis, pivcols):
            f = row[c]
            if f:
                for j in range(ncols):
                    row[j] -= f * r[j]
        for c in range(ncols):
            if row[c]:
                inv = 1 / row[c]
                row = [x * inv for x in row]
                for r in basis:
                    f = r[c]
                    if f:
                        for j in range(ncols):
                            r[j] -= f * row[j]
                basis.append(row)
                pivcols.append(c)
                break
    order = sorted(range(len(pivcols)), key=lambda i: pivcols[i])
    return tuple(pivcols[i] for i in order), [basis[i] for i in order]


def kernel_frac(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    pivs, rr = rref_frac(rows)
    pivset = set(pivs)
    free = [c for c in range(ncols) if c not in pivset]
    cols = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivs):
            v[pc] = -rr[r][fc]
        cols.append(v)
    return cols


# ---------------------------------------------------------------------------
# field-generic dispatch on raw arrays (prime: int64, rational: object)


def field_zeros(field, shape):
    if field.kind == "prime":
        return np.zeros(shape, dtype=np.int64)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def field_matmul(field, A, B):
    if field.kind == "prime":
        return matmul_mod(np.asarray(A, dtype=np.int64),
                          np.asarray(B, dtype=np.int64), field.p)
    return np.dot(A, B)


def field_rank(field, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    if field.kind == "prime":
        return rank_modp(A.astype(np.int64), field.p)
    pivs, _ = rref_frac([list(r) for r in A])
    return len(pivs)


def field_rank_chunks(field, chunks, ncols: int) -> int:
    """Rank of a matrix given as an iterable of row blocks."""
    if field.kind == "prime":
        red = RowReducer(ncols, field.p)
        for c in chunks:
            red.absorb(c)
        return red.rank
    rows: list[list] = []
    for c in chunks:
        rows.extend(list(r) for r in np.asarray(c))
    pivs, _ = rref_frac(rows) if rows else ((), [])
    return len(pivs)


def field_kernel(field, A):
    """Kernel columns of a raw 2-D array, canonical RREF convention."""
    A = np.asarray(A)
    if field.kind == "prime":
        return kernel_modp(A.astype(np.int64), field.p)
    cols = kernel_frac([list(r) for r in A], A.shape[1])
    out = np.empty((A.shape[1], len(cols)), dtype=object)
    for j, col in enumerate(cols):
        for i, v in enumerate(col):
            out[i, j] = v
    return out


# ---------------------------------------------------------------------------
# the contract-level Matrix type


class Matrix:
    """Immutable exact matrix over a PrimeField or the rationals.

    Storage is dense; the large Koszul operators elsewhere in the package
    are never materialised through this class but streamed block-wise into
    :class:`RowReducer`, which is what keeps the big computations tractable.
    """

    __slots__ = ("field", "_a", "_rows", "nrows", "ncols")

    def __init__(self, field, data):
        self.field = field
        if field.kind == "prime":
            a = np.asarray(data, dtype=np.int64) % field.p
            if a.ndim != 2:
                raise ValueError("matrix data must be 2-D")
            a.setflags(write=False)
            self._a = a
            self._rows = None
            self.nrows, self.ncols = a.shape
        else:
            rows = tuple(tuple(Fraction(x) for x in r) for r in data)
            w = {len(r) for r in rows}
            if len(w) > 1:
                raise ValueError("ragged matrix data")
            self._rows = rows
            self._a = None
            self.nrows = len(rows)
            self.ncols = len(rows[0]) if rows else 0

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_rows(field, rows) -> "Matrix":
        mat = []
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, Scalar):
                    if x.field != field:
                        raise FieldMismatchError("field mismatch")
                    x = x.value
                row.append(field.normalize(x))
            mat.append(row)
        if field.kind == "prime" and not mat:
            return Matrix(field, np.zeros((0, 0), dtype=np.int64))
        return Matrix(field, mat)

    @staticmethod
    def zeros(field, m: int, n: int) -> "Matrix":
        if field.kind == "prime":
            return Matrix(field, np.zeros((m, n), dtype=np.int64))
        return Matrix(field, [[Fraction(0)] * n for _ in range(m)])

    @staticmethod
    def identity(field, n: int) -> "Matrix":
        if field.kind == "prime":
            return Matrix(field, np.eye(n, dtype=np.int64))
        return Matrix(field, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    # -- access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        if self._a is not None:
            return int(self._a[i, j])
        return self._rows[i][j]

    def to_array(self) -> np.ndarray:
        if self._a is None:
            raise TypeError("rational matrix has no int64 array form")
        return self._a

    def rows(self):
        if self._a is not None:
            return tuple(tuple(int(x) for x in r) for r in self._a)
        return self._rows

    def __eq__(self, other):
        if not isinstance(other, Matrix) or other.field != self.field:
            return False
        if self.shape != other.shape:
            return False
        if self._a is not None:
            return bool(np.array_equal(self._a, other._a))
        return self._rows == other._rows

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatchError("field mismatch")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        if self._a is not None:
            return Matrix(self.field, matmul_mod(self._a, other._a, self.field.p))
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                row.append(sum((self._rows[i][k] * other._rows[k][j]
                                for k in range(self.ncols)), Fraction(0)))
            out.append(row)
        return Matrix(self.field, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        if self._a is not None:
            return Matrix(self.field, (self._a + other._a) % self.field.p)
        return Matrix(self.field, [[a + b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self._rows, other._rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self._a is not None:
            return Matrix(self.field, (self._a - other._a) % self.field.p)
        return Matrix(self.field, [[a - b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self._rows, other._rows)])

    def scale(self, c) -> "Matrix":
        c = self.field.normalize(c.value if isinstance(c, Scalar) else c)
        if self._a is not None:
            return Matrix(self.field, (self._a * c) % self.field.p)
        return Matrix(self.field, [[c * x for x in r] for r in self._rows])

    def transpose(self) -> "Matrix":
        if self._a is not None:
            return Matrix(self.field, self._a.T)
        return Matrix(self.field, list(map(list, zip(*self._rows))) if self._rows else [])

    def is_zero(self) -> bool:
        if self._a is not None:
            return not self._a.any()
        return all(all(x == 0 for x in r) for r in self._rows)


def rank(M: Matrix) -> int:
    """Exact rank; invariant under transposition and permutations."""
    if M.field.kind == "prime":
        return rank_modp(M.to_array(), M.field.p)
    pivs, _ = rref_frac([list(r) for r in M.rows()])
    return len(pivs)


def kernel_basis(M: Matrix) -> Matrix:
    """Columns spanning ker M, canonical via the RREF free-column rule."""
    if M.field.kind == "prime":
        K = kernel_modp(M.to_array(), M.field.p)
        return Matrix(M.field, K)
    cols = kernel_frac([list(r) for r in M.rows()], M.ncols)
    if not cols:
        return Matrix.zeros(M.field, M.ncols, 0)
    return Matrix(M.field, [list(r) for r in zip(*cols)])


def kronecker(A: Matrix, B: Matrix) -> Matrix:
    if A.field != B.field:
        raise FieldMismatchError("field mismatch")
    if A.field.kind == "prime":
        return Matrix(A.field, np.kron(A.to_array(), B.to_array()) % A.field.p)
    m, n = A.shape
    q, r = B.shape
    out = [[A._rows[i][j] * B._rows[k][l] for j in range(n) for l in range(r)]
           for i in range(m) for k in range(q)]
    if not out:
        return Matrix.zeros(A.field, m * q, n * r)
    return Matrix(A.field, out)


# ---------------------------------------------------------------------------
# exterior-power bookkeeping


@dataclass(frozen=True)
class WedgeIndex:
    """Lexicographic index of strictly increasing p-tuples in range(n)."""

    n: int
    p: int
    tuples: tuple[tuple[int, ...], ...]

    @staticmethod
    def build(n: int, p: int) -> "WedgeIndex":
        if p < 0:
            return WedgeIndex(n, p, ())
        return WedgeIndex(n, p, tuple(itertools.combinations(range(n), p)))

    def __len__(self) -> int:
        return len(self.tuples)

    def position(self) -> dict:
        return {t: i for i, t in enumerate(self.tuples)}


def det(M: Matrix):
    """Determinant by field-generic elimination (small matrices only)."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    F = M.field
    rows = [list(r) for r in M.rows()]
    sign = 1
    acc = F.one
    for c in range(n):
        piv = None
        for r in range(c, n):
            if rows[r][c] != F.zero:
                piv = r
                break
        if piv is None:
            return F.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        acc = F.mul(acc, rows[c][c])
        inv = F.inv(rows[c][c])
        for r in range(c + 1, n):
            f = F.mul(rows[r][c], inv)
            if f != F.zero:
                for j in range(c, n):
                    rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[c][j]))
    if sign < 0:
        acc = F.neg(acc)
    return acc


def wedge_map(p: int, f: Matrix) -> Matrix:
    """Induced map on p-th exterior powers, entries are p-by-p minors."""
    F = f.field
    rows_idx = WedgeIndex.build(f.nrows, p)
    cols_idx = WedgeIndex.build(f.ncols, p)
    if p == 0:
        return Matrix.identity(F, 1)
    out = Matrix.zeros(F, len(rows_idx), len(cols_idx))
    if len(rows_idx) == 0 or len(cols_idx) == 0:
        return out
    data = []
    for J in rows_idx.tuples:
        row = []
        for I in cols_idx.tuples:
            sub = Matrix.from_rows(F, [[f[j, i] for i in I] for j in J])
            row.append(det(sub))
        data.append(row)
    return Matrix.from_rows(F, data)
