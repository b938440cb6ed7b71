"""Dense matrices over a :class:`~injcap.fields.Field`, exact elimination.

Entries are raw field values (see :mod:`injcap.fields`).  Matrices are
immutable; every operation returns a new matrix.  Prime-field elimination
runs on plain ints, which is where almost all of the time goes.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import InputError
from .fields import Field, PrimeField


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: Optional[int] = None):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise InputError("ncols required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise InputError("ragged matrix")

    @classmethod
    def from_values(cls, field: Field, rows, ncols=None) -> "Matrix":
        return cls(field, [[field.canonical(v) for v in r] for r in rows], ncols)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def hstack(cls, *ms: "Matrix") -> "Matrix":
        if not ms:
            raise InputError("hstack of nothing")
        f, n = ms[0].field, ms[0].nrows
        if any(m.nrows != n for m in ms):
            raise InputError("hstack: row counts differ")
        return cls(f, [sum((m.rows[i] for m in ms), ()) for i in range(n)], sum(m.ncols for m in ms))

    @classmethod
    def vstack(cls, *ms: "Matrix") -> "Matrix":
        if not ms:
            raise InputError("vstack of nothing")
        f, n = ms[0].field, ms[0].ncols
        if any(m.ncols != n for m in ms):
            raise InputError("vstack: column counts differ")
        return cls(f, [r for m in ms for r in m.rows], n)

    @classmethod
    def block_diag(cls, field: Field, *ms: "Matrix") -> "Matrix":
        nr = sum(m.nrows for m in ms)
        nc = sum(m.ncols for m in ms)
        rows = [[field.zero] * nc for _ in range(nr)]
        r0 = c0 = 0
        for m in ms:
            for i, row in enumerate(m.rows):
                rows[r0 + i][c0:c0 + m.ncols] = row
            r0 += m.nrows
            c0 += m.ncols
        return cls(field, rows, nc)

    # -- basic algebra -----------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, [self.column(j) for j in range(self.ncols)], self.nrows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> List[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        add = self.field.add
        return Matrix(self.field, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        sub = self.field.sub
        return Matrix(self.field, [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, [[neg(a) for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        mul = self.field.mul
        return Matrix(self.field, [[mul(c, a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        if isinstance(f, PrimeField):
            p = f.p
            cols = other.columns()
            return Matrix(f, [[sum(a * b for a, b in zip(r, c)) % p for c in cols] for r in self.rows], other.ncols)
        add, mul, z = f.add, f.mul, f.zero
        cols = other.columns()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a != z and b != z:
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(f, out, other.ncols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product."""
        f = self.field
        if isinstance(f, PrimeField):
            p = f.p
            return tuple(sum(a * b for a, b in zip(r, v)) % p for r in self.rows)
        add, mul, z = f.add, f.mul, f.zero
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, v):
                if a != z and b != z:
                    acc = add(acc, mul(a, b))
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(a == z for r in self.rows for a in r)

    def flat(self) -> tuple:
        return tuple(a for r in self.rows for a in r)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        fmt = self.field.fmt
        body = "; ".join(" ".join(fmt(a) for a in r) for r in self.rows)
        return f"Matrix<{self.field!r} {self.nrows}x{self.ncols}>[{body}]"

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]

    # -- elimination -------------------------------------------------------

    def rref(self) -> Tuple["Matrix", List[int]]:
        rows, piv = _rref(self.field, [list(r) for r in self.rows], self.ncols)
        return Matrix(self.field, rows, self.ncols), piv

    def rank(self) -> int:
        return len(_rref(self.field, [list(r) for r in self.rows], self.ncols, reduce_above=False)[1])

    def kernel(self) -> "Matrix":
        """Columns form a basis of the right kernel (in RREF-derived order)."""
        f = self.field
        rows, piv = _rref(f, [list(r) for r in self.rows], self.ncols)
        free = [j for j in range(self.ncols) if j not in set(piv)]
        basis = []
        for j in free:
            v = [f.zero] * self.ncols
            v[j] = f.one
            for i, pj in enumerate(piv):
                v[pj] = f.neg(rows[i][j])
            basis.append(v)
        return Matrix.from_columns(f, basis, self.ncols)

    def det(self):
        if self.nrows != self.ncols:
            raise InputError("determinant of a non-square matrix")
        f = self.field
        a = [list(r) for r in self.rows]
        n = self.nrows
        d = f.one
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != f.zero), None)
            if piv is None:
                return f.zero
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                d = f.neg(d)
            d = f.mul(d, a[k][k])
            inv = f.inv(a[k][k])
            for i in range(k + 1, n):
                if a[i][k] != f.zero:
                    c = f.mul(a[i][k], inv)
                    a[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(a[i], a[k])]
        return d

    def solve(self, b: Sequence) -> Optional[tuple]:
        """One solution x of self @ x = b, or None when inconsistent."""
        f = self.field
        aug = [list(r) + [bi] for r, bi in zip(self.rows, b)]
        rows, piv = _rref(f, aug, self.ncols + 1)
        if self.ncols in piv:
            return None
        x = [f.zero] * self.ncols
        for i, pj in enumerate(piv):
            x[pj] = rows[i][self.ncols]
        return tuple(x)

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise InputError("inverse of a non-square matrix")
        f = self.field
        aug = [list(r) + list(e) for r, e in zip(self.rows, Matrix.identity(f, n).rows)]
        rows, piv = _rref(f, aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix(f, [r[n:] for r in rows[:n]], n)


def _rref(field: Field, a: List[list], ncols: int, reduce_above: bool = True):
    """In-place Gauss-Jordan; returns (nonzero rows, pivot columns)."""
    if isinstance(field, PrimeField):
        return _rref_prime(field.p, a, ncols, reduce_above)
    z = field.zero
    mul, sub, inv = field.mul, field.sub, field.inv
    piv: List[int] = []
    r = 0
    n = len(a)
    for c in range(ncols):
        if r == n:
            break
        k = next((i for i in range(r, n) if a[i][c] != z), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        iv = inv(a[r][c])
        a[r] = [mul(iv, x) for x in a[r]]
        pr = a[r]
        for i in range(n) if reduce_above else range(r + 1, n):
            if i != r and a[i][c] != z:
                m = a[i][c]
                a[i] = [x if y == z else sub(x, mul(m, y)) for x, y in zip(a[i], pr)]
        piv.append(c)
        r += 1
    return a[:r], piv


def _rref_prime(p: int, a: List[list], ncols: int, reduce_above: bool):
    piv: List[int] = []
    r = 0
    n = len(a)
    a = [[x % p for x in row] for row in a]
    for c in range(ncols):
        if r == n:
            break
        k = next((i for i in range(r, n) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        iv = pow(a[r][c], p - 2, p)
        if iv != 1:
            a[r] = [(iv * x) % p for x in a[r]]
        pr = a[r]
        for i in range(n) if reduce_above else range(r + 1, n):
            if i != r and a[i][c]:
                m = a[i][c]
                a[i] = [(x - m * y) % p for x, y in zip(a[i], pr)]
        piv.append(c)
        r += 1
    return a[:r], piv


def mat_rank(m: Matrix) -> int:
    return m.rank()


def mat_kernel(m: Matrix) -> Matrix:
    return m.kernel()


def span_basis(field: Field, vectors: Sequence[Sequence], dim: int) -> List[tuple]:
    """Canonical (RREF) basis of the span of ``vectors`` in field^dim."""
    if not vectors:
        return []
    rows, _ = _rref(field, [list(v) for v in vectors], dim)
    return [tuple(r) for r in rows]


def rank_of(field: Field, vectors: Sequence[Sequence], dim: int) -> int:
    if not vectors:
        return 0
    return len(_rref(field, [list(v) for v in vectors], dim, reduce_above=False)[1])


def intersect_kernels(field: Field, mats: Sequence[Matrix], dim: int) -> List[tuple]:
    """Basis (as vectors) of the common kernel of the given matrices."""
    rows = [r for m in mats for r in m.rows]
    if not rows:
        return [tuple(field.one if i == j else field.zero for i in range(dim)) for j in range(dim)]
    return Matrix(field, rows, dim).kernel().columns()


class Coordinatizer:
    """Coordinates with respect to a fixed linearly independent family.

    The family is completed to a basis of the ambient space once, so each
    lookup is a single matrix-vector product.  Vectors outside the span get
    coordinates of their projection along the completion (callers ensure
    membership).
    """

    def __init__(self, field: Field, vectors: Sequence[Sequence], dim: int):
        self.field = field
        self.dim = dim
        self.size = len(vectors)
        cols = [tuple(v) for v in vectors]
        if rank_of(field, cols, dim) != len(cols):
            raise InputError("Coordinatizer needs independent vectors")
        extra = []
        cur = list(cols)
        for j in range(dim):
            e = tuple(field.one if i == j else field.zero for i in range(dim))
            if rank_of(field, cur + [e], dim) > len(cur):
                cur.append(e)
                extra.append(e)
        full = Matrix.from_columns(field, cur, dim) if dim else None
        self._inv = full.inverse() if dim else None

    def __call__(self, v: Sequence) -> tuple:
        if not self.dim:
            return ()
        return self._inv.apply(v)[: self.size]

    def contains(self, v: Sequence) -> bool:
        if not self.dim:
            return True
        full = self._inv.apply(v)
        z = self.field.zero
        return all(x == z for x in full[self.size:])
