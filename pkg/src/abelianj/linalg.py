"""Exact rational linear algebra: scalars, vectors, matrices, subspaces.

Everything downstream computes over Q with zero tolerance.  Scalars are
gmpy2.mpq when available (much faster), else fractions.Fraction; both
normalize to lowest terms with positive denominator and print as "p/q".
Subspaces are kept in reduced row echelon form so equality is syntactic.
"""
from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _RAT
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _RAT = Fraction

ZERO = _RAT(0)
ONE = _RAT(1)


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


def rat(value=0, den=None):
    """Exact rational from int, 'p/q' string, Fraction, or (num, den)."""
    if den is not None:
        return _RAT(value) / _RAT(den)
    if isinstance(value, str):
        return _RAT(Fraction(value.strip()))
    if isinstance(value, float):
        raise TypeError("refusing inexact float %r; use rat_from_float" % value)
    return _RAT(value)


def rat_from_float(x, max_den=10 ** 6):
    """Nearest rational with bounded denominator; the only inexact entry point."""
    f = Fraction(x).limit_denominator(max_den)
    return _RAT(f.numerator) / _RAT(f.denominator)


def vec(entries):
    return tuple(rat(e) for e in entries)


def zero_vec(n):
    return (ZERO,) * n


def basis_vec(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def vec_dot(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero_vec(v):
    return all(a == 0 for a in v)


def _rref(rows, ncols):
    """Reduced row echelon form with leftmost-nonzero pivoting.

    Returns (nonzero rows as tuples, pivot column indices).  Deterministic:
    the first row at or below the cursor with a nonzero entry is used.
    """
    work = [list(r) for r in rows]
    m = len(work)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if work[i][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = ONE / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(m):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                row_r = work[r]
                work[i] = [a - f * b for a, b in zip(work[i], row_r)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


class Matrix:
    """Dense exact matrix over Q."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = tuple(tuple(rat(e) for e in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise DimensionMismatch("ragged rows")

    @classmethod
    def identity(cls, n):
        return cls([basis_vec(n, i) for i in range(n)])

    @classmethod
    def zeros(cls, m, n):
        return cls([zero_vec(n)] * m) if m else cls([])

    @classmethod
    def from_columns(cls, cols):
        return cls(list(zip(*cols))) if cols else cls([])

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return Matrix(list(zip(*self.rows))) if self.rows else Matrix([])

    def apply(self, v):
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise DimensionMismatch("vector length %d, expected %d" % (len(v), self.ncols))
        return tuple(vec_dot(row, v) for row in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch("shape mismatch in matmul")
            bt = other.transpose().rows
            return Matrix([[vec_dot(row, col) for col in bt] for row in self.rows])
        return self.apply(other)

    def __add__(self, other):
        return Matrix([vec_add(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix([vec_sub(a, b) for a, b in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([vec_scale(-ONE, r) for r in self.rows])

    def scale(self, c):
        c = rat(c)
        return Matrix([vec_scale(c, r) for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return all(is_zero_vec(r) for r in self.rows)

    def is_square(self):
        return self.nrows == self.ncols

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.nrows)), ZERO)

    def rref(self):
        rows, pivots = _rref(self.rows, self.ncols)
        return Matrix(rows) if rows else Matrix.zeros(0, self.ncols), pivots

    def rank(self):
        return len(_rref(self.rows, self.ncols)[1])

    def det(self):
        if not self.is_square():
            raise DimensionMismatch("determinant of non-square matrix")
        work = [list(r) for r in self.rows]
        n = self.nrows
        d = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if work[i][c] != 0), None)
            if p is None:
                return ZERO
            if p != c:
                work[c], work[p] = work[p], work[c]
                d = -d
            d = d * work[c][c]
            inv = ONE / work[c][c]
            for i in range(c + 1, n):
                if work[i][c] != 0:
                    f = work[i][c] * inv
                    work[i] = [a - f * b for a, b in zip(work[i], work[c])]
        return d

    def inverse(self):
        if not self.is_square():
            raise DimensionMismatch("inverse of non-square matrix")
        n = self.nrows
        aug = [list(self.rows[i]) + list(basis_vec(n, i)) for i in range(n)]
        rows, pivots = _rref(aug, 2 * n)
        if pivots != tuple(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix([row[n:] for row in rows])

    def kernel(self):
        """Canonical null-space basis (free variables set to 1, in order)."""
        rows, pivots = _rref(self.rows, self.ncols)
        pivot_set = set(pivots)
        basis = []
        for f in range(self.ncols):
            if f in pivot_set:
                continue
            v = [ZERO] * self.ncols
            v[f] = ONE
            for r, p in enumerate(pivots):
                v[p] = -rows[r][f]
            basis.append(tuple(v))
        return basis

    def solve(self, b):
        """One solution of A x = b, or None if inconsistent."""
        aug = [list(row) + [bi] for row, bi in zip(self.rows, b)]
        rows, pivots = _rref(aug, self.ncols + 1)
        if self.ncols in pivots:
            return None
        x = [ZERO] * self.ncols
        for r, p in enumerate(pivots):
            x[p] = rows[r][self.ncols]
        return tuple(x)

    def __repr__(self):
        return "Matrix(%s)" % [[str(e) for e in row] for row in self.rows]


class Subspace:
    """Subspace of Q^n with canonical reduced-echelon basis.

    Two equal subspaces have identical representations, so == is syntactic.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient, rows=()):
        self.ambient = ambient
        clean = [vec(r) for r in rows]
        if any(len(r) != ambient for r in clean):
            raise DimensionMismatch("vector does not live in ambient space")
        self.basis, self.pivots = _rref(clean, ambient)

    @classmethod
    def span(cls, vectors, ambient=None):
        vectors = list(vectors)
        if ambient is None:
            if not vectors:
                raise DimensionMismatch("ambient dimension required for empty span")
            ambient = len(vectors[0])
        return cls(ambient, vectors)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient)

    @classmethod
    def whole(cls, ambient):
        return cls(ambient, [basis_vec(ambient, i) for i in range(ambient)])

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return "Subspace(dim %d of Q^%d)" % (self.dim, self.ambient)

    def coordinates(self, v):
        """Coefficients of v in the canonical basis, or None if v outside."""
        if len(v) != self.ambient:
            raise DimensionMismatch("ambient mismatch")
        v = vec(v)
        coeffs = tuple(v[p] for p in self.pivots)
        resid = v
        for c, row in zip(coeffs, self.basis):
            if c != 0:
                resid = vec_sub(resid, vec_scale(c, row))
        return coeffs if is_zero_vec(resid) else None

    def contains_vector(self, v):
        return self.coordinates(v) is not None

    def contains(self, other):
        return all(self.contains_vector(v) for v in other.basis)

    def sum(self, other):
        self._check(other)
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other):
        """Zassenhaus: row reduce [U|U; V|0], read rows with zero left half."""
        self._check(other)
        n = self.ambient
        block = [list(b) + list(b) for b in self.basis]
        block += [list(b) + [ZERO] * n for b in other.basis]
        rows, _ = _rref(block, 2 * n)
        inter = [row[n:] for row in rows if is_zero_vec(row[:n])]
        return Subspace(n, inter)

    def complement_in(self, bigger, metric=None):
        """C with bigger = self (+) C; orthogonal complement when metric given.

        Without a metric the choice is deterministic: greedily extend by the
        echelon basis vectors of `bigger` not already in the running span.
        """
        self._check(bigger)
        if not bigger.contains(self):
            raise DimensionMismatch("complement: first subspace not inside second")
        if metric is None:
            acc = list(self.basis)
            added = []
            current = Subspace(self.ambient, acc)
            for w in bigger.basis:
                if not current.contains_vector(w):
                    added.append(w)
                    acc.append(w)
                    current = Subspace(self.ambient, acc)
            comp = Subspace(self.ambient, added)
        else:
            gram = metric.gram if hasattr(metric, "gram") else metric
            constraints = Matrix([gram.apply(u) for u in self.basis]) if self.basis \
                else Matrix.zeros(0, self.ambient)
            perp = Subspace(self.ambient, constraints.kernel()) if self.basis \
                else Subspace.whole(self.ambient)
            comp = bigger.intersect(perp)
        assert comp.dim + self.dim == bigger.dim and self.intersect(comp).is_zero()
        return comp

    def orthogonal_complement(self, metric):
        gram = metric.gram if hasattr(metric, "gram") else metric
        if self.is_zero():
            return Subspace.whole(self.ambient)
        constraints = Matrix([gram.apply(u) for u in self.basis])
        return Subspace(self.ambient, constraints.kernel())

    def image(self, mat):
        """Span of mat applied to the basis."""
        return Subspace(mat.nrows, [mat.apply(b) for b in self.basis]) if self.basis \
            else Subspace.zero(mat.nrows)

    def _check(self, other):
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")


def span(vectors, ambient=None):
    return Subspace.span(vectors, ambient)


def intersect(u, v):
    return u.intersect(v)


def complement(u, w, metric=None):
    return u.complement_in(w, metric)
