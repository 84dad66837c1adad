"""Dense exact linear algebra over Q(i) and over jet/series rings.

Matrices are lists of row lists.  Scalar matrices use pivoted Gaussian
elimination (exact over a field); polynomial matrices go through the
fraction-free Bareiss determinant in multipoly.  The ring_* variants pivot
on unit elements so they also run over jet towers and truncated series.
"""

from __future__ import annotations

from .errors import SingularMatrix
from .multipoly import MultiPoly, poly_det
from .scalars import ONE, ZERO, GaussianRational


def identity(n, one=ONE, zero=ZERO):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = Ai[0] * B[0][j]
            for t in range(1, k):
                acc = acc + Ai[t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    out = []
    for row in A:
        acc = row[0] * v[0]
        for t in range(1, len(v)):
            acc = acc + row[t] * v[t]
        out.append(acc)
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in row] for row in A]


def mat_trace(A):
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def _is_unit(x):
    u = getattr(x, "is_unit", None)
    if u is None:
        return bool(x)
    return u


def ring_solve(A, rhs_cols):
    """Solve A X = B by unit-pivoted elimination; B given as column list."""
    n = len(A)
    m = [list(row) + list(cols) for row, cols in zip(A, zip(*rhs_cols))]
    w = len(m[0])
    for col in range(n):
        piv = None
        for r in range(col, n):
            if _is_unit(m[r][col]):
                piv = r
                break
        if piv is None:
            raise SingularMatrix(f"no unit pivot in column {col}")
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
        inv = _invert(m[col][col])
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r == col:
                continue
            f = m[r][col]
            if isinstance(f, GaussianRational) and not f:
                continue
            m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    sols = [[m[r][n + j] for r in range(n)] for j in range(w - n)]
    return sols


def _invert(x):
    inv = getattr(x, "inverse", None)
    if inv is not None:
        return inv()
    return 1 / x


def ring_mat_inverse(A):
    n = len(A)
    zero = A[0][0] * 0
    one = zero + 1
    cols = [[one if i == j else zero for i in range(n)] for j in range(n)]
    sols = ring_solve(A, cols)
    return [[sols[j][i] for j in range(n)] for i in range(n)]


def ring_mat_vec_solve(A, b):
    return ring_solve(A, [b])[0]


def mat_det(A):
    """Determinant; Bareiss for MultiPoly entries, pivoted Gauss for scalars."""
    n = len(A)
    if n and isinstance(A[0][0], MultiPoly):
        return poly_det(A)
    m = [list(row) for row in A]
    det = ONE
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if not f:
                continue
            m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def mat_rank(A):
    if not A:
        return 0
    m = [list(row) for row in A]
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def mat_inverse(A):
    try:
        return ring_mat_inverse(A)
    except SingularMatrix:
        raise SingularMatrix("matrix is singular over Q(i)")


def mat_solve(A, b):
    try:
        return ring_solve(A, [b])[0]
    except SingularMatrix:
        raise SingularMatrix("system is singular over Q(i)")


def exact_linear(kind, M, rhs=None):
    """Dispatcher: kind in {det, inverse, rank, solve}."""
    if kind == "det":
        return mat_det(M)
    if kind == "inverse":
        return mat_inverse(M)
    if kind == "rank":
        return mat_rank(M)
    if kind == "solve":
        if rhs is None:
            raise ValueError("solve needs a right-hand side")
        return mat_solve(M, rhs)
    raise ValueError(f"unknown kind {kind!r}")


class ReducedBasis:
    """Row-reduced spanning set with pivot bookkeeping for membership tests."""

    def __init__(self, vectors):
        self.rows = []
        self.pivots = []
        for v in vectors:
            self.add(v)

    def add(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        for i, x in enumerate(v):
            if x:
                inv = x.inverse()
                v = [a * inv for a in v]
                self.rows.append(v)
                self.pivots.append(i)
                return True
        return False

    def coordinates_in(self, v):
        """Residual reduction; returns None when v is outside the span."""
        v = list(v)
        coeffs = []
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            coeffs.append(f)
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        if any(v):
            return None
        return coeffs

    def contains(self, v):
        return self.coordinates_in(v) is not None

    @property
    def dim(self):
        return len(self.rows)
