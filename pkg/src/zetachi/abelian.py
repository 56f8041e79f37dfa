"""Exact integer linear algebra.

Smith normal form with transforms, finitely generated abelian groups in
invariant-factor normal form, and cohomology of integer cochain complexes.
Everything here is exact: a numpy int64 fast path is used when entry bounds
permit, with an automatic fall back to arbitrary-precision Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np

__all__ = [
    "IntMatrix",
    "SnfResult",
    "FgAbGroup",
    "CochainComplex",
    "MalformedComplexError",
    "smith_normal_form",
    "group_from_presentation",
    "complex_cohomology",
]

# Conservative bound: |q| * |pivot row| + |entry| must stay below 2^62.
_INT64_SAFE = 1 << 60


class MalformedComplexError(ValueError):
    """Consecutive coboundaries do not compose to zero."""


class _OverflowToExact(Exception):
    """Internal: the int64 fast path would overflow; redo with Python ints."""


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major flat storage, arbitrary precision."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        m = len(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(m, cols, tuple(x for r in rows for x in r))

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def to_rows(self):
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self):
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
        )

    def diagonal(self):
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix.from_rows(
            _matmul(self.to_rows(), other.to_rows(), self.rows, self.cols, other.cols),
            other.cols,
        )

    def is_zero(self):
        return all(x == 0 for x in self.entries)


@dataclass(frozen=True)
class SnfResult:
    """U @ M @ V = D with U, V unimodular and D in Smith normal form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def rank(self):
        return sum(1 for x in self.D.diagonal() if x != 0)


@dataclass(frozen=True)
class FgAbGroup:
    """Z^free_rank + Z/f_1 + ... + Z/f_k with 2 <= f_1 | f_2 | ... | f_k."""

    free_rank: int
    invariant_factors: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls):
        return cls(0, ())

    @classmethod
    def free(cls, rank):
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n):
        return cls(0, (n,)) if n > 1 else cls.trivial()

    @property
    def torsion_order(self):
        return prod(self.invariant_factors)

    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{f}" for f in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class CochainComplex:
    """Free cochain complex of Z-modules; boundaries[p] maps degree p to p+1."""

    dims: tuple
    boundaries: tuple = field(default=())

    def __post_init__(self):
        if len(self.boundaries) != max(len(self.dims) - 1, 0):
            raise ValueError("need exactly len(dims) - 1 boundary maps")
        for p, b in enumerate(self.boundaries):
            if (b.rows, b.cols) != (self.dims[p + 1], self.dims[p]):
                raise ValueError(f"boundary {p} has shape {(b.rows, b.cols)}, "
                                 f"expected {(self.dims[p + 1], self.dims[p])}")

    def validate_composition(self):
        for p in range(len(self.boundaries) - 1):
            if not (self.boundaries[p + 1] @ self.boundaries[p]).is_zero():
                raise MalformedComplexError(
                    f"boundary composition at degree {p} is not zero"
                )


# ---------------------------------------------------------------------------
# matrix multiplication with int64 fast path


def _matmul(A, B, m, k, n):
    if m == 0 or n == 0:
        return [[] for _ in range(m)]
    if k == 0:
        return [[0] * n for _ in range(m)]
    amax = max((abs(x) for r in A for x in r), default=0)
    bmax = max((abs(x) for r in B for x in r), default=0)
    if amax * bmax * k < _INT64_SAFE:
        C = np.array(A, dtype=np.int64) @ np.array(B, dtype=np.int64)
        return C.tolist()
    Bt = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


# ---------------------------------------------------------------------------
# Smith normal form


def _pivot_python(A, t, m, n):
    best = None
    for i in range(t, m):
        Ai = A[i]
        for j in range(t, n):
            v = Ai[j]
            if v:
                a = -v if v < 0 else v
                if best is None or a < best[0]:
                    best = (a, i, j)
        if best is not None and best[0] == 1:
            break
    return best


def _swap_cols(rows, a, b):
    for r in rows:
        r[a], r[b] = r[b], r[a]


def _snf_python(rows, m, n):
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    for t in range(min(m, n)):
        piv = _pivot_python(A, t, m, n)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            _swap_cols(A, t, pj)
            _swap_cols(V, t, pj)
        while True:
            for i in range(t + 1, m):
                while A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                        U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        U[t], U[i] = U[i], U[t]
            for j in range(t + 1, n):
                while A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                        for row in V:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        _swap_cols(A, t, j)
                        _swap_cols(V, t, j)
            if any(A[i][t] for i in range(t + 1, m)):
                continue
            d = A[t][t]
            bad = next(
                (i for i in range(t + 1, m)
                 if any(A[i][j] % d for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def _guarded_axpy_rows(A, U, q, t, lo):
    qm = int(np.max(np.abs(q))) if q.size else 0
    for M in (A, U):
        rm = int(np.max(np.abs(M[t]))) if M[t].size else 0
        cm = int(np.max(np.abs(M[lo:]))) if M[lo:].size else 0
        if qm * rm + cm >= _INT64_SAFE:
            raise _OverflowToExact
    A[lo:] -= q[:, None] * A[t]
    U[lo:] -= q[:, None] * U[t]


def _guarded_axpy_cols(A, V, q, t, lo):
    qm = int(np.max(np.abs(q))) if q.size else 0
    for M in (A, V):
        cm = int(np.max(np.abs(M[:, t]))) if M[:, t].size else 0
        rm = int(np.max(np.abs(M[:, lo:]))) if M[:, lo:].size else 0
        if qm * cm + rm >= _INT64_SAFE:
            raise _OverflowToExact
    A[:, lo:] -= A[:, [t]] * q[None, :]
    V[:, lo:] -= V[:, [t]] * q[None, :]


def _snf_numpy(rows, m, n):
    A = np.array([list(r) for r in rows], dtype=np.int64).reshape(m, n)
    U = np.eye(m, dtype=np.int64)
    V = np.eye(n, dtype=np.int64)
    for t in range(min(m, n)):
        sub = A[t:, t:]
        absa = np.abs(sub)
        nz = absa != 0
        if not nz.any():
            break
        absa = np.where(nz, absa, np.iinfo(np.int64).max)
        flat = int(np.argmin(absa))
        pi, pj = t + flat // (n - t), t + flat % (n - t)
        if pi != t:
            A[[t, pi]] = A[[pi, t]]
            U[[t, pi]] = U[[pi, t]]
        if pj != t:
            A[:, [t, pj]] = A[:, [pj, t]]
            V[:, [t, pj]] = V[:, [pj, t]]
        while True:
            col = A[t + 1:, t]
            if col.any():
                q = col // A[t, t]
                _guarded_axpy_rows(A, U, q, t, t + 1)
                col = A[t + 1:, t]
                if col.any():
                    i = t + 1 + int(np.argmax(col != 0))
                    A[[t, i]] = A[[i, t]]
                    U[[t, i]] = U[[i, t]]
                    continue
            row = A[t, t + 1:]
            if row.any():
                q = row // A[t, t]
                _guarded_axpy_cols(A, V, q, t, t + 1)
                row = A[t, t + 1:]
                if row.any():
                    j = t + 1 + int(np.argmax(row != 0))
                    A[:, [t, j]] = A[:, [j, t]]
                    V[:, [t, j]] = V[:, [j, t]]
                    continue
            if A[t + 1:, t].any():
                continue
            d = int(A[t, t])
            rem = A[t + 1:, t + 1:] % d
            if rem.size and rem.any():
                i = t + 1 + int(np.argmax(rem.any(axis=1)))
                if int(np.max(np.abs(A[t]))) + int(np.max(np.abs(A[i]))) >= _INT64_SAFE:
                    raise _OverflowToExact
                A[t] += A[i]
                U[t] += U[i]
                continue
            break
        if A[t, t] < 0:
            A[t] = -A[t]
            U[t] = -U[t]
    return A.tolist(), U.tolist(), V.tolist()


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """Diagonalize M by unimodular transforms: U @ M @ V = D.

    The diagonal of D is non-negative and each nonzero entry divides the
    next.  Pivoting is deterministic (smallest absolute value, row-major).
    """
    m, n = M.rows, M.cols
    rows = M.to_rows()
    try:
        if max((abs(x) for x in M.entries), default=0) >= _INT64_SAFE:
            raise _OverflowToExact
        D, U, V = _snf_numpy(rows, m, n)
    except _OverflowToExact:
        D, U, V = _snf_python(rows, m, n)
    return SnfResult(
        U=IntMatrix.from_rows(U, m),
        D=IntMatrix.from_rows(D, n),
        V=IntMatrix.from_rows(V, n),
    )


# ---------------------------------------------------------------------------
# groups from presentations, cohomology of complexes


def group_from_presentation(relations: IntMatrix, generators: int) -> FgAbGroup:
    """Z^generators modulo the row span of `relations`, in normal form."""
    if relations.cols != generators:
        raise ValueError("relation matrix must have one column per generator")
    snf = smith_normal_form(relations)
    diag = snf.D.diagonal()
    nonzero = [d for d in diag if d != 0]
    return FgAbGroup(
        free_rank=generators - len(nonzero),
        invariant_factors=tuple(d for d in nonzero if d > 1),
    )


def _kernel_basis(M: IntMatrix):
    """Columns forming a basis of the integer kernel lattice of M (saturated)."""
    snf = smith_normal_form(M)
    r = snf.rank()
    V = snf.V.to_rows()
    return [[V[i][j] for j in range(r, M.cols)] for i in range(M.cols)]


def _solve_in_lattice(K_rows, B_rows, n, k, b_cols):
    """Solve K @ X = B exactly over Z; raise ValueError if no solution."""
    snf = smith_normal_form(IntMatrix.from_rows(K_rows, k))
    diag = snf.D.diagonal()
    r = sum(1 for d in diag if d)
    U = snf.U.to_rows()
    Y = _matmul(U, B_rows, n, n, b_cols)
    X0 = [[0] * b_cols for _ in range(k)]
    for i in range(n):
        for j in range(b_cols):
            y = Y[i][j]
            if i < r:
                if y % diag[i]:
                    raise ValueError("no integral solution")
                if i < k:
                    X0[i][j] = y // diag[i]
            elif y:
                raise ValueError("no integral solution")
    return _matmul(snf.V.to_rows(), X0, k, k, b_cols)


def complex_cohomology(C: CochainComplex, q: int) -> FgAbGroup:
    """ker(d_q) / im(d_{q-1}) as a group in normal form.

    The boundary off either end of the complex is the zero map.
    """
    if not 0 <= q < len(C.dims):
        raise ValueError(f"degree {q} outside complex of length {len(C.dims)}")
    C.validate_composition()
    dim_q = C.dims[q]
    if dim_q == 0:
        return FgAbGroup.trivial()
    if q < len(C.boundaries):
        K = _kernel_basis(C.boundaries[q])
    else:
        K = IntMatrix.identity(dim_q).to_rows()
    k = len(K[0])
    if k == 0:
        return FgAbGroup.trivial()
    if q == 0:
        rels = IntMatrix.zero(0, k)
    else:
        B = C.boundaries[q - 1]
        X = _solve_in_lattice(K, B.to_rows(), dim_q, k, B.cols)
        rels = IntMatrix.from_rows(list(zip(*X)), k) if k else IntMatrix.zero(0, 0)
    return group_from_presentation(rels, k)


def integer_determinant(M: IntMatrix):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    if M.rows != M.cols:
        raise ValueError("determinant of non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = M.to_rows()
    sign = 1
    prev = 1
    for t in range(n - 1):
        if A[t][t] == 0:
            swap = next((i for i in range(t + 1, n) if A[i][t]), None)
            if swap is None:
                return 0
            A[t], A[swap] = A[swap], A[t]
            sign = -sign
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                A[i][j] = (A[i][j] * A[t][t] - A[i][t] * A[t][j]) // prev
            A[i][t] = 0
        prev = A[t][t]
    return sign * A[n - 1][n - 1]
