"""Cochain cohomology of finite groups acting on free Z-modules.

Builds the homogeneous complex (equivariant maps out of cartesian powers of
the group, restricted to a free basis of tuples with identity first
coordinate) and the usual inhomogeneous complex as a cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .abelian import FgAbGroup, IntMatrix, CochainComplex, complex_cohomology, \
    integer_determinant

__all__ = [
    "FiniteGroup",
    "GModuleAction",
    "GroupValidationError",
    "BudgetExceededError",
    "cyclic_group",
    "direct_product",
    "symmetric_group",
    "trivial_action",
    "build_homogeneous_complex",
    "build_inhomogeneous_complex",
    "group_cohomology_q",
]

DEFAULT_TERM_BUDGET = 20000


class GroupValidationError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    """A requested cochain term would exceed the row budget."""


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group given by its multiplication table of element indices."""

    table: tuple  # table[g][h] = g * h

    @property
    def order(self):
        return len(self.table)

    @property
    def identity(self):
        for e in range(self.order):
            if all(self.table[e][g] == g for g in range(self.order)):
                return e
        raise GroupValidationError("no identity element")

    def mul(self, g, h):
        return self.table[g][h]

    def inv(self, g):
        e = self.identity
        for h in range(self.order):
            if self.table[g][h] == e:
                return h
        raise GroupValidationError(f"element {g} has no inverse")

    def validate(self):
        n = self.order
        if any(len(row) != n for row in self.table):
            raise GroupValidationError("multiplication table is not square")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise GroupValidationError("table entry out of range")
        e = self.identity
        if any(self.table[g][e] != g for g in range(n)):
            raise GroupValidationError("identity is not two-sided")
        for g in range(n):
            self.inv(g)
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise GroupValidationError(
                            f"associativity fails at ({a}, {b}, {c})"
                        )


def cyclic_group(n):
    if n < 1:
        raise GroupValidationError("order must be positive")
    return FiniteGroup(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def direct_product(G: FiniteGroup, H: FiniteGroup):
    nh = H.order
    pairs = [(g, h) for g in range(G.order) for h in range(H.order)]
    idx = {p: i for i, p in enumerate(pairs)}
    table = tuple(
        tuple(idx[(G.mul(g1, g2), H.mul(h1, h2))] for (g2, h2) in pairs)
        for (g1, h1) in pairs
    )
    return FiniteGroup(table)


def symmetric_group(n):
    """Symmetric group on n letters as a multiplication table (small n only)."""
    perms = sorted(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    compose = lambda p, q: tuple(p[q[i]] for i in range(n))
    return FiniteGroup(
        tuple(tuple(idx[compose(p, q)] for q in perms) for p in perms)
    )


@dataclass(frozen=True)
class GModuleAction:
    """Action of a finite group on Z^rank by integer matrices."""

    rank: int
    matrices: tuple  # one rank x rank tuple-of-tuples per group element

    def matrix(self, g):
        return self.matrices[g]

    def validate(self, G: FiniteGroup):
        if len(self.matrices) != G.order:
            raise GroupValidationError("need one matrix per group element")
        r = self.rank
        for M in self.matrices:
            if len(M) != r or any(len(row) != r for row in M):
                raise GroupValidationError("action matrix has wrong shape")
            det = integer_determinant(IntMatrix.from_rows([list(row) for row in M], r))
            if det not in (1, -1):
                raise GroupValidationError("action matrix is not invertible over Z")
        e = G.identity
        if self.matrices[e] != _identity_rows(r):
            raise GroupValidationError("identity must act trivially")
        for g in range(G.order):
            for h in range(G.order):
                if _mat_mul(self.matrices[g], self.matrices[h]) \
                        != self.matrices[G.mul(g, h)]:
                    raise GroupValidationError(
                        f"action is not a homomorphism at ({g}, {h})"
                    )


def _identity_rows(r):
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def _mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0])))
        if B else ()
        for i in range(len(A))
    )


def trivial_action(G: FiniteGroup, rank=1):
    return GModuleAction(rank, tuple(_identity_rows(rank) for _ in range(G.order)))


def _tuple_index(G, tup):
    i = 0
    for g in tup:
        i = i * G.order + g
    return i


def _check_budget(G, A, p_max, budget):
    for p in range(p_max + 1):
        if G.order ** p * A.rank > budget:
            raise BudgetExceededError(
                f"degree-{p} term has rank {G.order ** p * A.rank}, "
                f"budget is {budget}"
            )


def _validate_inputs(G, A):
    G.validate()
    A.validate(G)


def build_homogeneous_complex(G: FiniteGroup, A: GModuleAction, p_max: int,
                              budget=DEFAULT_TERM_BUDGET) -> CochainComplex:
    """Homogeneous cochain complex in degrees 0..p_max.

    A degree-p cochain is an equivariant map out of (p+1)-tuples of group
    elements, hence determined by its values on tuples with identity first
    coordinate; the basis is (identity, g_1, ..., g_p) times a coordinate of
    the module.  The coboundary alternately omits each tuple entry, with the
    omitted-first term pulled back to a normalized tuple through the action.
    """
    _validate_inputs(G, A)
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    _check_budget(G, A, p_max + 1, budget)
    n, r = G.order, A.rank
    boundaries = []
    for p in range(p_max):
        rows_dim = n ** (p + 1) * r
        cols_dim = n ** p * r
        D = [[0] * cols_dim for _ in range(rows_dim)]
        for H in itertools.product(range(n), repeat=p + 1):
            row_base = _tuple_index(G, H) * r
            h1 = H[0]
            h1inv = G.inv(h1)
            shifted = tuple(G.mul(h1inv, h) for h in H[1:])
            col_base = _tuple_index(G, shifted) * r
            act = A.matrix(h1)
            for a in range(r):
                for b in range(r):
                    if act[a][b]:
                        D[row_base + a][col_base + b] += act[a][b]
            for i in range(1, p + 2):
                dropped = H[:i - 1] + H[i:]
                col_base = _tuple_index(G, dropped) * r
                sign = -1 if i % 2 else 1
                for a in range(r):
                    D[row_base + a][col_base + a] += sign
        boundaries.append(IntMatrix.from_rows(D, cols_dim))
    dims = tuple(n ** p * r for p in range(p_max + 1))
    return CochainComplex(dims, tuple(boundaries))


def build_inhomogeneous_complex(G: FiniteGroup, A: GModuleAction, p_max: int,
                                budget=DEFAULT_TERM_BUDGET) -> CochainComplex:
    """Inhomogeneous cochain complex in degrees 0..p_max (cross-check route)."""
    _validate_inputs(G, A)
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    _check_budget(G, A, p_max + 1, budget)
    n, r = G.order, A.rank
    boundaries = []
    for p in range(p_max):
        rows_dim = n ** (p + 1) * r
        cols_dim = n ** p * r
        D = [[0] * cols_dim for _ in range(rows_dim)]
        for H in itertools.product(range(n), repeat=p + 1):
            row_base = _tuple_index(G, H) * r
            act = A.matrix(H[0])
            col_base = _tuple_index(G, H[1:]) * r
            for a in range(r):
                for b in range(r):
                    if act[a][b]:
                        D[row_base + a][col_base + b] += act[a][b]
            for i in range(1, p + 1):
                merged = H[:i - 1] + (G.mul(H[i - 1], H[i]),) + H[i + 1:]
                col_base = _tuple_index(G, merged) * r
                sign = -1 if i % 2 else 1
                for a in range(r):
                    D[row_base + a][col_base + a] += sign
            col_base = _tuple_index(G, H[:p]) * r
            sign = -1 if (p + 1) % 2 else 1
            for a in range(r):
                D[row_base + a][col_base + a] += sign
        boundaries.append(IntMatrix.from_rows(D, cols_dim))
    dims = tuple(n ** p * r for p in range(p_max + 1))
    return CochainComplex(dims, tuple(boundaries))


def group_cohomology_q(G: FiniteGroup, A: GModuleAction, q: int,
                       budget=DEFAULT_TERM_BUDGET,
                       complex_builder=build_homogeneous_complex) -> FgAbGroup:
    """H^q of the finite group G with coefficients in the given action."""
    if q < 0:
        raise ValueError("degree must be non-negative")
    C = complex_builder(G, A, max(q + 1, 1), budget=budget)
    return complex_cohomology(C, q)
