"""Exact integer linear algebra: solve A x = b over Z.

Column-style Hermite reduction with unimodular column operations, so that
``A U = [H | 0]``.  The trailing columns of U span the integer kernel.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class NoIntegerSolution(ValueError):
    pass


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s a + t b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


@dataclass
class IntegerSolution:
    particular: np.ndarray      # shape (n,)
    kernel: np.ndarray          # shape (k, n), rows span the integer kernel

    def sample(self, coeffs) -> np.ndarray:
        """Particular solution plus an integer combination of the kernel rows.

        A shorter coefficient list (or a single integer) is padded with zeros.
        """
        coeffs = np.atleast_1d(np.asarray(coeffs, dtype=np.int64))
        k = len(self.kernel)
        if len(coeffs) > k and np.any(coeffs[k:]):
            raise ValueError(f"{len(coeffs)} coefficients for a kernel of rank {k}")
        if not k:
            return self.particular.copy()
        coeffs = np.concatenate([coeffs[:k], np.zeros(max(0, k - len(coeffs)), dtype=np.int64)])
        return self.particular + coeffs @ self.kernel


def column_hermite(A):
    """Return (H, U, pivots) with A U = H in column echelon form.

    ``pivots`` lists (row, column) of the pivot entries; columns after the
    last pivot are zero.
    """
    A = [[int(x) for x in row] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    H = [row[:] for row in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(r, j, s, t, p, q):
        # new col r = s*col_r + t*col_j ; new col j = p*col_r + q*col_j
        for M in (H, U):
            for row in M:
                a, b = row[r], row[j]
                row[r] = s * a + t * b
                row[j] = p * a + q * b

    r = 0
    pivots = []
    for i in range(m):
        if r >= n:
            break
        for j in range(r + 1, n):
            if H[i][j] != 0:
                a, b = H[i][r], H[i][j]
                g, s, t = _egcd(a, b)
                colop(r, j, s, t, -b // g, a // g)
        if H[i][r] != 0:
            if H[i][r] < 0:
                for M in (H, U):
                    for row in M:
                        row[r] = -row[r]
            # reduce earlier entries of this row into [0, pivot)
            for k in range(r):
                qk = H[i][k] // H[i][r]
                if qk:
                    for M in (H, U):
                        for row in M:
                            row[k] -= qk * row[r]
            pivots.append((i, r))
            r += 1
    return H, U, pivots


def solve_integer(A, b) -> IntegerSolution:
    """All integer solutions of A x = b as particular + kernel lattice."""
    A = np.asarray(A, dtype=object)
    b = [int(x) for x in b]
    m, n = A.shape
    H, U, pivots = column_hermite(A.tolist())
    y = [0] * n
    for i, col in pivots:
        acc = b[i] - sum(H[i][k] * y[k] for k in range(col))
        if acc % H[i][col]:
            raise NoIntegerSolution("system has no integer solution")
        y[col] = acc // H[i][col]
    x = [sum(U[r][k] * y[k] for k in range(n)) for r in range(n)]
    for i in range(m):
        if sum(int(A[i, k]) * x[k] for k in range(n)) != b[i]:
            raise NoIntegerSolution("inconsistent system")
    rank = len(pivots)
    kernel = [[U[r][k] for r in range(n)] for k in range(rank, n)]
    kernel = _size_reduce(kernel)
    part = _shorten(x, kernel)
    return IntegerSolution(np.array(part, dtype=np.int64),
                           np.array(kernel, dtype=np.int64).reshape(len(kernel), n))


def _size_reduce(basis: list[list[int]]) -> list[list[int]]:
    """Cheap LLL-flavoured pass keeping kernel vectors short."""
    basis = [v[:] for v in basis]
    changed = True
    rounds = 0
    while changed and rounds < 50:
        changed = False
        rounds += 1
        basis.sort(key=lambda v: sum(x * x for x in v))
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                vi, vj = basis[i], basis[j]
                nj = sum(x * x for x in vj)
                if nj == 0:
                    continue
                q = round(sum(a * c for a, c in zip(vi, vj)) / nj)
                if q:
                    new = [a - q * c for a, c in zip(vi, vj)]
                    if sum(x * x for x in new) < sum(x * x for x in vi):
                        basis[i] = new
                        changed = True
    return basis


def _shorten(x: list[int], kernel: list[list[int]]) -> list[int]:
    x = x[:]
    for _ in range(20):
        improved = False
        for v in kernel:
            nv = sum(a * a for a in v)
            if nv == 0:
                continue
            q = round(sum(a * c for a, c in zip(x, v)) / nv)
            if q:
                new = [a - q * c for a, c in zip(x, v)]
                if sum(a * a for a in new) < sum(a * a for a in x):
                    x = new
                    improved = True
        if not improved:
            break
    return x


def in_lattice(vec, basis) -> bool:
    """True when vec is an integer combination of the rows of basis."""
    basis = np.asarray(basis, dtype=object)
    if basis.size == 0:
        return not any(int(v) for v in vec)
    try:
        solve_integer(basis.T, list(vec))
    except NoIntegerSolution:
        return False
    return True
