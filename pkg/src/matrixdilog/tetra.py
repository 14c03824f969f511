"""Branched, decorated tetrahedra.

A branching is a total order ``(v0, v1, v2, v3)`` of the four vertices.  The
three edge types are

* type 0: ``[v0, v1]`` and its opposite ``[v2, v3]``
* type 1: ``[v1, v2]`` and its opposite ``[v0, v3]``
* type 2: ``[v0, v2]`` and its opposite ``[v1, v3]``

Moduli, flattenings and charges are stored per edge type.  The sign ``b`` is
+1 when the branching orientation agrees with the ambient orientation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .scalars import (
    DEGENERATE_TOL,
    PI,
    DomainError,
    is_real,
    nth_root_branch,
    std_log,
    RootContext,
)

FLAT_TOL = 1e-9

_EDGE_TYPE = {
    frozenset((0, 1)): 0, frozenset((2, 3)): 0,
    frozenset((1, 2)): 1, frozenset((0, 3)): 1,
    frozenset((0, 2)): 2, frozenset((1, 3)): 2,
}

#: position pairs of the two edges of each type
EDGE_PAIRS = {0: ((0, 1), (2, 3)), 1: ((1, 2), (0, 3)), 2: ((0, 2), (1, 3))}


def edge_type(a: int, b: int) -> int:
    """Edge type of the edge joining branching positions a and b."""
    return _EDGE_TYPE[frozenset((a, b))]


def perm_sign(p) -> int:
    """Sign of a permutation given as a sequence of distinct sortable items."""
    p = list(p)
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def complete_triple(w0) -> tuple[complex, complex, complex]:
    """The triple (w0, 1/(1-w0), 1 - 1/w0)."""
    w0 = complex(w0)
    if w0 == 0 or w0 == 1:
        raise DomainError("modulus must avoid 0 and 1")
    return w0, 1.0 / (1.0 - w0), 1.0 - 1.0 / w0


@dataclass(frozen=True)
class ModularTriple:
    """Moduli w0, w1, w2 with w_{j+1} = 1/(1 - w_j) and w0 w1 w2 = -1."""

    w0: complex

    @property
    def values(self) -> tuple[complex, complex, complex]:
        return complete_triple(self.w0)

    def __getitem__(self, j):
        return self.values[j]

    @property
    def degenerate(self) -> bool:
        return is_real(self.w0, DEGENERATE_TOL)

    @property
    def sign(self) -> int:
        """Sign of Im w0, zero for degenerate triples."""
        if self.degenerate:
            return 0
        return 1 if self.w0.imag > 0 else -1


def log_branch(w, f: int) -> complex:
    """Log-branch l = log w + i pi f."""
    return std_log(w) + 1j * PI * f


def flattening_residual(w0, f) -> float:
    w = complete_triple(w0)
    return abs(sum(log_branch(w[j], f[j]) for j in range(3)))


def is_flattening(w0, f, tol: float = FLAT_TOL) -> bool:
    return flattening_residual(w0, f) < tol


def flattening_sum(w0) -> int:
    """The value of f0 + f1 + f2 forced by the flattening condition (always odd)."""
    w = complete_triple(w0)
    s = sum(std_log(x) for x in w)
    return -int(round(s.imag / PI))


def is_charge(c) -> bool:
    return sum(int(x) for x in c) == 1


@dataclass(frozen=True)
class DecoratedTetra:
    """A branched tetrahedron with moduli and optional flattening and charge.

    ``order`` lists the vertex labels in branching order, ``b`` is the
    branching sign relative to the ambient orientation.
    """

    w0: complex
    f: tuple[int, int, int] | None = None
    c: tuple[int, int, int] | None = None
    b: int = 1
    order: tuple = (0, 1, 2, 3)

    def __post_init__(self):
        object.__setattr__(self, "w0", complex(self.w0))
        if self.b not in (1, -1):
            raise DomainError("branching sign must be +1 or -1")
        complete_triple(self.w0)
        if self.f is not None:
            object.__setattr__(self, "f", tuple(int(x) for x in self.f))
        if self.c is not None:
            object.__setattr__(self, "c", tuple(int(x) for x in self.c))

    @property
    def w(self) -> tuple[complex, complex, complex]:
        return complete_triple(self.w0)

    @property
    def w_sign(self) -> int:
        return ModularTriple(self.w0).sign

    @property
    def degenerate(self) -> bool:
        return ModularTriple(self.w0).degenerate

    def validate(self, tol: float = FLAT_TOL) -> None:
        if self.f is not None and not is_flattening(self.w0, self.f, tol):
            raise DomainError(f"f={self.f} is not a flattening of w0={self.w0}")
        if self.c is not None and not is_charge(self.c):
            raise DomainError(f"c={self.c} does not sum to 1")

    def log_branches(self) -> tuple[complex, complex, complex]:
        if self.f is None:
            raise DomainError("tetrahedron has no flattening")
        w = self.w
        return tuple(log_branch(w[j], self.f[j]) for j in range(3))

    def root_shifts(self) -> tuple[int, int, int]:
        """a = f - b c, the integers selecting the Nth roots."""
        if self.f is None or self.c is None:
            raise DomainError("need both flattening and charge")
        return tuple(self.f[j] - self.b * self.c[j] for j in range(3))

    def roots(self, N: int, shifts=None) -> tuple[complex, complex, complex]:
        """Nth roots w'_j = (w_j)'_{a_j}.  Their product is -zeta^{-b(m+1)}."""
        a = self.root_shifts() if shifts is None else shifts
        w = self.w
        return tuple(nth_root_branch(w[j], a[j], N) for j in range(3))

    def edge_value(self, pos_a: int, pos_b: int):
        """(w, f, c) on the edge joining two branching positions."""
        t = edge_type(pos_a, pos_b)
        return (
            self.w[t],
            None if self.f is None else self.f[t],
            None if self.c is None else self.c[t],
        )

    def face_vertices(self, j: int) -> tuple:
        """Vertices of the face opposite v_j, in branching order."""
        return tuple(v for k, v in enumerate(self.order) if k != j)


def apply_permutation(t: DecoratedTetra, p) -> DecoratedTetra:
    """Change the branching by a permutation of positions.

    The new branching lists ``order[p[0]], ..., order[p[3]]``.  Moduli on
    each geometric edge are raised to the sign of p, flattenings multiplied
    by it, charges kept; everything is then renamed by the new edge types.
    """
    p = tuple(p)
    if sorted(p) != [0, 1, 2, 3]:
        raise DomainError(f"{p} is not a permutation of 0..3")
    eps = perm_sign(p)
    # new edge type 0 is [new v0, new v1] = old positions {p0, p1}, and so on
    new_w0 = t.w[edge_type(p[0], p[1])] ** eps
    f = c = None
    if t.f is not None:
        f = tuple(eps * t.f[edge_type(*(p[x] for x in EDGE_PAIRS[k][0]))] for k in range(3))
    if t.c is not None:
        c = tuple(t.c[edge_type(*(p[x] for x in EDGE_PAIRS[k][0]))] for k in range(3))
    order = tuple(t.order[p[k]] for k in range(4))
    return DecoratedTetra(new_w0, f, c, eps * t.b, order)


def all_branchings() -> list[tuple[int, int, int, int]]:
    return list(itertools.permutations(range(4)))


@dataclass(frozen=True)
class EnrichedTetra:
    """A decorated tetrahedron together with its Nth-root data."""

    tet: DecoratedTetra
    N: int

    @property
    def roots(self):
        return self.tet.roots(self.N)

    @property
    def tau(self) -> complex:
        ctx = RootContext(self.N)
        return ctx.zeta_pow(-self.tet.b * (ctx.m + 1))

    def root_product_residual(self) -> float:
        r = self.roots
        return abs(r[0] * r[1] * r[2] + self.tau)


def random_tetra(rng, b: int | None = None, upper: bool | None = None, fmax: int = 3) -> DecoratedTetra:
    """Random decorated tetrahedron with a valid flattening and charge."""
    w0 = complex(rng.normal(), abs(rng.normal()) + 0.05)
    if upper is False or (upper is None and rng.random() < 0.5):
        w0 = w0.conjugate()
    s = flattening_sum(w0)
    f0, f1 = (int(x) for x in rng.integers(-fmax, fmax + 1, size=2))
    c0, c1 = (int(x) for x in rng.integers(-fmax, fmax + 1, size=2))
    if b is None:
        b = int(rng.choice([1, -1]))
    return DecoratedTetra(w0, (f0, f1, s - f0 - f1), (c0, c1, 1 - c0 - c1), b)
