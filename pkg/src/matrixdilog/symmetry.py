"""Behaviour of the matrix dilogarithm under a change of branching.

Swapping two adjacent vertices in the branching order of a tetrahedron
turns its tensor into the tensor of the relabelled tetrahedron, up to gauge
matrices on the two faces whose in/out direction changes.  Faces are named
by the branching position of their opposite vertex in the original order.

For a tetrahedron of sign +1 the gauges, applied to the legs of the
relabelled tensor, are

* (0 1): T on face 3, T^-1 on face 2
* (1 2): S on face 3, T^-1 on face 0
* (2 3): S on face 1, S^-1 on face 0

and their inverses for sign -1.  The (1 2) relation carries an extra
constant phase that depends only on N (see :func:`swap12_constant`).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .phase import PhaseMatch, phase_equal
from .scalars import DomainError, RootContext
from .tensors import INPUT_FACES, OUTPUT_FACES, RN_operator, sym_matrices
from .tetra import DecoratedTetra, apply_permutation

TRANSPOSITIONS = {
    "01": (1, 0, 2, 3),
    "12": (0, 2, 1, 3),
    "23": (0, 1, 3, 2),
}

#: face -> (matrix name, power) for a tetrahedron of sign +1
GAUGES = {
    "01": {3: ("T", 1), 2: ("T", -1)},
    "12": {3: ("S", 1), 0: ("T", -1)},
    "23": {1: ("S", 1), 0: ("S", -1)},
}


def gauss_phase(N: int) -> complex:
    """N^{-1/2} sum_i zeta^{(m+1) i^2}, a unit complex number."""
    ctx = RootContext(N)
    return sum(ctx.zeta_pow((ctx.m + 1) * i * i) for i in range(N)) / np.sqrt(N)


def swap12_constant(N: int) -> complex:
    """Phase of the (1 2) relation beyond +-zeta^k.

    Observed numerically to be the Gauss phase times exp(-2 pi i (N^2-1) / (24 N)),
    which is itself of the form +-zeta^k when N is prime to 6 and N = 1 mod 4.
    """
    return gauss_phase(N) * cmath.exp(-2j * np.pi * (N * N - 1) / (24 * N))


def face_tensor(tet: DecoratedTetra, N: int, shifts=None):
    """Tensor with axes labelled by the vertex opposite each face."""
    op = RN_operator(tet, N, shifts)
    faces = OUTPUT_FACES[tet.b] + INPUT_FACES[tet.b]
    return op.reshape((N,) * 4), [tet.order[p] for p in faces]


def _apply_leg(T: np.ndarray, M: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(M, T, axes=([1], [axis])), 0, axis)


def gauge_matrices(name: str, b: int, N: int) -> dict:
    """Face -> matrix for the transposition ``name`` and sign ``b``."""
    T, S = sym_matrices(N)
    base = {"T": T, "S": S}
    out = {}
    for face, (m, p) in GAUGES[name].items():
        M = base[m] if p * b == 1 else np.linalg.inv(base[m])
        out[face] = M
    return out


@dataclass
class SymmetryReport:
    transposition: str
    N: int
    match: PhaseMatch
    constant: complex

    @property
    def ok(self) -> bool:
        return self.match.ok


def check_symmetry(tet: DecoratedTetra, name: str, N: int, tol: float = 1e-8,
                   shifts=None, shifts_swapped=None) -> SymmetryReport:
    """Compare the tensor of ``tet`` with the gauged tensor of the relabelled one.

    ``shifts`` / ``shifts_swapped`` override the root shifts of both sides
    (used to show that the relation needs a = f - b c).
    """
    if name not in TRANSPOSITIONS:
        raise DomainError(f"unknown transposition {name!r}")
    swapped = apply_permutation(tet, TRANSPOSITIONS[name])
    A, va = face_tensor(tet, N, shifts)
    B, vb = face_tensor(swapped, N, shifts_swapped)
    B = np.transpose(B, [vb.index(v) for v in va])
    for face, M in gauge_matrices(name, tet.b, N).items():
        B = _apply_leg(B, M, va.index(tet.order[face]))
    const = swap12_constant(N) if name == "12" else 1.0 + 0j
    if tet.b == -1:
        const = const.conjugate()
    return SymmetryReport(name, N, phase_equal(A, B * const, N, tol), const)
