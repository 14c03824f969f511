"""Equality of tensors up to a sign times an Nth root of unity."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PhaseMatch:
    ok: bool
    k: int            # exponent of zeta
    sign: int         # +1 or -1
    residual: float   # max |B - sign zeta^k A| / max |A|
    raw_phase: complex

    def __bool__(self):
        return self.ok


def snap_phase(lam: complex, N: int) -> tuple[int, int, float]:
    """Closest sign * zeta^k to lam; returns (k, sign, distance)."""
    best = None
    for sign in (1, -1):
        ang = cmath.phase(lam / sign)
        k = int(round(ang * N / (2 * math.pi))) % N
        cand = sign * cmath.exp(2j * math.pi * k / N)
        d = abs(lam - cand)
        if best is None or d < best[2]:
            best = (k, sign, d)
    return best


def phase_equal(A, B, N: int, tol: float = 1e-9, allow_sign: bool = True) -> PhaseMatch:
    """Decide whether B = +-zeta^k A for some integer k.

    The scalar is estimated by Frobenius projection of B on A, snapped to the
    nearest allowed root of unity, and the relative Frobenius residual of B
    against the snapped multiple of A is compared with ``tol``.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    normA = float(np.linalg.norm(A))
    if normA == 0.0:
        nb = float(np.linalg.norm(B))
        return PhaseMatch(nb <= tol, 0, 1, nb, 1.0 + 0j)
    lam = complex(np.vdot(A, B) / np.vdot(A, A))
    if allow_sign:
        k, sign, _ = snap_phase(lam, N)
    else:
        k = int(round(cmath.phase(lam) * N / (2 * math.pi))) % N
        sign = 1
    snapped = sign * cmath.exp(2j * math.pi * k / N)
    res = float(np.linalg.norm(B - snapped * A)) / normA
    return PhaseMatch(res <= tol, k, sign, res, lam)


def canonical_sign(z: complex) -> complex:
    """Representative of {z, -z} with Re >= 0 (ties broken by Im >= 0)."""
    z = complex(z)
    if z.real < 0 or (z.real == 0 and z.imag < 0):
        return -z
    return z
