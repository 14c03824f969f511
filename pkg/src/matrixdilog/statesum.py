"""State sums of decorated triangulations.

Every tetrahedron contributes its matrix dilogarithm as a tensor with one
leg per face.  Glued faces are summed over, which turns the whole
triangulation into a scalar (closed case) or a tensor on the free faces.
"""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .network import Node, contract, contract_bruteforce, plan_greedy
from .phase import canonical_sign, phase_equal
from .scalars import PI, DomainError, RootContext, reduce_mod_pi2
from .tensors import INPUT_FACES, OUTPUT_FACES, RN_operator, R_value
from .triangulation import DecoratedTriangulation


def face_label(tri, t: int, f: int):
    g = tri.gluing.get((t, f))
    if g is None:
        return ("free", t, f)
    t2, f2, _ = g
    return ("glued",) + min((t, f), (t2, f2))


def network_nodes(dt: DecoratedTriangulation, N: int, shifts=None):
    """One node per tetrahedron; checks that glued faces join an output to an input."""
    nodes = []
    direction: dict = {}
    for t in range(dt.n):
        tet = dt.tetra(t)
        op = RN_operator(tet, N, None if shifts is None else shifts[t])
        T = op.reshape((N,) * 4) if N > 1 else np.full((1, 1, 1, 1), op[0, 0])
        positions = OUTPUT_FACES[tet.b] + INPUT_FACES[tet.b]
        labels = []
        for k, pos in enumerate(positions):
            f = tet.order[pos]  # local face opposite the vertex at that position
            lab = face_label(dt.tri, t, f)
            labels.append(lab)
            direction.setdefault(lab, []).append("out" if k < 2 else "in")
        nodes.append(Node(T, tuple(labels)))
    for lab, ds in direction.items():
        if len(ds) == 2 and sorted(ds) != ["in", "out"]:
            raise DomainError(f"glued face {lab} has matching directions {ds}")
    return nodes


def free_labels(dt: DecoratedTriangulation):
    return [("free", t, f) for t, f in dt.tri.boundary_faces()]


def state_sum(dt: DecoratedTriangulation, N: int, method: str = "planned", shifts=None):
    """Contract all tensors; returns a scalar for closed triangulations."""
    nodes = network_nodes(dt, N, shifts)
    out = free_labels(dt)
    if method == "brute":
        res = contract_bruteforce(nodes, out, N)
    elif method == "planned":
        res = contract(nodes, out, plan_greedy(nodes, N))
    else:
        raise ValueError(f"unknown method {method!r}")
    return complex(res) if not out else res


@dataclass
class StateSumResult:
    """Normalised state sum with its phase normalisation."""

    N: int
    value: complex
    phase_class_k: int
    sign: int
    v: int
    raw: complex
    residuals: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "phase_class_k": self.phase_class_k,
            "sign": self.sign,
            "v": self.v,
            "residuals": self.residuals,
        }


def normalise_phase(z: complex, N: int) -> tuple[complex, int, int]:
    """Rotate z by a sign and a power of zeta into the sector |arg| <= pi / (2N).

    Returns ``(rep, k, sign)`` with ``z = sign * zeta^k * rep``.
    """
    if z == 0:
        return 0j, 0, 1
    ang = cmath.phase(z)
    step = PI / N  # the group {+-zeta^k} is generated by exp(i pi / N) up to sign
    j = int(round(ang / step))
    rep = z * cmath.exp(-1j * step * j)
    # exp(i pi j / N) = sign * zeta^k
    j %= 2 * N
    ctx = RootContext(N)
    for sign in (1, -1):
        for k in range(N):
            if abs(sign * ctx.zeta_pow(k) - cmath.exp(1j * step * j)) < 1e-9:
                return rep, k, sign
    raise RuntimeError("phase normalisation failed")


def quantum_invariant(dt: DecoratedTriangulation, N: int, method: str = "planned") -> StateSumResult:
    """N^{-v} times the state sum, normalised modulo +-zeta^k."""
    start = time.perf_counter()
    if not dt.tri.closed:
        raise DomainError("the invariant needs a triangulation without free faces")
    residuals = dt.check()
    v = dt.tri.interior_vertex_count()
    if N == 1:
        raw = H1(dt)
        rep = canonical_sign(raw)
        return StateSumResult(1, rep, 0, 1 if rep == raw else -1, v, raw, residuals,
                              time.perf_counter() - start)
    raw = state_sum(dt, N, method) * N ** (-v)
    rep, k, sign = normalise_phase(raw, N)
    return StateSumResult(N, rep, k, sign, v, raw, residuals, time.perf_counter() - start)


def R_sum(dt: DecoratedTriangulation) -> complex:
    """Sum of b R(w0; f0, f1) over the tetrahedra (not reduced)."""
    return sum(R_value(dt.tetra(t)) for t in range(dt.n))


def complex_volume(dt: DecoratedTriangulation) -> complex:
    """Sum of b R modulo pi^2: Chern-Simons part + i * volume."""
    return reduce_mod_pi2(R_sum(dt))


def H1(dt: DecoratedTriangulation) -> complex:
    """N = 1 invariant exp(sum b R / (i pi))."""
    return cmath.exp(R_sum(dt) / (PI * 1j))


def asymptotics_probe(dt: DecoratedTriangulation, Ns=(3, 5, 7), method: str = "planned"):
    """Table of (N, |H_N|, log|H_N| / N) next to the hyperbolic volume / (2 pi).

    Diagnostic only; no limit behaviour is asserted.
    """
    vol = R_sum(dt).imag
    rows = []
    for N in Ns:
        r = quantum_invariant(dt, N, method)
        mag = abs(r.value)
        rows.append({
            "N": N,
            "abs": mag,
            "log_abs_over_N": math.log(mag) / N if mag > 0 else float("-inf"),
            "seconds": r.seconds,
        })
    return {"volume": vol, "volume_over_2pi": vol / (2 * PI), "rows": rows}


def invariants_agree(a: StateSumResult, b: StateSumResult, tol: float = 1e-8) -> bool:
    """Equality up to a sign times a power of zeta (relative tolerance)."""
    if a.N != b.N:
        return False
    if a.N == 1:
        return abs(a.value - b.value) <= tol * max(1.0, abs(a.value))
    return bool(phase_equal(np.array([a.raw]), np.array([b.raw]), a.N, tol))
