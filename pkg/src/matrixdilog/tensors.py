"""Matrix dilogarithms on C^N (x) C^N.

Index conventions
-----------------
Entries are written ``L^{i,j}_{k,l}`` and stored in 4-index arrays
``E[i, j, k, l]``.  As an operator on ``C^N (x) C^N`` the lower pair is the
output and the upper pair the input::

    op[k*N + l, i*N + j] = E[i, j, k, l]

With this convention the splitting formula, the inverse formula and the
five-term operator identity hold literally.

For a tetrahedron with branching sign +1 the operator reads the faces
opposite ``v2, v0`` (first, second factor) and writes the faces opposite
``v3, v1``.  A tetrahedron with sign -1 carries the inverse operator, so it
reads ``v3, v1`` and writes ``v2, v0``.
"""
from __future__ import annotations

import cmath
import itertools

import numpy as np

from .scalars import (
    DomainError,
    RootContext,
    g_function,
    h_function,
    log_pair,
    lifted_R,
    omega,
    on_curve,
    quantum_bracket,
    PI,
)
from .tetra import DecoratedTetra

#: faces (as branching positions of the opposite vertex) read and written by
#: the operator of a tetrahedron, keyed by its branching sign
INPUT_FACES = {1: (2, 0), -1: (3, 1)}
OUTPUT_FACES = {1: (3, 1), -1: (2, 0)}


def entries_to_operator(E: np.ndarray) -> np.ndarray:
    N = E.shape[0]
    return E.transpose(2, 3, 0, 1).reshape(N * N, N * N)


def operator_to_entries(op: np.ndarray) -> np.ndarray:
    N = int(round(np.sqrt(op.shape[0])))
    return op.reshape(N, N, N, N).transpose(2, 3, 0, 1)


def _check_curve(u, v, N):
    if not on_curve(u, v, N):
        raise DomainError("matrix dilogarithm needs u**N + v**N = 1")
    if abs(u) < 1e-300 or abs(1 - u) < 1e-14:
        raise DomainError("matrix dilogarithm is singular at u = 0 or u**N = 1")


def ln_entries(u, v, N: int) -> np.ndarray:
    """Entries of L_N(u, v): h(u) zeta^{kj + (m+1)k^2} omega(u, v | i-k) delta(i+j-l)."""
    u, v = complex(u), complex(v)
    _check_curve(u, v, N)
    ctx = RootContext(N)
    m = ctx.m
    h = h_function(u, N)
    om = np.array([omega(u, v, n, N, check=False) for n in range(N)])
    E = np.zeros((N, N, N, N), dtype=complex)
    for i, j, k in itertools.product(range(N), repeat=3):
        l = (i + j) % N
        E[i, j, k, l] = h * ctx.zeta_pow(k * j + (m + 1) * k * k) * om[(i - k) % N]
    return E


def ln_inverse_entries(u, v, N: int) -> np.ndarray:
    """Entries of the inverse of L_N(u, v), from the closed formula."""
    u, v = complex(u), complex(v)
    _check_curve(u, v, N)
    ctx = RootContext(N)
    m = ctx.m
    pre = quantum_bracket(u, N) * ctx.g_at_one / g_function(u, N)
    us = u * ctx.zeta_pow(-1)
    om = np.array([omega(us, v, n, N, check=False) for n in range(N)])
    E = np.zeros((N, N, N, N), dtype=complex)
    for i, k, l in itertools.product(range(N), repeat=3):
        j = (k + l) % N
        E[i, j, k, l] = pre * ctx.zeta_pow(-i * l - (m + 1) * i * i) / om[(k - i) % N]
    return E


def ln_operator(u, v, N: int) -> np.ndarray:
    return entries_to_operator(ln_entries(u, v, N))


def ln_inverse_operator(u, v, N: int) -> np.ndarray:
    return entries_to_operator(ln_inverse_entries(u, v, N))


def basic_roots(x, N: int) -> tuple[complex, complex]:
    """(x^{1/N}, (1-x)^{1/N}) with principal roots (upper side on cuts)."""
    return lifted_roots(x, 0, 0, N)


def lifted_roots(x, p: int, q: int, N: int) -> tuple[complex, complex]:
    """The pair (x'_p, v'_{-q}) with v = 1 - x."""
    x = complex(x)
    if x == 0 or x == 1:
        raise DomainError("x must avoid 0 and 1")
    lx, l1 = log_pair(x)
    u = cmath.exp((lx + p * (N + 1) * PI * 1j) / N)
    v = cmath.exp((l1 - q * (N + 1) * PI * 1j) / N)
    return u, v


def basic_LN(x, N: int) -> np.ndarray:
    """Operator L_N(x) = L_N(x^{1/N}, (1-x)^{1/N})."""
    return ln_operator(*basic_roots(x, N), N)


def lifted_LN(x, p: int, q: int, N: int) -> np.ndarray:
    """Operator of the lifted matrix dilogarithm at (x; p, q)."""
    return ln_operator(*lifted_roots(x, p, q, N), N)


# --------------------------------------------------------------------------
# per-tetrahedron matrix dilogarithm


def tetra_prefactor(tet: DecoratedTetra, N: int, roots=None) -> complex:
    """Scalar ((w0')^{-c1} (w1')^{c0})^{(N-1)/2}."""
    r0, r1, _ = tet.roots(N) if roots is None else roots
    m = (N - 1) // 2
    return r0 ** (-tet.c[1] * m) * r1 ** (tet.c[0] * m)


def RN_operator(tet: DecoratedTetra, N: int, shifts=None) -> np.ndarray:
    """Operator of the matrix dilogarithm of a flattened, charged tetrahedron.

    ``shifts`` overrides the root selectors a = f - b c (used for controls).
    """
    if N == 1:
        return np.array([[R1(tet)]])
    roots = tet.roots(N, shifts)
    pre = tetra_prefactor(tet, N, roots)
    u, v = roots[0], 1.0 / roots[1]
    if tet.b == 1:
        return pre * ln_operator(u, v, N)
    return pre * ln_inverse_operator(u, v, N)


def RN_inverse_operator(tet: DecoratedTetra, N: int) -> np.ndarray:
    """Inverse of :func:`RN_operator`, from the explicit component formulas."""
    if N == 1:
        return np.array([[1.0 / R1(tet)]])
    roots = tet.roots(N)
    pre = tetra_prefactor(tet, N, roots)
    u, v = roots[0], 1.0 / roots[1]
    if tet.b == 1:
        return ln_inverse_operator(u, v, N) / pre
    return ln_operator(u, v, N) / pre


def RN_entries(tet: DecoratedTetra, N: int) -> np.ndarray:
    return operator_to_entries(RN_operator(tet, N))


def RN_entries_direct(tet: DecoratedTetra, N: int) -> np.ndarray:
    """Entries for b = +1 from the stand-alone formula in the flattening roots.

    Uses the roots w_n' selected by f alone and writes the charge dependence
    as explicit powers of zeta and a shifted omega product.
    """
    if tet.b != 1:
        raise DomainError("direct formula is written for b = +1")
    ctx = RootContext(N)
    m = ctx.m
    f, c = tet.f, tet.c
    fr = tet.roots(N, shifts=f)
    pre = tetra_prefactor(tet, N)
    u0 = fr[0]
    inv1 = 1.0 / fr[1]
    gfac = g_function(u0, N) / ctx.g_at_one
    E = np.zeros((N, N, N, N), dtype=complex)
    for i, j, k in itertools.product(range(N), repeat=3):
        l = (i + j) % N
        n = (i - k - (m + 1) * c[0]) % N
        prod = 1.0 + 0j
        for s in range(1, n + 1):
            prod *= inv1 / (1.0 - u0 * ctx.zeta_pow(s))
        ph = ctx.zeta_pow((m + 1) * c[1] * (i - k) - (m + 1) ** 2 * f[1] * c[0]
                          + k * j + (m + 1) * k * k)
        E[i, j, k, l] = pre * ph * gfac * prod
    return E


def R1(tet: DecoratedTetra) -> complex:
    """Scalar N = 1 value exp((b / (i pi)) R(w0; f0, f1))."""
    if tet.f is None:
        raise DomainError("need a flattening")
    return cmath.exp(tet.b * lifted_R(tet.w0, tet.f[0], tet.f[1], reduce=False) / (PI * 1j))


def R_value(tet: DecoratedTetra) -> complex:
    """b * R(w0; f0, f1), not reduced."""
    return tet.b * lifted_R(tet.w0, tet.f[0], tet.f[1], reduce=False)


def tetra_face_tensor(tet: DecoratedTetra, N: int, shifts=None):
    """Tensor of a tetrahedron with its face labels.

    Returns ``(T, faces)`` where ``T`` has axes ``(out1, out2, in1, in2)``
    and ``faces`` gives the branching position of the vertex opposite each
    axis.
    """
    op = RN_operator(tet, N, shifts)
    faces = OUTPUT_FACES[tet.b] + INPUT_FACES[tet.b]
    return op.reshape(N, N, N, N), faces


def face_directions(b: int) -> dict[int, str]:
    """Map face position -> 'in' or 'out' for a tetrahedron of sign b."""
    d = {j: "in" for j in INPUT_FACES[b]}
    d.update({j: "out" for j in OUTPUT_FACES[b]})
    return d


# --------------------------------------------------------------------------
# splitting formula


def weyl_matrices(N: int):
    """Clock Z, shift X and Y = zeta^{m+1} X Z."""
    ctx = RootContext(N)
    Z = np.diag(ctx.zeta_powers())
    X = np.roll(np.eye(N), 1, axis=0)
    Y = ctx.half_twist * X @ Z
    return Z, X, Y


def splitting_parts(u, w1root, N: int):
    """The two factors (Upsilon, Psi(A)) and the operator A of the splitting formula.

    ``u`` is w0' and ``w1root`` is w1'; the product reproduces
    ``ln_operator(u, 1/w1root)``.
    """
    ctx = RootContext(N)
    Z, X, Y = weyl_matrices(N)
    mp = np.linalg.matrix_power
    ups = sum(ctx.zeta_pow(i * j) * np.kron(mp(Z, -i), mp(Y, j))
              for i in range(N) for j in range(N)) / N
    A = -np.kron(np.linalg.inv(Y), np.linalg.inv(Z) @ Y)
    return ups, psi_series(A, u, w1root, N), A


def psi_series(A, u, w1root, N: int) -> np.ndarray:
    """Psi(A) = h(u) sum_t prod_{s<=t} [u^-1 w1'^-1 / (1 - u^-1 zeta^-s)] A^t."""
    ctx = RootContext(N)
    out = np.zeros_like(A, dtype=complex)
    coef = 1.0 + 0j
    power = np.eye(A.shape[0], dtype=complex)
    for t in range(N):
        if t > 0:
            coef *= (1.0 / u) * (1.0 / w1root) / (1.0 - ctx.zeta_pow(-t) / u)
            power = power @ A
        out += coef * power
    return h_function(u, N) * out


def splitting_residual(u, w1root, N: int) -> float:
    ups, psi, _ = splitting_parts(u, w1root, N)
    L = ln_operator(u, 1.0 / w1root, N)
    return float(np.abs(ups @ psi - L).max())


def psi_functional_residual(u, w1root, N: int) -> float:
    """Residual of Psi(zeta^{-1} A) = Psi(A) (u - w1'^{-1} A)."""
    ctx = RootContext(N)
    _, psi, A = splitting_parts(u, w1root, N)
    lhs = psi_series(A * ctx.zeta_pow(-1), u, w1root, N)
    rhs = psi @ (u * np.eye(A.shape[0]) - A / w1root)
    return float(np.abs(lhs - rhs).max())


def ab_power_residual(N: int, t: int) -> float:
    """Check the closed form of (Y^{-1} (x) Z^{-1} Y)^t entrywise."""
    ctx = RootContext(N)
    m = ctx.m
    Z, X, Y = weyl_matrices(N)
    B = np.kron(np.linalg.inv(Y), np.linalg.inv(Z) @ Y)
    P = np.linalg.matrix_power(B, t)
    expect = np.zeros_like(P)
    for i, j, k, l in itertools.product(range(N), repeat=4):
        if (l - j - t) % N == 0 and (k + t - i) % N == 0:
            expect[k * N + l, i * N + j] = ctx.zeta_pow(-k * t - t * (t + 1) * (m + 1))
    return float(np.abs(P - expect).max())


# --------------------------------------------------------------------------
# symmetry matrices


def sym_matrices(N: int) -> tuple[np.ndarray, np.ndarray]:
    """T_ij = zeta^{(m+1) i^2} delta(i+j) and S_ij = zeta^{ij} / sqrt(N)."""
    ctx = RootContext(N)
    m = ctx.m
    T = np.zeros((N, N), dtype=complex)
    S = np.zeros((N, N), dtype=complex)
    for i in range(N):
        T[i, (-i) % N] = ctx.zeta_pow((m + 1) * i * i)
        for j in range(N):
            S[i, j] = ctx.zeta_pow(i * j) / np.sqrt(N)
    return T, S


def modular_constant(N: int) -> complex:
    """The scalar c with S^2 = c (S T)^3, obtained by projection.

    The matrices satisfy this relation projectively; c is returned as the
    Frobenius projection of S^2 on (S T)^3.
    """
    T, S = sym_matrices(N)
    A = np.linalg.matrix_power(S @ T, 3)
    B = S @ S
    return complex(np.vdot(A, B) / np.vdot(A, A))


def conjugation_matrix(N: int) -> np.ndarray:
    """U with U^{i,j}_{k,l} = delta(k+i) delta(l+j), as an operator."""
    P = np.zeros((N, N))
    for i in range(N):
        P[(-i) % N, i] = 1
    return np.kron(P, P)
