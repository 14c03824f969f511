"""Scalar special functions: logarithms, dilogarithms, Nth-root branches.

Conventions
-----------
* ``std_log`` is the principal logarithm with imaginary part in (-pi, pi].
  Negative reals always get ``+i*pi`` regardless of the sign of a zero
  imaginary part.
* On a branch cut every multivalued function returns the value obtained as
  the limit from the upper half plane (``x + i0``).  Helpers named
  ``on_*_cut`` report whether an input sits on a cut.
* Values defined modulo ``pi**2`` are returned through :func:`reduce_mod_pi2`,
  whose canonical representative has real part in ``[0, pi**2)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

PI = math.pi
PI2 = PI * PI

#: tolerance for "is this point on the real line / on a cut"
DEGENERATE_TOL = 1e-12
#: tolerance for membership of the curve u**N + v**N = 1
CURVE_TOL = 1e-9


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a function."""


def _as_complex(x) -> complex:
    return complex(x)


def std_log(x) -> complex:
    """Principal logarithm with Im in (-pi, pi]."""
    z = _as_complex(x)
    if z == 0:
        raise DomainError("log(0) is undefined")
    val = cmath.log(z)
    if val.imag <= -PI + 1e-15 and abs(z.imag) <= DEGENERATE_TOL * max(1.0, abs(z)):
        val = complex(val.real, PI)
    return val


def is_real(x, tol: float = DEGENERATE_TOL) -> bool:
    z = _as_complex(x)
    return abs(z.imag) <= tol * max(1.0, abs(z.real))


def on_li2_cut(x) -> bool:
    """True when x lies on the cut (1, +inf) of the Euler dilogarithm."""
    z = _as_complex(x)
    return is_real(z) and z.real > 1.0


def on_rogers_cut(x) -> bool:
    """True when x lies on (-inf, 0) or (1, +inf)."""
    z = _as_complex(x)
    return is_real(z) and (z.real < 0.0 or z.real > 1.0)


def log_pair(x) -> tuple[complex, complex]:
    """Return ``(log x, log(1 - x))`` continued from the upper half plane.

    For x in (1, +inf) the second entry is ``log|1-x| - i*pi``; this matches
    ``-std_log(1/(1-x))`` which is the branch picked by the standard log of
    the modulus ``1/(1-x)``.
    """
    z = _as_complex(x)
    lx = std_log(z) if z != 0 else complex(-math.inf, 0.0)
    if z == 1:
        l1 = complex(-math.inf, 0.0)
    elif on_li2_cut(z):
        l1 = complex(math.log(z.real - 1.0), -PI)
    else:
        l1 = std_log(1.0 - z)
    return lx, l1


@lru_cache(maxsize=None)
def _bernoulli_coeffs(nterms: int = 40) -> np.ndarray:
    """Coefficients B_n/(n+1)! of the series Li2 = sum B_n u^(n+1)/(n+1)!."""
    # Bernoulli numbers via the Akiyama-Tanigawa recursion, exact rationals.
    B = []
    a = [Fraction(0)] * (nterms + 1)
    for n in range(nterms + 1):
        a[n] = Fraction(1, n + 1)
        for j in range(n, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        B.append(a[0])
    B[1] = Fraction(-1, 2)  # convention B_1 = -1/2
    return np.array([float(B[n] / math.factorial(n + 1)) for n in range(nterms + 1)])


def _li2_core(z: complex) -> complex:
    """Bernoulli series in u = -log(1-z), valid for |z| <= 1, Re z <= 1/2."""
    u = -cmath.log(1.0 - z)
    coeffs = _bernoulli_coeffs()
    total = 0j
    power = u
    u2 = u * u
    # B_0 u + B_1 u^2/2, then only even Bernoulli numbers survive
    total = coeffs[0] * u + coeffs[1] * u2
    power = u * u2
    for n in range(2, len(coeffs), 2):
        term = coeffs[n] * power
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
        power *= u2
    return total


def euler_li2(x, return_flag: bool = False):
    """Euler dilogarithm Li2(x), analytic on C minus (1, +inf).

    Points on the cut get the ``x + i0`` value.  With ``return_flag=True`` a
    pair ``(value, on_cut)`` is returned.
    """
    z = _as_complex(x)
    cut = on_li2_cut(z)
    if cut:
        r = z.real
        # Li2(r + i0) = pi^2/3 - log(r)^2/2 - Li2(1/r) + i pi log r
        val = PI2 / 3 - 0.5 * math.log(r) ** 2 - _li2_unit(1.0 / r) + 1j * PI * math.log(r)
    else:
        val = _li2_noncut(z)
    return (val, cut) if return_flag else val


def _li2_unit(z: complex) -> complex:
    """Li2 for |z| <= 1."""
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI2 / 6)
    if z.real > 0.5:
        w = 1.0 - z
        return -_li2_core(w) + PI2 / 6 - cmath.log(z) * cmath.log(w)
    return _li2_core(z)


def _li2_noncut(z: complex) -> complex:
    if abs(z) <= 1.0:
        return complex(_li2_unit(z))
    # inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2/2
    lmz = cmath.log(-z)
    return -_li2_unit(1.0 / z) - PI2 / 6 - 0.5 * lmz * lmz


def rogers_L(x, return_flag: bool = False):
    """Rogers dilogarithm L(x) = -pi^2/6 + log(x)log(1-x)/2 + Li2(x).

    Normalised so that L(0) = -pi^2/6 and L(1) = 0.  Analytic on
    C minus ((-inf, 0) and (1, +inf)); on a cut the upper side is used.
    """
    z = _as_complex(x)
    cut = on_rogers_cut(z)
    if z == 0:
        val = complex(-PI2 / 6)
    elif z == 1:
        val = 0j
    else:
        lx, l1 = log_pair(z)
        val = -PI2 / 6 + 0.5 * lx * l1 + euler_li2(z)
    return (val, cut) if return_flag else val


def bloch_wigner(x) -> float:
    """Bloch-Wigner dilogarithm D2(x) = Im Li2(x) + arg(1-x) log|x|.

    Real analytic away from {0, 1, inf}, continuous everywhere and zero on
    the real line.
    """
    z = _as_complex(x)
    if z == 0 or z == 1:
        return 0.0
    if is_real(z):
        return 0.0
    _, l1 = log_pair(z)
    return float(euler_li2(z).imag + l1.imag * math.log(abs(z)))


def reduce_mod_pi2(z) -> complex:
    """Canonical representative of z in C / pi^2 Z (real part in [0, pi^2))."""
    z = _as_complex(z)
    re = math.fmod(z.real, PI2)
    if re < 0:
        re += PI2
    if re >= PI2:
        re -= PI2
    return complex(re, z.imag)


def dist_mod_pi2(a, b) -> float:
    """Distance between a and b in C / pi^2 Z."""
    d = _as_complex(a) - _as_complex(b)
    re = math.remainder(d.real, PI2)
    return abs(complex(re, d.imag))


def lifted_R(x, p: int, q: int, reduce: bool = True) -> complex:
    """Lifted Rogers dilogarithm R(x; p, q) = L(x) + i pi/2 (p log(1-x) + q log x).

    The lift lives on the Riemann surface of the pair of logarithms; the
    integers p, q select the sheet.  Returned modulo pi^2 unless
    ``reduce=False``.
    """
    z = _as_complex(x)
    if z == 0 or z == 1:
        raise DomainError("R(x; p, q) needs x outside {0, 1}")
    lx, l1 = log_pair(z)
    val = rogers_L(z) + 0.5j * PI * (p * l1 + q * lx)
    return reduce_mod_pi2(val) if reduce else val


def rogers_exp1(x) -> complex:
    """Scalar N = 1 matrix dilogarithm exp(L(x) / (pi i))."""
    return cmath.exp(rogers_L(x) / (PI * 1j))


# --------------------------------------------------------------------------
# roots of unity and Nth roots


@dataclass(frozen=True)
class RootContext:
    """Data attached to an odd integer N = 2m + 1."""

    N: int

    def __post_init__(self):
        if self.N < 1 or self.N % 2 == 0:
            raise DomainError(f"N must be odd and positive, got {self.N}")

    @property
    def m(self) -> int:
        return (self.N - 1) // 2

    @property
    def zeta(self) -> complex:
        return cmath.exp(2j * PI / self.N)

    def zeta_pow(self, k) -> complex:
        """zeta**k computed from the reduced exponent (exact up to rounding)."""
        return cmath.exp(2j * PI * (int(k) % self.N) / self.N)

    @property
    def half_twist(self) -> complex:
        """zeta**(m+1) = -exp(i pi / N)."""
        return self.zeta_pow(self.m + 1)

    @property
    def g_at_one(self) -> complex:
        """Closed form of g(1) = sqrt(N) exp(-i pi (N-1)(N-2) / (12 N))."""
        N = self.N
        return math.sqrt(N) * cmath.exp(-1j * PI * (N - 1) * (N - 2) / (12 * N))

    def zeta_powers(self) -> np.ndarray:
        return np.exp(2j * PI * np.arange(self.N) / self.N)


def nth_root_branch(u, a: int, N: int) -> complex:
    """The Nth root exp((log u + a (N+1) pi i) / N); zero maps to zero.

    Equal to ``u^(1/N) * zeta**((m+1) a)`` with the principal root.
    """
    z = _as_complex(u)
    if z == 0:
        return 0j
    return cmath.exp((std_log(z) + a * (N + 1) * PI * 1j) / N)


def principal_root(x, N: int) -> complex:
    return nth_root_branch(x, 0, N)


def on_curve(u, v, N: int, tol: float = CURVE_TOL) -> bool:
    """Check u**N + v**N = 1 to a relative tolerance."""
    u = _as_complex(u)
    v = _as_complex(v)
    scale = max(1.0, abs(u) ** N, abs(v) ** N)
    return abs(u ** N + v ** N - 1.0) <= tol * scale


def g_function(x, N: int, return_flag: bool = False):
    """g(x) = prod_{j=1}^{N-1} (1 - x zeta^-j)^(j/N), principal powers.

    Analytic off the rays where x**N is in [1, inf).
    """
    ctx = RootContext(N)
    z = _as_complex(x)
    val = 1.0 + 0j
    cut = False
    for j in range(1, N):
        t = 1.0 - z * ctx.zeta_pow(-j)
        if t == 0:
            raise DomainError("g has a branch point at x**N = 1")
        if is_real(t) and t.real < 0:
            cut = True
        val *= cmath.exp(j * std_log(t) / N)
    return (val, cut) if return_flag else val


def h_function(x, N: int) -> complex:
    """Normalised g: h(x) = g(x) / g(1)."""
    return g_function(x, N) / RootContext(N).g_at_one


def g_at_one_product(N: int) -> complex:
    """g(1) computed from its defining product (used to test the closed form)."""
    ctx = RootContext(N)
    val = 1.0 + 0j
    for j in range(1, N):
        val *= cmath.exp(j * std_log(1.0 - ctx.zeta_pow(-j)) / N)
    return val


def omega(u, v, n: int, N: int, check: bool = True) -> complex:
    """omega(u, v | n) = prod_{j=1}^{n} v / (1 - u zeta^j).

    On the curve u**N + v**N = 1 the product has period N in n, so n is read
    modulo N.
    """
    u = _as_complex(u)
    v = _as_complex(v)
    if check and not on_curve(u, v, N):
        raise DomainError("omega needs u**N + v**N = 1")
    ctx = RootContext(N)
    n = int(n) % N
    val = 1.0 + 0j
    for j in range(1, n + 1):
        den = 1.0 - u * ctx.zeta_pow(j)
        if den == 0:
            raise DomainError("omega hits a pole")
        val *= v / den
    return val


def curve_sum(x, z, N: int) -> complex:
    """S(x | z) = sum_{k=1}^{N} prod_{j=1}^{k} z / (1 - x zeta^j)."""
    x = _as_complex(x)
    z = _as_complex(z)
    if not on_curve(x, z, N):
        raise DomainError("curve_sum needs x**N + z**N = 1")
    ctx = RootContext(N)
    total = 0j
    prod = 1.0 + 0j
    for k in range(1, N + 1):
        prod *= z / (1.0 - x * ctx.zeta_pow(k))
        total += prod
    return total


def quantum_bracket(x, N: int) -> complex:
    """[x] = (1 - x**N) / (N (1 - x)), equal to 1 at x = 1."""
    x = _as_complex(x)
    if abs(1.0 - x) < 1e-14:
        return 1.0 + 0j
    return (1.0 - x ** N) / (N * (1.0 - x))


@dataclass(frozen=True)
class LogPoint:
    """A point (x; p, q) of the Riemann surface of (log x, -log(1-x))."""

    x: complex
    p: int = 0
    q: int = 0

    def logs(self) -> tuple[complex, complex]:
        """The pair (log x + p pi i, -log(1-x) + q pi i)."""
        lx, l1 = log_pair(self.x)
        return lx + self.p * PI * 1j, -l1 + self.q * PI * 1j

    def R(self, reduce: bool = True) -> complex:
        return lifted_R(self.x, self.p, self.q, reduce=reduce)
