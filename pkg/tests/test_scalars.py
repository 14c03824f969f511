import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from matrixdilog.scalars import (
    PI,
    PI2,
    DomainError,
    LogPoint,
    RootContext,
    bloch_wigner,
    curve_sum,
    dist_mod_pi2,
    euler_li2,
    g_at_one_product,
    g_function,
    h_function,
    lifted_R,
    log_pair,
    nth_root_branch,
    omega,
    on_curve,
    quantum_bracket,
    reduce_mod_pi2,
    rogers_L,
    rogers_exp1,
    std_log,
)

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
nonreal = st.builds(complex, finite, finite).filter(lambda z: abs(z.imag) > 1e-3 and abs(z) < 3)


# --- logarithms -----------------------------------------------------------

def test_std_log_examples():
    # [TRIVIAL]
    assert std_log(1) == 0
    assert std_log(-1) == pytest.approx(1j * PI)
    assert std_log(complex(-1, -0.0)) == pytest.approx(1j * PI)
    assert std_log(math.e * 1j) == pytest.approx(1 + 0.5j * PI)
    with pytest.raises(DomainError):
        std_log(0)


def test_log_pair_on_cut_uses_upper_side():
    lx, l1 = log_pair(3.0)
    assert lx == pytest.approx(math.log(3))
    assert l1 == pytest.approx(complex(math.log(2), -PI))
    # agrees with the limit from the upper half plane
    assert l1 == pytest.approx(cmath.log(1 - complex(3, 1e-13)), abs=1e-10)


# --- dilogarithms ---------------------------------------------------------

def test_li2_examples():
    # [TRIVIAL] and [DERIVED] via the frozen oracle
    assert euler_li2(0) == 0
    assert euler_li2(1) == pytest.approx(PI2 / 6)
    assert euler_li2(0.5) == pytest.approx(oracles.LI2_HALF, abs=1e-14)
    assert euler_li2(-1) == pytest.approx(-PI2 / 12, abs=1e-14)


def test_li2_cut_flag_and_value():
    val, cut = euler_li2(2.0, return_flag=True)
    assert cut
    assert val == pytest.approx(oracles.li2(complex(2.0, 1e-25)), abs=1e-12)
    assert not euler_li2(0.3, return_flag=True)[1]


def test_rogers_examples():
    assert rogers_L(1) == 0
    assert rogers_L(0) == pytest.approx(-PI2 / 6)
    assert rogers_L(0.5) == pytest.approx(oracles.ROGERS_HALF, abs=1e-14)
    _, cut = rogers_L(-1.0, return_flag=True)
    assert cut


@settings(max_examples=200, deadline=None)
@given(nonreal)
def test_li2_matches_oracle(z):
    assert abs(euler_li2(z) - oracles.li2(z)) < 1e-12 * max(1, abs(oracles.li2(z)))


@settings(max_examples=200, deadline=None)
@given(nonreal)
def test_rogers_matches_oracle(z):
    assert abs(rogers_L(z) - oracles.rogers(z)) < 1e-11


@settings(max_examples=200, deadline=None)
@given(nonreal)
def test_rogers_reflection(z):
    # L(x) + L(1 - x) = -pi^2/6 away from the cuts
    assert abs(rogers_L(z) + rogers_L(1 - z) + PI2 / 6) < 1e-11


def test_bloch_wigner_examples():
    assert bloch_wigner(0.3) == 0.0
    assert bloch_wigner(-2.0) == 0.0
    assert bloch_wigner(cmath.exp(1j * PI / 3)) == pytest.approx(oracles.D2_REGULAR, abs=1e-13)
    z = 2 + 1j
    assert bloch_wigner(z.conjugate()) == pytest.approx(-bloch_wigner(z), abs=1e-14)


@settings(max_examples=200, deadline=None)
@given(nonreal)
def test_bloch_wigner_matches_oracle(z):
    assert bloch_wigner(z) == pytest.approx(oracles.bloch_wigner(z), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(nonreal)
def test_bloch_wigner_six_fold(z):
    d = bloch_wigner(z)
    for img, sgn in ((1 - 1 / z, 1), (1 / (1 - z), 1), (1 / z, -1), (1 - z, -1)):
        assert bloch_wigner(img) == pytest.approx(sgn * d, abs=1e-11)


# --- lifted Rogers dilogarithm -------------------------------------------

def test_lifted_R_examples():
    assert lifted_R(0.5, 0, 0) == pytest.approx(reduce_mod_pi2(oracles.ROGERS_HALF))
    # one step on the log(1 - x) sheet adds i pi/2 log(1 - x)
    shift = lifted_R(0.5, 1, 0, reduce=False) - lifted_R(0.5, 0, 0, reduce=False)
    assert shift == pytest.approx(0.5j * PI * math.log(0.5))
    with pytest.raises(DomainError):
        lifted_R(1, 0, 0)
    assert LogPoint(0.5, 0, 0).R() == lifted_R(0.5, 0, 0)


def test_reduce_mod_pi2():
    r = reduce_mod_pi2(complex(-1.0, 2.0))
    assert 0 <= r.real < PI2 and r.imag == 2.0
    assert dist_mod_pi2(3 * PI2 + 0.1, 0.1) < 1e-12


def test_rogers_exp1_is_exponential():
    assert rogers_exp1(0.3) == pytest.approx(cmath.exp(rogers_L(0.3) / (PI * 1j)))


# --- roots of unity -------------------------------------------------------

def test_root_context():
    ctx = RootContext(5)
    assert ctx.m == 2
    assert ctx.zeta_pow(7) == pytest.approx(ctx.zeta ** 2)
    assert ctx.half_twist == pytest.approx(-cmath.exp(1j * PI / 5))
    with pytest.raises(DomainError):
        RootContext(4)


def test_nth_root_branch_examples():
    assert nth_root_branch(1, 0, 3) == pytest.approx(1)
    # a = 1 on u = -1 gives exp((i pi + 4 i pi) / 3)
    assert nth_root_branch(-1, 1, 3) == pytest.approx(cmath.exp(5j * PI / 3))
    # period 2N in a
    assert nth_root_branch(0.7 + 0.2j, 6, 3) == pytest.approx(nth_root_branch(0.7 + 0.2j, 0, 3))
    assert nth_root_branch(0, 5, 3) == 0


@settings(max_examples=100, deadline=None)
@given(nonreal, st.integers(-6, 6), st.sampled_from([1, 3, 5, 7]))
def test_nth_root_branch_matches_oracle(u, a, N):
    r = nth_root_branch(u, a, N)
    assert abs(r - complex(oracles.nth_root(u, a, N))) < 1e-12
    assert abs(r ** N - u) < 1e-10 * max(1, abs(u))


@pytest.mark.parametrize("N", [3, 5, 7, 9])
def test_g_examples(N):
    assert g_function(0, N) == 1
    # closed form of g(1) against its product definition
    assert RootContext(N).g_at_one == pytest.approx(g_at_one_product(N), abs=1e-12)
    assert h_function(1, N) == pytest.approx(1)


@settings(max_examples=60, deadline=None)
@given(nonreal, st.sampled_from([3, 5, 7]))
def test_g_matches_oracle(x, N):
    assume_far = min(abs(x - RootContext(N).zeta_pow(k)) for k in range(N))
    if assume_far < 1e-3:
        return
    assert abs(g_function(x, N) - complex(oracles.g(x, N))) < 1e-10


def test_g_cyclic_shift_example():
    # g(x zeta) relates to g(x) through a product of (1 - x zeta^j)
    N, x = 5, 0.3
    ctx = RootContext(N)
    lhs = g_function(x * ctx.zeta, N) / g_function(x, N)
    expected = (1 - x ** N) ** (1 / N) / (1 - x * ctx.zeta)
    assert abs(lhs - expected) < 1e-12


def test_omega_examples():
    N = 5
    u = 0.5
    v = nth_root_branch(1 - u ** N, 0, N)
    assert omega(u, v, 0, N) == 1
    # period N on the curve
    assert omega(u, v, N, N) == pytest.approx(1)
    assert omega(u, v, 3, N) == pytest.approx(complex(oracles.omega(u, v, 3, N)))
    with pytest.raises(DomainError):
        omega(0.5, 0.5, 1, N)


def test_curve_sum_limit_at_one():
    # S(1 | 0) = 1 as a limit along the curve; the k = N term carries it
    N = 5
    for eps in (1e-4, 1e-6):
        x = 1 - eps
        z = nth_root_branch(1 - x ** N, 0, N)
        assert on_curve(x, z, N)
        assert abs(curve_sum(x, z, N) - 1) < 10 * eps ** (1 / N)


@settings(max_examples=60, deadline=None)
@given(nonreal, st.sampled_from([3, 5, 7]), st.integers(0, 6))
def test_curve_sum_shift(x, N, k):
    # x S(x | z zeta) = (1 - z) S(x | z)
    ctx = RootContext(N)
    if min(abs(x * ctx.zeta_pow(j) - 1) for j in range(N)) < 1e-2:
        return
    z = nth_root_branch(1 - x ** N, 0, N) * ctx.zeta_pow(k)
    lhs = x * curve_sum(x, z * ctx.zeta, N)
    rhs = (1 - z) * curve_sum(x, z, N)
    assert abs(lhs - rhs) < 1e-9 * max(1, abs(lhs), abs(rhs))


@pytest.mark.parametrize("N", [3, 5, 7])
def test_curve_sum_matches_direct_sum(N):
    rng = np.random.default_rng(N)
    x = 0.4 + 0.3j
    z = nth_root_branch(1 - x ** N, 0, N) * RootContext(N).zeta_pow(int(rng.integers(N)))
    s = curve_sum(x, z, N)
    # brute evaluation of the same sum
    ctx = RootContext(N)
    ref, prod = 0j, 1 + 0j
    for k in range(1, N + 1):
        prod *= z / (1 - x * ctx.zeta_pow(k))
        ref += prod
    assert s == pytest.approx(ref)


def test_quantum_bracket():
    assert quantum_bracket(1, 5) == 1
    assert quantum_bracket(0, 5) == pytest.approx(1 / 5)
    assert quantum_bracket(2, 3) == pytest.approx((1 - 8) / (3 * (1 - 2)))
