import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matrixdilog.scalars import PI, PI2, DomainError, lifted_R
from matrixdilog.tensors import R_value
from matrixdilog.tetra import (
    DecoratedTetra,
    EnrichedTetra,
    ModularTriple,
    all_branchings,
    apply_permutation,
    complete_triple,
    edge_type,
    flattening_residual,
    flattening_sum,
    is_charge,
    is_flattening,
    log_branch,
    perm_sign,
    random_tetra,
)

seeds = st.integers(0, 2 ** 32 - 1)


def _mod(a, b, period):
    d = a - b
    return abs(complex(math.remainder(d.real, period), d.imag))


def test_complete_triple_examples():
    # [TRIVIAL]
    assert complete_triple(2) == pytest.approx((2, -1, 0.5))
    w = complete_triple(1j)
    assert w == pytest.approx((1j, (1 + 1j) / 2, 1 + 1j))
    assert w[0] * w[1] * w[2] == pytest.approx(-1)
    # [DERIVED] the regular tetrahedron is the fixed point of x -> 1/(1 - x)
    reg = cmath.exp(1j * PI / 3)
    assert complete_triple(reg) == pytest.approx((reg, reg, reg))
    for bad in (0, 1):
        with pytest.raises(DomainError):
            complete_triple(bad)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_triple_is_a_three_cycle(seed):
    w0 = complex(*np.random.default_rng(seed).normal(size=2))
    w = complete_triple(w0)
    assert complete_triple(w[1]) == pytest.approx((w[1], w[2], w[0]))
    assert w[0] * w[1] * w[2] == pytest.approx(-1)
    signs = {np.sign(x.imag) for x in w}
    assert len(signs) == 1


def test_modular_triple_sign():
    assert ModularTriple(1j).sign == 1
    assert ModularTriple(-1j).sign == -1
    assert ModularTriple(2.0).sign == 0 and ModularTriple(2.0).degenerate


def test_flattening_examples():
    # [DERIVED] logs of (2, -1, 1/2) sum to i pi, so f = (0, -1, 0) cancels it
    assert is_flattening(2, (0, -1, 0))
    assert flattening_residual(2, (0, -1, 0)) < 1e-15
    assert not is_flattening(2, (0, 0, 0))
    # [PAPER] upper half plane forces f0 + f1 + f2 = -1
    assert flattening_sum(0.3 + 0.8j) == -1
    assert flattening_sum(0.3 - 0.8j) == 1
    assert log_branch(-1, 1) == pytest.approx(2j * PI)


def test_charge():
    assert is_charge((1, 0, 0))
    assert is_charge((2, -3, 2))
    assert not is_charge((0, 0, 0))


def test_branching_sign_examples():
    # [PAPER] standard order gives +1; [TRIVIAL] odd and even permutations
    assert perm_sign((0, 1, 2, 3)) == 1
    assert perm_sign((1, 0, 2, 3)) == -1
    assert perm_sign((1, 0, 3, 2)) == 1
    t = DecoratedTetra(1j, (0, 0, -1), (1, 0, 0))
    assert apply_permutation(t, (1, 0, 2, 3)).b == -1
    assert apply_permutation(t, (1, 0, 3, 2)).b == 1


def test_edge_types():
    assert [edge_type(0, 1), edge_type(1, 2), edge_type(0, 2)] == [0, 1, 2]
    assert [edge_type(2, 3), edge_type(0, 3), edge_type(1, 3)] == [0, 1, 2]


def test_identity_permutation():
    t = DecoratedTetra(0.2 + 0.7j, (0, 0, -1), (1, 0, 0))
    assert apply_permutation(t, (0, 1, 2, 3)) == t


def test_transposition_01_inverts_moduli():
    # [DERIVED] swapping v0, v1 keeps edge [v0 v1] but reverses orientation
    t = DecoratedTetra(1j, (0, 0, -1), (1, 0, 0))
    s = apply_permutation(t, (1, 0, 2, 3))
    assert s.w0 == pytest.approx(1 / t.w[0])
    assert s.w[1] == pytest.approx(1 / t.w[2])
    assert s.order == (1, 0, 2, 3)
    with pytest.raises(DomainError):
        apply_permutation(t, (0, 0, 1, 2))


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from(all_branchings()))
def test_permutation_preserves_decoration(seed, p):
    t = random_tetra(np.random.default_rng(seed))
    s = apply_permutation(t, p)
    assert is_flattening(s.w0, s.f)
    assert is_charge(s.c)
    assert EnrichedTetra(s, 5).root_product_residual() < 1e-10
    assert EnrichedTetra(s, 5).tau == pytest.approx(EnrichedTetra(t, 5).tau ** perm_sign(p))


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from([(1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2)]))
def test_transpositions_are_involutions(seed, p):
    t = random_tetra(np.random.default_rng(seed))
    back = apply_permutation(apply_permutation(t, p), p)
    assert back.w0 == pytest.approx(t.w0)
    assert (back.f, back.c, back.b, back.order) == (t.f, t.c, t.b, t.order)


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from(all_branchings()))
def test_lifted_R_branching_invariance(seed, p):
    # R(p t) = sign(p) R(t) modulo pi^2/6; R_value carries the branching sign
    t = random_tetra(np.random.default_rng(seed))
    s = apply_permutation(t, p)
    assert _mod(R_value(s), R_value(t), PI2 / 6) < 1e-10
    bare = lifted_R(s.w0, s.f[0], s.f[1], reduce=False)
    assert _mod(bare, perm_sign(p) * lifted_R(t.w0, t.f[0], t.f[1], reduce=False), PI2 / 6) < 1e-10


def test_lifted_R_branching_needs_flattening():
    rng = np.random.default_rng(7)
    t = random_tetra(rng)
    bad = DecoratedTetra(t.w0, (t.f[0] + 1, t.f[1], t.f[2]), t.c, t.b)
    worst = max(_mod(R_value(apply_permutation(bad, p)), R_value(bad), PI2 / 6)
                for p in all_branchings())
    assert worst > 1e-3


def test_roots_and_tau():
    t = DecoratedTetra(0.4 + 0.9j, (0, 0, -1), (0, 1, 0), b=-1)
    assert t.root_shifts() == (0, 1, -1)
    e = EnrichedTetra(t, 3)
    assert e.root_product_residual() < 1e-12
    with pytest.raises(DomainError):
        DecoratedTetra(1j).root_shifts()
    with pytest.raises(DomainError):
        DecoratedTetra(1j, (0, 0, 0)).validate()
