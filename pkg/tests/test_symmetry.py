import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matrixdilog.scalars import DomainError, RootContext
from matrixdilog.symmetry import (
    TRANSPOSITIONS,
    check_symmetry,
    gauge_matrices,
    gauss_phase,
    swap12_constant,
)
from matrixdilog.tetra import apply_permutation, random_tetra

seeds = st.integers(0, 2 ** 32 - 1)


def test_transposition_01_example(rng):
    # [PAPER] the (0 1) relation holds up to phase
    assert check_symmetry(random_tetra(rng), "01", 3).ok


def test_transposition_23_example(rng):
    assert check_symmetry(random_tetra(rng), "23", 5).ok


def test_transposition_12_example(rng):
    assert check_symmetry(random_tetra(rng), "12", 3).ok


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from(sorted(TRANSPOSITIONS)), st.sampled_from([3, 5]))
def test_all_relations_random(seed, name, N):
    rep = check_symmetry(random_tetra(np.random.default_rng(seed), fmax=2), name, N)
    assert rep.ok, rep.match.residual


def test_wrong_root_shift_is_detected():
    # with a = f instead of f - b c some relation must break
    rng = np.random.default_rng(11)
    broken = 0
    for _ in range(10):
        t = random_tetra(rng, fmax=2)
        if t.c == (0, 0, 1):
            continue
        for name, p in TRANSPOSITIONS.items():
            s = apply_permutation(t, p)
            rep = check_symmetry(t, name, 3, shifts=t.f, shifts_swapped=s.f)
            broken += not rep.ok
    assert broken > 0


def test_unknown_transposition(rng):
    with pytest.raises(DomainError):
        check_symmetry(random_tetra(rng), "03", 3)


@pytest.mark.parametrize("N", [3, 5, 7, 9])
def test_gauss_phase_is_unimodular(N):
    assert abs(gauss_phase(N)) == pytest.approx(1)
    assert abs(swap12_constant(N)) == pytest.approx(1)


def test_gauges_invert_with_sign():
    for name in TRANSPOSITIONS:
        plus = gauge_matrices(name, 1, 3)
        minus = gauge_matrices(name, -1, 3)
        for face in plus:
            assert np.allclose(plus[face] @ minus[face], np.eye(3))
