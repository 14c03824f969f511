import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from matrixdilog.census import figure_eight, single_tetrahedron, two_tetrahedron_sphere, simplex_boundary_sphere
from matrixdilog.moves import two_three, zero_two
from matrixdilog.phase import phase_equal
from matrixdilog.scalars import PI, PI2, DomainError, dist_mod_pi2
from matrixdilog.statesum import (
    H1,
    R_sum,
    asymptotics_probe,
    complex_volume,
    invariants_agree,
    network_nodes,
    normalise_phase,
    quantum_invariant,
    state_sum,
)
from matrixdilog.tensors import RN_operator
from matrixdilog.triangulation import (
    DecoratedTriangulation,
    edge_star_generator,
    flat_difference_in_star_lattice,
    mirror,
    translate,
)


def _single():
    return DecoratedTriangulation(single_tetrahedron(), [(0, 1, 2, 3)], [0.3 + 0.4j], [(0, 0, -1)], [(0, 0, 1)])


def test_single_tetrahedron_is_its_tensor():
    dt = _single()
    T = RN_operator(dt.tetra(0), 3).reshape((3,) * 4)
    # tensor legs are faces (3, 1, 2, 0); the open network lists faces 0..3
    assert np.abs(state_sum(dt, 3) - T.transpose(3, 1, 2, 0)).max() < 1e-14


def test_open_triangulation_has_no_invariant():
    with pytest.raises(DomainError):
        quantum_invariant(_single(), 3)


def _complexes():
    fig8 = figure_eight()
    return {
        "figure_eight": fig8,
        "figure_eight_2_3": two_three(fig8, 0, 2).after,
        "figure_eight_0_2": zero_two(fig8, 0, 0, 0, 1, (1, 2)).after,
        "sphere_two": two_tetrahedron_sphere()[0],
        "single": _single(),
    }


@pytest.mark.parametrize("name", sorted(_complexes()))
@pytest.mark.parametrize("N", [3, 5])
def test_brute_force_equals_planned(name, N):
    dt = _complexes()[name]
    a = np.asarray(state_sum(dt, N, "brute"))
    b = np.asarray(state_sum(dt, N, "planned"))
    assert np.abs(a - b).max() <= 1e-9 * max(1.0, np.abs(b).max())


@pytest.mark.parametrize("N,expected", [(3, oracles.FIG8_H3_ABS), (5, oracles.FIG8_H5_ABS)])
def test_figure_eight_against_oracle(N, expected):
    # [DERIVED] frozen brute-force values from the independent oracle
    assert abs(quantum_invariant(figure_eight(), N).value) == pytest.approx(expected, rel=1e-12)


def test_oracle_recomputation_matches():
    dt = figure_eight()
    nodes = network_nodes(dt, 3)
    for t, nd in enumerate(nodes):
        tet = dt.tetra(t)
        nd.tensor = oracles.rn_operator(tet.w0, tet.f, tet.c, tet.b, 3).reshape((3,) * 4)
    ref = oracles.brute_state_sum(nodes, 3)
    assert abs(state_sum(dt, 3) - ref) < 1e-10


def test_unknown_method():
    with pytest.raises(ValueError):
        state_sum(figure_eight(), 3, "magic")


# --- classical invariant ---------------------------------------------------

def test_figure_eight_complex_volume():
    dt = figure_eight()
    cv = complex_volume(dt)
    # [DERIVED] volume 2 D2(exp(i pi/3)), Chern-Simons part zero
    assert cv.imag == pytest.approx(oracles.FIG8_VOLUME, abs=1e-10)
    assert dist_mod_pi2(cv.real, 0) < 1e-10
    assert abs(H1(dt)) == pytest.approx(oracles.FIG8_H1, abs=1e-10)
    assert quantum_invariant(dt, 1).value == pytest.approx(oracles.FIG8_H1, abs=1e-10)


@pytest.mark.parametrize("choice", [[1, 0, 0], [0, 2, -1], [3, 1, 1]])
def test_complex_volume_flattening_dependence(choice):
    # edge-star changes keep it modulo pi^2; other lattice directions only
    # move the Chern-Simons part by multiples of pi^2/2
    dt = figure_eight()
    other = figure_eight(choice_f=choice)
    a, b = complex_volume(dt), complex_volume(other)
    assert b.imag == pytest.approx(a.imag, abs=1e-10)
    assert dist_mod_pi2(2 * a, 2 * b) < 1e-9
    if flat_difference_in_star_lattice(dt, other.f):
        assert dist_mod_pi2(a, b) < 1e-9


def test_edge_star_change_keeps_complex_volume():
    dt = figure_eight()
    for e in range(2):
        moved = translate(dt, edge_star_generator(dt, e))
        assert dist_mod_pi2(complex_volume(dt), complex_volume(moved)) < 1e-9


def test_sphere_values():
    # 3-sphere: H_N = 1/N^2 with four interior vertices, H_1 = 1
    for make in (two_tetrahedron_sphere, simplex_boundary_sphere):
        dt, _ = make()
        assert quantum_invariant(dt, 1).value == pytest.approx(1)
        for N in (3, 5):
            r = quantum_invariant(dt, N)
            assert abs(abs(r.value) - 1 / N ** 2) < 1e-10


# --- invariance -------------------------------------------------------------

@pytest.mark.parametrize("kind", ["f", "c"])
def test_invariance_under_lattice_translates(kind):
    dt = figure_eight()
    base = quantum_invariant(dt, 3)
    for e in range(2):
        moved = translate(dt, edge_star_generator(dt, e, kind), kind)
        assert invariants_agree(base, quantum_invariant(moved, 3))
        if kind == "f":
            assert abs(H1(moved) - H1(dt)) < 1e-9 or abs(H1(moved) + H1(dt)) < 1e-9


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=3, max_size=3), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_any_decoration_same_invariant(cf, cc):
    base = quantum_invariant(figure_eight(), 3)
    assert invariants_agree(base, quantum_invariant(figure_eight(choice_f=cf, choice_c=cc), 3))


def test_mirror_conjugates():
    dt = figure_eight(choice_f=[0, 1, 1], choice_c=[0, 1, 0])
    m = mirror(dt)
    assert H1(m) == pytest.approx(np.conj(H1(dt)))
    for N in (3, 5):
        a, b = quantum_invariant(dt, N).raw, quantum_invariant(m, N).raw
        assert phase_equal(np.array([np.conj(a)]), np.array([b]), N).ok


# --- normalisation and probe -----------------------------------------------

@settings(max_examples=50, deadline=None)
@given(st.floats(-math.pi, math.pi), st.floats(0.1, 10), st.sampled_from([3, 5, 7]))
def test_normalise_phase(ang, r, N):
    z = r * complex(math.cos(ang), math.sin(ang))
    rep, k, sign = normalise_phase(z, N)
    assert abs(math.atan2(rep.imag, rep.real)) <= PI / (2 * N) + 1e-12
    assert z == pytest.approx(sign * np.exp(2j * PI * k / N) * rep)


def test_result_is_deterministic():
    a = quantum_invariant(figure_eight(), 3).as_dict()
    b = quantum_invariant(figure_eight(), 3).as_dict()
    assert a == b
    assert set(a) == {"N", "value_re", "value_im", "phase_class_k", "sign", "v", "residuals"}


def test_asymptotics_probe():
    dt = figure_eight()
    out = asymptotics_probe(dt, (1, 3))
    assert out["volume"] == pytest.approx(oracles.FIG8_VOLUME)
    assert out["volume_over_2pi"] == pytest.approx(oracles.FIG8_VOLUME / (2 * PI))
    assert out["rows"][0]["abs"] == pytest.approx(abs(H1(dt)))
    assert out["rows"][1]["abs"] == pytest.approx(oracles.FIG8_H3_ABS)
    assert asymptotics_probe(dt, ())["rows"] == []


def test_R_sum_is_signed_sum():
    dt = figure_eight()
    assert R_sum(dt).imag == pytest.approx(oracles.FIG8_VOLUME)
