import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matrixdilog.census import (
    REGULAR,
    double_tetrahedron,
    figure_eight,
    figure_eight_triangulation,
    idealized_sphere,
    simplex_boundary,
    single_tetrahedron,
    translation,
    two_tetrahedron_sphere,
)
from matrixdilog.scalars import DomainError
from matrixdilog.triangulation import (
    DecoratedTriangulation,
    Triangulation,
    TriangulationError,
    branching_offenders,
    change_branching,
    charge_lattice,
    dual_cycles,
    edge_star_generator,
    find_branchings,
    flat_difference_in_star_lattice,
    flattening_lattice,
    idealize,
    idealize_cocycle,
    idealize_points,
    is_global_branching,
    mirror,
    mod2_class_on_path,
    psl2_canonical,
    translate,
    vertex_cocycle,
)

seeds = st.integers(0, 2 ** 32 - 1)


# --- combinatorics --------------------------------------------------------

def test_single_tetrahedron_counts():
    tri = single_tetrahedron()
    assert len(tri.edge_classes()) == 6
    assert len(tri.vertex_classes()) == 4
    assert is_global_branching(tri, [(0, 1, 2, 3)])


def test_figure_eight_counts():
    # [DERIVED] two edges, one (ideal) vertex, Euler characteristic zero
    tri = figure_eight_triangulation()
    assert len(tri.edge_classes()) == 2
    assert len(tri.vertex_classes()) == 1
    assert tri.closed and tri.interior_vertex_count() == 0
    assert sorted(len(c) for c in tri.edge_classes()) == [6, 6]


def test_closed_spheres():
    for tri, nv in ((double_tetrahedron(), 4), (simplex_boundary(), 5)):
        assert tri.closed
        assert tri.interior_vertex_count() == nv
        assert len(tri.vertex_classes()) - len(tri.edge_classes()) + 2 * tri.n - tri.n == 0


def test_mismatched_gluings_rejected():
    with pytest.raises(TriangulationError):
        Triangulation(2, [(0, 0, 1, (0, 1, 2, 3)), (0, 1, 1, (0, 1, 3, 2))])
    with pytest.raises(TriangulationError):
        Triangulation(1, [(0, 0, 0, (0, 1, 2, 3))])
    with pytest.raises(TriangulationError):
        Triangulation(1, [(0, 0, 0, (1, 1, 2, 3))])


def test_figure_eight_branchings():
    # [DERIVED] exhaustive search finds global branchings
    tri = figure_eight_triangulation()
    found = find_branchings(tri)
    assert found
    assert all(is_global_branching(tri, o) for o in found)


def test_twisted_branching_reports_offenders():
    tri = figure_eight_triangulation()
    orders = [(0, 1, 2, 3), (0, 1, 2, 3)]
    assert not is_global_branching(tri, orders)
    bad = branching_offenders(tri, orders)
    assert bad and all(0 <= e < 2 for e, _ in bad)
    with pytest.raises(TriangulationError):
        DecoratedTriangulation(tri, orders, [1j, 1j])


# --- decorations ----------------------------------------------------------

def test_figure_eight_edge_compatibility():
    dt = figure_eight()
    assert all(w == pytest.approx(REGULAR) or w == pytest.approx(REGULAR.conjugate()) for w in dt.w0)
    assert max(dt.edge_residuals()) < 1e-12
    assert dt.flattening_defects() == [0, 0]
    assert not any(dt.charge_defects())
    assert dt.is_valid()


def test_random_moduli_break_edges(rng):
    dt = figure_eight()
    w0 = [complex(*rng.normal(size=2)) for _ in range(2)]
    assert max(dt.replace(w0=w0, f=None, c=None).edge_residuals()) > 1e-3


def test_single_tetrahedron_is_vacuous():
    dt = DecoratedTriangulation(single_tetrahedron(), [(0, 1, 2, 3)], [0.3 + 0.4j])
    assert dt.interior_edges() == []
    assert dt.edge_residuals() == []
    assert dt.is_valid()


def test_flattening_shift_creates_defect():
    dt = figure_eight()
    f = list(dt.f)
    f[0] = (f[0][0] + 1, f[0][1], f[0][2] - 1)  # keeps the per-tetrahedron sum
    bad = dt.replace(f=f)
    defects = bad.flattening_defects()
    assert sorted(abs(d) for d in defects) == [2, 2]
    assert not bad.is_flattened()


def test_charge_targets():
    # [PAPER] cusped with empty link: every edge wants 2
    dt = figure_eight()
    assert [dt.charge_target(e) for e in range(2)] == [2, 2]
    # closed with a link: its edges want 0
    sph, _ = two_tetrahedron_sphere()
    assert sph.hamiltonian_ok()
    assert all(sph.charge_target(e) == 0 for e in sph.H)
    assert all(sph.charge_target(e) == 2 for e in range(6) if e not in sph.H)


def test_bad_charge_detected():
    dt = figure_eight()
    bad = dt.replace(c=[(1, 0, 1), dt.c[1]])
    assert not bad.is_charged()


@pytest.mark.parametrize("kind", ["f", "c"])
def test_edge_star_generators_preserve_validity(kind):
    dt = figure_eight()
    for e in range(2):
        for k in (1, -2):
            d = translate(dt, [tuple(k * x for x in g) for g in edge_star_generator(dt, e, kind)], kind)
            assert d.is_valid()


def test_lattices_preserve_validity():
    dt = figure_eight()
    for gen in flattening_lattice(dt):
        assert translate(dt, gen.reshape(-1, 3), "f").is_valid()
    for gen in charge_lattice(dt):
        assert translate(dt, gen.reshape(-1, 3), "c").is_valid()


def test_star_lattice_membership():
    dt = figure_eight()
    g = edge_star_generator(dt, 0)
    other = translate(dt, [tuple(3 * x for x in v) for v in g]).f
    assert flat_difference_in_star_lattice(dt, other)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_change_branching_keeps_validity(k):
    dt = figure_eight()
    orders = find_branchings(dt.tri)[k]
    d2 = change_branching(dt, orders)
    assert d2.is_valid()
    assert max(d2.edge_residuals()) < 1e-12
    back = change_branching(d2, dt.orders)
    assert np.allclose(back.w0, dt.w0)
    assert back.f == dt.f and back.c == dt.c


def test_change_branching_rejects_non_global():
    with pytest.raises(TriangulationError):
        change_branching(figure_eight(), [(0, 1, 2, 3), (0, 1, 2, 3)])


def test_mirror():
    dt = figure_eight()
    m = mirror(dt)
    assert m.b == [-x for x in dt.b]
    assert m.is_valid()
    assert np.allclose(m.w0, np.conj(dt.w0))


# --- parity along dual loops ----------------------------------------------

def test_mod2_classes_on_figure_eight():
    dt = figure_eight()
    cycles = dual_cycles(dt.tri, 4)
    assert cycles
    assert {mod2_class_on_path(dt, c) for c in cycles} == {0}
    assert {mod2_class_on_path(dt, c, "c") for c in cycles} == {0}


def test_mod2_class_is_even_lattice_invariant():
    dt = figure_eight()
    cycles = dual_cycles(dt.tri, 4)
    for gen in flattening_lattice(dt):
        d2 = translate(dt, (2 * gen).reshape(-1, 3))
        assert [mod2_class_on_path(d2, c) for c in cycles] == [mod2_class_on_path(dt, c) for c in cycles]


def test_mod2_path_errors():
    dt = figure_eight()
    with pytest.raises(DomainError):
        mod2_class_on_path(dt, [(0, 1, 1)])
    with pytest.raises(DomainError):
        mod2_class_on_path(dt, [(0, 0, 1), (0, 2, 3)])


# --- idealization ---------------------------------------------------------

def test_idealize_example():
    # [DERIVED] u = (0, 1, 2, i) gives (1 - i)/4
    w0 = idealize(translation(1), translation(1), translation(1j - 2))
    assert abs(w0 - (1 - 1j) / 4) < 1e-12
    assert abs(idealize_points([0, 1, 2, 1j]) - (1 - 1j) / 4) < 1e-12


def test_idealize_degenerate():
    with pytest.raises(DomainError):
        idealize(translation(1), translation(0), translation(1))
    with pytest.raises(DomainError):
        idealize_points([0, 1, math.inf, 2])


def test_psl2_canonical():
    M = np.array([[2, 1], [1, 1]], dtype=complex)
    A = psl2_canonical(M)
    assert np.linalg.det(A) == pytest.approx(1)
    assert np.allclose(psl2_canonical(-M), A)


def _random_sl2(rng):
    M = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return M / np.sqrt(np.linalg.det(M))


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_random_cocycles_idealize_to_valid_decorations(seed):
    rng = np.random.default_rng(seed)
    for tri in (double_tetrahedron(), simplex_boundary()):
        orders = [(0, 1, 2, 3)] * tri.n
        maps = [_random_sl2(rng) for _ in tri.vertex_classes()]
        w0 = idealize_cocycle(tri, orders, vertex_cocycle(tri, orders, maps))
        dt = DecoratedTriangulation(tri, orders, w0)
        assert max(dt.edge_residuals()) < 1e-10


def test_bundled_spheres_are_valid():
    for simplices in ([(0, 1, 2, 3)] * 2, [tuple(v for v in range(5) if v != i) for i in range(5)]):
        dt, cocycle = idealized_sphere(simplices)
        assert dt.is_valid()
        assert dt.hamiltonian_ok()
        assert len(cocycle) == dt.n


def test_quasi_regularity():
    # [TRIVIAL] one ideal vertex: every edge is a loop; spheres have distinct ends
    assert not figure_eight_triangulation().is_quasi_regular()
    assert simplex_boundary().is_quasi_regular()
    assert single_tetrahedron().is_quasi_regular()
