"""Small triangulations used throughout the tests and demos."""
from __future__ import annotations

import cmath

import numpy as np

from .scalars import PI
from .triangulation import (
    DecoratedTriangulation,
    Triangulation,
    find_branchings,
    idealize_cocycle,
    vertex_cocycle,
    with_solved_decorations,
)


def from_simplices(simplices) -> Triangulation:
    """Glue tetrahedra given by vertex labels along faces with equal vertex sets.

    Local vertex ``k`` of tetrahedron ``t`` is the k-th smallest label of
    ``simplices[t]``.  Every vertex set of size three may occur at most twice.
    """
    simplices = [tuple(sorted(s)) for s in simplices]
    owners: dict = {}
    for t, s in enumerate(simplices):
        for f in range(4):
            key = frozenset(v for k, v in enumerate(s) if k != f)
            owners.setdefault(key, []).append((t, f))
    gluings = []
    for key, lst in owners.items():
        if len(lst) > 2:
            raise ValueError("a face is shared by more than two tetrahedra")
        if len(lst) == 2:
            (t, f), (t2, f2) = lst
            perm = [0] * 4
            for k, v in enumerate(simplices[t]):
                perm[k] = f2 if k == f else simplices[t2].index(v)
            gluings.append((t, f, t2, tuple(perm)))
    return Triangulation(len(simplices), gluings)


def figure_eight_triangulation() -> Triangulation:
    """Two ideal tetrahedra whose gluing gives the figure-eight knot complement."""
    gl = [
        (0, 0, 1, (0, 1, 3, 2)),
        (0, 1, 1, (1, 2, 3, 0)),
        (0, 2, 1, (2, 3, 1, 0)),
        (0, 3, 1, (2, 1, 0, 3)),
    ]
    return Triangulation(2, gl)


REGULAR = cmath.exp(1j * PI / 3)


def figure_eight(branching: int = 0, choice_f=None, choice_c=None) -> DecoratedTriangulation:
    """Figure-eight complement with regular ideal tetrahedra.

    Each tetrahedron gets w0 = exp(i b pi / 3) so that the shapes seen from
    the ambient orientation are all regular; flattenings and charges come
    from the integer solver (charges sum to 2 around both edges).
    """
    tri = figure_eight_triangulation()
    orders = find_branchings(tri)[branching]
    base = DecoratedTriangulation(tri, orders, [1j, 1j])
    w0 = [REGULAR if s == 1 else REGULAR.conjugate() for s in base.b]
    dt = DecoratedTriangulation(tri, orders, w0)
    return with_solved_decorations(dt, choice_f, choice_c)


def double_tetrahedron() -> Triangulation:
    """Two tetrahedra glued along all four faces: a four-vertex 3-sphere."""
    return from_simplices([(0, 1, 2, 3), (0, 1, 2, 3)])


def simplex_boundary() -> Triangulation:
    """Boundary of the 4-simplex: five tetrahedra, five vertices."""
    return from_simplices([tuple(v for v in range(5) if v != i) for i in range(5)])


def single_tetrahedron() -> Triangulation:
    return Triangulation(1, [])


def translation(u) -> np.ndarray:
    """PSL(2, C) element z -> z + u."""
    return np.array([[1, u], [0, 1]], dtype=complex)


#: default positions of the vertices of the closed examples
SPHERE_POINTS = (0.1 + 0.2j, 1.3 - 0.4j, -0.7 + 1.1j, 2.2 + 0.9j, -1.5 - 1.2j)


def _hamiltonian_cycle(tri: Triangulation, simplices, cycle) -> set:
    """Edge classes of a vertex cycle given by global vertex labels."""
    eidx = tri.edge_index()
    simplices = [tuple(sorted(s)) for s in simplices]
    H = set()
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        t = next(i for i, s in enumerate(simplices) if a in s and b in s)
        ka, kb = simplices[t].index(a), simplices[t].index(b)
        H.add(eidx[(t, (min(ka, kb), max(ka, kb)))])
    return H


def idealized_sphere(simplices, points=None, choice_f=None, choice_c=None):
    """Closed simplicial example decorated by a trivial-holonomy cocycle.

    Vertex ``v`` is sent to ``points[v]`` by a translation; the moduli are the
    resulting cross-ratios, H is the cycle through the vertices in label
    order.  Returns ``(decorated triangulation, cocycle)``.
    """
    tri = from_simplices(simplices)
    labels = sorted(set().union(*map(set, simplices)))
    points = SPHERE_POINTS if points is None else points
    orders = [(0, 1, 2, 3)] * tri.n
    # vertex classes are listed by their first (t, v); map them to labels
    simplices_sorted = [tuple(sorted(s)) for s in simplices]
    maps = []
    for cl in tri.vertex_classes():
        t, v = cl[0]
        maps.append(translation(points[labels.index(simplices_sorted[t][v])]))
    cocycle = vertex_cocycle(tri, orders, maps)
    w0 = idealize_cocycle(tri, orders, cocycle)
    H = _hamiltonian_cycle(tri, simplices, labels)
    dt = DecoratedTriangulation(tri, orders, w0, H=H)
    return with_solved_decorations(dt, choice_f, choice_c), cocycle


def two_tetrahedron_sphere(points=None):
    """The double tetrahedron with idealized moduli (a mirror pair)."""
    return idealized_sphere([(0, 1, 2, 3), (0, 1, 2, 3)], points)


def simplex_boundary_sphere(points=None):
    """Boundary of the 4-simplex with idealized moduli."""
    return idealized_sphere([tuple(v for v in range(5) if v != i) for i in range(5)], points)
