"""Transits of decorated triangulations and the identities they satisfy.

Local transits are built on simplicial complexes (see :mod:`.local`).  A
2 -> 3 transit on five vertices is fully described by five points of the
complex plane and a ranking of the vertices: the moduli are cross-ratios
taken in branching order, which solves the edge equations automatically.
Flattenings and charges of the new side are solved exactly over the
integers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .intlin import NoIntegerSolution, solve_integer
from .local import (
    boundary_faces,
    complex_R_sum,
    complex_tensor,
    cross_ratio,
    edge_occurrences,
)
from .phase import PhaseMatch, phase_equal
from .scalars import PI, DomainError, dist_mod_pi2, std_log
from .tetra import DecoratedTetra, flattening_sum, perm_sign

#: vertices removed to get the two tetrahedra of the standard transit
STANDARD_BEFORE = (1, 3)


@dataclass
class TransitRecord:
    kind: str
    before: list
    after: list
    new_edges: list = field(default_factory=list)
    removed_edges: list = field(default_factory=list)
    degenerate: bool = False

    def inverse(self) -> "TransitRecord":
        inv = {"2-3": "3-2", "3-2": "2-3", "0-2": "2-0", "2-0": "0-2"}.get(self.kind, self.kind)
        return TransitRecord(inv, self.after, self.before, self.removed_edges, self.new_edges,
                             self.degenerate)


def _with(tet: DecoratedTetra, f=None, c=None) -> DecoratedTetra:
    return DecoratedTetra(tet.w0, tet.f if f is None else f, tet.c if c is None else c,
                          tet.b, tet.order)


def solve_side(fixed, free, kind: str, choice=None, rng=None):
    """Flattenings (kind='f') or charges (kind='c') of ``free`` matching ``fixed``.

    Edges shared with ``fixed`` keep their totals; edges only in ``free``
    get total 0 (flattening) or 2 (charge).  Returns the new tetrahedra and
    the integer kernel of the system.
    """
    occ_fixed = edge_occurrences(fixed)
    occ_free = edge_occurrences(free)
    nvar = 3 * len(free)
    rows, rhs = [], []
    for t, tet in enumerate(free):
        row = [0] * nvar
        for j in range(3):
            row[3 * t + j] = 1
        rows.append(row)
        rhs.append(flattening_sum(tet.w0) if kind == "f" else 1)
    for e, lst in sorted(occ_free.items(), key=lambda kv: sorted(kv[0])):
        row = [0] * nvar
        if kind == "f":
            target = 0j
            for t, j in occ_fixed.get(e, []):
                tet = fixed[t]
                target += tet.b * tet.log_branches()[j]
            known = sum(free[t].b * std_log(free[t].w[j]) for t, j in lst)
            val = (target - known) / (1j * PI)
            if abs(val.imag) > 1e-7 or abs(val.real - round(val.real)) > 1e-7:
                raise DomainError(f"edge {sorted(e)} has incompatible moduli")
            for t, j in lst:
                row[3 * t + j] += free[t].b
            rhs.append(int(round(val.real)))
        else:
            if e in occ_fixed:
                target = sum(fixed[t].c[j] for t, j in occ_fixed[e])
            else:
                target = 2
            for t, j in lst:
                row[3 * t + j] += 1
            rhs.append(int(target))
        rows.append(row)
    sol = solve_integer(rows, rhs)
    if choice is None:
        choice = np.zeros(len(sol.kernel), dtype=np.int64)
        if rng is not None and len(sol.kernel):
            choice = rng.integers(-2, 3, size=len(sol.kernel))
    x = sol.sample(choice)
    out = []
    for t, tet in enumerate(free):
        vals = tuple(int(v) for v in x[3 * t:3 * t + 3])
        out.append(_with(tet, f=vals) if kind == "f" else _with(tet, c=vals))
    return out, sol.kernel


def random_side_decoration(tets, rng, fmax: int = 2):
    """Random flattenings and charges on tetrahedra with no shared interior edges."""
    out = []
    for tet in tets:
        s = flattening_sum(tet.w0)
        f0, f1 = (int(v) for v in rng.integers(-fmax, fmax + 1, size=2))
        c0, c1 = (int(v) for v in rng.integers(-fmax, fmax + 1, size=2))
        out.append(_with(tet, f=(f0, f1, s - f0 - f1), c=(c0, c1, 1 - c0 - c1)))
    return out


def induced_face_sign(tet: DecoratedTetra, face) -> int:
    """Boundary orientation induced on a face, relative to its branching order."""
    k = [i for i, v in enumerate(tet.order) if v not in face]
    if len(k) != 1:
        raise DomainError("not a face of this tetrahedron")
    return tet.b * (-1) ** k[0]


def orient_like(order, ref: DecoratedTetra) -> int:
    """Branching sign of a tetrahedron that replaces ``ref`` across their common face."""
    face = set(order) & set(ref.order)
    k = [i for i, v in enumerate(order) if v not in face][0]
    return induced_face_sign(ref, face) * (-1) ** k


def merged_ranks(tets, extra=()) -> dict:
    """Total order on the vertices compatible with every branching and ``extra`` pairs."""
    verts = sorted(set().union(*(t.order for t in tets)))
    less = set(extra)
    for t in tets:
        for i, j in itertools.combinations(range(4), 2):
            less.add((t.order[i], t.order[j]))
    ranks = {}
    remaining = set(verts)
    while remaining:
        sources = [v for v in remaining if not any((u, v) in less for u in remaining if u != v)]
        if len(sources) != 1:
            raise DomainError("branchings do not induce a total order")
        ranks[sources[0]] = len(ranks)
        remaining.discard(sources[0])
    return ranks


def new_edge_candidates(A: DecoratedTetra, B: DecoratedTetra):
    """Orientations (lower, upper) of the new edge that keep a global branching."""
    face = set(A.order) & set(B.order)
    a = (set(A.order) - face).pop()
    b = (set(B.order) - face).pop()
    out = []
    for pair in ((a, b), (b, a)):
        try:
            merged_ranks([A, B], [pair])
        except DomainError:
            continue
        out.append(pair)
    return out


def _solve_point(known: dict, order, w0):
    """Find the missing point of ``order`` so that its cross-ratio equals w0."""
    pos = [k for k, v in enumerate(order) if v not in known][0]
    u = [known.get(v) for v in order]
    # the cross-ratio is a Moebius function (a x + b) / (c x + d) of the missing point
    if pos == 0:
        a, b, c, d = -(u[2] - u[1]), (u[2] - u[1]) * u[3], -(u[3] - u[1]), u[2] * (u[3] - u[1])
    elif pos == 1:
        a, b, c, d = -(u[3] - u[0]), u[2] * (u[3] - u[0]), -(u[2] - u[0]), (u[2] - u[0]) * u[3]
    elif pos == 2:
        a, b, c, d = (u[3] - u[0]), -u[1] * (u[3] - u[0]), (u[3] - u[1]), -u[0] * (u[3] - u[1])
    else:
        a, b, c, d = (u[2] - u[1]), -u[0] * (u[2] - u[1]), (u[2] - u[0]), -u[1] * (u[2] - u[0])
    den = w0 * c - a
    if abs(den) < 1e-14:
        raise DomainError("degenerate configuration: a vertex goes to infinity")
    return order[pos], (b - w0 * d) / den


def realise_points(tets) -> dict:
    """Points of C whose cross-ratios reproduce the moduli of a face-connected complex."""
    first = tets[0]
    pts = {first.order[0]: 0j, first.order[1]: 1.0 + 0j, first.order[2]: 0.3 + 1.1j}
    v, p = _solve_point(pts, first.order, first.w0)
    pts[v] = p
    pending = list(tets[1:])
    while pending:
        for t in pending:
            missing = [v for v in t.order if v not in pts]
            if len(missing) <= 1:
                if missing:
                    v, p = _solve_point(pts, t.order, t.w0)
                    pts[v] = p
                pending.remove(t)
                break
        else:
            raise DomainError("complex is not face-connected")
    return pts


def standard_transit_moduli(x, y) -> tuple[complex, complex, complex]:
    """New moduli (y/x, y(1-x)/(x(1-y)), (1-x)/(1-y)) of a standard 2 -> 3 transit.

    ``x`` and ``y`` are the moduli of the two old tetrahedra when every
    branching sign is +1.  A new modulus in {0, 1} means the move is blocked.
    """
    x, y = complex(x), complex(y)
    if x in (0, 1) or y in (0, 1):
        raise DomainError("old moduli must avoid 0 and 1")
    mods = (y / x, y * (1 - x) / (x * (1 - y)), (1 - x) / (1 - y))
    if any(abs(m) < 1e-12 or abs(m - 1) < 1e-12 for m in mods):
        raise DomainError("blocked move: a new modulus is 0 or 1")
    return mods


def transit_2_3(before, rng=None, choice_f=None, choice_c=None, new_edge=None) -> TransitRecord:
    """Complete a 2 -> 3 transit on a simplicial bipyramid.

    ``before`` holds two decorated tetrahedra sharing a face.  The new
    tetrahedra get moduli from a five-point realisation of the old ones and
    exactly solved flattenings and charges.  ``new_edge`` = (lower, upper)
    fixes the branching of the new edge when both orientations are valid.
    """
    if len(before) != 2:
        raise DomainError("a 2 -> 3 transit starts from two tetrahedra")
    A, B = before
    face = set(A.order) & set(B.order)
    if len(face) != 3:
        raise DomainError("the two tetrahedra must share exactly one face")
    if [v for v in A.order if v in face] != [v for v in B.order if v in face]:
        raise DomainError("branchings disagree on the common face")
    cands = new_edge_candidates(A, B)
    if new_edge is None:
        new_edge = cands[0]
    elif tuple(new_edge) not in cands:
        raise DomainError("requested new edge orientation breaks the branching")
    ranks = merged_ranks([A, B], [tuple(new_edge)])
    pts = realise_points([A, B])
    verts = sorted(pts, key=lambda v: ranks[v])
    after = []
    for drop in sorted(face, key=lambda v: ranks[v]):
        order = tuple(v for v in verts if v != drop)
        ref = A if len(set(order) & set(A.order)) == 3 else B
        w0 = cross_ratio(*(pts[v] for v in order))
        after.append(DecoratedTetra(w0, None, None, orient_like(order, ref), order))
    if A.f is not None:
        after, _ = solve_side(before, after, "f", choice_f, rng)
    if A.c is not None:
        after, _ = solve_side(before, after, "c", choice_c, rng)
    degenerate = any(t.degenerate for t in list(before) + list(after))
    return TransitRecord("2-3", list(before), list(after), [frozenset(new_edge)], [], degenerate)


def central_edge(tets):
    occ = edge_occurrences(tets)
    central = [e for e, lst in occ.items() if len(lst) == 3]
    verts = set().union(*(t.order for t in tets))
    if len(tets) != 3 or len(verts) != 5 or len(central) != 1:
        raise DomainError("not a 3 -> 2 configuration")
    return central[0], occ[central[0]]


def transit_3_2(before, rng=None, choice_f=None, choice_c=None) -> TransitRecord:
    """Complete a 3 -> 2 transit; the central edge must satisfy its equations."""
    e, lst = central_edge(before)
    prod = 1.0 + 0j
    for t, j in lst:
        prod *= before[t].w[j] ** before[t].b
    if abs(prod - 1.0) > 1e-9:
        raise DomainError("central edge fails the modulus equation")
    if before[0].c is not None and sum(before[t].c[j] for t, j in lst) != 2:
        raise DomainError("central edge must carry total charge 2")
    if before[0].f is not None and abs(sum(before[t].b * before[t].log_branches()[j] for t, j in lst)) > 1e-9:
        raise DomainError("central edge fails the flattening equation")
    ranks = merged_ranks(before)
    pts = realise_points(before)
    verts = sorted(pts, key=lambda v: ranks[v])
    after = []
    for drop in sorted(e, key=lambda v: ranks[v]):
        order = tuple(v for v in verts if v != drop)
        ref = next(t for t in before if len(set(order) & set(t.order)) == 3)
        w0 = cross_ratio(*(pts[v] for v in order))
        after.append(DecoratedTetra(w0, None, None, orient_like(order, ref), order))
    if before[0].f is not None:
        after, _ = solve_side(before, after, "f", choice_f, rng)
    if before[0].c is not None:
        after, _ = solve_side(before, after, "c", choice_c, rng)
    degenerate = any(t.degenerate for t in list(before) + list(after))
    return TransitRecord("3-2", list(before), after, [], [e], degenerate)


def standard_bipyramid(points, ranks=None):
    """The two tetrahedra (omitting vertices 1 and 3) of the five-point bipyramid.

    With the identity ranking both have branching sign +1 and the three
    tetrahedra after the transit omit vertices 0, 2, 4.
    """
    if ranks is None:
        ranks = list(range(5))
    points = [complex(p) for p in points]
    out = []
    for drop in STANDARD_BEFORE:
        verts = [v for v in range(5) if v != drop]
        order = tuple(sorted(verts, key=lambda v: ranks[v]))
        perm = [sorted(verts).index(v) for v in order]
        w0 = cross_ratio(*(points[v] for v in order))
        out.append(DecoratedTetra(w0, None, None, perm_sign(perm), order))
    return out


def verify_five_term(record: TransitRecord, N: int, tol: float = 1e-9) -> PhaseMatch:
    """Compare both sides of a 2 <-> 3 transit.

    For N = 1 the sums of b R agree modulo pi^2; otherwise the contracted
    tensors agree up to a sign times a power of zeta.
    """
    if N == 1:
        d = dist_mod_pi2(complex_R_sum(record.before), complex_R_sum(record.after))
        return PhaseMatch(d < tol, 0, 1, d, 1.0 + 0j)
    faces = boundary_faces(record.before)
    if faces != boundary_faces(record.after):
        raise DomainError("the two sides have different boundaries")
    lhs = complex_tensor(record.before, N, faces)
    rhs = complex_tensor(record.after, N, faces)
    return phase_equal(lhs, rhs, N, tol)
