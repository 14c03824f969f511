"""Moves on decorated triangulations.

The 2 <-> 3 moves cut out a local complex, relabel its vertices by symbols,
run the local transit from :mod:`.transits` and glue the result back.  The
0 <-> 2 and bubble moves insert or remove a mirror pair of tetrahedra: two
copies of one tetrahedron with equal moduli and flattenings and opposite
branching signs.

New tetrahedra always get the local order ``0 1 2 3`` as their branching.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .phase import PhaseMatch, phase_equal
from .scalars import PI, DomainError, std_log
from .tetra import DecoratedTetra, edge_type, flattening_sum, perm_sign
from .transits import TransitRecord, induced_face_sign, orient_like, transit_2_3, transit_3_2
from .triangulation import DecoratedTriangulation, Triangulation, TriangulationError, _inverse


class BlockedMove(DomainError):
    """The move is not available at the requested place."""


@dataclass
class MoveResult:
    """Outcome of a global move: the new triangulation and the local record."""

    kind: str
    before: DecoratedTriangulation
    after: DecoratedTriangulation
    record: TransitRecord | None = None
    new_tetrahedra: list = field(default_factory=list)


def _symbol_tetra(dt: DecoratedTriangulation, t: int, sym) -> DecoratedTetra:
    tet = dt.tetra(t)
    return DecoratedTetra(tet.w0, tet.f, tet.c, tet.b, tuple(sym[v] for v in dt.orders[t]))


def _class_of(tri: Triangulation, t: int, a: int, b: int) -> int:
    return tri.edge_index()[(t, (min(a, b), max(a, b)))]


def _map_H(old: DecoratedTriangulation, new_tri: Triangulation, edge_map) -> set:
    """Carry the H edges across a move.

    ``edge_map(t, a, b)`` returns the new abstract edge ``(t', a', b')`` or None
    when that copy of the edge disappears.
    """
    out = set()
    classes = old.tri.edge_classes()
    for e in old.H:
        for t, (a, b) in classes[e]:
            img = edge_map(t, a, b)
            if img is not None:
                out.add(_class_of(new_tri, *img))
                break
        else:
            raise BlockedMove(f"H edge {e} would be removed by the move")
    return out


def _replace_region(dt: DecoratedTriangulation, region, sym, new_tets):
    """Swap the tetrahedra in ``region`` for ``new_tets`` (tetrahedra on symbols).

    Faces are matched through their symbol sets: an old face whose symbols
    appear in exactly one old tetrahedron is an outer face and must be a face
    of exactly one new tetrahedron.
    """
    region = list(region)
    keep = [t for t in range(dt.n) if t not in region]
    idx = {t: i for i, t in enumerate(keep)}
    base = len(keep)

    def face_key(t, g):
        return frozenset(sym[(t, v)] for v in range(4) if v != g)

    old_faces: dict = {}
    for t in region:
        for g in range(4):
            old_faces.setdefault(face_key(t, g), []).append((t, g))
    new_faces: dict = {}
    for k, tet in enumerate(new_tets):
        for j in range(4):
            new_faces.setdefault(frozenset(tet.face_vertices(j)), []).append((base + k, j))
    outer_old = {k for k, v in old_faces.items() if len(v) == 1}
    outer_new = {k for k, v in new_faces.items() if len(v) == 1}
    if outer_old != outer_new:
        raise BlockedMove("the two sides have different boundaries")

    def slot(t, g):
        if t not in region:
            return idx[t], g, tuple(range(4))
        key = face_key(t, g)
        if key not in outer_old:
            return None
        nt, j = new_faces[key][0]
        order = new_tets[nt - base].order
        relabel = [0] * 4
        for v in range(4):
            relabel[v] = j if v == g else order.index(sym[(t, v)])
        return nt, j, tuple(relabel)

    gluings = []
    for t, f, t2, perm in dt.tri.gluing_list():
        s1, s2 = slot(t, f), slot(t2, perm[f])
        if s1 is None or s2 is None:
            if (s1 is None) != (s2 is None):
                raise BlockedMove("an inner face is glued outside the region")
            continue
        n1, _, r1 = s1
        n2, _, r2 = s2
        newperm = [0] * 4
        for v in range(4):
            newperm[r1[v]] = r2[perm[v]]
        gluings.append((n1, r1[f], n2, tuple(newperm)))
    for key, lst in new_faces.items():
        if len(lst) != 2:
            continue
        (n1, j1), (n2, j2) = lst
        o1, o2 = new_tets[n1 - base].order, new_tets[n2 - base].order
        newperm = [0] * 4
        for k, s in enumerate(o1):
            newperm[k] = j2 if k == j1 else o2.index(s)
        gluings.append((n1, j1, n2, tuple(newperm)))
    n = base + len(new_tets)
    orientation = [dt.tri.orientation[t] for t in keep] + [tet.b for tet in new_tets]
    tri = Triangulation(n, gluings, orientation)

    def edge_map(t, a, b):
        if t not in region:
            return idx[t], a, b
        sa, sb = sym[(t, a)], sym[(t, b)]
        for k, tet in enumerate(new_tets):
            if sa in tet.order and sb in tet.order:
                return base + k, tet.order.index(sa), tet.order.index(sb)
        return None

    H = _map_H(dt, tri, edge_map)
    orders = [dt.orders[t] for t in keep] + [(0, 1, 2, 3)] * len(new_tets)
    w0 = [dt.w0[t] for t in keep] + [tet.w0 for tet in new_tets]
    f = None if dt.f is None else [dt.f[t] for t in keep] + [tet.f for tet in new_tets]
    c = None if dt.c is None else [dt.c[t] for t in keep] + [tet.c for tet in new_tets]
    return DecoratedTriangulation(tri, orders, w0, f, c, H), list(range(base, n))


# --------------------------------------------------------------------------
# 2 <-> 3


def two_three(dt: DecoratedTriangulation, t: int, f: int, choice_f=None, choice_c=None,
              rng=None, new_edge_up: bool | None = None) -> MoveResult:
    """2 -> 3 move across face ``f`` of tetrahedron ``t``.

    Symbols: local vertices of ``t`` keep their numbers, the apex of the
    neighbour is 4.  ``new_edge_up`` picks the branching of the new edge
    (True: from the apex of ``t`` up to 4) when both are valid.
    """
    g = dt.tri.gluing.get((t, f))
    if g is None:
        raise BlockedMove(f"face ({t},{f}) is free")
    t2, f2, perm = g
    if t2 == t:
        raise BlockedMove("the face is glued to its own tetrahedron")
    inv = _inverse(perm)
    sym = {(t, v): v for v in range(4)}
    sym.update({(t2, v): 4 if v == f2 else inv[v] for v in range(4)})
    A = _symbol_tetra(dt, t, {v: sym[(t, v)] for v in range(4)})
    B = _symbol_tetra(dt, t2, {v: sym[(t2, v)] for v in range(4)})
    new_edge = None
    if new_edge_up is not None:
        new_edge = (f, 4) if new_edge_up else (4, f)
    rec = transit_2_3([A, B], rng=rng, choice_f=choice_f, choice_c=choice_c, new_edge=new_edge)
    if rec.degenerate:
        raise BlockedMove("the move creates a degenerate tetrahedron")
    new, added = _replace_region(dt, [t, t2], sym, rec.after)
    return MoveResult("2-3", dt, new, rec, added)


def two_three_choices(dt: DecoratedTriangulation, t: int, f: int, K: int = 2):
    """Yield ((fchoice, cchoice), MoveResult) for scalar free parameters in [-K, K]."""
    for cf in range(-K, K + 1):
        for cc in range(-K, K + 1):
            yield (cf, cc), two_three(dt, t, f, [cf], [cc])


def three_two(dt: DecoratedTriangulation, edge: int, choice_f=None, choice_c=None, rng=None) -> MoveResult:
    """3 -> 2 move removing an edge of valence three in three distinct tetrahedra."""
    members = dt.tri.edge_classes()[edge]
    if len(members) != 3 or len({t for t, _ in members}) != 3:
        raise BlockedMove(f"edge {edge} does not have valence 3 in distinct tetrahedra")
    if edge not in dt.interior_edges():
        raise BlockedMove(f"edge {edge} touches the boundary")
    if edge in dt.H:
        raise BlockedMove("cannot remove an edge of H")
    t1, (a1, b1) = members[0]
    p1, q1 = [v for v in range(4) if v not in (a1, b1)]
    sym = {(t1, a1): 0, (t1, b1): 1, (t1, p1): 2, (t1, q1): 3}
    t2, f2, pi = dt.tri.gluing[(t1, q1)]
    t3, f3, sg = dt.tri.gluing[(t1, p1)]
    sym.update({(t2, pi[a1]): 0, (t2, pi[b1]): 1, (t2, pi[p1]): 2, (t2, f2): 4})
    sym.update({(t3, sg[a1]): 0, (t3, sg[b1]): 1, (t3, sg[q1]): 3, (t3, f3): 4})
    if len({t1, t2, t3}) != 3:
        raise BlockedMove("the star of the edge is not three distinct tetrahedra")
    # the remaining inner face joins t2 and t3 with matching symbols
    face2 = pi[p1]
    t3b, f3b, rho = dt.tri.gluing[(t2, face2)]
    back = {sym[(t3, v)]: v for v in range(4)}
    if t3b != t3 or any(rho[v] != back[sym[(t2, v)]] for v in range(4) if v != face2):
        raise BlockedMove("the star of the edge is not a simplicial bipyramid")
    before = [_symbol_tetra(dt, s, {v: sym[(s, v)] for v in range(4)}) for s in (t1, t2, t3)]
    rec = transit_3_2(before, rng=rng, choice_f=choice_f, choice_c=choice_c)
    if rec.degenerate:
        raise BlockedMove("the move creates a degenerate tetrahedron")
    new, added = _replace_region(dt, [t1, t2, t3], sym, rec.after)
    return MoveResult("3-2", dt, new, rec, added)


# --------------------------------------------------------------------------
# mirror pairs


def _mirror_gluings(dt, opened, new_slots, pair_gluings, orientation_new):
    """Old gluings minus ``opened`` face pairs, plus gluings to the new tetrahedra."""
    gone = set()
    for s in opened:
        gone.add(s)
        t2, f2, _ = dt.tri.gluing[s]
        gone.add((t2, f2))
    gl = [g for g in dt.tri.gluing_list() if (g[0], g[1]) not in gone]
    gl += new_slots + pair_gluings
    return Triangulation(dt.n + len(orientation_new), gl, list(dt.tri.orientation) + orientation_new)


def bubble(dt: DecoratedTriangulation, t: int, f: int, h_edge=None, w0=0.5 + 0.5j,
           f_choice: int = 0, c_choice: int = 0) -> MoveResult:
    """Bubble move on the glued face ``f`` of tetrahedron ``t``.

    The face is opened and filled with a mirror pair sharing a new vertex.
    ``h_edge`` is a pair of local vertices of ``t`` on the face spanning an
    edge of H; that edge is replaced in H by the two new edges joining its
    ends to the new vertex.  Required when charges are present.
    """
    g = dt.tri.gluing.get((t, f))
    if g is None:
        raise BlockedMove(f"face ({t},{f}) is free")
    q, fq, perm = g
    inv = _inverse(perm)
    face = [v for v in dt.orders[t] if v != f]  # local vertices of t, branching order
    NEW = 4
    order = tuple(face) + (NEW,)
    if dt.c is not None:
        cands = [(a, b) for a, b in itertools.combinations(face, 2)
                 if _class_of(dt.tri, t, a, b) in dt.H]
        if h_edge is None:
            if not cands:
                raise BlockedMove("a charged bubble needs an H edge on the face")
            h_edge = cands[0]
        h_edge = tuple(sorted(h_edge, key=face.index))
        if _class_of(dt.tri, t, *h_edge) not in dt.H:
            raise BlockedMove("the chosen edge is not in H")
    # the first new tetrahedron replaces the neighbour as seen from t
    qsym = {v: (5 if v == fq else inv[v]) for v in range(4)}
    ref = _symbol_tetra(dt, q, qsym)
    bx = orient_like(order, ref)
    n = dt.n
    X, Y = n, n + 1
    to_x = [0] * 4
    for v in range(4):
        to_x[v] = 3 if v == f else order.index(v)
    to_y = [0] * 4
    for v in range(4):
        to_y[v] = 3 if v == fq else order.index(inv[v])
    new_slots = [(t, f, X, tuple(to_x)), (q, fq, Y, tuple(to_y))]
    pair = [(X, j, Y, (0, 1, 2, 3)) for j in range(3)]
    tri = _mirror_gluings(dt, [(t, f)], new_slots, pair, [bx, -bx])
    s = flattening_sum(w0)
    fx = None if dt.f is None else (f_choice, 0, s - f_choice)
    cx = cy = None
    H = _map_H(dt, tri, lambda tt, a, b: (tt, a, b))
    if dt.c is not None:
        j = edge_type(order.index(h_edge[0]), order.index(h_edge[1]))
        cx = [0, 0, 0]
        k1, k2 = (j + 1) % 3, (j + 2) % 3
        cx[k1] = c_choice
        cx[j] = 1
        cx[k2] = -c_choice
        cy = [-cx[k] for k in range(3)]
        cy[j] = 2 - cx[j]
        H.discard(_class_of(tri, t, *h_edge))
        for v in h_edge:
            H.add(_class_of(tri, X, order.index(v), 3))
    new = DecoratedTriangulation(
        tri, list(dt.orders) + [(0, 1, 2, 3)] * 2, list(dt.w0) + [w0, w0],
        None if dt.f is None else list(dt.f) + [fx, fx],
        None if dt.c is None else list(dt.c) + [tuple(cx), tuple(cy)], H)
    return MoveResult("bubble", dt, new, None, [X, Y])


def zero_two(dt: DecoratedTriangulation, t: int, f: int, t2: int, f2: int, edge,
             x_below_y: bool = True, f_choice: int = 0, c_choice: int = 0) -> MoveResult:
    """0 -> 2 move: open two glued faces sharing an edge and insert a mirror pair.

    ``edge`` is a pair of local vertices of ``t`` on face ``f``; face ``f2``
    of ``t2`` must contain an edge of the same class with the same branching
    direction.  The new moduli come from the edge equation on one side.
    """
    for s in ((t, f), (t2, f2)):
        if s not in dt.tri.gluing:
            raise BlockedMove(f"face {s} is free")
    if dt.tri.gluing[(t, f)][:2] == (t2, f2) or (t, f) == (t2, f2):
        raise BlockedMove("the two faces must be different")
    face1 = [v for v in dt.orders[t] if v != f]
    face2 = [v for v in dt.orders[t2] if v != f2]
    p, q = sorted(edge, key=face1.index)
    if p not in face1 or q not in face1:
        raise BlockedMove("edge is not on the first face")
    e_cls = _class_of(dt.tri, t, p, q)
    if e_cls in dt.H:
        raise BlockedMove("cannot split an edge of H")
    match = [(a, b) for a, b in itertools.combinations(face2, 2)
             if _class_of(dt.tri, t2, a, b) == e_cls]
    if not match:
        raise BlockedMove("the faces do not share the edge")
    p2, q2 = match[0]
    x = next(v for v in face1 if v not in (p, q))
    y = next(v for v in face2 if v not in (p2, q2))
    # symbols: p=0, q=1, x=2, y=3
    pos_x = face1.index(x)
    pos_y = face2.index(y)
    orders = []
    for o in itertools.permutations(range(4)):
        rel = [s for s in o if s != 3]
        rel2 = [s for s in o if s != 2]
        if rel.index(0) < rel.index(1) and rel.index(2) == pos_x and rel2.index(3) == pos_y \
                and rel2.index(0) < rel2.index(1):
            orders.append(o)
    orders.sort(key=lambda o: o.index(2) > o.index(3) if x_below_y else o.index(2) < o.index(3))
    order = orders[0]
    s1 = {p: 0, q: 1, x: 2, f: 5}
    s2 = {p2: 0, q2: 1, y: 3, f2: 5}
    n = dt.n
    D, Db = n, n + 1
    slots = []
    for (tt, ff, smap) in ((t, f, s1), (t2, f2, s2)):
        qq, fq, perm = dt.tri.gluing[(tt, ff)]
        inv = _inverse(perm)
        ref = _symbol_tetra(dt, qq, {v: (5 if v == fq else smap[inv[v]]) for v in range(4)})
        face_syms = set(smap[v] for v in range(4) if v != ff)
        opp = next(s for s in range(4) if s not in face_syms)
        k = order.index(opp)
        # D has sign +1; its copy faces tt when it induces the orientation of qq
        d_sign = (-1) ** k
        if d_sign == induced_face_sign(ref, face_syms):
            near, far = D, Db
        else:
            near, far = Db, D
        m1 = [0] * 4
        for v in range(4):
            m1[v] = k if v == ff else order.index(smap[v])
        m2 = [0] * 4
        for v in range(4):
            m2[v] = k if v == fq else order.index(smap[inv[v]])
        slots.append((tt, ff, near, tuple(m1)))
        slots.append((qq, fq, far, tuple(m2)))
    # D and Db are glued along the faces containing both x and y
    pair = [(D, order.index(s), Db, (0, 1, 2, 3)) for s in (0, 1)]
    tri = _mirror_gluings(dt, [(t, f), (t2, f2)], slots, pair, [1, -1])
    j = edge_type(order.index(0), order.index(1))
    H = _map_H(dt, tri, lambda tt, a, b: (tt, a, b))
    side = tri.edge_classes()[_class_of(tri, D, order.index(0), order.index(1))]
    others = [(s, ab) for s, ab in side if s != D]
    placeholder = DecoratedTriangulation(tri, list(dt.orders) + [(0, 1, 2, 3)] * 2,
                                         list(dt.w0) + [0.5 + 0.5j] * 2)
    bs = placeholder.b
    prod = 1.0 + 0j
    for s, (a1, b1) in others:
        prod *= placeholder.tetra(s).w[placeholder.abstract_edge_type(s, a1, b1)] ** bs[s]
    wj = prod ** (-bs[D])
    if abs(wj) < 1e-12 or abs(wj - 1) < 1e-12:
        raise BlockedMove("the inserted pair would be degenerate")
    w0 = [wj, 1 - 1 / wj, 1 / (1 - wj)][j]
    fD = cD = cDb = None
    if dt.f is not None:
        ldt = placeholder.replace(w0=list(dt.w0) + [w0, w0], f=list(dt.f) + [(0, 0, 1)] * 2)
        lsum = sum(bs[s] * ldt.tetra(s).log_branches()[ldt.abstract_edge_type(s, a1, b1)]
                   for s, (a1, b1) in others)
        want = -lsum * bs[D]
        wD = DecoratedTetra(w0).w[j]
        fj = (want - std_log(wD)) / (1j * PI)
        if abs(fj.imag) > 1e-7 or abs(fj.real - round(fj.real)) > 1e-7:
            raise BlockedMove("flattening equation has no integer solution")
        fD = [0, 0, 0]
        fD[j] = int(round(fj.real))
        fD[(j + 1) % 3] = f_choice
        fD[(j + 2) % 3] = flattening_sum(w0) - fD[j] - f_choice
        fD = tuple(fD)
    if dt.c is not None:
        total = sum(dt.c[s][dt.abstract_edge_type(s, a1, b1)] for s, (a1, b1) in others)
        cD = [0, 0, 0]
        cD[j] = 2 - total
        cD[(j + 1) % 3] = c_choice
        cD[(j + 2) % 3] = 1 - cD[j] - c_choice
        cDb = [-v for v in cD]
        cDb[j] = 2 - cD[j]
        cD, cDb = tuple(cD), tuple(cDb)
    new = DecoratedTriangulation(
        tri, list(dt.orders) + [(0, 1, 2, 3)] * 2, list(dt.w0) + [w0, w0],
        None if dt.f is None else list(dt.f) + [fD, fD],
        None if dt.c is None else list(dt.c) + [cD, cDb], H)
    return MoveResult("0-2", dt, new, None, [D, Db])


def find_mirror_pairs(dt: DecoratedTriangulation):
    """Pairs of tetrahedra glued along two faces with matching vertices and mirror decorations."""
    out = []
    for t in range(dt.n):
        for u in range(t + 1, dt.n):
            maps = [(f, perm) for f in range(4)
                    for (t2, f2, perm) in [dt.tri.gluing.get((t, f), (None, None, None))] if t2 == u]
            if len(maps) != 2 or maps[0][1] != maps[1][1]:
                continue
            perm = maps[0][1]
            if tuple(perm[v] for v in dt.orders[t]) != dt.orders[u]:
                continue
            if dt.b[t] != -dt.b[u] or abs(dt.w0[t] - dt.w0[u]) > 1e-12:
                continue
            if dt.f is not None and dt.f[t] != dt.f[u]:
                continue
            out.append((t, u))
    return out


def two_zero(dt: DecoratedTriangulation, t: int, u: int) -> MoveResult:
    """Remove a mirror pair glued along two faces and reglue their neighbours."""
    if (t, u) not in find_mirror_pairs(dt) and (u, t) not in find_mirror_pairs(dt):
        raise BlockedMove(f"tetrahedra {t} and {u} are not a mirror pair")
    inner = [f for f in range(4) if dt.tri.gluing.get((t, f), (None,))[0] == u]
    phi = dt.tri.gluing[(t, inner[0])][2]
    outer = [f for f in range(4) if f not in inner]
    gluings = []
    for g in dt.tri.gluing_list():
        if g[0] in (t, u) or g[2] in (t, u):
            continue
        gluings.append(g)
    for f in outer:
        X, fx, alpha = dt.tri.gluing[(t, f)]
        Y, fy, beta = dt.tri.gluing[(u, phi[f])]
        if X in (t, u) or Y in (t, u):
            raise BlockedMove("the pair is glued to itself outside the pillow")
        ainv = _inverse(alpha)
        perm = [0] * 4
        for v in range(4):
            perm[v] = fy if v == fx else beta[phi[ainv[v]]]
        gluings.append((X, fx, Y, tuple(perm)))
    keep = [s for s in range(dt.n) if s not in (t, u)]
    idx = {s: i for i, s in enumerate(keep)}
    gl = [(idx[a], fa, idx[c], p) for a, fa, c, p in gluings]
    tri = Triangulation(len(keep), gl, [dt.tri.orientation[s] for s in keep])

    def edge_map(s, a, b):
        return None if s in (t, u) else (idx[s], a, b)

    H = _map_H(dt, tri, edge_map)
    new = DecoratedTriangulation(
        tri, [dt.orders[s] for s in keep], [dt.w0[s] for s in keep],
        None if dt.f is None else [dt.f[s] for s in keep],
        None if dt.c is None else [dt.c[s] for s in keep], H)
    return MoveResult("2-0", dt, new, None, [])


# --------------------------------------------------------------------------
# two-term relations


def mirror_pair(w0, f, c, N: int, kind: str = "0-2", c_choice: int = 0):
    """Two-tetrahedron triangulation of a mirror pair glued as in the 0 -> 2 move.

    The pair is glued along the faces opposite positions 0 and 2; ``kind``
    'bubble' also glues the faces opposite position 1.  The second copy
    gets the complementary charge.
    """
    c = tuple(c)
    cb = (-c[0], -c[1], 2 - c[2])
    gl = [(0, 0, 1, (0, 1, 2, 3)), (0, 2, 1, (0, 1, 2, 3))]
    if kind == "bubble":
        gl.append((0, 1, 1, (0, 1, 2, 3)))
    tri = Triangulation(2, gl, [1, -1])
    return DecoratedTriangulation(tri, [(0, 1, 2, 3)] * 2, [w0, w0], [tuple(f)] * 2, [c, cb])


def verify_two_term(dt: DecoratedTriangulation, N: int, kind: str = "0-2", tol: float = 1e-9) -> PhaseMatch:
    """Compare a mirror pair with the identity (0-2) or N times the identity (bubble)."""
    from .statesum import R_sum, state_sum

    if N == 1:
        r = R_sum(dt)
        return PhaseMatch(abs(r) < tol, 0, 1, abs(r), 1.0 + 0j)
    T = state_sum(dt, N)
    if kind == "bubble":
        target = N * np.eye(N)
    else:
        target = np.einsum("ac,bd->abcd", np.eye(N), np.eye(N))
    if T.shape != target.shape:
        raise DomainError(f"unexpected open faces {T.shape}")
    return phase_equal(target, T, N, tol)
