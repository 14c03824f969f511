"""Triangulations given by face gluings, branchings and global decorations.

A triangulation has tetrahedra ``0..n-1`` with local vertices ``0..3``.  Face
``f`` of a tetrahedron is the face opposite local vertex ``f``.  A gluing
``(t, f) -> (t2, f2, perm)`` identifies the two faces through the vertex map
``perm`` (a 4-tuple, ``perm[f] == f2``).  ``orientation[t]`` is the ambient
orientation of tetrahedron ``t`` relative to its local order ``0 1 2 3``.

A branching assigns to every tetrahedron the tuple of its local vertices in
branching order.  It is global when every gluing preserves the order of the
glued face.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .intlin import IntegerSolution, NoIntegerSolution, in_lattice, solve_integer
from .scalars import PI, DomainError, std_log
from .tetra import DecoratedTetra, edge_type, flattening_sum, perm_sign


class TriangulationError(DomainError):
    pass


def _inverse(perm):
    inv = [0] * 4
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class Triangulation:
    """Tetrahedra glued along faces.

    Parameters
    ----------
    n : number of tetrahedra
    gluings : iterable of ``(t, f, t2, perm)``; the reverse gluing is added
        automatically.
    orientation : ambient orientation per tetrahedron; when omitted it is
        computed so that every gluing reverses orientation.
    """

    def __init__(self, n: int, gluings, orientation=None):
        self.n = int(n)
        self.gluing: dict = {}
        for g in gluings:
            t, f, t2, perm = g
            perm = tuple(int(x) for x in perm)
            if sorted(perm) != [0, 1, 2, 3]:
                raise TriangulationError(f"gluing of ({t},{f}) is not a bijection")
            if not (0 <= t < n and 0 <= t2 < n):
                raise TriangulationError("tetrahedron index out of range")
            f2 = perm[f]
            self._set(t, f, t2, f2, perm)
            self._set(t2, f2, t, f, _inverse(perm))
        if orientation is None:
            orientation = self._orient()
        self.orientation = [int(o) for o in orientation]
        self._check_orientation()
        self._edge_cache = None
        self._vertex_cache = None

    def _set(self, t, f, t2, f2, perm):
        key = (t, f)
        val = (t2, f2, perm)
        old = self.gluing.get(key)
        if old is not None and old != val:
            raise TriangulationError(f"face ({t},{f}) glued twice")
        if (t, f) == (t2, f2):
            raise TriangulationError("a face cannot be glued to itself")
        self.gluing[key] = val

    def _orient(self):
        orient = [0] * self.n
        for start in range(self.n):
            if orient[start]:
                continue
            orient[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for f in range(4):
                    g = self.gluing.get((t, f))
                    if g is None:
                        continue
                    t2, _, perm = g
                    want = -orient[t] * perm_sign(perm)
                    if orient[t2] == 0:
                        orient[t2] = want
                        stack.append(t2)
                    elif orient[t2] != want:
                        raise TriangulationError("triangulation is not orientable")
        return orient

    def _check_orientation(self):
        for (t, f), (t2, f2, perm) in self.gluing.items():
            if self.orientation[t] * self.orientation[t2] * perm_sign(perm) != -1:
                raise TriangulationError(f"gluing of ({t},{f}) preserves orientation")

    # ------------------------------------------------------------------
    def gluing_list(self):
        """Each glued pair once, as (t, f, t2, perm) with (t, f) < (t2, f2)."""
        out = []
        for (t, f), (t2, f2, perm) in sorted(self.gluing.items()):
            if (t, f) < (t2, f2):
                out.append((t, f, t2, perm))
        return out

    def face_pairs(self):
        return [((t, f), (t2, perm[f])) for t, f, t2, perm in self.gluing_list()]

    def boundary_faces(self):
        return [(t, f) for t in range(self.n) for f in range(4) if (t, f) not in self.gluing]

    @property
    def closed(self) -> bool:
        return not self.boundary_faces()

    def edge_classes(self) -> list[list[tuple[int, tuple[int, int]]]]:
        """Classes of abstract edges ``(t, (a, b))`` with ``a < b`` local vertices."""
        if self._edge_cache is None:
            uf = _UnionFind()
            for t in range(self.n):
                for a, b in itertools.combinations(range(4), 2):
                    uf.find((t, (a, b)))
            for (t, f), (t2, f2, perm) in self.gluing.items():
                verts = [v for v in range(4) if v != f]
                for a, b in itertools.combinations(verts, 2):
                    pa, pb = perm[a], perm[b]
                    uf.union((t, (a, b)), (t2, (min(pa, pb), max(pa, pb))))
            classes: dict = {}
            for t in range(self.n):
                for a, b in itertools.combinations(range(4), 2):
                    classes.setdefault(uf.find((t, (a, b))), []).append((t, (a, b)))
            self._edge_cache = sorted(classes.values())
        return self._edge_cache

    def edge_index(self) -> dict:
        return {ae: i for i, cl in enumerate(self.edge_classes()) for ae in cl}

    def vertex_classes(self) -> list[list[tuple[int, int]]]:
        if self._vertex_cache is None:
            uf = _UnionFind()
            for t in range(self.n):
                for v in range(4):
                    uf.find((t, v))
            for (t, f), (t2, f2, perm) in self.gluing.items():
                for v in range(4):
                    if v != f:
                        uf.union((t, v), (t2, perm[v]))
            classes: dict = {}
            for t in range(self.n):
                for v in range(4):
                    classes.setdefault(uf.find((t, v)), []).append((t, v))
            self._vertex_cache = sorted(classes.values())
        return self._vertex_cache

    def vertex_link_euler(self) -> list[int]:
        """Euler characteristic of each vertex link (2 for a sphere, 0 for a torus)."""
        vindex = {c: i for i, cl in enumerate(self.vertex_classes()) for c in cl}
        chi = []
        for i, cl in enumerate(self.vertex_classes()):
            corners = len(cl)
            glued = sum(1 for t, v in cl for f in range(4) if f != v and (t, f) in self.gluing)
            free = sum(1 for t, v in cl for f in range(4) if f != v and (t, f) not in self.gluing)
            chi.append(self._edge_ends_at(i, vindex) - (glued // 2 + free) + corners)
        return chi

    def _edge_ends_at(self, vclass: int, vindex) -> int:
        """Number of edge ends (edge class, endpoint) at a vertex class."""
        uf = _UnionFind()
        for t in range(self.n):
            for a in range(4):
                for b in range(4):
                    if a != b:
                        uf.find((t, a, b))
        # (t, a, b): end of edge {a, b} at vertex a
        for (t, f), (t2, f2, perm) in self.gluing.items():
            verts = [v for v in range(4) if v != f]
            for a in verts:
                for b in verts:
                    if a != b:
                        uf.union((t, a, b), (t2, perm[a], perm[b]))
        roots = set()
        for t in range(self.n):
            for a in range(4):
                if vindex[(t, a)] != vclass:
                    continue
                for b in range(4):
                    if b != a:
                        roots.add(uf.find((t, a, b)))
        return len(roots)

    def interior_vertex_count(self) -> int:
        """Number of vertices whose link is a sphere."""
        return sum(1 for c in self.vertex_link_euler() if c == 2)

    def is_quasi_regular(self) -> bool:
        """True when every edge joins two distinct vertex classes (recorded, never required)."""
        vid = {m: i for i, cl in enumerate(self.vertex_classes()) for m in cl}
        return all(vid[(t, a)] != vid[(t, b)] for cl in self.edge_classes() for t, (a, b) in cl)

    def copy(self) -> "Triangulation":
        return Triangulation(self.n, self.gluing_list(), list(self.orientation))


# --------------------------------------------------------------------------
# branchings


def branching_offenders(tri: Triangulation, orders) -> list[tuple[int, int]]:
    """Edge classes (with a witnessing face) whose induced orientations disagree."""
    bad = []
    eidx = tri.edge_index()
    for (t, f), (t2, f2, perm) in sorted(tri.gluing.items()):
        ra = [v for v in orders[t] if v != f]
        rb = [v for v in orders[t2] if v != f2]
        if [perm[v] for v in ra] != rb:
            for a, b in itertools.combinations(ra, 2):
                if rb.index(perm[a]) > rb.index(perm[b]):
                    bad.append((eidx[(t, (min(a, b), max(a, b)))], (t, f)))
    return bad


def is_global_branching(tri: Triangulation, orders) -> bool:
    for (t, f), (t2, f2, perm) in tri.gluing.items():
        ra = [v for v in orders[t] if v != f]
        rb = [v for v in orders[t2] if v != f2]
        if [perm[v] for v in ra] != rb:
            return False
    return True


def branching_signs(tri: Triangulation, orders) -> list[int]:
    """Branching sign b of each tetrahedron."""
    return [tri.orientation[t] * perm_sign(orders[t]) for t in range(tri.n)]


def find_branchings(tri: Triangulation, limit: int | None = None, max_tets: int = 8):
    """Enumerate global branchings by backtracking over tetrahedra."""
    if tri.n > max_tets:
        raise TriangulationError(f"exhaustive search limited to {max_tets} tetrahedra")
    perms = list(itertools.permutations(range(4)))
    orders = [None] * tri.n
    found = []

    def compatible(t):
        for f in range(4):
            g = tri.gluing.get((t, f))
            if g is None:
                continue
            t2, f2, perm = g
            if orders[t2] is None:
                continue
            ra = [v for v in orders[t] if v != f]
            rb = [v for v in orders[t2] if v != f2]
            if [perm[v] for v in ra] != rb:
                return False
        return True

    def rec(t):
        if limit is not None and len(found) >= limit:
            return
        if t == tri.n:
            found.append([tuple(o) for o in orders])
            return
        for p in perms:
            orders[t] = p
            if compatible(t):
                rec(t + 1)
        orders[t] = None

    rec(0)
    return found


# --------------------------------------------------------------------------
# decorated triangulations


@dataclass
class DecoratedTriangulation:
    """A branched triangulation with moduli, flattenings, charges and a link H.

    ``H`` is a set of edge-class indices.  ``w0``, ``f`` and ``c`` are per
    tetrahedron, relative to its branching.  ``targets`` optionally overrides
    the charge sum wanted around individual edges (default 0 on H, else 2).
    """

    tri: Triangulation
    orders: list
    w0: list
    f: list | None = None
    c: list | None = None
    H: set = field(default_factory=set)
    targets: dict | None = None

    def __post_init__(self):
        self.orders = [tuple(o) for o in self.orders]
        if not is_global_branching(self.tri, self.orders):
            raise TriangulationError("branching is not global")
        self.w0 = [complex(w) for w in self.w0]
        if self.f is not None:
            self.f = [tuple(int(x) for x in v) for v in self.f]
        if self.c is not None:
            self.c = [tuple(int(x) for x in v) for v in self.c]
        self.H = set(self.H)
        if self.f is not None and len(self.f) != self.n or self.c is not None and len(self.c) != self.n:
            raise TriangulationError("one flattening and one charge per tetrahedron")
        if len(self.w0) != self.n or len(self.orders) != self.n:
            raise TriangulationError("one modulus and one branching per tetrahedron")

    @property
    def n(self) -> int:
        return self.tri.n

    @property
    def b(self) -> list[int]:
        return branching_signs(self.tri, self.orders)

    def tetra(self, t: int) -> DecoratedTetra:
        return DecoratedTetra(self.w0[t], None if self.f is None else self.f[t],
                              None if self.c is None else self.c[t], self.b[t], self.orders[t])

    def tetrahedra(self) -> list[DecoratedTetra]:
        return [self.tetra(t) for t in range(self.n)]

    def abstract_edge_type(self, t: int, a: int, b: int) -> int:
        o = self.orders[t]
        return edge_type(o.index(a), o.index(b))

    def edge_members(self):
        """Per edge class: list of (t, edge type)."""
        return [[(t, self.abstract_edge_type(t, a, b)) for t, (a, b) in cl]
                for cl in self.tri.edge_classes()]

    # residuals -------------------------------------------------------
    def interior_edges(self) -> list[int]:
        """Edge classes not touching a boundary face."""
        bfaces = set(self.tri.boundary_faces())
        out = []
        for i, cl in enumerate(self.tri.edge_classes()):
            touches = False
            for t, (a, b) in cl:
                for f in range(4):
                    if f not in (a, b) and (t, f) in bfaces:
                        touches = True
            if not touches:
                out.append(i)
        return out

    def charge_target(self, edge: int) -> int:
        if self.targets is not None and edge in self.targets:
            return int(self.targets[edge])
        return 0 if edge in self.H else 2

    def edge_log_residuals(self) -> list[float]:
        """Distance of sum b log w around each interior edge to 2 pi i Z."""
        b = self.b
        members = self.edge_members()
        out = []
        for i in self.interior_edges():
            s = sum(b[t] * std_log(self.tetra(t).w[j]) for t, j in members[i])
            k = round(s.imag / (2 * PI))
            out.append(abs(s - 2j * PI * k))
        return out

    def flattening_defects(self) -> list[int]:
        """Per interior edge, the integer d with sum b l = i pi d (0 when flattened)."""
        b = self.b
        members = self.edge_members()
        tets = self.tetrahedra()
        out = []
        for i in self.interior_edges():
            s = sum(b[t] * tets[t].log_branches()[j] for t, j in members[i])
            out.append(int(round((s / (1j * PI)).real)))
        return out

    def edge_residuals(self) -> list[float]:
        b = self.b
        res = []
        members = self.edge_members()
        for i in self.interior_edges():
            prod = 1.0 + 0j
            for t, j in members[i]:
                w = self.tetra(t).w[j]
                prod *= w ** b[t]
            res.append(abs(prod - 1.0))
        return res

    def flattening_residuals(self) -> list[float]:
        b = self.b
        members = self.edge_members()
        tets = self.tetrahedra()
        out = []
        for t in tets:
            out.append(abs(sum(t.log_branches())))
        for i in self.interior_edges():
            s = sum(b[t] * tets[t].log_branches()[j] for t, j in members[i])
            out.append(abs(s))
        return out

    def charge_defects(self) -> list[int]:
        members = self.edge_members()
        out = [sum(c) - 1 for c in self.c]
        for i in self.interior_edges():
            target = self.charge_target(i)
            out.append(sum(self.c[t][j] for t, j in members[i]) - target)
        return out

    def is_edge_compatible(self, tol: float = 1e-9) -> bool:
        return all(r < tol for r in self.edge_residuals())

    def is_flattened(self, tol: float = 1e-9) -> bool:
        return self.f is not None and all(r < tol for r in self.flattening_residuals())

    def is_charged(self) -> bool:
        return self.c is not None and not any(self.charge_defects())

    def check(self) -> dict:
        """Residuals of every global condition."""
        out = {"edges": max(self.edge_residuals(), default=0.0)}
        if self.f is not None:
            out["flattening"] = max(self.flattening_residuals(), default=0.0)
        if self.c is not None:
            out["charge"] = max((abs(x) for x in self.charge_defects()), default=0)
        return out

    def is_valid(self, tol: float = 1e-9) -> bool:
        ok = self.is_edge_compatible(tol)
        if self.f is not None:
            ok = ok and self.is_flattened(tol)
        if self.c is not None:
            ok = ok and self.is_charged()
        return ok

    def hamiltonian_ok(self) -> bool:
        """H visits every vertex exactly once as a union of cycles (closed case)."""
        if not self.H:
            return True
        ends = {}
        vindex = {c: i for i, cl in enumerate(self.tri.vertex_classes()) for c in cl}
        for e in self.H:
            t, (a, b) = self.tri.edge_classes()[e][0]
            for v in (vindex[(t, a)], vindex[(t, b)]):
                ends[v] = ends.get(v, 0) + 1
        nv = len(self.tri.vertex_classes())
        return len(ends) == nv and all(d == 2 for d in ends.values())

    def replace(self, **kw) -> "DecoratedTriangulation":
        data = dict(tri=self.tri, orders=self.orders, w0=self.w0, f=self.f, c=self.c, H=self.H,
                    targets=self.targets)
        data.update(kw)
        return DecoratedTriangulation(**data)


# --------------------------------------------------------------------------
# solving for flattenings and charges


def flattening_system(dt: DecoratedTriangulation):
    """Integer system (A, rhs) for global flattenings of a triangulation."""
    b = dt.b
    n = dt.n
    rows, rhs = [], []
    for t in range(n):
        row = [0] * (3 * n)
        row[3 * t:3 * t + 3] = [1, 1, 1]
        rows.append(row)
        rhs.append(flattening_sum(dt.w0[t]))
    members = dt.edge_members()
    for i in dt.interior_edges():
        row = [0] * (3 * n)
        s = 0j
        for t, j in members[i]:
            row[3 * t + j] += b[t]
            s += b[t] * std_log(dt.tetra(t).w[j])
        val = -s / (1j * PI)
        if abs(val.imag) > 1e-7 or abs(val.real - round(val.real)) > 1e-7:
            raise TriangulationError(f"edge {i} fails the modulus equation")
        rows.append(row)
        rhs.append(int(round(val.real)))
    return rows, rhs


def charge_system(dt: DecoratedTriangulation, H=None):
    if H is not None:
        dt = dt.replace(H=set(H))
    n = dt.n
    rows, rhs = [], []
    for t in range(n):
        row = [0] * (3 * n)
        row[3 * t:3 * t + 3] = [1, 1, 1]
        rows.append(row)
        rhs.append(1)
    members = dt.edge_members()
    for i in dt.interior_edges():
        row = [0] * (3 * n)
        for t, j in members[i]:
            row[3 * t + j] += 1
        rows.append(row)
        rhs.append(dt.charge_target(i))
    return rows, rhs


def _unpack(x, n):
    return [tuple(int(v) for v in x[3 * t:3 * t + 3]) for t in range(n)]


def solve_flattenings(dt: DecoratedTriangulation) -> IntegerSolution:
    rows, rhs = flattening_system(dt)
    return solve_integer(rows, rhs)


def solve_charges(dt: DecoratedTriangulation, H=None) -> IntegerSolution:
    rows, rhs = charge_system(dt, H)
    return solve_integer(rows, rhs)


def with_solved_decorations(dt: DecoratedTriangulation, choice_f=None, choice_c=None):
    """Fill in flattenings and charges from the integer solver."""
    fs = solve_flattenings(dt)
    cs = solve_charges(dt)
    f = _unpack(fs.sample(choice_f if choice_f is not None else np.zeros(len(fs.kernel), int)), dt.n)
    c = _unpack(cs.sample(choice_c if choice_c is not None else np.zeros(len(cs.kernel), int)), dt.n)
    return dt.replace(f=f, c=c)


def edge_star_generator(dt: DecoratedTriangulation, edge: int, kind: str = "f") -> list[tuple[int, int, int]]:
    """Change of flattening (or charge) around one edge that keeps every condition.

    Around each occurrence of the edge (tetrahedron t, type j), add s to the
    next type and subtract it from the previous one, with s = b(t) for
    flattenings and s = 1 for charges.
    """
    n = dt.n
    b = dt.b if kind == "f" else [1] * n
    delta = [[0, 0, 0] for _ in range(n)]
    for t, j in dt.edge_members()[edge]:
        delta[t][(j + 1) % 3] += b[t]
        delta[t][(j + 2) % 3] -= b[t]
    return [tuple(d) for d in delta]


def translate(dt: DecoratedTriangulation, delta, kind: str = "f") -> DecoratedTriangulation:
    """Add an integer change to every flattening (kind 'f') or charge (kind 'c')."""
    old = dt.f if kind == "f" else dt.c
    new = [tuple(int(x) + int(d) for x, d in zip(v, dv)) for v, dv in zip(old, delta)]
    return dt.replace(**{kind: new})


def change_branching(dt: DecoratedTriangulation, orders) -> DecoratedTriangulation:
    """Same decorated triangulation seen through another global branching.

    Each tetrahedron is transformed by :func:`apply_permutation` so that
    moduli, flattenings and charges describe the same geometric edges.
    """
    from .tetra import apply_permutation

    orders = [tuple(o) for o in orders]
    if not is_global_branching(dt.tri, orders):
        raise TriangulationError("target branching is not global")
    w0, f, c = [], [], []
    for t in range(dt.n):
        p = [dt.orders[t].index(v) for v in orders[t]]
        nt = apply_permutation(dt.tetra(t), p)
        w0.append(nt.w0)
        f.append(nt.f)
        c.append(nt.c)
    return dt.replace(orders=orders, w0=w0, f=None if dt.f is None else f, c=None if dt.c is None else c)


def mirror(dt: DecoratedTriangulation) -> DecoratedTriangulation:
    """Orientation reversal: signs b flip, moduli conjugate, flattenings change sign."""
    tri = Triangulation(dt.n, dt.tri.gluing_list(), [-o for o in dt.tri.orientation])
    f = None if dt.f is None else [tuple(-x for x in v) for v in dt.f]
    return DecoratedTriangulation(tri, dt.orders, [w.conjugate() for w in dt.w0], f, dt.c, dt.H,
                                  dt.targets)


def flattening_lattice(dt: DecoratedTriangulation) -> np.ndarray:
    """Integer kernel of the flattening system (rows are generators)."""
    return solve_flattenings(dt).kernel


def charge_lattice(dt: DecoratedTriangulation) -> np.ndarray:
    return solve_charges(dt).kernel


def flat_difference_in_star_lattice(dt: DecoratedTriangulation, f_other) -> bool:
    """True when f_other - f is a combination of edge-star generators."""
    gens = [np.array(edge_star_generator(dt, e)).ravel() for e in range(len(dt.tri.edge_classes()))]
    diff = (np.array(f_other) - np.array(dt.f)).ravel()
    return in_lattice(diff, gens)


# --------------------------------------------------------------------------
# parity along dual loops


def mod2_class_on_path(dt: DecoratedTriangulation, path, weights="f") -> int:
    """Sum mod 2 of the weights met along a closed dual path.

    ``path`` is a cyclic list of ``(t, enter_face, exit_face)``; the exit face
    of each step must be glued to the entry face of the next.  In each
    tetrahedron the path passes the edge common to its entry and exit faces.
    """
    vals = dt.f if weights == "f" else dt.c
    total = 0
    L = len(path)
    for k, (t, fin, fout) in enumerate(path):
        if fin == fout:
            raise DomainError("path backtracks")
        nt, nfin, _ = path[(k + 1) % L]
        g = dt.tri.gluing.get((t, fout))
        if g is None or g[0] != nt or g[1] != nfin:
            raise DomainError("path steps are not glued")
        a, b_ = [v for v in range(4) if v not in (fin, fout)]
        total += vals[t][dt.abstract_edge_type(t, a, b_)]
    return total % 2


def dual_cycles(tri: Triangulation, max_len: int = 6):
    """Simple closed dual paths up to a given length (for parity checks)."""
    out = []
    for t0 in range(tri.n):
        for f0 in range(4):
            stack = [[(t0, None, f0)]]
            while stack:
                path = stack.pop()
                t, fin, fout = path[-1]
                g = tri.gluing.get((t, fout))
                if g is None:
                    continue
                t2, f2, _ = g
                if t2 == t0 and len(path) >= 1:
                    if f2 != f0:
                        cyc = [(path[0][0], f2, path[0][2])] + path[1:]
                        out.append(cyc)
                if len(path) >= max_len:
                    continue
                for f3 in range(4):
                    if f3 != f2:
                        stack.append(path + [(t2, f2, f3)])
    return out


# --------------------------------------------------------------------------
# idealisation of PSL(2, C) cocycles


def mobius(M, z):
    a, b, c, d = M[0][0], M[0][1], M[1][0], M[1][1]
    if z == math.inf:
        return a / c if c != 0 else math.inf
    den = c * z + d
    if den == 0:
        return math.inf
    return (a * z + b) / den


def idealize(z0, z1, z0p) -> complex:
    """Modulus w0 of the ideal tetrahedron spanned by a cocycle.

    ``z0``, ``z1``, ``z0p`` are the PSL(2, C) values on the edges
    ``[v0, v1]``, ``[v1, v2]`` and ``[v2, v3]``; the vertices develop to
    ``0, z0(0), z0 z1(0), z0 z1 z0p(0)``.
    """
    z0, z1, z0p = (np.asarray(M, dtype=complex) for M in (z0, z1, z0p))
    u = [0j, mobius(z0, 0j), mobius(z0 @ z1, 0j), mobius(z0 @ z1 @ z0p, 0j)]
    return idealize_points(u)


def idealize_points(u) -> complex:
    """Cross-ratio (u2-u1)(u3-u0) / ((u2-u0)(u3-u1)) of four finite points."""
    u = list(u)
    if any(x == math.inf for x in u):
        raise DomainError("a vertex develops to infinity: cocycle is not idealizable")
    u = [complex(x) for x in u]
    if len(set(u)) < 4:
        raise DomainError("vertices collide: cocycle is not idealizable")
    return complex((u[2] - u[1]) * (u[3] - u[0]) / ((u[2] - u[0]) * (u[3] - u[1])))


def psl2_canonical(M) -> np.ndarray:
    """Representative of +-M with the first nonzero entry having Re > 0 (Im > 0 on ties)."""
    M = np.asarray(M, dtype=complex)
    det = np.linalg.det(M)
    M = M / np.sqrt(det)
    for x in M.ravel():
        if abs(x) > 1e-14:
            if x.real < -1e-14 or (abs(x.real) <= 1e-14 and x.imag < 0):
                M = -M
            break
    return M


def vertex_cocycle(tri: Triangulation, orders, vertex_maps):
    """Trivial-holonomy cocycle z(e) = g(tail)^-1 g(head) from one element per vertex class.

    Returns, per tetrahedron, the three matrices used by :func:`idealize`.
    """
    vindex = {c: i for i, cl in enumerate(tri.vertex_classes()) for c in cl}
    out = []
    for t in range(tri.n):
        o = orders[t]
        g = [np.asarray(vertex_maps[vindex[(t, v)]], dtype=complex) for v in o]
        inv = [np.linalg.inv(x) for x in g]
        out.append((inv[0] @ g[1], inv[1] @ g[2], inv[2] @ g[3]))
    return out


def idealize_cocycle(tri: Triangulation, orders, cocycle) -> list[complex]:
    return [idealize(*cocycle[t]) for t in range(tri.n)]
