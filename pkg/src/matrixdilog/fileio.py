"""Text format for decorated triangulations.

Example::

    format_version 1
    v 0
    tetrahedra 2
    [pairings]
    0 0 ~ 1 1 : 123>032
    [branching]
    0: 0 1 2 3
    [moduli]
    0: 0.5 0.8660254037844386
    [flattening]
    0: 0 0 -1
    [charge]
    0: 0 0 1
    [hamiltonian]
    0 0 1
    [cocycle]
    0: <12 reals: z0, z1, z0' as a b c d with re im each>

A pairing ``t f ~ t2 f2 : abc>xyz`` glues face ``f`` of ``t`` to face ``f2``
of ``t2``, sending local vertex ``a`` to ``x`` and so on.  Lines starting
with ``#`` are comments.  H edges are given as ``t a b`` (an abstract edge
of the class).  Optional header keys: ``N`` (default order for commands),
``name``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .scalars import DomainError
from .triangulation import DecoratedTriangulation, Triangulation, TriangulationError

FORMAT_VERSION = 1
BLOCKS = ("pairings", "branching", "moduli", "flattening", "charge", "hamiltonian", "cocycle")


class ParseError(DomainError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


@dataclass
class TriangulationFile:
    """Everything a file can hold; blocks that were absent are None."""

    tri: Triangulation
    orders: list | None = None
    w0: list | None = None
    f: list | None = None
    c: list | None = None
    H_edges: list = field(default_factory=list)
    cocycle: list | None = None
    N: int | None = None
    v: int | None = None
    name: str | None = None

    def decorated(self) -> DecoratedTriangulation:
        if self.orders is None:
            raise DomainError("file has no [branching] block")
        if self.w0 is None:
            raise DomainError("file has no [moduli] block")
        eidx = self.tri.edge_index()
        H = set()
        for t, a, b in self.H_edges:
            key = (t, (min(a, b), max(a, b)))
            if key not in eidx:
                raise DomainError(f"H edge {t} {a} {b} does not exist")
            H.add(eidx[key])
        return DecoratedTriangulation(self.tri, self.orders, self.w0, self.f, self.c, H)


_PAIR = re.compile(r"^\s*(\d+)\s+(\d)\s*~\s*(\d+)\s+(\d)\s*:\s*([0-3]{3})\s*>\s*([0-3]{3})\s*$")


def _ints(text, lineno, col, count=None):
    try:
        vals = [int(x) for x in text.split()]
    except ValueError:
        raise ParseError(lineno, col, f"expected integers, got {text.strip()!r}") from None
    if count is not None and len(vals) != count:
        raise ParseError(lineno, col, f"expected {count} integers, got {len(vals)}")
    return vals


def _floats(text, lineno, col, count):
    try:
        vals = [float(x) for x in text.split()]
    except ValueError:
        raise ParseError(lineno, col, f"expected numbers, got {text.strip()!r}") from None
    if len(vals) != count:
        raise ParseError(lineno, col, f"expected {count} numbers, got {len(vals)}")
    return vals


def parse(text: str) -> TriangulationFile:
    header: dict = {}
    blocks: dict = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        s = line.strip()
        if s.startswith("["):
            if not s.endswith("]") or s[1:-1] not in BLOCKS:
                raise ParseError(lineno, col, f"unknown block {s}")
            current = s[1:-1]
            if current in blocks:
                raise ParseError(lineno, col, f"block [{current}] given twice")
            blocks[current] = []
            continue
        if current is None:
            parts = s.split(None, 1)
            if len(parts) != 2:
                raise ParseError(lineno, col, "header lines are 'key value'")
            header[parts[0]] = (parts[1], lineno, col)
        else:
            blocks[current].append((s, lineno, col))

    def head_int(key, required=False):
        if key not in header:
            if required:
                raise ParseError(1, 1, f"missing header key {key!r}")
            return None
        val, ln, cl = header[key]
        return _ints(val, ln, cl, 1)[0]

    version = head_int("format_version", True)
    if version != FORMAT_VERSION:
        raise ParseError(header["format_version"][1], 1, f"unsupported format_version {version}")
    n = head_int("tetrahedra", True)
    gluings = []
    for s, ln, col in blocks.get("pairings", []):
        m = _PAIR.match(s)
        if not m:
            raise ParseError(ln, col, "pairing must look like 't f ~ t2 f2 : abc>xyz'")
        t, f, t2, f2 = (int(m.group(k)) for k in range(1, 5))
        src, dst = m.group(5), m.group(6)
        if str(f) in src or str(f2) in dst or len(set(src)) < 3 or len(set(dst)) < 3:
            raise ParseError(ln, col, "vertex map must list the three vertices of each face")
        perm = [0] * 4
        perm[f] = f2
        for a, b in zip(src, dst):
            perm[int(a)] = int(b)
        gluings.append((t, f, t2, tuple(perm)))
    try:
        tri = Triangulation(n, gluings)
    except TriangulationError as exc:
        raise ParseError(blocks["pairings"][0][1] if blocks.get("pairings") else 1, 1, str(exc)) from None

    def per_tet(name, parse_row):
        if name not in blocks:
            return None
        rows = [None] * n
        for s, ln, col in blocks[name]:
            if ":" not in s:
                raise ParseError(ln, col, "rows look like 't: values'")
            idx, rest = s.split(":", 1)
            t = _ints(idx, ln, col, 1)[0]
            if not 0 <= t < n:
                raise ParseError(ln, col, f"tetrahedron {t} out of range")
            if rows[t] is not None:
                raise ParseError(ln, col, f"tetrahedron {t} listed twice")
            rows[t] = parse_row(rest, ln, col + len(idx) + 1)
        missing = [t for t in range(n) if rows[t] is None]
        if missing:
            raise ParseError(blocks[name][-1][1], 1, f"[{name}] misses tetrahedra {missing}")
        return rows

    orders = per_tet("branching", lambda r, ln, c: tuple(_ints(r, ln, c, 4)))
    w0 = per_tet("moduli", lambda r, ln, c: complex(*_floats(r, ln, c, 2)))
    f = per_tet("flattening", lambda r, ln, c: tuple(_ints(r, ln, c, 3)))
    ch = per_tet("charge", lambda r, ln, c: tuple(_ints(r, ln, c, 3)))

    def cocycle_row(r, ln, c):
        x = _floats(r, ln, c, 24)
        z = np.array(x[0::2]) + 1j * np.array(x[1::2])
        return tuple(z[4 * k:4 * k + 4].reshape(2, 2) for k in range(3))

    cocycle = per_tet("cocycle", cocycle_row)
    H = [tuple(_ints(s, ln, col, 3)) for s, ln, col in blocks.get("hamiltonian", [])]
    if ch is not None:
        for t, row in enumerate(ch):
            if sum(row) != 1:
                raise ParseError(1, 1, f"charge of tetrahedron {t} does not sum to 1")
    out = TriangulationFile(tri, orders, w0, f, ch, H, cocycle, head_int("N"), head_int("v"),
                            header.get("name", (None,))[0])
    if out.v is not None and out.v != tri.interior_vertex_count():
        raise ParseError(header["v"][1], 1,
                         f"header says v={out.v}, triangulation has {tri.interior_vertex_count()}")
    return out


def load(path) -> TriangulationFile:
    return parse(Path(path).read_text())


def _num(x: float) -> str:
    return repr(float(x))


def dumps(dt, cocycle=None, N: int | None = None, name: str | None = None) -> str:
    """Text of a (decorated) triangulation in the canonical layout."""
    tri = dt.tri if isinstance(dt, DecoratedTriangulation) else dt
    lines = [f"format_version {FORMAT_VERSION}"]
    if name:
        lines.append(f"name {name}")
    if N is not None:
        lines.append(f"N {N}")
    lines.append(f"v {tri.interior_vertex_count()}")
    lines.append(f"tetrahedra {tri.n}")
    lines.append("[pairings]")
    for t, f, t2, perm in tri.gluing_list():
        src = [v for v in range(4) if v != f]
        lines.append(f"{t} {f} ~ {t2} {perm[f]} : {''.join(map(str, src))}>"
                     f"{''.join(str(perm[v]) for v in src)}")
    if isinstance(dt, DecoratedTriangulation):
        lines.append("[branching]")
        lines += [f"{t}: {' '.join(map(str, o))}" for t, o in enumerate(dt.orders)]
        lines.append("[moduli]")
        lines += [f"{t}: {_num(w.real)} {_num(w.imag)}" for t, w in enumerate(dt.w0)]
        if dt.f is not None:
            lines.append("[flattening]")
            lines += [f"{t}: {' '.join(map(str, v))}" for t, v in enumerate(dt.f)]
        if dt.c is not None:
            lines.append("[charge]")
            lines += [f"{t}: {' '.join(map(str, v))}" for t, v in enumerate(dt.c)]
        if dt.H:
            lines.append("[hamiltonian]")
            classes = tri.edge_classes()
            for e in sorted(dt.H):
                t, (a, b) = classes[e][0]
                lines.append(f"{t} {a} {b}")
    if cocycle is not None:
        lines.append("[cocycle]")
        for t, mats in enumerate(cocycle):
            vals = []
            for M in mats:
                for z in np.asarray(M, dtype=complex).ravel():
                    vals += [_num(z.real), _num(z.imag)]
            lines.append(f"{t}: {' '.join(vals)}")
    return "\n".join(lines) + "\n"


def save(path, dt, cocycle=None, N=None, name=None) -> None:
    Path(path).write_text(dumps(dt, cocycle, N, name))


def tensor_rows(E: np.ndarray, tol: float = 0.0):
    """Rows (i, j, k, l, re, im) of the nonzero entries of an (N, N, N, N) array."""
    rows = []
    for idx in zip(*np.nonzero(np.abs(E) > tol)):
        z = E[idx]
        rows.append(tuple(int(x) for x in idx) + (float(z.real), float(z.imag)))
    return rows


def data_path(name: str) -> Path:
    """Path of a bundled example file."""
    return Path(__file__).with_name("data") / name
