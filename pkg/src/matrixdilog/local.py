"""Simplicial local complexes: tetrahedra named by their vertex labels.

Faces of a simplicial complex are identified by their vertex sets, so two
tetrahedra sharing three vertices are glued along that face.  This is the
setting of the 2 <-> 3 transit, where five vertices span two tetrahedra on
one side and three on the other.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .network import Node, contract, open_labels
from .scalars import PI, DomainError
from .tensors import INPUT_FACES, OUTPUT_FACES, RN_operator, R_value
from .tetra import DecoratedTetra, edge_type, perm_sign, flattening_sum


def cross_ratio(a, b, c, d) -> complex:
    """Modulus on the edge [a, b] of the ideal tetrahedron with vertices a, b, c, d."""
    return (c - b) * (d - a) / ((c - a) * (d - b))


def face_label(tet: DecoratedTetra, j: int) -> frozenset:
    return frozenset(tet.face_vertices(j))


def edge_occurrences(tets):
    """Map edge (frozenset of two vertices) -> list of (tet index, type)."""
    occ: dict = {}
    for t, tet in enumerate(tets):
        for a, b in itertools.combinations(range(4), 2):
            e = frozenset((tet.order[a], tet.order[b]))
            occ.setdefault(e, []).append((t, edge_type(a, b)))
    return occ


def face_nodes(tets, N: int, shifts=None):
    """Tensor network nodes of a simplicial complex, one per tetrahedron.

    Each face label records its direction so that a glued face always joins
    an output leg of one tetrahedron to an input leg of the other.
    """
    nodes = []
    directions: dict = {}
    for t, tet in enumerate(tets):
        op = RN_operator(tet, N, None if shifts is None else shifts[t])
        T = op.reshape((N,) * 4) if N > 1 else op.reshape(1, 1, 1, 1)
        faces = OUTPUT_FACES[tet.b] + INPUT_FACES[tet.b]
        labels = tuple(face_label(tet, j) for j in faces)
        for k, lab in enumerate(labels):
            d = "out" if k < 2 else "in"
            directions.setdefault(lab, []).append(d)
        nodes.append(Node(T, labels))
    for lab, ds in directions.items():
        if len(ds) == 2 and sorted(ds) != ["in", "out"]:
            raise DomainError(f"face {sorted(lab)} is {ds[0]} on both sides")
    return nodes, directions


def boundary_faces(tets) -> list:
    count: dict = {}
    for tet in tets:
        for j in range(4):
            lab = face_label(tet, j)
            count[lab] = count.get(lab, 0) + 1
    return sorted((l for l, c in count.items() if c == 1), key=lambda s: sorted(s))


def complex_tensor(tets, N: int, out_labels=None, shifts=None) -> np.ndarray:
    nodes, _ = face_nodes(tets, N, shifts)
    if out_labels is None:
        out_labels = boundary_faces(tets)
    return contract(nodes, out_labels)


def complex_R_sum(tets) -> complex:
    return sum(R_value(t) for t in tets)
