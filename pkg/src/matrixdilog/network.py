"""Tensor networks with labelled legs: brute-force and planned contraction.

Every tensor carries one label per axis.  A label that occurs on two axes
is summed over; labels occurring once are open and appear in the output in
the order requested.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np


@dataclass
class Node:
    tensor: np.ndarray
    labels: tuple

    def __post_init__(self):
        self.tensor = np.asarray(self.tensor, dtype=complex)
        self.labels = tuple(self.labels)
        if self.tensor.ndim != len(self.labels):
            raise ValueError("one label per axis is required")


@dataclass
class ContractionPlan:
    """Pairwise elimination order with estimated cost per step."""

    steps: list = field(default_factory=list)   # (i, j) indices into the live list
    costs: list = field(default_factory=list)   # multiply-adds per step
    mode: str = "greedy"

    @property
    def total_cost(self) -> int:
        return int(sum(self.costs))


def _check_labels(nodes):
    counts = Counter(l for n in nodes for l in n.labels)
    bad = [l for l, c in counts.items() if c > 2]
    if bad:
        raise ValueError(f"labels used more than twice: {bad[:5]}")
    return counts


def open_labels(nodes) -> list:
    counts = _check_labels(nodes)
    seen = []
    for n in nodes:
        for l in n.labels:
            if counts[l] == 1 and l not in seen:
                seen.append(l)
    return seen


def contract_bruteforce(nodes, out_labels=None, dim: int | None = None) -> np.ndarray:
    """Sum over every state of every label (exponential; used as an oracle)."""
    nodes = list(nodes)
    counts = _check_labels(nodes)
    if out_labels is None:
        out_labels = open_labels(nodes)
    out_labels = list(out_labels)
    closed = [l for l, c in counts.items() if c == 2]
    if dim is None:
        dim = nodes[0].tensor.shape[0]
    labels = out_labels + closed
    pos = {l: i for i, l in enumerate(labels)}
    shape = (dim,) * len(labels)
    n_states = dim ** len(labels)
    if n_states > 5_000_000:
        # loop over output states to bound memory
        out = np.zeros((dim,) * len(out_labels), dtype=complex)
        for ostate in itertools.product(range(dim), repeat=len(out_labels)):
            sub = [Node(n.tensor[tuple(ostate[out_labels.index(l)] if l in out_labels else slice(None)
                                        for l in n.labels)],
                        tuple(l for l in n.labels if l not in out_labels)) for n in nodes]
            out[ostate] = contract_bruteforce(sub, [], dim)
        return out
    grids = np.indices(shape).reshape(len(labels), -1)
    prod = np.ones(n_states, dtype=complex)
    for n in nodes:
        idx = tuple(grids[pos[l]] for l in n.labels)
        prod *= n.tensor[idx]
    prod = prod.reshape((dim ** len(out_labels), -1)) if out_labels else prod.reshape(1, -1)
    res = prod.sum(axis=1)
    return res.reshape((dim,) * len(out_labels)) if out_labels else res[0]


def plan_greedy(nodes, dim: int | None = None) -> ContractionPlan:
    """Greedy plan: repeatedly contract the pair with the smallest result."""
    live = [tuple(n.labels) for n in nodes]
    if dim is None:
        dim = nodes[0].tensor.shape[0] if nodes else 1
    plan = ContractionPlan()
    while len(live) > 1:
        best = None
        for i, j in itertools.combinations(range(len(live)), 2):
            la, lb = set(live[i]), set(live[j])
            shared = la & lb
            union = la | lb
            res = dim ** (len(union) - len(shared))
            cost = dim ** len(union)
            # prefer pairs that share legs
            key = (0 if shared else 1, res, cost)
            if best is None or key < best[0]:
                best = (key, i, j, cost, tuple(l for l in live[i] + live[j] if l not in shared))
        _, i, j, cost, new = best
        plan.steps.append((i, j))
        plan.costs.append(cost)
        live = [l for k, l in enumerate(live) if k not in (i, j)] + [new]
    return plan


def _contract_pair(a: Node, b: Node) -> Node:
    shared = [l for l in a.labels if l in b.labels]
    ax_a = [a.labels.index(l) for l in shared]
    ax_b = [b.labels.index(l) for l in shared]
    t = np.tensordot(a.tensor, b.tensor, axes=(ax_a, ax_b))
    labels = tuple(l for l in a.labels if l not in shared) + tuple(l for l in b.labels if l not in shared)
    return Node(t, labels)


def _self_trace(node: Node) -> Node:
    """Sum over labels that occur twice on the same tensor."""
    t, labels = node.tensor, list(node.labels)
    for l, c in Counter(labels).items():
        if c == 2:
            a = labels.index(l)
            b = labels.index(l, a + 1)
            t = np.trace(t, axis1=a, axis2=b)
            labels = [x for k, x in enumerate(labels) if k not in (a, b)]
    return Node(t, tuple(labels))


def contract(nodes, out_labels=None, plan: ContractionPlan | None = None) -> np.ndarray:
    """Contract a network following a pairwise plan (greedy by default)."""
    nodes = list(nodes)
    if out_labels is None:
        out_labels = open_labels(nodes)
    nodes = [_self_trace(n) for n in nodes]
    if not nodes:
        return np.array(1.0 + 0j)
    if plan is None:
        plan = plan_greedy(nodes)
    live = nodes[:]
    for i, j in plan.steps:
        new = _contract_pair(live[i], live[j])
        live = [n for k, n in enumerate(live) if k not in (i, j)] + [new]
    (final,) = live
    final = _self_trace(final)
    t, labels = final.tensor, list(final.labels)
    if list(out_labels) != labels:
        t = np.transpose(t, [labels.index(l) for l in out_labels])
    return t
