import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matrixdilog.census import figure_eight, two_tetrahedron_sphere
from matrixdilog.moves import (
    BlockedMove,
    bubble,
    find_mirror_pairs,
    mirror_pair,
    three_two,
    two_three,
    two_three_choices,
    two_zero,
    verify_two_term,
    zero_two,
)
from matrixdilog.statesum import H1, invariants_agree, quantum_invariant
from matrixdilog.tetra import flattening_sum

seeds = st.integers(0, 2 ** 32 - 1)


def _pair_data(rng):
    w0 = complex(rng.normal(), rng.normal())
    s = flattening_sum(w0)
    f0, f1 = (int(x) for x in rng.integers(-2, 3, size=2))
    c0, c1 = (int(x) for x in rng.integers(-2, 3, size=2))
    return w0, (f0, f1, s - f0 - f1), (c0, c1, 1 - c0 - c1)


# --- 2 <-> 3 ---------------------------------------------------------------

def test_two_three_on_figure_eight():
    dt = figure_eight()
    res = two_three(dt, 0, 2, choice_f=[1], choice_c=[-1])
    assert res.after.n == 3 and res.after.is_valid()
    assert len(res.new_tetrahedra) == 3
    assert invariants_agree(quantum_invariant(dt, 3), quantum_invariant(res.after, 3))


def test_two_three_then_three_two():
    dt = figure_eight()
    up = two_three(dt, 0, 2).after
    valence3 = [e for e, cl in enumerate(up.tri.edge_classes()) if len(cl) == 3]
    assert valence3
    down = three_two(up, valence3[0]).after
    assert down.n == 2 and down.is_valid()
    assert invariants_agree(quantum_invariant(dt, 3), quantum_invariant(down, 3))
    assert abs(H1(down) - H1(dt)) < 1e-9 or abs(H1(down) + H1(dt)) < 1e-9


def test_three_two_blocked():
    with pytest.raises(BlockedMove):
        three_two(figure_eight(), 0)


# --- 0 <-> 2 and bubble ----------------------------------------------------

def test_zero_two_inserts_mirror_pair():
    dt = figure_eight()
    res = zero_two(dt, 0, 0, 0, 1, (1, 2))
    new = res.after
    assert new.n == 4 and new.is_valid()
    (t, u), = find_mirror_pairs(new)
    # [PAPER] equal moduli and flattenings, opposite signs
    assert new.w0[t] == new.w0[u] and new.f[t] == new.f[u]
    assert new.b[t] == -new.b[u]
    assert invariants_agree(quantum_invariant(dt, 3), quantum_invariant(new, 3))


def test_two_zero_restores():
    dt = figure_eight()
    new = zero_two(dt, 0, 0, 0, 1, (1, 2)).after
    (t, u), = find_mirror_pairs(new)
    back = two_zero(new, t, u).after
    assert back.n == 2 and back.is_valid()
    assert invariants_agree(quantum_invariant(dt, 3), quantum_invariant(back, 3))
    with pytest.raises(BlockedMove):
        two_zero(dt, 0, 1)


def test_zero_two_blocked_on_same_face():
    with pytest.raises(BlockedMove):
        zero_two(figure_eight(), 0, 0, 0, 0, (1, 2))


def test_bubble_reroutes_H():
    dt, _ = two_tetrahedron_sphere()
    res = bubble(dt, 0, 0, (1, 2))
    new = res.after
    assert new.n == 4 and new.is_valid() and new.hamiltonian_ok()
    # [PAPER] one H edge is replaced by two
    assert len(new.H) == len(dt.H) + 1
    assert new.tri.interior_vertex_count() == dt.tri.interior_vertex_count() + 1
    assert invariants_agree(quantum_invariant(dt, 3), quantum_invariant(new, 3))


def test_bubble_needs_H_edge_with_charges():
    dt, _ = two_tetrahedron_sphere()
    with pytest.raises(BlockedMove, match="not in H"):
        bubble(dt, 0, 0, (1, 3))
    # without charges any face edge will do
    plain = dt.replace(c=None)
    assert bubble(plain, 0, 0, None).after.n == 4


# --- two-term relations ----------------------------------------------------

@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([3, 5]), st.sampled_from(["0-2", "bubble"]))
def test_two_term(seed, N, kind):
    w0, f, c = _pair_data(np.random.default_rng(seed))
    m = verify_two_term(mirror_pair(w0, f, c, N, kind), N, kind)
    assert m.ok, m.residual


def test_two_term_classical():
    w0, f, c = _pair_data(np.random.default_rng(0))
    assert verify_two_term(mirror_pair(w0, f, c, 1), 1).ok


def test_non_mirror_pair_fails():
    rng = np.random.default_rng(1)
    w0, f, c = _pair_data(rng)
    dt = mirror_pair(w0, f, c, 3)
    other = w0 * (1 + 0.3j)
    bad = dt.replace(w0=[w0, other], f=[f, (f[0], f[1], flattening_sum(other) - f[0] - f[1])])
    assert not verify_two_term(bad, 3).ok


def test_two_three_choices_window():
    dt = figure_eight()
    base = quantum_invariant(dt, 3)
    seen = set()
    for (cf, cc), res in two_three_choices(dt, 0, 2, K=1):
        assert res.after.is_valid()
        assert invariants_agree(base, quantum_invariant(res.after, 3))
        seen.add((tuple(res.after.f), tuple(res.after.c)))
    # [TRIVIAL] distinct parameters give distinct decorations
    assert len(seen) == 9
