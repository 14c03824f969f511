"""Decorated moves change the triangulation but not the state sum.

Run:  python3 demos/03_moves.py
"""
from matrixdilog.census import figure_eight, two_tetrahedron_sphere
from matrixdilog.moves import bubble, three_two, two_three, zero_two
from matrixdilog.statesum import invariants_agree, quantum_invariant

dt = figure_eight()
base = quantum_invariant(dt, 3)
print("figure-eight H_3 =", base.value)

up = two_three(dt, 0, 2).after
print(f"\n2-3: {dt.n} -> {up.n} tetrahedra, valid={up.is_valid()}, "
      f"agrees={invariants_agree(base, quantum_invariant(up, 3))}")

central = next(e for e, cl in enumerate(up.tri.edge_classes()) if len(cl) == 3)
down = three_two(up, central).after
print(f"3-2 on edge {central}: back to {down.n} tetrahedra, "
      f"agrees={invariants_agree(base, quantum_invariant(down, 3))}")

pair = zero_two(dt, 0, 0, 0, 1, (1, 2)).after
print(f"0-2: {dt.n} -> {pair.n} tetrahedra (a mirror pair), "
      f"agrees={invariants_agree(base, quantum_invariant(pair, 3))}")

# On a closed sphere the bubble move adds a vertex; the N^{-v} factor absorbs it.
sph, _ = two_tetrahedron_sphere()
s0 = quantum_invariant(sph, 3)
bub = bubble(sph, 0, 0).after
s1 = quantum_invariant(bub, 3)
print(f"\nbubble on the 2-tetrahedron sphere: v {sph.tri.interior_vertex_count()} -> "
      f"{bub.tri.interior_vertex_count()}, H_3 {abs(s0.value):.6f} -> {abs(s1.value):.6f}")
