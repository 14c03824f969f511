"""From scalar dilogarithms to the N x N matrix dilogarithm of one tetrahedron.

Run:  python3 demos/01_dilogarithms.py
"""
import cmath

import numpy as np

from matrixdilog.scalars import PI, bloch_wigner, lifted_R, rogers_L
from matrixdilog.tensors import R1, RN_entries, RN_inverse_operator, RN_operator, tetra_prefactor
from matrixdilog.tetra import DecoratedTetra, flattening_sum

# The Rogers dilogarithm is normalised so that L(x) + L(1 - x) = -pi^2/6.
x = 0.3 + 0.7j
print("Rogers reflection residual:", abs(rogers_L(x) + rogers_L(1 - x) + PI ** 2 / 6))

# The Bloch-Wigner function at the regular ideal tetrahedron is its volume.
regular = cmath.exp(1j * PI / 3)
print("volume of the regular ideal tetrahedron:", bloch_wigner(regular))

# Integer sheets of the logarithm lift the Rogers function off its cuts.
for p in (0, 1, 2):
    print(f"lifted R on sheet p={p}:", lifted_R(0.5, p, 0, reduce=False))

# A decorated tetrahedron: modulus, flattening (log-branches sum to zero)
# and an integral charge summing to one.
w0 = 0.3 + 0.8j
tet = DecoratedTetra(w0, (0, 0, flattening_sum(w0)), (1, 0, 0))
print("\nclassical (N = 1) value:", R1(tet))

N = 5
op = RN_operator(tet, N)
E = RN_entries(tet, N)
print(f"N = {N}: operator shape {op.shape}, {np.count_nonzero(np.abs(E) > 1e-300)} non-zero entries")
# The basic operator has determinant one; the charge prefactor scales all N^2 rows.
pre = tetra_prefactor(tet, N)
print("det / prefactor^(N^2):", np.linalg.det(op) / pre ** (N * N))
print("|R R^-1 - Id|:", np.abs(op @ RN_inverse_operator(tet, N) - np.eye(N * N)).max())
