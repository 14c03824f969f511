"""The figure-eight knot complement: decoration checks, complex volume, state sums.

Run:  python3 demos/02_figure_eight.py
"""
from importlib import resources

from matrixdilog import fileio
from matrixdilog.statesum import H1, asymptotics_probe, complex_volume, quantum_invariant

path = resources.files("matrixdilog") / "data" / "figure_eight.tri"
dt = fileio.load(str(path)).decorated()
print(f"{dt.n} tetrahedra, branching signs {dt.b}")
print("edge residuals:", dt.edge_residuals())
print("flattening defects per edge:", dt.flattening_defects())
# one entry per tetrahedron (c0 + c1 + c2 - 1), then one per edge
print("charge defects:", dt.charge_defects())

# Sum of signed lifted R values modulo pi^2: Chern-Simons part + i volume.
cv = complex_volume(dt)
print(f"\ncomplex volume: cs = {cv.real:.3g}, volume = {cv.imag:.12f}")
print("H_1 = exp(sum / (i pi)) =", H1(dt))

# State sums for odd N are defined up to a sign and a power of zeta.
for N in (3, 5):
    r = quantum_invariant(dt, N)
    print(f"H_{N} = {r.value:.10f}  (|H| = {abs(r.value):.10f}, {r.seconds:.3f}s)")

# Exploratory only: no limit is claimed.
table = asymptotics_probe(dt, (1, 3, 5, 7))
print("\nvolume / 2pi =", table["volume_over_2pi"])
for row in table["rows"]:
    print(f"  N={row['N']}  log|H_N|/N = {row['log_abs_over_N']:.6f}")
