"""
Iterates, the Bott sum and the mean index
==========================================

The index of the m-th iterate of a path is a sum of ω-indices over the m-th
roots of unity.  Recording i_ω once along the circle (the profile) gives every
iterate at once; recounting crossings on the iterated path checks it.
"""

import math

from sympindex.iteration import index_iterates, iteration_gap_check, mean_index, omega_profile
from sympindex.paths import diamond_paths, from_hamiltonian, rotation_path

quarter = rotation_path(math.pi / 2)

# the profile is piecewise constant in the angle of ω, with jumps at the unit eigenvalues
prof = omega_profile(quarter)
print("breakpoints (angle/π):", [str(b.angle_over_pi) for b in prof.breakpoints])
print("values on the arcs:   ", prof.arc_values)

# rows (m, i, ν); R(π/2)^4 = I, so the fourth iterate has a two-dimensional kernel
table = index_iterates(quarter, 8)
for m, i, nu in table.rows:
    print(f"  m={m}  i={i}  ν={nu}")
print("mean index:", table.mean_index)

# an irrational angle gives an irrational mean index and nondegenerate iterates
print("mean index of R(t·1.0):", mean_index(rotation_path(1.0)))

# a positive-definite Hamiltonian flow in Sp(4): iterate indices grow linearly
flow = from_hamiltonian([(1.0, [[3.0, 0.5, 0, 0], [0.5, 2.0, 0, 0], [0, 0, 3.0, 0.2], [0, 0, 0.2, 1.5]])])
print("flow iterates:", [(m, i) for m, i, _ in index_iterates(flow, 6).rows])

# the gap between consecutive iterates never drops below i(1) - e/2
both = diamond_paths(rotation_path(1.3 * math.pi), rotation_path(1.7 * math.pi))
gap = iteration_gap_check(both, 16)
print("gap baseline", gap.baseline, "smallest slack", min(s for _, s in gap.slacks))
