"""
Counting crossings: the ω-index of a symplectic path
=====================================================

A path in Sp(2n) starting at the identity picks up a signed count each time
an eigenvalue passes ω on the unit circle.  Rotations are the simplest case:
t ↦ R(tθ) has eigenvalues e^{±itθ}, so the count can be read off by hand.
"""

import cmath
import math

from sympindex.core import NormalFormFactor, compose
from sympindex.paths import index_omega, rotation_path
from sympindex.splitting import splitting_numbers, table_rows

# a quarter turn: the start at I contributes 1 at ω = 1 and nothing else happens
quarter = rotation_path(math.pi / 2)
print("i_1(R(tπ/2))   =", index_omega(quarter, 1.0))

# three and a half turns pass through 1 three times, each adding 2
long_turn = rotation_path(3.5 * 2 * math.pi)
print("i_1(R(7πt))    =", index_omega(long_turn, 1.0))

# at ω = i the eigenvalue e^{itθ} arrives exactly at the end: the end point is degenerate
r = index_omega(quarter, 1j, full=True)
print("i_i(R(tπ/2))   =", r.value, " nullity at the end:", r.nullity)

# splitting numbers measure the jump of i_ω as ω moves off the spectrum
for b in (1, 0, -1):
    S = splitting_numbers(NormalFormFactor.N1(1, b).matrix(), 1.0)
    print(f"S±(N1(1,{b:+d})) at 1 =", S.as_tuple())

# they add under the ⋄-product, so a product of normal forms is read off factor by factor
M = compose([NormalFormFactor.N1(1, 1), NormalFormFactor.R(2 * math.pi / 5)])
w = cmath.exp(2j * math.pi / 5)
print("S± of N1(1,1)⋄R(2π/5) at e^{2πi/5} =", splitting_numbers(M, w).as_tuple())

# the reference table of basic normal forms, every entry computed by the crossing engine
for row in table_rows()[:8]:
    print(f"  {row['factor']:<14} ω/π={row['omega_angle_over_pi']!s:>6}  S+={row['s_plus']}  S-={row['s_minus']}")
