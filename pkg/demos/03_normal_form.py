"""
Reading a symplectic matrix as a product of basic normal forms
===============================================================

Every symplectic matrix is symplectically similar to a ⋄-product of basic
normal forms and a hyperbolic remainder.  The decomposition below recovers
the factors from the unit spectrum, the Jordan structure and the splitting
numbers, then rebuilds a matrix with the same invariants.
"""

import numpy as np

from sympindex.core import NormalFormFactor, compose, random_symplectic
from sympindex.normal_form import decompose, eigen1_block_counts, invariant_report

F = NormalFormFactor

# hide a known product behind a random symplectic change of basis
M0 = compose([F.N1(1, 1), F.N1(1, -1), F.R(np.sqrt(2)), F.D(-2)])
P = random_symplectic(M0.shape[0] // 2, np.random.default_rng(1), 0.4)
M = np.linalg.solve(P, M0 @ P)

# eigenvalue 1: how many shears of each kind
print("(N1(1,1), N1(1,0), N1(1,-1)) counts:", eigen1_block_counts(M))

dec = decompose(M)
print("factors:  ", dec.labels())
print("remainder:", np.round(np.linalg.eigvals(dec.remainder_G).real, 6))

# the rebuilt matrix has the same nullities, multiplicities and splitting numbers
rep = invariant_report(M, dec)
print("invariants preserved:", rep["ok"], " e(M) =", rep["e"])
