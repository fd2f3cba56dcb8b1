"""Two ways to get a tree's spectrum, and why both are kept.

Run: python demos/02_energy_engines.py
"""

import math

import numpy as np

from treeenergy.spectral import Method, energy, matching_polynomial, spectrum_dense, spectrum_from_polynomial
from treeenergy.trees import bn_tree, complete_dary, path_tree, star_tree

# %% closed forms
print("E(P_4) =", energy(path_tree(4)).value, " 2*sqrt(5) =", 2 * math.sqrt(5))
print("E(K_1,3) =", energy(star_tree(4)).value, " 2*sqrt(3) =", 2 * math.sqrt(3))

# %% the matching polynomial
# For a tree, det(xI - A) = sum_k (-1)^k m_k x^(n-2k) with m_k the number of
# k-edge matchings, so the spectrum is fixed by exact integers.
c3 = complete_dary(2, 3).tree
mp = matching_polynomial(c3)
print("C_3 matchings:", mp.m, " char poly (ascending):", mp.characteristic())

# %% dense LAPACK solve vs exact root isolation
t = bn_tree(3)
dense = spectrum_dense(t).values
exact = spectrum_from_polynomial(matching_polynomial(t)).values
print(f"B_3: n={t.n}, max |dense - exact| eigenvalue difference = {np.max(np.abs(dense - exact)):.2e}")

for method in Method:
    r = energy(t, method)
    print(f"  {method.value:10s} E = {r.value:.15f}  (bound {r.error_bound:.1e})")
