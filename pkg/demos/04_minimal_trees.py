"""Exhaustive check that T*_{n,2} has the least energy among trees of max degree 3.

Run: python demos/04_minimal_trees.py
"""

from treeenergy.experiments import minimal

# %% scan every tree for each n, using both engines per tree
print(f"{'n':>3} {'trees':>6} {'E_min':>12} {'E_min/n':>9} {'gap':>9} unique T*")
for row in minimal(range(2, 13), d=2):
    r = row.report
    print(f"{r.n:3d} {r.count:6d} {r.min_energy:12.8f} {row.energy_per_vertex:9.5f} "
          f"{r.runner_up_gap:9.5f} {r.argmin_unique!s:6} {r.tstar_match}")
print(f"every E_min/n is below alpha_2 = {row.alpha_d:.5f}")
