"""Which trees have energy below their order?

With max degree 3 this only happens for a handful of tiny trees; with
max degree 4 the minimal trees T*_{n,3} drop below n - 1 for good.

Run: python demos/06_hypoenergetic.py
"""

from treeenergy.experiments import hypo_census

res = hypo_census(14, 3, tstar_d=3, tstar_max_n=300)

# %% the census
for row in res.rows:
    flag = " <-" if row.hypo else ""
    print(f"n={row.n:2d} trees={row.total:4d} E<n: {row.hypo} E<n-1: {row.strong}{flag}")

# %% the T* family for d = 3
s = res.tstar
print(f"T*_(n,3): first E<n at n={s.first_hypo}, first E<n-1 at n={s.first_strong}")
print(f"E<n-1 holds for every n in [{s.strong_from}, {s.max_n}]; E/n at n={s.max_n} is {s.energies[-1] / s.max_n:.5f}")
