"""The limiting energy per vertex alpha_d, with a certified truncation.

Run: python demos/03_alpha_table.py
"""

from treeenergy.alpha import alpha, alpha_table, table_csv

# %% how many terms are needed
for eps in (1e-4, 1e-8, 1e-12):
    e = alpha(2, eps)
    print(f"eps={eps:.0e}: alpha_2 = {e.value:.14f}, j_max = {e.j_max}, tail <= {e.tail_bound:.1e}")

# %% alpha_2 sits clearly above one, alpha_3 below
a2 = alpha(2, 1e-10)
print(f"alpha_2 - tail = {a2.value - a2.tail_bound:.6f} > 1")

# %% the table
print(table_csv(alpha_table(2, 10, 1e-10)))
