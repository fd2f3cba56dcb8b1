"""E(B_n)/|B_n| approaches alpha_2 from below and passes 1 at n = 1.

Run: python demos/05_convergence.py [max_level]   (level 10 takes ~30 s)
"""

import sys

from treeenergy.experiments import conjecture1

max_level = int(sys.argv[1]) if len(sys.argv) > 1 else 8
res = conjecture1(max_level=max_level)
print(f"alpha_2 = {res.alpha.value:.10f}")
print(f"{'n':>3} {'|B_n|':>6} {'ratio':>10} {'gap':>10} {'gap*N/lnN':>10}")
for r in res.rows:
    print(f"{r.level:3d} {r.vertex_count:6d} {r.ratio:10.6f} {r.gap:10.6f} {r.envelope:10.5f}")
print(f"strictly increasing: {res.monotone}; first ratio above 1 at n = {res.first_above_one}")
