"""Building the tree families: C_h, B_n and T*_{n,d}.

Run: python demos/01_constructions.py
"""

from treeenergy.treeio import to_graph6
from treeenergy.trees import bn_size, bn_tree, build_tstar, canonical_code, complete_dary, digital_expansion

# %% complete d-ary trees
# C_1 is a single vertex; C_h is a root carrying d copies of C_{h-1}.
for d in (2, 3):
    sizes = [complete_dary(d, h).n for h in range(6)]
    print(f"d={d}: |C_0..C_5| = {sizes}")

# %% the apex family
# B_n hangs three complete binary trees off one apex.
for level in range(4):
    t = bn_tree(level)
    print(f"B_{level}: {t.n} vertices, max degree {t.max_degree}, graph6 {to_graph6(t) if t.n < 20 else '...'}")

# %% digital expansions
# (d-1)n + 1 is written in base d with restricted digits; the digits decide
# which branches hang off each spine vertex.
for n, d in [(4, 2), (10, 2), (11, 2), (20, 3), (100, 4)]:
    e = digital_expansion(n, d)
    print(f"T*_{{{n},{d}}}: a={e.a} r={e.r} terminal={e.terminal.value} q_l={e.q_l} r_l={e.r_l}")

# %% B_n is one of the minimal trees
for level in range(5):
    same = canonical_code(bn_tree(level)) == canonical_code(build_tstar(bn_size(level), 2))
    print(f"B_{level} == T*_{{{bn_size(level)},2}}: {same}")
