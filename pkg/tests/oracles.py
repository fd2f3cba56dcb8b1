"""Independent brute-force oracles used to derive expected values.

Nothing here imports the code paths it checks: matchings are counted by
enumerating edge subsets, expansions by trying every digit sequence,
isomorphism by searching vertex bijections, and alpha_d by summing the
series in 50-digit arithmetic.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter

import mpmath


def brute_matchings(n, edges):
    """m[k] = number of k-edge subsets with pairwise disjoint endpoints."""
    m = [0] * (n // 2 + 1)
    edges = list(edges)
    for mask in range(1 << len(edges)):
        used = set()
        k = 0
        ok = True
        for i, (u, v) in enumerate(edges):
            if mask >> i & 1:
                if u in used or v in used:
                    ok = False
                    break
                used.add(u)
                used.add(v)
                k += 1
        if ok:
            m[k] += 1
    return m


def expansion_search(n, d):
    """Every digit sequence a_0..a_l with the admissible digit sets summing to (d-1)n+1."""
    target = (d - 1) * n + 1
    inner = [(d - 1) * (1 + (d + 1) * r) for r in range(d)]
    top = {d: "all_c"}
    for q in range(2, d + 1):
        for r in range(0, d - q + 1):
            top[d + (d - 1) * q + (d * d - 1) * r] = "mixed"
    found = []
    l = 0
    while d**l <= target:
        for lower in itertools.product(inner, repeat=l):
            rest = target - sum(a * d**k for k, a in enumerate(lower))
            if rest <= 0 or rest % d**l:
                continue
            lead = rest // d**l
            if lead in top or (lead == 1 and l >= 1):
                found.append(tuple(lower) + (lead,))
        l += 1
    return found


def _adj(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def brute_isomorphic(n1, e1, n2, e2):
    """Backtracking search for an adjacency-preserving bijection."""
    if n1 != n2 or len(e1) != len(e2):
        return False
    n = n1
    a, b = _adj(n, e1), _adj(n, e2)
    if sorted(map(len, a)) != sorted(map(len, b)):
        return False
    image = [-1] * n
    taken = [False] * n

    def extend(v):
        if v == n:
            return True
        for w in range(n):
            if taken[w] or len(b[w]) != len(a[v]):
                continue
            if all((image[u] in b[w]) == (u in a[v]) for u in range(v)):
                image[v] = w
                taken[w] = True
                if extend(v + 1):
                    return True
                taken[w] = False
        image[v] = -1
        return False

    return extend(0)


def random_relabel(n, edges, seed):
    perm = list(range(n))
    random.Random(seed).shuffle(perm)
    return [(perm[u], perm[v]) for u, v in edges]


def alpha_oracle(d, jmax=200, dps=50):
    with mpmath.workdps(dps):
        s = mpmath.mpf(0)
        for j in range(1, jmax + 1):
            x = mpmath.pi / (2 * j)
            f = (mpmath.cot(x) if j % 2 == 0 else mpmath.csc(x)) - 1
            s += f * mpmath.mpf(d) ** (-j)
        return 2 * mpmath.sqrt(d) * (d - 1) ** 2 * s


def degree_multiset(n, edges):
    c = Counter()
    for u, v in edges:
        c[u] += 1
        c[v] += 1
    return sorted(c[v] for v in range(n))



def energy_oracle(n, edges, dps=30):
    """Energy from a multiprecision symmetric eigensolve (mpmath Jacobi)."""
    with mpmath.workdps(dps):
        a = mpmath.zeros(n, n)
        for u, v in edges:
            a[u, v] = a[v, u] = 1
        if n == 1:
            return mpmath.mpf(0)
        evals = mpmath.eigsy(a, eigvals_only=True)
        return mpmath.fsum(abs(x) for x in evals)
