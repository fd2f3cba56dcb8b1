"""Generation of bounded-degree free trees and the exhaustive
minimum-energy scan.

Every free tree is generated exactly once from its centroid: either a single
centroid whose branches all have fewer than n/2 vertices, or (n even) a
central edge joining two rooted halves of n/2 vertices each.  Rooted trees
are nested tuples of children kept in nonincreasing canonical order, and the
degree bound is enforced while the child multisets are chosen.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional

from .errors import CapExceededError, ParameterError
from .spectral import (
    DEFAULT_POLY_CAP,
    EnergyResult,
    Method,
    energy,
    energy_interval,
    matching_polynomial,
)
from .trees import Tree, build_tstar, canonical_code, code_from_adjacency

__all__ = [
    "ENUM_CAP",
    "PRUFER_CAP",
    "TIE_GAP",
    "EnumSpec",
    "MinEnergyReport",
    "enumerate_trees",
    "count_trees",
    "prufer_decode",
    "prufer_oracle",
    "min_energy_search",
    "level_sequence",
]

ENUM_CAP = 20
PRUFER_CAP = 9
TIE_GAP = 1e-7
TIE_TOL = 1e-20

Rooted = tuple  # nested tuple of child subtrees


@dataclass(frozen=True)
class EnumSpec:
    """Trees on ``n`` vertices with maximum degree at most ``max_degree``."""

    n: int
    max_degree: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"n must be an int >= 1, got {self.n!r}")
        if not isinstance(self.max_degree, int) or self.max_degree < 1:
            raise ParameterError(f"max_degree must be an int >= 1, got {self.max_degree!r}")
        if self.n >= 3 and self.max_degree < 2:
            raise ParameterError(f"no tree on {self.n} vertices has maximum degree <= 1")


# ---------------------------------------------------------------------------
# rooted-tree pools
# ---------------------------------------------------------------------------


def _size(t: Rooted) -> int:
    return 1 + sum(_size(c) for c in t)


def _key(t: Rooted) -> tuple:
    return (_size(t), t)


@lru_cache(maxsize=None)
def _pool(max_size: int, inner_cap: int) -> tuple[tuple[Rooted, ...], tuple[int, ...]]:
    """All rooted trees up to ``max_size`` vertices whose every vertex has at
    most ``inner_cap`` children, sorted by decreasing (size, tree).

    Returns the trees and their sizes (for bisecting on size).
    """
    trees: list[Rooted] = []
    for s in range(1, max_size + 1):
        trees.extend(_rooted(s, inner_cap, inner_cap, s - 1))
    trees.sort(key=_key, reverse=True)
    return tuple(trees), tuple(_size(t) for t in trees)


@lru_cache(maxsize=None)
def _rooted(size: int, root_cap: int, inner_cap: int, branch_max: int) -> tuple[Rooted, ...]:
    """Rooted trees with ``size`` vertices: root has <= root_cap children,
    others <= inner_cap, and each root branch has <= branch_max vertices."""
    if size == 1:
        return ((),)
    if root_cap == 0:
        return ()
    branch_max = min(branch_max, size - 1)
    pool, sizes = _pool(branch_max, inner_cap)
    neg = [-s for s in sizes]  # ascending, for bisect
    out = []

    def pick(start: int, remaining: int, slots: int, chosen: list) -> None:
        if remaining == 0:
            out.append(tuple(chosen))
            return
        if slots == 0:
            return
        # first index whose size <= remaining
        i = max(start, bisect.bisect_left(neg, -remaining))
        for j in range(i, len(pool)):
            s = sizes[j]
            if s * slots < remaining:
                break  # later entries are no larger
            chosen.append(pool[j])
            pick(j, remaining - s, slots - 1, chosen)
            chosen.pop()

    pick(0, size - 1, root_cap, [])
    return tuple(out)


def _to_tree(roots: list[Rooted]) -> Tree:
    """Preorder-labelled tree; consecutive entries of ``roots`` are joined root to root."""
    edges = []
    n = 0
    prev_root: Optional[int] = None
    for top in roots:
        stack: list[tuple[Optional[int], Rooted]] = [(prev_root, top)]
        prev_root = n
        while stack:
            parent, t = stack.pop()
            v = n
            n += 1
            if parent is not None:
                edges.append((parent, v))
            for child in reversed(t):
                stack.append((v, child))
    return Tree(n, tuple(edges))


def level_sequence(t: Rooted) -> tuple[int, ...]:
    """Depths in preorder, the classical level-sequence form of a rooted tree."""
    out = []
    stack = [(t, 0)]
    while stack:
        node, depth = stack.pop()
        out.append(depth)
        for child in reversed(node):
            stack.append((child, depth + 1))
    return tuple(out)


def _free_rooted(spec: EnumSpec) -> Iterator[list[Rooted]]:
    n, cap = spec.n, spec.max_degree
    if n == 1:
        yield [()]
        return
    inner = cap - 1
    # single centroid: all branches below n/2
    yield from ([t] for t in _rooted(n, cap, inner, (n - 1) // 2))
    if n % 2 == 0:
        half = _rooted(n // 2, inner, inner, n // 2 - 1)
        # halves ordered descending already; unordered pairs with repetition
        for i, a in enumerate(half):
            for b in half[i:]:
                yield [a, b]


def enumerate_trees(spec: EnumSpec) -> Iterator[Tree]:
    """One tree per isomorphism class, n vertices, max degree <= spec.max_degree."""
    if spec.n > ENUM_CAP:
        raise CapExceededError(f"enumeration is capped at n <= {ENUM_CAP}, got n={spec.n}")
    for roots in _free_rooted(spec):
        yield _to_tree(roots)


def count_trees(spec: EnumSpec) -> int:
    if spec.n > ENUM_CAP:
        raise CapExceededError(f"enumeration is capped at n <= {ENUM_CAP}, got n={spec.n}")
    return sum(1 for _ in _free_rooted(spec))


# ---------------------------------------------------------------------------
# Pruefer oracle
# ---------------------------------------------------------------------------


def _prufer_adjacency(seq: tuple[int, ...], n: int) -> list[list[int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    adj: list[list[int]] = [[] for _ in range(n)]
    leaf = ptr = degree.index(1)
    for x in seq:
        adj[leaf].append(x)
        adj[x].append(leaf)
        degree[x] -= 1
        if x < ptr and degree[x] == 1:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    adj[leaf].append(n - 1)
    adj[n - 1].append(leaf)
    return adj


def prufer_decode(seq: tuple[int, ...], n: int) -> Tree:
    """Labeled tree on ``n`` vertices with Pruefer sequence ``seq`` (length n-2)."""
    if n == 1:
        return Tree(1)
    if len(seq) != n - 2 or any(not 0 <= x < n for x in seq):
        raise ParameterError(f"not a Pruefer sequence for n={n}: {seq!r}")
    adj = _prufer_adjacency(seq, n)
    return Tree(n, tuple((u, v) for u in range(n) for v in adj[u] if u < v))


def prufer_oracle(n: int) -> set[str]:
    """Canonical codes of all free trees on ``n`` vertices, from every labeled tree."""
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"n must be an int >= 1, got {n!r}")
    if n > PRUFER_CAP:
        raise CapExceededError(f"Pruefer oracle is capped at n <= {PRUFER_CAP}, got n={n}")
    if n <= 2:
        return {canonical_code(Tree(n, ((0, 1),) if n == 2 else ()))}
    # decoded trees are valid by construction, so skip Tree validation
    return {code_from_adjacency(_prufer_adjacency(seq, n))
            for seq in itertools.product(range(n), repeat=n - 2)}


# ---------------------------------------------------------------------------
# minimum-energy scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinEnergyReport:
    """Outcome of scanning all trees in T_{n,d} (max degree <= d+1).

    ``resolution`` is "unique", "exact-tie" (identical characteristic
    polynomials), or "indistinguishable" (enclosures overlap at TIE_TOL).
    ``tstar_match`` is None when T*_{n,d} is undefined (d < 2).
    """

    n: int
    d: int
    count: int
    min_energy: float
    argmin_code: str
    argmin_unique: bool
    tstar_match: Optional[bool]
    runner_up_gap: float
    resolution: str
    tied_codes: tuple[str, ...] = ()


EnergyFn = Callable[[Tree], EnergyResult]


def _default_energy(tree: Tree) -> EnergyResult:
    return energy(tree, Method.CROSS)


def min_energy_search(n: int, d: int, energy_fn: Optional[EnergyFn] = None,
                      trees: Optional[list[Tree]] = None,
                      energies: Optional[list[float]] = None) -> MinEnergyReport:
    """Scan every tree in T_{n,d} and report the energy minimiser.

    Candidates within TIE_GAP of the minimum are re-resolved by exact
    polynomial enclosures at TIE_TOL before a winner is declared.
    ``trees``/``energies`` may be supplied by a caller that already has them
    (e.g. from a cache or worker pool).
    """
    if not isinstance(d, int) or d < 1:
        raise ParameterError(f"d must be an int >= 1, got {d!r}")
    spec = EnumSpec(n, d + 1)
    if trees is None:
        trees = list(enumerate_trees(spec))
    if energies is None:
        fn = energy_fn or _default_energy
        energies = [fn(t).value for t in trees]
    order = sorted(range(len(trees)), key=lambda i: (energies[i], canonical_code(trees[i])))
    best = order[0]
    e_min = energies[best]
    gap = energies[order[1]] - e_min if len(order) > 1 else math.inf

    resolution = "unique"
    tied: tuple[str, ...] = ()
    near = [i for i in order if energies[i] - e_min < TIE_GAP]
    if len(near) > 1:
        best, resolution, tied, gap = _resolve_near_tie(trees, near, energies)
        e_min = energies[best]
    winner = trees[best]
    code = canonical_code(winner)
    match = None
    if d >= 2:
        match = canonical_code(build_tstar(n, d)) == code
    return MinEnergyReport(
        n=n, d=d, count=len(trees), min_energy=e_min, argmin_code=code,
        argmin_unique=resolution == "unique", tstar_match=match,
        runner_up_gap=gap, resolution=resolution, tied_codes=tied,
    )


def _resolve_near_tie(trees: list[Tree], near: list[int], energies: list[float]):
    if trees[near[0]].n > DEFAULT_POLY_CAP:
        raise CapExceededError("near-tie needs the exact engine but the tree exceeds its cap")
    polys = {i: matching_polynomial(trees[i]) for i in near}
    boxes = {i: energy_interval(polys[i], TIE_TOL) for i in near}
    best = min(near, key=lambda i: (boxes[i][0], canonical_code(trees[i])))
    lo_b, hi_b = boxes[best]
    rivals = [i for i in near if i != best]
    exact = [i for i in rivals if polys[i].m == polys[best].m]
    overlapping = [i for i in rivals if boxes[i][0] <= hi_b and i not in exact]
    codes = tuple(sorted(canonical_code(trees[i]) for i in [best] + exact + overlapping))
    if exact:
        return best, "exact-tie", codes, 0.0
    if overlapping:
        return best, "indistinguishable", codes, 0.0
    gap = min(float(boxes[i][0] - hi_b) for i in rivals)
    others = [energies[i] for i in range(len(trees)) if i not in near]
    if others:
        gap = min(gap, min(others) - energies[best])
    return best, "unique", (), gap
