"""Verification experiments behind the command-line front end.

Every energy goes through :class:`EnergyEngine`, which relabels trees into
canonical form first.  Isomorphic inputs therefore hit the eigensolver with
identical matrices, which is what makes cached and uncached runs agree to
the last bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .alpha import AlphaEstimate, alpha
from .cache import EnergyCache
from .enumeration import EnumSpec, MinEnergyReport, enumerate_trees, min_energy_search
from .errors import InvariantViolation
from .spectral import (
    DEFAULT_DENSE_CAP,
    DEFAULT_POLY_CAP,
    EIG_TOL,
    ROOT_TOL,
    EnergyResult,
    Method,
    energy,
    energy_interval,
    matching_polynomial,
)
from .trees import Tree, bn_size, bn_tree, build_tstar, canonical_code, canonicalize

__all__ = [
    "EnergyEngine",
    "ConvergenceRow",
    "Conjecture1Result",
    "MinimalRow",
    "HypoCensusRow",
    "TStarScan",
    "HypoCensusResult",
    "conjecture1",
    "minimal",
    "hypo_census",
    "tstar_scan",
]

BOUNDARY = 1e-9  # |E - threshold| below this is settled exactly or reported


def _compute(args) -> EnergyResult:
    tree, method, dense_cap, poly_cap, eig_tol, root_tol = args
    return energy(tree, method, dense_cap=dense_cap, poly_cap=poly_cap,
                  eig_tol=eig_tol, root_tol=root_tol)


@dataclass
class EnergyEngine:
    """Energy evaluation with canonical relabelling, caching and a worker pool."""

    method: Method = Method.DENSE
    dense_cap: int = DEFAULT_DENSE_CAP
    poly_cap: int = DEFAULT_POLY_CAP
    eig_tol: float = EIG_TOL
    root_tol: float = ROOT_TOL
    cache: Optional[EnergyCache] = None
    workers: int = 1

    def __post_init__(self) -> None:
        self.method = Method(self.method)

    def with_method(self, method: Method) -> "EnergyEngine":
        return EnergyEngine(Method(method), self.dense_cap, self.poly_cap, self.eig_tol,
                            self.root_tol, self.cache, self.workers)

    @property
    def params(self) -> dict:
        return {"eig_tol": self.eig_tol, "root_tol": self.root_tol}

    def energy(self, tree: Tree) -> EnergyResult:
        return self.energies([tree])[0]

    def energies(self, trees: Iterable[Tree]) -> list[EnergyResult]:
        canon = [canonicalize(t) for t in trees]
        results: list[Optional[EnergyResult]] = [None] * len(canon)
        todo = []
        for i, (code, _) in enumerate(canon):
            if self.cache is not None:
                results[i] = self.cache.get(code, self.method, self.params)
            if results[i] is None:
                todo.append(i)
        jobs = [(canon[i][1], self.method, self.dense_cap, self.poly_cap, self.eig_tol, self.root_tol)
                for i in todo]
        if self.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(self.workers) as pool:
                fresh = list(pool.map(_compute, jobs, chunksize=max(1, len(jobs) // (4 * self.workers))))
        else:
            fresh = [_compute(j) for j in jobs]
        for i, res in zip(todo, fresh):
            results[i] = res
            if self.cache is not None:
                self.cache.put(canon[i][0], self.method, self.params, res)
        return results  # type: ignore[return-value]


def _strictly_below(tree: Tree, e: EnergyResult, threshold: float, root_tol: float = 1e-20) -> Optional[bool]:
    """Decide ``E(tree) < threshold``; None when E equals it to 1e-18."""
    if abs(e.value - threshold) > max(BOUNDARY, 2 * e.error_bound):
        return e.value < threshold
    if tree.n > DEFAULT_POLY_CAP:
        return None
    lo, hi = energy_interval(matching_polynomial(tree), root_tol)
    if hi < threshold:
        return True
    if lo > threshold:
        return False
    return None


# ---------------------------------------------------------------------------
# conjecture 1: E(B_n)/|B_n| -> alpha_2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceRow:
    level: int
    vertex_count: int
    energy: float
    ratio: float
    gap: float
    error_bound: float
    envelope: float  # gap * N / ln N; bounded under an O(ln N)/N correction

    def __post_init__(self) -> None:
        if self.vertex_count != bn_size(self.level) or not self.ratio > 0:
            raise InvariantViolation(f"malformed convergence row at level {self.level}")


@dataclass(frozen=True)
class Conjecture1Result:
    alpha: AlphaEstimate
    rows: tuple[ConvergenceRow, ...]
    monotone: bool
    first_above_one: Optional[int]
    iso_checked_upto: int


def conjecture1(max_level: int = 10, eps: float = 1e-10, engine: Optional[EnergyEngine] = None,
                iso_check_upto: int = 6) -> Conjecture1Result:
    """Ratios E(B_n)/(3 * 2^(n+1) - 2) for n = 0..max_level against alpha_2.

    Also asserts B_n is isomorphic to T*_{3 * 2^(n+1) - 2, 2} for
    n <= iso_check_upto.
    """
    engine = engine or EnergyEngine()
    a2 = alpha(2, eps)
    checked = min(max_level, iso_check_upto)
    for level in range(checked + 1):
        if canonical_code(bn_tree(level)) != canonical_code(build_tstar(bn_size(level), 2)):
            raise InvariantViolation(f"B_{level} is not isomorphic to T*_{{{bn_size(level)},2}}")
    trees = [bn_tree(level) for level in range(max_level + 1)]
    results = engine.energies(trees)
    rows = []
    for level, (t, res) in enumerate(zip(trees, results)):
        n = t.n
        ratio = res.value / n
        gap = abs(ratio - a2.value)
        env = gap * n / math.log(n)
        rows.append(ConvergenceRow(level, n, res.value, ratio, gap, res.error_bound, env))
    monotone = all(b.ratio > a.ratio for a, b in zip(rows, rows[1:]))
    above = next((r.level for r in rows if r.ratio > 1), None)
    return Conjecture1Result(a2, tuple(rows), monotone, above, checked)


# ---------------------------------------------------------------------------
# exhaustive minimum over T_{n,d} and E_min/n against alpha_d
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinimalRow:
    report: MinEnergyReport
    energy_per_vertex: float
    alpha_d: Optional[float]


def minimal(n_values: Sequence[int], d: int, eps: float = 1e-10,
            engine: Optional[EnergyEngine] = None) -> list[MinimalRow]:
    """Minimum-energy scan for each ``n``; energies via the CROSS engine."""
    engine = (engine or EnergyEngine()).with_method(Method.CROSS)
    a = alpha(d, eps).value if d >= 2 else None
    rows = []
    for n in n_values:
        trees = list(enumerate_trees(EnumSpec(n, d + 1)))
        energies = [r.value for r in engine.energies(trees)]
        rep = min_energy_search(n, d, trees=trees, energies=energies)
        rows.append(MinimalRow(rep, rep.min_energy / n, a))
    return rows


# ---------------------------------------------------------------------------
# hypoenergetic census
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypoCensusRow:
    n: int
    max_degree: int
    total: int
    hypo: int
    strong: int
    hypo_witnesses: tuple[str, ...]
    strong_witnesses: tuple[str, ...]
    boundary: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.strong <= self.hypo <= self.total:
            raise InvariantViolation(f"census counts out of order at n={self.n}")


@dataclass(frozen=True)
class TStarScan:
    d: int
    max_n: int
    energies: tuple[float, ...]  # energies[i] = E(T*_{i+1,d})
    first_hypo: Optional[int]
    first_strong: Optional[int]
    hypo_from: Optional[int]  # E < n for every n in [hypo_from, max_n]
    strong_from: Optional[int]
    boundary: tuple[int, ...] = ()


@dataclass(frozen=True)
class HypoCensusResult:
    rows: tuple[HypoCensusRow, ...]
    tstar: Optional[TStarScan]


def hypo_census(max_n: int, max_degree: int, engine: Optional[EnergyEngine] = None,
                tstar_d: Optional[int] = 3, tstar_max_n: int = 2000) -> HypoCensusResult:
    engine = engine or EnergyEngine()
    rows = []
    for n in range(1, max_n + 1):
        deg = max_degree if n >= 3 else max(1, min(max_degree, n - 1))
        trees = list(enumerate_trees(EnumSpec(n, deg)))
        results = engine.energies(trees)
        hypo, strong, boundary = [], [], []
        for t, res in zip(trees, results):
            below_n = _strictly_below(t, res, n)
            below_n1 = _strictly_below(t, res, n - 1)
            code = canonical_code(t)
            if below_n is None or below_n1 is None:
                boundary.append(code)
            if below_n:
                hypo.append(code)
            if below_n1:
                strong.append(code)
        rows.append(HypoCensusRow(n, max_degree, len(trees), len(hypo), len(strong),
                                  tuple(sorted(hypo)), tuple(sorted(strong)), tuple(sorted(boundary))))
    scan = tstar_scan(tstar_d, tstar_max_n, engine) if tstar_d else None
    return HypoCensusResult(tuple(rows), scan)


def tstar_scan(d: int, max_n: int, engine: Optional[EnergyEngine] = None) -> TStarScan:
    """E(T*_{n,d}) for n = 1..max_n with hypoenergetic thresholds."""
    engine = engine or EnergyEngine()
    trees = [build_tstar(n, d) for n in range(1, max_n + 1)]
    results = engine.energies(trees)
    below_n, below_n1, boundary = [], [], []
    for n, (t, res) in enumerate(zip(trees, results), start=1):
        a = _strictly_below(t, res, n)
        b = _strictly_below(t, res, n - 1)
        if a is None or b is None:
            boundary.append(n)
        below_n.append(bool(a))
        below_n1.append(bool(b))

    def first(flags: list[bool]) -> Optional[int]:
        return next((i + 1 for i, f in enumerate(flags) if f), None)

    def eventually(flags: list[bool]) -> Optional[int]:
        start = None
        for i in range(len(flags) - 1, -1, -1):
            if not flags[i]:
                break
            start = i + 1
        return start

    return TStarScan(d, max_n, tuple(r.value for r in results), first(below_n), first(below_n1),
                     eventually(below_n), eventually(below_n1), tuple(boundary))
