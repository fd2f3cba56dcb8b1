"""Spectra and energy of trees by two independent engines.

The dense engine diagonalises the 0/1 adjacency matrix in double precision
(LAPACK ``syevd`` through :func:`numpy.linalg.eigvalsh`).  The polynomial
engine counts matchings exactly, forms the characteristic polynomial
``sum_k (-1)^k m_k x^(n-2k)`` and isolates its roots with Sturm sequences in
rational arithmetic.  ``Method.CROSS`` runs both and insists they agree.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath
import numpy as np

from . import rootiso
from .errors import CapExceededError, InvariantViolation, ParameterError
from .trees import Tree

__all__ = [
    "Method",
    "MatchingPolynomial",
    "Spectrum",
    "EnergyResult",
    "ENGINE_VERSION",
    "DEFAULT_DENSE_CAP",
    "DEFAULT_POLY_CAP",
    "EIG_TOL",
    "ROOT_TOL",
    "ZERO_CLAMP",
    "matching_polynomial",
    "adjacency_matrix",
    "spectrum_dense",
    "spectrum_from_polynomial",
    "energy",
    "energy_interval",
    "spectrum_csv",
]

ENGINE_VERSION = "treeenergy-engine-1"
DEFAULT_DENSE_CAP = 8192
DEFAULT_POLY_CAP = 256
EIG_TOL = 1e-10  # relative eigenvalue accuracy claimed for the dense path
ROOT_TOL = 1e-12  # absolute eigenvalue width for the polynomial path
ZERO_CLAMP = 1e-10


class Method(str, enum.Enum):
    DENSE = "dense"
    POLYNOMIAL = "polynomial"
    CROSS = "cross"


@dataclass(frozen=True)
class MatchingPolynomial:
    """Matching numbers ``m[k]`` = number of k-edge matchings, k = 0..n//2."""

    n: int
    m: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.m) != self.n // 2 + 1:
            raise ParameterError(f"expected {self.n // 2 + 1} matching numbers, got {len(self.m)}")
        if self.m[0] != 1 or any(c < 0 for c in self.m):
            raise ParameterError("matching numbers must start at 1 and be non-negative")

    @property
    def matching_number(self) -> int:
        """Size of a maximum matching."""
        return max(k for k, c in enumerate(self.m) if c)

    def characteristic(self) -> list[int]:
        """Characteristic polynomial coefficients, ascending powers of x."""
        coeffs = [0] * (self.n + 1)
        for k, c in enumerate(self.m):
            coeffs[self.n - 2 * k] = (-1) ** k * c
        return coeffs

    def nonzero_factor(self) -> list[int]:
        """``h(y)`` with char poly = x^(n-2t) h(x^2), t the matching number.

        ``h(0) != 0``, so its roots are exactly the squares of the nonzero
        eigenvalues.
        """
        t = self.matching_number
        # ascending in y: coefficient of y^(t-k) is (-1)^k m_k
        return [(-1) ** k * self.m[k] for k in range(t, -1, -1)]


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.sort(np.asarray(self.values, dtype=float))
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class EnergyResult:
    value: float
    method: Method
    error_bound: float


def matching_polynomial(tree: Tree) -> MatchingPolynomial:
    """Exact matching numbers via a rooted DP over the tree.

    For each vertex keep two count vectors over matching size: matchings of
    its subtree leaving it free, and matchings covering it.
    """
    n = tree.n
    if n < 1:
        raise ParameterError("matching_polynomial needs at least one vertex")
    adj = tree.adjacency
    parent = [-1] * n
    seen = [False] * n
    seen[0] = True
    order = [0]
    for v in order:
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                order.append(w)
    free: list[list[int]] = [[] for _ in range(n)]
    used: list[list[int]] = [[] for _ in range(n)]
    for v in reversed(order):
        f, u = [1], []
        for w in adj[v]:
            if w == parent[v]:
                continue
            fw, uw = free[w], used[w]
            total = _add(fw, uw)
            # v matched to w: w must be free, shifts matching size by one
            u = _add(_conv(u, total), [0] + _conv(f, fw))
            f = _conv(f, total)
            free[w] = used[w] = []
        free[v], used[v] = f, u
    m = _add(free[0], used[0])
    m += [0] * (n // 2 + 1 - len(m))
    return MatchingPolynomial(n, tuple(m[: n // 2 + 1]))


def _add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _conv(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def adjacency_matrix(tree: Tree) -> np.ndarray:
    a = np.zeros((tree.n, tree.n))
    if tree.edges:
        e = np.asarray(tree.edges)
        a[e[:, 0], e[:, 1]] = 1.0
        a[e[:, 1], e[:, 0]] = 1.0
    return a


def spectrum_dense(tree: Tree, cap: int = DEFAULT_DENSE_CAP) -> Spectrum:
    """All adjacency eigenvalues, ascending, from a symmetric dense solve."""
    if tree.n < 1:
        raise ParameterError("spectrum of the empty tree is undefined")
    if tree.n > cap:
        raise CapExceededError(
            f"tree has {tree.n} vertices, above the dense cap {cap}; raise it with --dense-cap"
        )
    return Spectrum(np.linalg.eigvalsh(adjacency_matrix(tree)))


# ---------------------------------------------------------------------------
# polynomial engine
# ---------------------------------------------------------------------------


def _root_bound(h: list[int]) -> Fraction:
    """Fujiwara-style upper bound on the positive roots of ``h`` (monic up to sign)."""
    lc = abs(h[-1])
    deg = len(h) - 1
    bound = 0.0
    for i in range(deg):
        c = abs(h[i])
        if c:
            k = deg - i
            log_ratio = math.log(c) - math.log(lc) - (math.log(2) if k == deg else 0.0)
            bound = max(bound, math.exp(log_ratio / k))
    return Fraction(math.ceil(2 * bound * (1 + 1e-9)) + 1)


def _square_root_intervals(p: MatchingPolynomial, tol: float) -> list[tuple[Fraction, Fraction, int]]:
    """Rational brackets [lo, hi] for each squared nonzero eigenvalue, with multiplicity.

    Each bracket satisfies sqrt(hi) - sqrt(lo) <= tol.
    """
    h = p.nonzero_factor()
    if len(h) == 1:
        return []
    tol_q = Fraction(tol)
    tol2 = tol_q * tol_q

    def narrow(a: Fraction, b: Fraction) -> bool:
        # sqrt(b) - sqrt(a) = (b - a)/(sqrt(b) + sqrt(a)) <= (b - a)/sqrt(a + b)
        return (b - a) ** 2 <= tol2 * (a + b)

    upper = _root_bound(h)
    out = []
    for factor, mult in rootiso.squarefree_decomposition(h):
        chain = rootiso.sturm_chain(factor)
        # h(0) != 0, so every root is positive and 0 is never a root
        for a, b in rootiso.isolate(chain, Fraction(0), upper):
            lo, hi = rootiso.refine(factor, a, b, narrow)
            out.append((lo, hi, mult))
    out.sort()
    return out


def _poly_cap_check(p: MatchingPolynomial, cap: int) -> None:
    if p.n > cap:
        raise CapExceededError(
            f"tree has {p.n} vertices, above the exact-polynomial cap {cap}"
        )


def spectrum_from_polynomial(
    p: MatchingPolynomial, tol: float = ROOT_TOL, cap: int = DEFAULT_POLY_CAP
) -> Spectrum:
    """Spectrum from exact root isolation of the characteristic polynomial."""
    _poly_cap_check(p, cap)
    brackets = _square_root_intervals(p, tol)
    positive = []
    for lo, hi, mult in brackets:
        x = math.sqrt(float((lo + hi) / 2))
        positive.extend([x] * mult)
    zeros = p.n - 2 * len(positive)
    if zeros < 0 or zeros != p.n - 2 * p.matching_number:
        raise InvariantViolation(
            f"root count mismatch: {len(positive)} positive roots for n={p.n}, "
            f"matching number {p.matching_number}"
        )
    pos = np.array(positive)
    return Spectrum(np.concatenate([-pos, np.zeros(zeros), pos]))


def energy_interval(
    p: MatchingPolynomial, tol: float = 1e-20, cap: int = DEFAULT_POLY_CAP, dps: int = 40
) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Certified enclosure of the energy from exact root brackets.

    Used to break near-ties; ``dps`` decimal digits keep rounding far below
    ``tol``.
    """
    _poly_cap_check(p, cap)
    brackets = _square_root_intervals(p, tol)
    with mpmath.workdps(dps):
        lo = mpmath.mpf(0)
        hi = mpmath.mpf(0)
        for a, b, mult in brackets:
            lo += 2 * mult * mpmath.sqrt(mpmath.mpf(a.numerator) / a.denominator)
            hi += 2 * mult * mpmath.sqrt(mpmath.mpf(b.numerator) / b.denominator)
        pad = mpmath.mpf(10) ** (-(dps - 5)) * (1 + hi)
        return lo - pad, hi + pad


def _energy_from_spectrum(values: np.ndarray) -> float:
    vals = np.where(np.abs(values) < ZERO_CLAMP, 0.0, values)
    # symmetric spectrum: 2 * (sum of positive part) avoids cancellation
    return float(2.0 * np.sum(vals[vals > 0]))


def energy(
    tree: Tree,
    method: Union[Method, str] = Method.DENSE,
    *,
    dense_cap: int = DEFAULT_DENSE_CAP,
    poly_cap: int = DEFAULT_POLY_CAP,
    eig_tol: float = EIG_TOL,
    root_tol: float = ROOT_TOL,
    matching: Optional[MatchingPolynomial] = None,
) -> EnergyResult:
    """Energy E = sum |lambda_i| of ``tree``.

    Error bounds: dense ``n * eig_tol * max(1, |lambda|_max)``; polynomial
    ``n * root_tol`` plus float rounding.  CROSS reports the polynomial value
    and the sum of both bounds, raising InvariantViolation on disagreement.
    """
    method = Method(method)
    if tree.n < 1:
        raise ParameterError("energy of the empty tree is undefined")
    if method is Method.DENSE:
        spec = spectrum_dense(tree, dense_cap)
        scale = max(1.0, float(np.max(np.abs(spec.values))))
        return EnergyResult(_energy_from_spectrum(spec.values), method, tree.n * eig_tol * scale)
    if method is Method.POLYNOMIAL:
        mp = matching if matching is not None else matching_polynomial(tree)
        spec = spectrum_from_polynomial(mp, root_tol, poly_cap)
        value = _energy_from_spectrum(spec.values)
        return EnergyResult(value, method, tree.n * root_tol + 4 * tree.n * np.finfo(float).eps * max(value, 1.0))
    dense = energy(tree, Method.DENSE, dense_cap=dense_cap, eig_tol=eig_tol)
    poly = energy(tree, Method.POLYNOMIAL, poly_cap=poly_cap, root_tol=root_tol, matching=matching)
    bound = dense.error_bound + poly.error_bound
    if abs(dense.value - poly.value) > bound:
        raise InvariantViolation(
            f"energy engines disagree on a {tree.n}-vertex tree: dense {dense.value!r}, "
            f"polynomial {poly.value!r}, allowed {bound:.3g}"
        )
    return EnergyResult(poly.value, Method.CROSS, bound)


def spectrum_csv(spec: Spectrum) -> str:
    """One eigenvalue per line, 17 significant digits."""
    return "".join(f"{v:.17g}\n" for v in spec.values)
