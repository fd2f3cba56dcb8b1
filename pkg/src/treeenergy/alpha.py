"""The asymptotic energy-per-vertex constant alpha_d of T*_{n,d}.

    alpha_d = 2 sqrt(d) (d-1)^2 * sum_{j>=1} d^-j f(j),
    f(j) = cot(pi/2j) - 1 for even j,  csc(pi/2j) - 1 for odd j.

The series is truncated at the smallest ``j_max >= 3`` whose tail is provably
below ``eps/2``.  Since cot x < 1/x and csc x < 1/x + 1 on (0, pi/2],
0 <= f(j) < 2j/pi, so the tail is at most

    prefactor * (2/pi) * sum_{j > J} j d^-j,

which has the closed form ``x^(J+1) ((J+1) - J x) / (1-x)^2`` with x = 1/d.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from .errors import ParameterError

__all__ = ["AlphaEstimate", "EPS_FLOOR", "alpha", "alpha_term", "alpha_tail_bound", "alpha_table",
           "table_csv", "table_json"]

EPS_FLOOR = 1e-12
MIN_JMAX = 3


@dataclass(frozen=True)
class AlphaEstimate:
    d: int
    value: float
    j_max: int
    tail_bound: float
    requested_eps: float


def _prefactor(d: int) -> float:
    return 2.0 * math.sqrt(d) * (d - 1) ** 2


def alpha_term(d: int, j: int) -> float:
    """``d^-j f(j)``, without the prefactor."""
    x = math.pi / (2 * j)
    f = 1.0 / math.tan(x) - 1.0 if j % 2 == 0 else 1.0 / math.sin(x) - 1.0
    # csc(pi/2) = cot(pi/4) = 1 exactly; float tan(pi/4) is an ulp off
    if j <= 2:
        f = 0.0
    return f * float(d) ** (-j)


def alpha_tail_bound(d: int, j_max: int) -> float:
    """Upper bound on the prefactored tail ``sum_{j > j_max}``."""
    x = 1.0 / d
    s = x ** (j_max + 1) * ((j_max + 1) - j_max * x) / (1.0 - x) ** 2
    return _prefactor(d) * (2.0 / math.pi) * s


def _check(d: int, eps: float) -> None:
    if not isinstance(d, int) or d < 2:
        raise ParameterError(f"d must be an int >= 2, got {d!r}")
    if not eps >= EPS_FLOOR:
        raise ParameterError(f"eps={eps!r} is below the double-precision floor {EPS_FLOOR}")


def alpha(d: int, eps: float = 1e-10) -> AlphaEstimate:
    """alpha_d to within ``eps`` (tail certified below ``eps/2``)."""
    _check(d, eps)
    j_max = MIN_JMAX
    while alpha_tail_bound(d, j_max) > eps / 2:
        j_max += 1
    # sum smallest terms first
    partial = math.fsum(alpha_term(d, j) for j in range(1, j_max + 1))
    return AlphaEstimate(d, _prefactor(d) * partial, j_max, alpha_tail_bound(d, j_max), eps)


def alpha_table(d_min: int, d_max: int, eps: float = 1e-10) -> list[AlphaEstimate]:
    if not (isinstance(d_min, int) and isinstance(d_max, int) and 2 <= d_min <= d_max <= 16):
        raise ParameterError(f"need 2 <= d_min <= d_max <= 16, got ({d_min!r}, {d_max!r})")
    return [alpha(d, eps) for d in range(d_min, d_max + 1)]


_COLUMNS = ("d", "alpha", "j_max", "tail_bound")


def _row(e: AlphaEstimate) -> dict:
    return {"d": e.d, "alpha": e.value, "j_max": e.j_max, "tail_bound": e.tail_bound}


def table_csv(rows: list[AlphaEstimate]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_COLUMNS)
    for e in rows:
        w.writerow([e.d, f"{e.value:.17g}", e.j_max, f"{e.tail_bound:.17g}"])
    return buf.getvalue()


def table_json(rows: list[AlphaEstimate]) -> str:
    return json.dumps({"rows": [_row(e) for e in rows]}, indent=2)
