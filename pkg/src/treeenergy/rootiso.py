"""Exact real-root isolation for integer polynomials.

Polynomials are lists of coefficients in ascending order of degree.  All
arithmetic is on Python ints and :class:`fractions.Fraction`, so root counts
are exact; only the final refinement width is a tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from .errors import InvariantViolation

IntPoly = list[int]
RatPoly = list[Fraction]


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(p) - 1


def derivative(p: Sequence) -> list:
    return [i * p[i] for i in range(1, len(p))]


def content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def primitive(p: Sequence[int]) -> IntPoly:
    p = trim(p)
    g = content(p)
    if g == 0:
        return []
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def prem(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    r = trim(a)
    b = trim(b)
    db = degree(b)
    lb = b[-1]
    delta = degree(r) - db + 1
    while r and degree(r) >= db:
        shift = degree(r) - db
        lr = r[-1]
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        r = trim(r)
        delta -= 1
    if delta > 0:
        r = [c * lb**delta for c in r]
    return r


def gcd_poly(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = primitive(a), primitive(b)
    while b:
        a, b = b, primitive(prem(a, b))
    return a


def to_integer(p: Sequence[Fraction]) -> IntPoly:
    p = trim(p)
    lcm = 1
    for c in p:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    return primitive([int(c * lcm) for c in p])


def _monic(p: Sequence[int]) -> RatPoly:
    lc = p[-1]
    return [Fraction(c, lc) for c in p]


def divide_exact(a: Sequence[Fraction], b: Sequence[Fraction]) -> RatPoly:
    a = list(a)
    b = trim(b)
    if degree(a) < degree(b):
        q: RatPoly = []
    else:
        q = [Fraction(0)] * (degree(a) - degree(b) + 1)
    lb = b[-1]
    for shift in range(len(q) - 1, -1, -1):
        coef = a[shift + degree(b)] / lb
        q[shift] = coef
        if coef:
            for i, c in enumerate(b):
                a[i + shift] -= coef * c
    if any(trim(a)):
        raise InvariantViolation("polynomial division left a remainder")
    return q


def _sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> RatPoly:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return trim(out)


def squarefree_decomposition(p: Sequence[int]) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: ``p = c * prod(f_i ** i)`` with squarefree, coprime f_i.

    Returns the non-constant primitive factors with their multiplicities.
    """
    p = primitive(p)
    if degree(p) < 1:
        return []
    f = _monic(p)
    fp = derivative(f)
    g = _monic(gcd_poly(to_integer(f), to_integer(fp)))
    b = divide_exact(f, g)
    c = divide_exact(fp, g)
    dd = _sub(c, derivative(b))
    out = []
    i = 1
    while degree(b) > 0:
        a = _monic(gcd_poly(to_integer(b), to_integer(dd))) if dd else list(b)
        b = divide_exact(b, a)
        c = divide_exact(dd, a) if dd else []
        dd = _sub(c, derivative(b))
        if degree(a) > 0:
            out.append((to_integer(a), i))
        i += 1
    return out


def sturm_chain(p: Sequence[int]) -> list[IntPoly]:
    """Sturm sequence of a squarefree polynomial, scaled by positive constants."""
    chain = [primitive(p)]
    d = primitive(derivative(chain[0]))
    if not d:
        return chain
    chain.append(d)
    while True:
        a, b = chain[-2], chain[-1]
        r = prem(a, b)
        if not r:
            break
        # prem carries lc(b)^(delta+1); restore the sign of -rem(a, b)
        delta = degree(a) - degree(b)
        if b[-1] < 0 and (delta + 1) % 2:
            r = [-c for c in r]
        r = [-c for c in r]
        g = content(r)
        chain.append([c // g for c in r])
        if degree(chain[-1]) == 0:
            break
    if degree(chain[-1]) != 0:
        raise InvariantViolation("Sturm chain ended in a non-constant gcd; input not squarefree")
    return chain


def sign_at(p: Sequence[int], x: Fraction) -> int:
    """Exact sign of p(x) via homogenised Horner in integers."""
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for c in reversed(p):
        acc = acc * num + c * dpow
        dpow *= den
    # acc = den**deg * p(x), and den > 0
    return (acc > 0) - (acc < 0)


def variations(chain: Sequence[Sequence[int]], x: Fraction) -> int:
    count = 0
    last = 0
    for p in chain:
        s = sign_at(p, x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def isolate(chain: Sequence[Sequence[int]], lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b], each holding exactly one root in (lo, hi].

    ``lo`` must not be a root.  Split points avoid roots, so every returned
    left endpoint is a non-root.
    """
    p = chain[0]
    out = []
    stack = [(lo, hi, variations(chain, lo), variations(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        k = va - vb
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        j = 3
        while sign_at(p, mid) == 0:
            mid = a + (b - a) * Fraction(j - 1, 2 * j - 1)
            j += 1
        vm = variations(chain, mid)
        stack.append((mid, b, vm, vb))
        stack.append((a, mid, va, vm))
    out.sort()
    return out


def refine(
    p: Sequence[int],
    a: Fraction,
    b: Fraction,
    done: Callable[[Fraction, Fraction], bool],
) -> tuple[Fraction, Fraction]:
    """Bisect (a, b] around its single simple root of ``p`` until ``done(a, b)``."""
    sb = sign_at(p, b)
    if sb == 0:
        return b, b
    while not done(a, b):
        mid = (a + b) / 2
        sm = sign_at(p, mid)
        if sm == 0:
            return mid, mid
        if sm == sb:
            b = mid
        else:
            a = mid
    return a, b
