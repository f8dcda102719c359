"""Cyclotomic polynomial and Euler-totient arithmetic over the integers.

Polynomials are coefficient lists, low degree first, with Fraction entries.
Everything here is exact; there is no floating point in this package.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

Poly = tuple  # tuple[Fraction, ...], low degree first, no trailing zeros


def totient(d: int) -> int:
    if d < 1:
        raise ValueError("totient of a non-positive integer")
    result = d
    n, p = d, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def primitive_exponents(d: int) -> tuple[int, ...]:
    """Exponents a with 0 <= a < d and gcd(a, d) = 1 (just (0,) for d = 1)."""
    if d == 1:
        return (0,)
    return tuple(a for a in range(d) if gcd(a, d) == 1)


def poly_trim(coeffs) -> Poly:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(Fraction(c) for c in cs)


def poly_deg(p: Poly) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return poly_trim(out)


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_scale(p: Poly, c) -> Poly:
    return poly_trim([a * c for a in p])


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq, lead = len(q) - 1, q[-1]
    while len(rem) - 1 >= dq and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        shift = len(rem) - 1 - dq
        factor = rem[-1] / lead
        quot[shift] = factor
        for i, b in enumerate(q):
            rem[shift + i] -= factor * b
        rem.pop()
    return poly_trim(quot), poly_trim(rem)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    a, b = p, q
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        a = poly_scale(a, 1 / a[-1])  # monic
    return a


def poly_xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended gcd: returns (g, u, v) with u*p + v*q = g, g monic."""
    r0, r1 = p, q
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        qq, rr = poly_divmod(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, poly_add(s0, poly_scale(poly_mul(qq, s1), -1))
        t0, t1 = t1, poly_add(t0, poly_scale(poly_mul(qq, t1), -1))
    if r0:
        lead = r0[-1]
        r0 = poly_scale(r0, 1 / lead)
        s0 = poly_scale(s0, 1 / lead)
        t0 = poly_scale(t0, 1 / lead)
    return r0, s0, t0


def poly_derivative(p: Poly) -> Poly:
    return poly_trim([i * p[i] for i in range(1, len(p))])


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial, via (x^d - 1) / prod of proper divisors."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [Fraction(0)] * (d + 1)
    num[0], num[d] = Fraction(-1), Fraction(1)
    p = poly_trim(num)
    for e in range(1, d):
        if d % e == 0:
            p, rem = poly_divmod(p, cyclotomic(e))
            assert not rem
    return p


def cyclotomic_candidates(max_degree: int) -> list[int]:
    """All d with totient(d) <= max_degree; totient(d) >= sqrt(d/2) bounds the search."""
    if max_degree < 1:
        return [1] if max_degree >= 0 else []
    bound = 2 * max_degree * max_degree + 1
    return [d for d in range(1, bound + 1) if totient(d) <= max_degree]
