"""Exact p-adic helpers on rationals.

Every p-adic number that appears in this package is a rational, so the
helpers below operate on :class:`fractions.Fraction` (or ``int``) values and
interpret them inside ``Q_p``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

INF = float("inf")


def vp_int(n: int, p: int) -> int:
    """Valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: Rational, p: int):
    """p-adic valuation; ``INF`` for zero."""
    if x == 0:
        return INF
    x = Fraction(x)
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def unit_part(x: Rational, p: int) -> Fraction:
    """Return ``x / p**v(x)`` (a p-adic unit)."""
    x = Fraction(x)
    v = valuation(x, p)
    return x / Fraction(p) ** v


def is_integral(x: Rational, p: int) -> bool:
    """True when ``x`` lies in ``Z_p``."""
    return Fraction(x).denominator % p != 0


def reduce_mod(x: Rational, p: int, a: int) -> Fraction:
    """Canonical representative of ``x + p^a Z_p`` inside ``[0, p^a)``.

    The representative lies in ``Z[1/p]``; ``a`` may be negative.
    """
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    den = x.denominator
    e = 0
    while den % p == 0:
        den //= p
        e += 1
    # x = num / (p^e * den) with den prime to p
    if a + e <= 0:
        return Fraction(0)
    modulus = p ** (a + e)
    y = (x.numerator * pow(den, -1, modulus)) % modulus
    return Fraction(y, p**e)


def p_power(e: int, p: int) -> Fraction:
    return Fraction(p) ** e


def format_p_adic(x: Rational, p: int) -> str:
    """Render a ``Z[1/p]`` value as ``"a"`` or ``"a/p^e"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    e = 0
    while den % p == 0:
        den //= p
        e += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    return f"{x.numerator}/{p}^{e}"


def parse_p_adic(text: str) -> Fraction:
    """Inverse of :func:`format_p_adic`; also accepts plain ``"a/b"``."""
    text = text.strip()
    if "/" not in text:
        return Fraction(int(text))
    num, den = text.split("/", 1)
    if "^" in den:
        base, exp = den.split("^", 1)
        return Fraction(int(num), int(base) ** int(exp))
    return Fraction(int(num), int(den))


def prime_factors(n: int) -> list[int]:
    """Sorted distinct prime divisors of a positive integer."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def unit_generators(p: int) -> list[int]:
    """Integers generating a dense subgroup of ``Z_p^x``.

    For odd ``p`` a primitive root modulo ``p^2`` suffices; for ``p = 2``
    the pair ``-1, 5`` does.
    """
    if p == 2:
        return [-1, 5]
    order = p * (p - 1)
    factors = prime_factors(order)
    for g in range(2, p * p):
        if g % p == 0:
            continue
        if all(pow(g, order // q, p * p) != 1 for q in factors):
            return [g]
    raise AssertionError("no primitive root found")  # pragma: no cover
