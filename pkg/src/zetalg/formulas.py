"""Closed-form reference zeta functions, stored as coefficient data.

These are the published values the engines are checked against; nothing
here is derived from the engines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, NotRelevant
from .padic import is_prime, prime_factors, vp_int
from .zeta import GlobalZeta, LocalZeta


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def complete_graph_local(n: int, p: int) -> LocalZeta:
    """``g = (1 - t) sum_{j<m} (p t^2)^j + (p t^2)^m`` with ``m = v_p(n)``."""
    if n < 2 or not is_prime(p):
        raise DomainError(f"need n >= 2 and p prime, got n={n}, p={p}")
    if n % p:
        raise NotRelevant(f"p={p} does not divide n={n}")
    m = vp_int(n, p)
    g = [0] * (2 * m + 1)
    for j in range(m):
        g[2 * j] += p**j
        g[2 * j + 1] -= p**j
    g[2 * m] += p**m
    return LocalZeta(p, 2, tuple(g))


def petersen_local(p: int) -> LocalZeta:
    """``g = p t^2 - t + 1`` for the Petersen graph at ``p`` in {2, 3, 5}."""
    if p not in (2, 3, 5):
        raise NotRelevant(f"p={p} is not relevant for the Petersen graph")
    return LocalZeta(p, 3, (1, -1, p))


def square_local() -> LocalZeta:
    """Published numerator for the square at ``p = 2``."""
    return LocalZeta(2, 3, (1, -2, 6, -3, 4, 4))


def gq21_local() -> LocalZeta:
    """Published numerator for the generalized quadrangle GQ(2,1) at ``p = 3``."""
    return LocalZeta(3, 3, (1, -2, 4, 3, 12, -18, 27))


def crown_global(n: int) -> GlobalZeta:
    """Crown graph on ``2n`` vertices: squares of complete-graph factors, rank 4."""
    if n <= 1 or n % 2 == 0:
        raise DomainError(f"crown formula needs odd n > 1, got {n}")
    locals_ = {}
    k2 = complete_graph_local(2, 2).numerator
    locals_[2] = LocalZeta(2, 4, tuple(_poly_mul(k2, k2)))
    for p in prime_factors(n):
        g = complete_graph_local(n, p).numerator
        locals_[p] = LocalZeta(p, 4, tuple(_poly_mul(g, g)))
    return GlobalZeta(4, locals_)


@dataclass(frozen=True)
class ReferenceFormula:
    name: str
    domain: str
    producer: Callable


REFERENCES = (
    ReferenceFormula("complete_graph", "n >= 2, p | n", complete_graph_local),
    ReferenceFormula("petersen", "p in {2, 3, 5}", petersen_local),
    ReferenceFormula("square", "p = 2", square_local),
    ReferenceFormula("gq21", "p = 3", gq21_local),
    ReferenceFormula("crown", "n odd, n > 1", crown_global),
)


def reference_locals(name: str) -> dict:
    """Published local factors for a built-in name, keyed by prime."""
    key = name.strip().lower()
    if key.startswith("kn:"):
        n = int(key[3:])
        return {p: complete_graph_local(n, p) for p in prime_factors(n)}
    if key.startswith("crown:"):
        return dict(crown_global(int(key[6:])).locals)
    if key == "petersen":
        return {p: petersen_local(p) for p in (2, 3, 5)}
    if key == "square":
        return {2: square_local()}
    if key == "gq21":
        return {3: gq21_local()}
    raise DomainError(f"no reference formula for {name!r}")


__all__ = [
    "reference_locals",
    "complete_graph_local",
    "petersen_local",
    "square_local",
    "gq21_local",
    "crown_global",
    "ReferenceFormula",
    "REFERENCES",
]
