"""Full Z_p-lattices in a split commutative algebra, in idempotent coordinates.

Coordinates are the primitive idempotents ``e_0..e_{r-1}``; multiplication
is componentwise and the maximal order is ``Z_p^r``.  A :class:`PLattice`
always stores its canonical p-local Hermite normal form, so ``==`` is
lattice equality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import PrecisionUnstable
from .linalg import inverse, p_hnf, solve_affine
from .padic import (
    Rational,
    format_p_adic,
    p_power,
    parse_p_adic,
    reduce_mod,
    unit_generators,
    valuation,
)


@dataclass(frozen=True)
class PLattice:
    p: int
    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    @cached_property
    def exponents(self) -> tuple[int, ...]:
        """Pivot exponents ``a_i`` (pivot of row ``i`` is ``p^{a_i}``)."""
        return tuple(int(valuation(self.rows[i][i], self.p)) for i in range(self.rank))

    @cached_property
    def inverse_basis(self):
        return inverse(self.rows)

    def contains(self, v: Sequence[Rational]) -> bool:
        p = self.p
        w = [Fraction(x) for x in v]
        for i, row in enumerate(self.rows):
            if w[i]:
                c = w[i] / row[i]
                if c.denominator % p == 0:
                    return False
                for j in range(i, self.rank):
                    w[j] -= c * row[j]
        return True

    def contains_lattice(self, other: "PLattice") -> bool:
        return all(self.contains(row) for row in other.rows)

    def scaled(self, c: Rational) -> "PLattice":
        return hnf_reduce([[c * x for x in row] for row in self.rows], self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "rows": [[format_p_adic(x, self.p) for x in row] for row in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "PLattice":
        p = int(data["p"])
        return hnf_reduce([[parse_p_adic(str(x)) for x in row] for row in data["rows"]], p)

    def __str__(self) -> str:
        return "<" + ", ".join("(" + ", ".join(format_p_adic(x, self.p) for x in row) + ")" for row in self.rows) + ">"


@dataclass(frozen=True)
class PIndex:
    """Generalized index ``p^exponent``; exponents add along chains."""

    p: int
    exponent: int

    @property
    def value(self) -> Fraction:
        return p_power(self.exponent, self.p)


@dataclass(frozen=True)
class DiagonalInvariant:
    """Pivot exponents plus, per row, how many entries right of the pivot vanish."""

    diagonal: tuple[int, ...]
    zero_runs: tuple[int, ...]


@dataclass(frozen=True)
class UnitMeasure:
    value: Fraction


def hnf_reduce(rows: Iterable[Sequence[Rational]], p: int) -> PLattice:
    rows = [list(r) for r in rows]
    basis = p_hnf(rows, p, len(rows[0]))
    return PLattice(p, tuple(tuple(r) for r in basis))


def maximal_order(p: int, r: int) -> PLattice:
    return PLattice(p, tuple(tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)))


def index(L: PLattice, N: PLattice) -> PIndex:
    """Generalized index ``(L : N)``."""
    if L.p != N.p or L.rank != N.rank:
        raise ValueError("lattices live in different spaces")
    return PIndex(L.p, sum(N.exponents) - sum(L.exponents))


def lattice_sum(L: PLattice, N: PLattice) -> PLattice:
    return hnf_reduce([*L.rows, *N.rows], L.p)


def intersect(L: PLattice, N: PLattice) -> PLattice:
    # x in L and x in N  <=>  x H_L^{-1} and x H_N^{-1} integral
    q = [a + b for a, b in zip(L.inverse_basis, N.inverse_basis)]
    _, rows = solve_affine(q, None, L.p)
    return hnf_reduce(rows, L.p)


def dual(L: PLattice) -> PLattice:
    """Dual lattice for the coordinate pairing."""
    inv = L.inverse_basis
    return hnf_reduce([list(col) for col in zip(*inv)], L.p)


def multiply_vectors(x: Sequence[Rational], y: Sequence[Rational]) -> list[Fraction]:
    return [Fraction(a) * b for a, b in zip(x, y)]


def conductor(M: PLattice, L: PLattice) -> PLattice:
    """``{x : M x subset L}``; multiplication acts diagonally in these coordinates."""
    hinv = L.inverse_basis
    r = M.rank
    blocks = []
    for m in M.rows:
        blocks.append([[m[i] * h for h in hinv[i]] for i in range(r)])
    q = [[x for blk in blocks for x in blk[i]] for i in range(r)]
    _, rows = solve_affine(q, None, M.p)
    return hnf_reduce(rows, M.p)


def is_order(M: PLattice) -> bool:
    if not M.contains([1] * M.rank):
        return False
    return all(M.contains(multiply_vectors(x, y)) for i, x in enumerate(M.rows) for y in M.rows[i:])


def is_stable(N: PLattice, generators: Iterable[Sequence[Rational]]) -> bool:
    """True when ``g N subset N`` for every generator ``g``."""
    return all(N.contains(multiply_vectors(g, row)) for g in generators for row in N.rows)


def normalize(N: PLattice) -> PLattice:
    """Rescale each coordinate so that its minimum valuation over ``N`` is zero."""
    p = N.p
    r = N.rank
    mins = []
    for j in range(r):
        m = min(valuation(row[j], p) for row in N.rows)
        mins.append(int(m))
    if not any(mins):
        return N
    scale = [p_power(-m, p) for m in mins]
    return hnf_reduce([[x * s for x, s in zip(row, scale)] for row in N.rows], p)


def diagonal_invariant(N: PLattice) -> DiagonalInvariant:
    runs = []
    for i, row in enumerate(N.rows):
        n = 0
        for x in row[i + 1 :]:
            if x:
                break
            n += 1
        runs.append(n)
    return DiagonalInvariant(N.exponents, tuple(runs))


def act_by_unit(N: PLattice, u: Sequence[Rational]) -> PLattice:
    """The lattice ``u N`` for a diagonal element ``u``."""
    return hnf_reduce([[x * c for x, c in zip(row, u)] for row in N.rows], N.p)


def orbit(N: PLattice) -> list[PLattice]:
    """All lattices ``u N`` with ``u`` a unit of the maximal order.

    Breadth-first search under one generator of ``Z_p^x`` per coordinate;
    the action factors through a finite quotient, so the search closes.
    """
    gens = []
    for i in range(N.rank):
        for g in unit_generators(N.p):
            u = [1] * N.rank
            u[i] = g
            gens.append(u)
    # scalars act trivially; drop coordinate 0 generators
    gens = gens[len(unit_generators(N.p)) :]
    seen = {N}
    queue = deque([N])
    while queue:
        cur = queue.popleft()
        for u in gens:
            nxt = act_by_unit(cur, u)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return list(seen)


def _lex_key(N: PLattice):
    return tuple(x for row in N.rows for x in row)


def canonical_form(N: PLattice) -> PLattice:
    """Lexicographically least HNF in the orbit of ``N`` under diagonal units."""
    return min(orbit(N), key=_lex_key)


def _units_mod(O: PLattice, P: int) -> int:
    """Number of units of ``O / p^P Z_p^r`` (requires ``p^P Z_p^r`` inside ``O``)."""
    p, r = O.p, O.rank
    # reduction of O modulo p: echelon basis over F_p
    red = []
    for row in O.rows:
        v = []
        for x in row:
            if x.denominator % p == 0:
                raise ValueError("lattice is not inside the maximal order")
            v.append(x.numerator * pow(x.denominator, -1, p) % p)
        red.append(v)
    basis: list[list[int]] = []
    for v in red:
        v = v[:]
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if v[lead]:
                f = v[lead]
                v = [(x - f * y) % p for x, y in zip(v, b)]
        if any(v):
            lead = next(i for i, x in enumerate(v) if x)
            inv = pow(v[lead], -1, p)
            basis.append([x * inv % p for x in v])
    units_mod_p = 0
    for coeffs in product(range(p), repeat=len(basis)):
        w = [0] * r
        for c, b in zip(coeffs, basis):
            if c:
                w = [(x + c * y) % p for x, y in zip(w, b)]
        if all(w):
            units_mod_p += 1
    size = p ** (r * P - sum(O.exponents))
    image = p ** len(basis)
    if size % image:
        raise PrecisionUnstable(f"precision {P} too small for fibre counting")
    return size // image * units_mod_p


def _unit_exponent(O: PLattice) -> int:
    """Least ``P`` with ``p^P Z_p^r`` inside ``O``."""
    P = max(1, max(O.exponents))
    r = O.rank
    while not all(O.contains([p_power(P, O.p) if j == i else 0 for j in range(r)]) for i in range(r)):
        P += 1
    return P


def unit_measure(M: PLattice) -> UnitMeasure:
    """Haar measure of ``Aut M = {M:M}^x`` with the maximal order's units at 1."""
    O = conductor(M, M)
    p, r = O.p, O.rank
    P = _unit_exponent(O)
    ratios = []
    for prec in (P, P + 1):
        total = ((p - 1) * p ** (prec - 1)) ** r
        ratios.append(Fraction(_units_mod(O, prec), total))
    if ratios[0] != ratios[1]:
        raise PrecisionUnstable(f"unit counts disagree at precision {P} and {P + 1}")
    return UnitMeasure(ratios[0])


def overlattices(Lam: PLattice, generators: Sequence[Sequence[Rational]] | None = None) -> list[PLattice]:
    """All ``Lam``-stable lattices ``N`` with ``Lam <= N <= Z_p^r``.

    Enumerates HNF cells bottom-up: pivot exponents between zero and those
    of ``Lam``, off-diagonal entries modulo the column pivots, pruning on
    stability of and containment in the trailing coordinate block.
    """
    p, r = Lam.p, Lam.rank
    gens = [list(g) for g in (generators if generators is not None else Lam.rows)]
    lam_exps = Lam.exponents
    out: list[PLattice] = []

    def block_ok(rows: list[list[Fraction]], start: int) -> bool:
        sub = PLattice(p, tuple(tuple(row[start:]) for row in rows))
        for g in gens:
            gs = g[start:]
            for row in rows:
                if not sub.contains(multiply_vectors(gs, row[start:])):
                    return False
        for lrow in Lam.rows[start:]:
            if not sub.contains(lrow[start:]):
                return False
        return True

    def rec(i: int, rows: list[list[Fraction]], exps: list[int]):
        if i < 0:
            out.append(PLattice(p, tuple(tuple(row) for row in rows)))
            return
        for a in range(lam_exps[i] + 1):
            ranges = [range(p ** exps[j - i - 1]) for j in range(i + 1, r)]
            for tail in product(*ranges):
                row = [Fraction(0)] * i + [p_power(a, p)] + [Fraction(x) for x in tail]
                new_rows = [row] + rows
                if block_ok(new_rows, i):
                    rec(i - 1, new_rows, [a] + exps)

    rec(r - 1, [], [])
    out.sort(key=lambda N: (-sum(N.exponents), _lex_key(N)))
    return out


def reduce_vector(x: Sequence[Rational], lower: Sequence[Sequence[Fraction]], exps: Sequence[int], p: int) -> list[Fraction]:
    """Canonical representative of ``x`` modulo the HNF lattice ``lower``."""
    w = [Fraction(v) for v in x]
    m = len(w)
    for j in range(m):
        red = reduce_mod(w[j], p, exps[j])
        if red != w[j]:
            q = (w[j] - red) / p_power(exps[j], p)
            row = lower[j]
            for c in range(j + 1, m):
                if row[c]:
                    w[c] -= q * row[c]
            w[j] = red
    return w


__all__ = [
    "PLattice",
    "PIndex",
    "DiagonalInvariant",
    "UnitMeasure",
    "hnf_reduce",
    "maximal_order",
    "index",
    "lattice_sum",
    "intersect",
    "dual",
    "conductor",
    "is_order",
    "is_stable",
    "normalize",
    "diagonal_invariant",
    "act_by_unit",
    "orbit",
    "canonical_form",
    "unit_measure",
    "overlattices",
    "reduce_vector",
    "multiply_vectors",
]
