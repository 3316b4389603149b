"""Commutative integral table algebras: axioms, characters, idempotents.

A table algebra of rank ``r`` is given by its structure tensor
``tensor[i][j][k]`` (``b_i b_j = sum_k tensor[i][j][k] b_k``) and an
involution ``i -> i*`` on basis indices.  All arithmetic is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm, prod
from typing import Sequence

import sympy

from .errors import (
    AxiomViolation,
    NegativeStructureConstant,
    NonCommutative,
    NonIntegralFrameNumber,
    NotIntegral,
    NotSplit,
)
from .linalg import inverse, nullspace, vec_mat
from .padic import prime_factors

Tensor = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class TableAlgebra:
    """A validated commutative table algebra; build it with :func:`validate`."""

    rank: int
    tensor: Tensor
    involution: tuple[int, ...]
    degrees: tuple[int, ...]
    order: int
    association_scheme: bool = False

    def left_matrix(self, i: int) -> list[list[int]]:
        """Regular matrix of ``b_i``: column ``j`` holds the coordinates of ``b_i b_j``."""
        r = self.rank
        return [[self.tensor[i][j][k] for j in range(r)] for k in range(r)]

    def multiply(self, x: Sequence, y: Sequence) -> list:
        """Product of two coordinate vectors in the standard basis."""
        r = self.rank
        out = [0] * r
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                row = self.tensor[i][j]
                for k in range(r):
                    if row[k]:
                        out[k] += c * row[k]
        return out


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.b) != len(self.c):
            raise AxiomViolation("intersection array lists must have equal length")
        if any(int(x) <= 0 for x in (*self.b, *self.c)):
            raise AxiomViolation("intersection array entries must be positive")

    @property
    def diameter(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class CharacterTable:
    """``values[i][j] = chi_i(b_j)``; row 0 is the degree map."""

    values: tuple[tuple[Fraction, ...], ...]
    multiplicities: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class IdempotentBasis:
    """``e_i = sum_j matrix[i][j] b_j`` and ``b_j = sum_i b_in_e[j][i] e_i``."""

    matrix: tuple[tuple[Fraction, ...], ...]
    b_in_e: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class RelevantPrimes:
    f: int
    primes: tuple[int, ...]


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise AxiomViolation("structure constants must be integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x.strip())
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    raise AxiomViolation(f"structure constant {x!r} is not an integer")


def validate(
    tensor: Sequence[Sequence[Sequence]],
    involution: Sequence[int] | None = None,
    association_scheme: bool = False,
) -> TableAlgebra:
    """Check every table-algebra axiom and return the validated algebra."""
    r = len(tensor)
    if r == 0:
        raise AxiomViolation("rank must be positive")
    if involution is None:
        involution = list(range(r))
    inv = tuple(_as_int(x) for x in involution)
    if len(inv) != r or sorted(inv) != list(range(r)):
        raise AxiomViolation("involution must be a permutation of the basis indices")
    if inv[0] != 0:
        raise AxiomViolation("involution must fix b_0")
    if any(inv[inv[i]] != i for i in range(r)):
        raise AxiomViolation("involution must have order at most two")
    if any(len(tensor[i]) != r or any(len(tensor[i][j]) != r for j in range(r)) for i in range(r)):
        raise AxiomViolation(f"tensor must have shape {r}x{r}x{r}")
    lam = tuple(tuple(tuple(_as_int(x) for x in tensor[i][j]) for j in range(r)) for i in range(r))
    R = range(r)
    for i in R:
        for j in R:
            for k in R:
                if lam[i][j][k] < 0:
                    raise NegativeStructureConstant(
                        f"structure constant lambda[{i}][{j}][{k}] = {lam[i][j][k]} is negative"
                    )
    for j in R:
        for k in R:
            d = int(j == k)
            if lam[0][j][k] != d or lam[j][0][k] != d:
                raise AxiomViolation(f"identity axiom fails: b_0 b_{j} / b_{j} b_0 coefficient of b_{k}")
    for i in R:
        for j in R:
            if lam[i][j] != lam[j][i]:
                raise NonCommutative(f"b_{i} b_{j} != b_{j} b_{i}")
    degrees = tuple(lam[i][inv[i]][0] for i in R)
    for i in R:
        if degrees[i] <= 0:
            raise AxiomViolation(f"coefficient of b_0 in b_{i} b_{i}* must be positive")
        for j in R:
            if j != inv[i] and lam[i][j][0] != 0:
                raise AxiomViolation(f"coefficient of b_0 in b_{i} b_{j} must vanish (b_{j} != b_{i}*)")
    for i in R:
        for j in R:
            for k in R:
                if lam[i][j][k] != lam[inv[j]][inv[i]][inv[k]]:
                    raise AxiomViolation(
                        f"involution compatibility fails: lambda[{i}][{j}][{k}] != lambda[{inv[j]}][{inv[i]}][{inv[k]}]"
                    )
    for i in R:
        for j in R:
            for l in R:
                for k in R:
                    lhs = sum(lam[i][j][m] * lam[m][l][k] for m in R)
                    rhs = sum(lam[j][l][m] * lam[i][m][k] for m in R)
                    if lhs != rhs:
                        raise AxiomViolation(f"associativity fails: (b_{i} b_{j}) b_{l} != b_{i} (b_{j} b_{l}) at b_{k}")
    for i in R:
        for j in R:
            if sum(lam[i][j][k] * degrees[k] for k in R) != degrees[i] * degrees[j]:
                raise AxiomViolation(f"degree map is not multiplicative on b_{i} b_{j}")
    return TableAlgebra(
        rank=r,
        tensor=lam,
        involution=inv,
        degrees=degrees,
        order=sum(degrees),
        association_scheme=association_scheme,
    )


def from_intersection_array(arr: IntersectionArray, association_scheme: bool = True) -> TableAlgebra:
    """Adjacency algebra of a distance-regular graph from its intersection array."""
    d = arr.diameter
    b = [int(x) for x in arr.b] + [0]
    c = [0] + [int(x) for x in arr.c]
    k = b[0]
    a = [k - b[i] - c[i] for i in range(d + 1)]
    if any(x < 0 for x in a):
        raise NotIntegral(f"intersection array forces negative diagonal entries {a}")
    n = d + 1
    # regular matrix of b_1: M[i][j] = coefficient of b_i in b_1 b_j
    m1 = [[0] * n for _ in range(n)]
    for i in range(n):
        m1[i][i] = a[i]
        if i + 1 < n:
            m1[i][i + 1] = b[i]
            m1[i + 1][i] = c[i + 1]
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    mats = [ident, m1]
    for j in range(1, d):
        prodm = [[sum(m1[i][t] * mats[j][t][l] for t in range(n)) for l in range(n)] for i in range(n)]
        nxt = []
        for i in range(n):
            row = []
            for l in range(n):
                num = prodm[i][l] - b[j - 1] * mats[j - 1][i][l] - a[j] * mats[j][i][l]
                if num % c[j + 1]:
                    raise NotIntegral(f"b_{j + 1} has non-integral structure constants")
                row.append(num // c[j + 1])
            nxt.append(row)
        mats.append(nxt)
    tensor = [[[mats[j][i][l] for i in range(n)] for l in range(n)] for j in range(n)]
    if any(x < 0 for plane in tensor for row in plane for x in row):
        raise NotIntegral("generated structure constants are negative")
    return validate(tensor, list(range(n)), association_scheme=association_scheme)


def regular_matrix_b1(arr: IntersectionArray) -> list[list[int]]:
    """Tridiagonal regular matrix of ``b_1`` (rows sum to the valency)."""
    return from_intersection_array(arr, association_scheme=False).left_matrix(1)


def complete_graph(n: int) -> TableAlgebra:
    if n < 2:
        raise AxiomViolation("complete graph needs n >= 2")
    tensor = [
        [[1, 0], [0, 1]],
        [[0, 1], [n - 1, n - 2]],
    ]
    return validate(tensor, [0, 1], association_scheme=True)


def _eigen_rows(T: TableAlgebra, mats, x: Sequence[int]):
    r = T.rank
    lx = [[sum(x[j] * mats[j][i][l] for j in range(r)) for l in range(r)] for i in range(r)]
    t = sympy.Symbol("t")
    poly = sympy.Matrix(lx).charpoly(t)
    _, factors = sympy.factor_list(poly.as_expr(), t)
    roots = []
    for fac, mult in factors:
        fp = sympy.Poly(fac, t)
        if fp.degree() > 1:
            raise NotSplit(str(fac))
        if mult > 1:
            return None
        c1, c0 = fp.all_coeffs()
        root = sympy.Rational(-c0, c1)
        roots.append(Fraction(int(root.p), int(root.q)))
    rows = []
    for theta in roots:
        shifted = [[Fraction(lx[i][l]) - (theta if i == l else 0) for l in range(r)] for i in range(r)]
        ker = nullspace(shifted)
        if len(ker) != 1:
            return None
        v = ker[0]
        piv = next(i for i in range(r) if v[i] != 0)
        row = []
        for j in range(r):
            w = sum(Fraction(mats[j][piv][l]) * v[l] for l in range(r))
            row.append(w / v[piv])
        rows.append(tuple(row))
    return rows


def character_table(T: TableAlgebra, seed: int = 0, max_tries: int = 200) -> CharacterTable:
    """Rational character table via a separating element (exact arithmetic)."""
    r = T.rank
    n = T.order
    if r == 1:
        return CharacterTable(values=((Fraction(1),),), multiplicities=(Fraction(1),))
    mats = [T.left_matrix(j) for j in range(r)]
    rng = random.Random(seed)
    rows = None
    candidates = [[int(j == i) for j in range(r)] for i in range(1, r)]
    for attempt in range(max_tries):
        if attempt < len(candidates):
            x = candidates[attempt]
        else:
            x = [0] + [rng.randint(-3, 3) for _ in range(r - 1)]
        rows = _eigen_rows(T, mats, x)
        if rows is not None:
            break
    if rows is None:
        raise NotSplit("no separating element with simple rational eigenvalues")
    degree_row = tuple(Fraction(k) for k in T.degrees)
    if degree_row not in rows:
        raise AxiomViolation("degree map is not a character")
    others = sorted(row for row in rows if row != degree_row)
    values = (degree_row, *others)
    for i, row in enumerate(values):
        for a_ in range(r):
            for b_ in range(r):
                if row[a_] * row[b_] != sum(T.tensor[a_][b_][k] * row[k] for k in range(r)):
                    raise AxiomViolation(f"character {i} is not multiplicative")
    # sum_i m_i chi_i(b_j) = n delta_{j0}
    target = [Fraction(n)] + [Fraction(0)] * (r - 1)
    mult = vec_mat(target, inverse([list(v) for v in values]))
    if any(m <= 0 for m in mult):
        raise AxiomViolation(f"multiplicities {mult} are not positive")
    if T.association_scheme and any(m.denominator != 1 for m in mult):
        raise AxiomViolation(f"association scheme with non-integral multiplicities {mult}")
    return CharacterTable(values=values, multiplicities=tuple(mult))


def idempotents(T: TableAlgebra, C: CharacterTable) -> IdempotentBasis:
    r = T.rank
    n = T.order
    inv = T.involution
    E = tuple(
        tuple(C.multiplicities[i] / n * C.values[i][inv[j]] / T.degrees[j] for j in range(r))
        for i in range(r)
    )
    b_in_e = tuple(tuple(C.values[i][j] for i in range(r)) for j in range(r))
    for i in range(r):
        for j in range(r):
            prod_ij = T.multiply(E[i], E[j])
            expect = E[i] if i == j else (0,) * r
            if any(x != y for x, y in zip(prod_ij, expect)):
                raise AxiomViolation(f"idempotents e_{i}, e_{j} are not orthogonal")
    total = [sum(E[i][j] for i in range(r)) for j in range(r)]
    if total != [1] + [0] * (r - 1):
        raise AxiomViolation("idempotents do not sum to b_0")
    return IdempotentBasis(matrix=E, b_in_e=b_in_e)


def frame_number(T: TableAlgebra, C: CharacterTable) -> int:
    r = T.rank
    value = Fraction(T.order**r * prod(T.degrees[1:]), 1) / prod(C.multiplicities[1:], start=Fraction(1))
    if value.denominator != 1:
        raise NonIntegralFrameNumber(f"Frame number {value} is not an integer")
    return int(value)


def relevant_primes(T: TableAlgebra, E: IdempotentBasis) -> RelevantPrimes:
    """Primes dividing the least ``f`` with ``f * maximal order`` inside ``ZB``."""
    f = lcm(*(x.denominator for row in E.matrix for x in row)) if E.matrix else 1
    n = T.order
    mult = [n * E.matrix[i][0] for i in range(T.rank)]
    F = Fraction(n**T.rank * prod(T.degrees[1:])) / prod(mult[1:], start=Fraction(1))
    assert F.denominator == 1 and int(F) % f == 0, f"f = {f} does not divide Frame number {F}"
    return RelevantPrimes(f=f, primes=tuple(prime_factors(f)))


@dataclass(frozen=True)
class AlgebraAnalysis:
    """Everything the downstream modules need about one algebra."""

    algebra: TableAlgebra
    characters: CharacterTable
    idempotents: IdempotentBasis
    frame: int
    relevant: RelevantPrimes

    @cached_property
    def basis_in_e(self) -> list[list[int]]:
        """Rows ``b_j`` in idempotent coordinates (integers)."""
        rows = []
        for row in self.idempotents.b_in_e:
            if any(x.denominator != 1 for x in row):
                raise NotIntegral("character values are not integers")
            rows.append([int(x) for x in row])
        return rows


def analyze(T: TableAlgebra) -> AlgebraAnalysis:
    C = character_table(T)
    E = idempotents(T, C)
    return AlgebraAnalysis(algebra=T, characters=C, idempotents=E, frame=frame_number(T, C), relevant=relevant_primes(T, E))
