"""Exact linear algebra over Q and over the local ring Z_(p).

Matrices are plain lists of rows holding ``Fraction`` or ``int`` entries.
Row-vector convention throughout: a lattice is the row span of its basis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import Singular
from .padic import INF, Rational, p_power, reduce_mod, unit_part, valuation

Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence[Rational]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[Rational]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Sequence[Sequence[Rational]], b: Sequence[Sequence[Rational]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def vec_mat(v: Sequence[Rational], a: Sequence[Sequence[Rational]]) -> list[Fraction]:
    n = len(a[0]) if a else 0
    out = [Fraction(0)] * n
    for x, row in zip(v, a):
        if x:
            for j in range(n):
                out[j] += x * row[j]
    return out


def inverse(a: Sequence[Sequence[Rational]]) -> Matrix:
    """Gauss-Jordan inverse over Q."""
    n = len(a)
    work = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return [row[n:] for row in work]


def rank(a: Sequence[Sequence[Rational]]) -> int:
    work = to_fractions(a)
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(r + 1, len(work)):
            if work[i][col] != 0:
                f = work[i][col] / work[r][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
    return r


def left_nullspace(a: Sequence[Sequence[Rational]]) -> Matrix:
    """Basis of ``{x : x a = 0}`` over Q."""
    return nullspace(transpose(a)) if a else []


def nullspace(a: Sequence[Sequence[Rational]]) -> Matrix:
    """Basis of ``{x : a x = 0}`` (column kernel) over Q, in reduced form."""
    work = to_fractions(a)
    if not work:
        return []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = 1 / work[r][col]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row_idx, pcol in enumerate(pivots):
            v[pcol] = -work[row_idx][fcol]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# p-local normal forms


def p_hnf(rows: Sequence[Sequence[Rational]], p: int, ncols: Optional[int] = None) -> Matrix:
    """Canonical p-local Hermite normal form of the Z_p-span of ``rows``.

    Output is square, upper triangular, pivots are powers of ``p`` and every
    entry right of a pivot is reduced into ``[0, p^a)`` where ``p^a`` is the
    pivot of its column.  Raises :class:`Singular` unless the rows span a
    full lattice.
    """
    if ncols is None:
        ncols = len(rows[0])
    work = [[Fraction(x) for x in row] for row in rows if any(row)]
    basis: Matrix = []
    exps: list[int] = []
    for j in range(ncols):
        best, bv = -1, INF
        for idx, row in enumerate(work):
            x = row[j]
            if x:
                v = valuation(x, p)
                if v < bv:
                    best, bv = idx, v
        if best < 0:
            raise Singular(f"rows do not span a full lattice (column {j})")
        piv = work.pop(best)
        scale = 1 / unit_part(piv[j], p)
        if scale != 1:
            piv = [x * scale for x in piv]
        pj = piv[j]
        nxt = []
        for row in work:
            x = row[j]
            if x:
                f = x / pj
                row = [a - f * b for a, b in zip(row, piv)]
            if any(row):
                nxt.append(row)
        work = nxt
        basis.append(piv)
        exps.append(int(bv))
    for j in range(1, ncols):
        a = exps[j]
        pa = p_power(a, p)
        rowj = basis[j]
        for k in range(j):
            row = basis[k]
            x = row[j]
            red = reduce_mod(x, p, a)
            if x != red:
                q = (x - red) / pa
                for c in range(j, ncols):
                    if rowj[c]:
                        row[c] -= q * rowj[c]
                row[j] = red
    return basis


def solve_affine(
    q: Sequence[Sequence[Rational]],
    beta: Optional[Sequence[Rational]],
    p: int,
) -> tuple[Optional[list[Fraction]], Matrix]:
    """Solve ``x q + beta in Z_p^M`` for ``x`` in ``Q_p^m``.

    ``q`` must have full row rank ``m``.  Returns ``(x0, rows)`` where the
    solution set is ``x0 + span(rows)``; ``x0`` is ``None`` when there is no
    solution.  ``rows`` spans the lattice ``{x : x q in Z_p^M}``.
    Works through a Smith normal form over ``Z_(p)``.
    """
    m = len(q)
    if m == 0:
        if beta is not None and any(Fraction(b).denominator % p == 0 for b in beta):
            return None, []
        return [], []
    M = len(q[0])
    a = [[Fraction(x) for x in row] for row in q]
    pm = identity(m)
    b = [Fraction(x) for x in beta] if beta is not None else [Fraction(0)] * M
    exps: list[int] = []
    for k in range(m):
        bi, bj, bv = -1, -1, INF
        for i in range(k, m):
            row = a[i]
            for j in range(k, M):
                x = row[j]
                if x:
                    v = valuation(x, p)
                    if v < bv:
                        bi, bj, bv = i, j, v
        if bi < 0:
            raise Singular("system matrix is rank deficient")
        if bi != k:
            a[k], a[bi] = a[bi], a[k]
            pm[k], pm[bi] = pm[bi], pm[k]
        if bj != k:
            for row in a:
                row[k], row[bj] = row[bj], row[k]
            b[k], b[bj] = b[bj], b[k]
        s = 1 / unit_part(a[k][k], p)
        if s != 1:
            a[k] = [x * s for x in a[k]]
            pm[k] = [x * s for x in pm[k]]
        piv = a[k][k]
        rowk = a[k]
        for i in range(k + 1, m):
            x = a[i][k]
            if x:
                f = x / piv
                a[i] = [u - f * w for u, w in zip(a[i], rowk)]
                pm[i] = [u - f * w for u, w in zip(pm[i], pm[k])]
        for j in range(k + 1, M):
            x = rowk[j]
            if x:
                f = x / piv
                # only row k is nonzero in column k now
                rowk[j] = Fraction(0)
                b[j] -= f * b[k]
        exps.append(int(bv))
    for j in range(m, M):
        if b[j].denominator % p == 0:
            return None, []
    # with y = x P^{-1}: y_k p^{v_k} + b_k in Z_p, i.e. y_k in -b_k p^{-v_k} + p^{-v_k} Z_p
    y0 = [-b[k] / p_power(exps[k], p) for k in range(m)]
    x0 = vec_mat(y0, pm)
    rows = [[x * p_power(-exps[k], p) for x in pm[k]] for k in range(m)]
    return x0, rows
