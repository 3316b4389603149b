import json
import random
from fractions import Fraction
from math import comb, gcd

import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import analysis, local
from oracles import T_SYM as t, count_ideals_standard_basis, expand, numerator_series
from zetalg.errors import NotStabilized, ResourceBudgetExceeded
from zetalg.plattice import hnf_reduce, maximal_order
from zetalg.zeta import (
    GlobalZeta,
    LocalZeta,
    PowerSeries,
    count_ideals,
    count_ideals_naive,
    expand_dirichlet,
    genus_counts,
    genus_decomposition,
    genus_representatives,
    genus_zeta_by_counting,
    genus_zeta_by_integral,
    global_zeta,
    local_zeta,
    reconstruct_local,
    zeta_integral_series,
)

zeta3 = 1 / (1 - t) ** 3


# -- counting ----------------------------------------------------------------

def test_count_k2():
    assert count_ideals(local("kn:2", 2), 2, 4).coeffs == (1, 1, 3, 5, 7)


def test_count_petersen():
    assert count_ideals(local("petersen", 2), 2, 4).coeffs == (1, 2, 5, 10, 17)


@pytest.mark.parametrize("r, name, p", [(3, "petersen", 7), (2, "kn:3", 2), (4, "crown:3", 5)])
def test_maximal_order_counts(r, name, p):
    s = count_ideals(local(name, p), p, 6)
    assert s.coeffs == tuple(comb(k + r - 1, r - 1) for k in range(7))


@pytest.mark.parametrize("name, p, kmax", [("kn:4", 2, 5), ("petersen", 3, 4), ("square", 2, 5), ("gq21", 3, 4)])
def test_solver_counts_match_naive_and_standard_basis(name, p, kmax):
    fast = count_ideals(local(name, p), p, kmax).coeffs
    assert fast == count_ideals_naive(local(name, p), p, kmax).coeffs
    assert list(fast) == count_ideals_standard_basis(analysis(name).algebra, p, kmax)


def test_budget_is_enforced():
    with pytest.raises(ResourceBudgetExceeded):
        count_ideals(local("gq21", 3), 3, 8, budget=50)


# -- reconstruction ----------------------------------------------------------

def test_reconstruct_published_square_series():
    g = (1, -2, 6, -3, 4, 4)
    series = PowerSeries(2, tuple(numerator_series(g, 3, 12)))
    assert series.coeffs[:6] == (1, 1, 6, 13, 26, 49)
    assert reconstruct_local(series, 3).numerator == g


def test_reconstruct_binomial_series():
    s = PowerSeries(3, tuple(comb(k + 2, 2) for k in range(10)))
    assert reconstruct_local(s, 3).numerator == (1,)


def test_reconstruct_needs_a_window():
    s = PowerSeries(2, tuple(numerator_series((1, -1, 2, -2, 4), 2, 5)))
    with pytest.raises(NotStabilized):
        reconstruct_local(s, 2)


def test_complete_graph_k4():
    assert local_zeta(local("kn:4", 2), 2, "counting").numerator == (1, -1, 2, -2, 4)


# -- genus classes -----------------------------------------------------------

@pytest.mark.parametrize("n, p, m", [(2, 2, 1), (4, 2, 2), (8, 2, 3), (9, 3, 2), (12, 3, 1)])
def test_complete_graph_representatives(n, p, m):
    reps = genus_representatives(local(f"kn:{n}", p), p)
    assert set(reps) == {hnf_reduce([[1, 1], [0, p**i]], p) for i in range(m + 1)}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_petersen_representatives(p):
    reps = genus_representatives(local("petersen", p), p)
    assert len(reps) == 2 and maximal_order(p, 3) in reps


def test_gq_representatives():
    assert len(genus_representatives(local("gq21", 3), 3)) == 7


def test_square_has_a_class_without_unit():
    ctx = local("square", 2)
    classes = ctx.classification.classes
    assert len(classes) == 9
    odd = [c for c in classes if not c.contains_lambda]
    assert len(odd) == 1
    N = odd[0].representative
    assert N == hnf_reduce([[1, 0, 1], [0, 1, 1], [0, 0, 2]], 2)
    # no element of N is a unit of Z_2^3: x_0 + x_1 + x_2 is always even
    assert all(sum(row) % 2 == 0 for row in N.rows)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_petersen_genus_counts(p):
    ctx = local("petersen", p)
    Z = maximal_order(p, 3)
    assert genus_zeta_by_counting(ctx, p, Z, 4).coeffs == (0, 1, 3, 6, 10)


def test_gq_maximal_order_genus():
    ctx = local("gq21", 3)
    assert genus_zeta_by_counting(ctx, 3, maximal_order(3, 3), 5).coeffs == (0, 0, 0, 1, 3, 6)


@pytest.mark.parametrize("name, p", [("kn:8", 2), ("petersen", 5), ("square", 2), ("gq21", 3), ("crown:3", 2)])
def test_partition_property(name, p):
    ctx = local(name, p)
    parts = genus_counts(ctx, p, 6)
    total = [sum(s.coeffs[k] for s in parts) for k in range(7)]
    assert tuple(total) == count_ideals(ctx, p, 6).coeffs


# -- integrals ---------------------------------------------------------------

def test_integral_over_maximal_order():
    for p, r in [(2, 2), (3, 3), (5, 4)]:
        s = zeta_integral_series(maximal_order(p, r), 8)
        assert s.coeffs == tuple(comb(k + r - 1, r - 1) for k in range(9))


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("m", [1, 2])
def test_complete_graph_intermediate_integral(p, m):
    for i in range(m + 1):
        S = hnf_reduce([[p ** (m - i), p ** (m - i)], [0, p**m]], p)
        expr = t ** (2 * m) / (1 - t) ** 2 + sum(
            t ** (2 * m - 2 * j) * sympy.Rational(p ** (1 - j) if j <= 1 else 1, 1 if j <= 1 else p ** (j - 1)) / (p - 1)
            for j in range(1, i + 1)
        )
        assert list(zeta_integral_series(S, 8).coeffs) == expand(expr, 8)


GQ_INTEGRALS = [
    ([[3, 3, 3], [0, 9, 0], [0, 0, 9]], (3 * t**6 + 3 * t**5 - 3 * t**4 + t**3) / 4 * zeta3),
    ([[3, 0, 6], [0, 9, 0], [0, 0, 9]], (t**4 / 2 - t**5 + 3 * t**6 / 2) * zeta3),
    ([[3, 3, 3], [0, 3, 6], [0, 0, 9]], (9 * t**6 - 9 * t**5 + 3 * t**4 + t**3) / 4 * zeta3),
    ([[1, 1, 1], [0, 3, 6], [0, 0, 9]], (27 * t**6 - 27 * t**5 + 9 * t**4 + 2 * t**3 + 3 * t**2 - 3 * t + 1) / 12 * zeta3),
    ([[9, 0, 0], [0, 9, 0], [0, 0, 9]], t**6 * zeta3),
]


@pytest.mark.parametrize("rows, expr", GQ_INTEGRALS)
def test_gq_intermediate_integrals(rows, expr):
    S = hnf_reduce(rows, 3)
    assert list(zeta_integral_series(S, 10).coeffs) == expand(expr, 10)


@pytest.mark.parametrize(
    "rows, expr",
    [
        ([[4, 4, 4], [0, 4, 0], [0, 0, 2]], t**5 * zeta3),
        ([[2, 2, 2], [0, 4, 0], [0, 0, 2]], (2 * t**5 - 2 * t**4 + t**3) * zeta3),
    ],
)
def test_square_intermediate_integrals(rows, expr):
    assert list(zeta_integral_series(hnf_reduce(rows, 2), 9).coeffs) == expand(expr, 9)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_petersen_genus_integrals(p):
    ctx = local("petersen", p)
    got = genus_zeta_by_integral(ctx, p, ctx.lam, 8).coeffs
    assert list(got) == expand((p * t**2 - 2 * t + 1) * zeta3, 8)
    got = genus_zeta_by_integral(ctx, p, maximal_order(p, 3), 8).coeffs
    assert list(got) == expand(t * zeta3, 8)


def test_square_maximal_order_genus_integral():
    ctx = local("square", 2)
    assert list(genus_zeta_by_integral(ctx, 2, maximal_order(2, 3), 8).coeffs) == expand(t**2 * zeta3, 8)


GQ_GENUS = [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], t**3),
    ([[1, 0, 2], [0, 1, 2], [0, 0, 3]], t - 3 * t**2 + 3 * t**3 + 3 * t**4),
    ([[1, 0, 0], [0, 1, 1], [0, 0, 3]], t**2 - 2 * t**3 + 3 * t**4),
    ([[1, 1, 0], [0, 3, 0], [0, 0, 1]], t**2 - 2 * t**3 + 3 * t**4),
    ([[1, 0, 1], [0, 1, 0], [0, 0, 3]], t**2 - 2 * t**3 + 3 * t**4),
    ([[1, 1, 1], [0, 3, 0], [0, 0, 3]], 9 * t**5 - 9 * t**4 + 3 * t**3 + t**2),
    ([[1, 1, 1], [0, 3, 6], [0, 0, 9]], 27 * t**6 - 27 * t**5 + 9 * t**4 + 2 * t**3 + 3 * t**2 - 3 * t + 1),
]


@pytest.mark.parametrize("rows, numerator", GQ_GENUS)
def test_gq_genus_series_both_engines(rows, numerator):
    ctx = local("gq21", 3)
    M = hnf_reduce(rows, 3)
    want = expand(numerator * zeta3, 7)
    assert list(genus_zeta_by_integral(ctx, 3, M, 7).coeffs) == want
    assert list(genus_zeta_by_counting(ctx, 3, M, 7).coeffs) == want


@pytest.mark.parametrize("n, p", [(4, 2), (8, 2), (9, 3), (27, 3)])
def test_complete_graph_genus_series(n, p):
    ctx = local(f"kn:{n}", p)
    m = ctx.lam.exponents[1]
    zeta2 = 1 / (1 - t) ** 2
    for i in range(m + 1):
        M = hnf_reduce([[1, 1], [0, p**i]], p)
        if i == 0:
            expr = t**m * zeta2
        else:
            expr = p ** (i - 1) * (p - 1) * t ** (m + i) * zeta2 + t ** (m - i) * sum(
                p ** (i - j) * t ** (2 * (i - j)) for j in range(1, i + 1)
            )
        assert list(genus_zeta_by_integral(ctx, p, M, 8).coeffs) == expand(expr, 8)


@pytest.mark.parametrize("name, p", [("kn:12", 2), ("petersen", 2), ("square", 2), ("gq21", 3), ("crown:3", 3), ("crown:5", 5)])
def test_engines_agree(name, p):
    dec = genus_decomposition(local(name, p), p, 6, engine="both")
    assert tuple(dec.total().coeffs) == count_ideals(local(name, p), p, 6).coeffs


# -- local and global --------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_petersen_local(p):
    assert local_zeta(local("petersen", p), p, "both").numerator == (1, -1, p)


def test_non_relevant_prime():
    z = local_zeta(local("gq21", 2), 2, "both")
    assert z.numerator == (1,) and z.r == 3


def test_gq_local():
    assert local_zeta(local("gq21", 3), 3, "genus").numerator == (1, -2, 4, 3, 12, -18, 27)


@pytest.mark.parametrize("name, p", [("kn:6", 3), ("petersen", 5), ("square", 2), ("gq21", 3)])
def test_reconstruction_soundness(name, p):
    ctx = local(name, p)
    z = local_zeta(ctx, p, "counting")
    assert z.numerator[0] == 1
    K = z.degree + 6
    assert z.series(K).coeffs == count_ideals(ctx, p, K).coeffs


def test_crown_global():
    Z = global_zeta(analysis("crown:3"))
    assert set(Z.locals) == {2, 3}
    assert Z.locals[2].numerator == (1, -2, 5, -4, 4)
    assert Z.locals[3].numerator == (1, -2, 7, -6, 9)
    assert Z.rank == 4


def test_petersen_dirichlet():
    a = expand_dirichlet(global_zeta(analysis("petersen")), 30)
    assert a[0] == 1
    assert (a[1], a[2], a[4], a[5]) == (2, 2, 2, 4)


def test_maximal_input_gives_zeta_power():
    Z = GlobalZeta(3, {})
    a = expand_dirichlet(Z, 12)
    # coefficients of zeta(s)^3 are the number of ordered factorizations into 3 factors
    want = [sum(1 for d in range(1, n + 1) if n % d == 0 for e in range(1, n // d + 1) if (n // d) % e == 0) for n in range(1, 13)]
    assert a == want


def _coprime_pairs(limit, count, seed=1):
    rng = random.Random(seed)
    pairs = set()
    while len(pairs) < count:
        m, n = rng.randint(2, limit), rng.randint(2, limit)
        if gcd(m, n) == 1 and m * n <= limit * 8:
            pairs.add((m, n))
    return sorted(pairs)


@pytest.mark.parametrize("name", ["petersen", "gq21", "crown:3"])
def test_dirichlet_multiplicativity(name):
    Z = global_zeta(analysis(name))
    pairs = _coprime_pairs(60, 120)
    a = expand_dirichlet(Z, max(m * n for m, n in pairs))
    for m, n in pairs:
        assert a[m * n - 1] == a[m - 1] * a[n - 1]


def test_local_zeta_json_round_trip():
    z = LocalZeta(3, 3, (1, -2, 4, 3, 12, -18, 27))
    assert LocalZeta.from_json(json.loads(json.dumps(z.to_json()))) == z
    Z = GlobalZeta(4, {2: LocalZeta(2, 4, (1, -2, 5, -4, 4))})
    assert GlobalZeta.from_json(json.loads(json.dumps(Z.to_json()))) == Z


def test_threads_give_identical_counts():
    ctx = local("gq21", 3)
    assert count_ideals(ctx, 3, 6, threads=3) == count_ideals(ctx, 3, 6, threads=1)
