import pytest

from multidiv.arith import TAU, TAU_EXP, TAU_STAR, tau1k
from multidiv.series import (
    PrimeLocalSeries,
    abs_weight_sum,
    closed_form,
    closed_form_pair_tau1k,
    closed_form_tau_elementary,
    closed_form_unitary,
    generator_for,
    normalize,
    normalized_series,
    raw_local_series,
    series_equal,
    series_mul,
    series_one,
    tuples_up_to_degree,
    zeta_shape_for,
)


def test_generator_rules_product_and_lcm():
    g = generator_for(tau1k(2), "product", 2)
    assert g.rule((1, 1)) == 2
    assert g.rule((3, 0)) == 2
    assert g.rule((0, 5)) == 3
    g = generator_for(tau1k(2), "lcm", 2)
    assert g.rule((1, 1)) == 1
    assert g.rule((2, 5)) == 3
    g = generator_for(TAU_STAR, "product", 3)
    assert g.rule((0, 0, 0)) == 1
    assert g.rule((2, 0, 1)) == 2


def test_generator_rules_symmetric():
    import itertools

    for fid in (TAU, tau1k(3), TAU_EXP, TAU_STAR):
        for kind in ("product", "lcm"):
            g = generator_for(fid, kind, 3)
            for nu in tuples_up_to_degree(3, 6):
                for perm in itertools.permutations(nu):
                    assert g.rule(perm) == g.rule(nu)


def test_generator_unsupported():
    from multidiv.arith import MOBIUS

    with pytest.raises(ValueError):
        generator_for(MOBIUS, "product", 2)
    with pytest.raises(ValueError):
        generator_for(TAU, "frobnicate", 2)


def test_raw_series_tau_r2():
    s = raw_local_series(generator_for(tau1k(1), "product", 2), 2)
    assert s.coeffs == {
        (0, 0): 1,
        (1, 0): 2,
        (0, 1): 2,
        (2, 0): 3,
        (1, 1): 3,
        (0, 2): 3,
    }


def test_raw_series_degree_zero():
    s = raw_local_series(generator_for(TAU_EXP, "lcm", 3), 0)
    assert s.coeffs == {(0, 0, 0): 1}


def test_raw_series_tauexp_coeff():
    s = raw_local_series(generator_for(TAU_EXP, "product", 2), 5)
    assert s.coeff((2, 3)) == 2  # tau(5)


def test_normalize_tau_product_r2():
    s = normalized_series(tau1k(1), "product", 2, 4)
    assert s.coeffs == {(0, 0): 1, (1, 1): -1}


def test_normalize_tau12_product_r2():
    s = normalized_series(tau1k(2), "product", 2, 4)
    assert s.coeffs == {(0, 0): 1, (1, 1): 1, (1, 2): -1, (2, 1): -1}


def test_normalize_taustar_degree1():
    s = normalized_series(TAU_STAR, "product", 2, 1)
    assert s.coeffs == {(0, 0): 1}


def test_closed_form_pair_k3():
    s = closed_form_pair_tau1k(3, 4)
    assert s.coeffs == {
        (0, 0): 1,
        (1, 2): 1,
        (2, 1): 1,
        (1, 3): -1,
        (2, 2): -1,
        (3, 1): -1,
    }


def test_closed_form_tau_elementary_r2():
    s = closed_form_tau_elementary(2, 2)
    assert s.coeffs == {(0, 0): 1, (1, 1): -1}


def test_closed_form_unitary_vs_sympy():
    # independent polynomial-expansion oracle
    import sympy

    for r in (2, 3):
        xs = sympy.symbols(f"x0:{r}")
        prod = sympy.prod([1 - x for x in xs])
        expanded = sympy.expand(prod * (2 - prod))
        poly = sympy.Poly(expanded, *xs)
        ours = closed_form_unitary(r, 3 * r)
        expected = {}
        for monom, c in poly.terms():
            expected[tuple(int(m) for m in monom)] = int(c)
        assert ours.coeffs == expected


def test_closed_form_dispatch():
    ok, _ = series_equal(closed_form("tau1k-pair", 2, 8), closed_form_pair_tau1k(2, 8))
    assert ok
    with pytest.raises(ValueError):
        closed_form("nope", 2, 8)


def test_series_equal_pair_vs_normalized():
    for k in (1, 2, 3, 4, 5):
        a = normalized_series(tau1k(k), "product", 2, 10)
        b = closed_form_pair_tau1k(k, 10)
        ok, witness = series_equal(a, b, 10)
        assert ok, witness


def test_series_equal_tau_elementary():
    for r in (2, 3):
        a = normalized_series(tau1k(1), "product", r, 8)
        b = closed_form_tau_elementary(r, 8)
        ok, witness = series_equal(a, b, 8)
        assert ok, witness


def test_series_equal_witness():
    a = series_one(2, 4)
    b = series_one(2, 4)
    b.set_coeff((1, 1), 5)
    b.set_coeff((0, 2), 7)
    ok, witness = series_equal(a, b)
    assert not ok
    assert witness == (0, 2)  # lexicographically least difference


def test_unitary_normalized_equals_closed_form():
    for r in (2, 3):
        a = normalized_series(TAU_STAR, "product", r, 12)
        b = closed_form_unitary(r, 12)
        ok, witness = series_equal(a, b, 12)
        assert ok, witness


def test_unitary_product_equals_lcm_series():
    ok, witness = series_equal(
        normalized_series(TAU_STAR, "product", 2, 8),
        normalized_series(TAU_STAR, "lcm", 2, 8),
    )
    assert ok, witness


# --- axis vanishing (the coefficient mechanism reproduced) ---------------------

def axis_coefficient_oracle(ell, k):
    """Expected axis coefficient of the normalized tau1k series.

    On an axis only one variable is active, so the coefficient at x_j^ell is
    the ell-th coefficient of (1-x)(1-x^k) * sum_m (floor(m/k)+1) x^m, i.e.
    t(ell) - t(ell-1) - t(ell-k) + t(ell-k-1) with t(m) = floor(m/k)+1 for
    m >= 0 and 0 for m < 0.  Case split: all three cases give 0 for ell >= 1.
    """
    t = lambda m: m // k + 1 if m >= 0 else 0
    if 1 <= ell <= k - 1:
        val = t(ell) - t(ell - 1)
    elif ell == k:
        val = t(k) - t(k - 1) - 1
    else:
        val = t(ell) - t(ell - 1) - t(ell - k) + t(ell - k - 1)
    return val


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("kind", ["product", "lcm"])
def test_axis_vanishing_tau1k(r, k, kind):
    D = 10
    s = normalized_series(tau1k(k), kind, r, D)
    for j in range(r):
        for ell in range(1, D + 1):
            expected = axis_coefficient_oracle(ell, k)
            assert expected == 0
            assert s.axis_coeff(j, ell) == 0


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("kind", ["product", "lcm"])
def test_axis_tauexp(r, kind):
    s = normalized_series(TAU_EXP, kind, r, 8)
    for j in range(r):
        for ell in (1, 2, 3, 4):
            assert s.axis_coeff(j, ell) == 0
        assert s.axis_coeff(j, 5) == -1


def test_axis_taustar():
    for r in (2, 3):
        s = normalized_series(TAU_STAR, "product", r, 6)
        for j in range(r):
            assert s.axis_coeff(j, 1) == 0


def test_normalized_series_symmetric():
    for fid in (TAU, tau1k(2), TAU_EXP, TAU_STAR):
        for kind in ("product", "lcm"):
            for r in (2, 3):
                assert normalized_series(fid, kind, r, 8).is_symmetric()


def test_constant_term_is_one():
    for fid in (TAU, tau1k(3), TAU_EXP, TAU_STAR):
        for kind in ("product", "lcm"):
            s = normalized_series(fid, kind, 2, 6)
            assert s.coeff((0, 0)) == 1


# --- Busche-Ramanujan correction table (r=2) ------------------------------------

def pair_correction_table(nu1, nu2, k):
    if nu1 == nu2 == 0:
        return 1
    if nu1 >= 1 and nu2 >= 1 and nu1 + nu2 == k:
        return 1
    if nu1 >= 1 and nu2 >= 1 and nu1 + nu2 == k + 1:
        return -1
    return 0


def test_correction_table_matches_series():
    for k in (1, 2, 3, 4, 5):
        s = normalized_series(tau1k(k), "product", 2, 12)
        for nu in tuples_up_to_degree(2, 12):
            assert s.coeff(nu) == pair_correction_table(nu[0], nu[1], k), (k, nu)


# --- summability diagnostics ------------------------------------------------------

def test_abs_weight_sum_bounded_taustar():
    sums = [
        abs_weight_sum(normalized_series(TAU_STAR, "product", 2, D), [0.51, 0.51])
        for D in (6, 10, 14, 18)
    ]
    # increments must shrink toward zero (geometric-type convergence)
    increments = [b - a for a, b in zip(sums, sums[1:])]
    assert all(i >= 0 for i in increments)
    assert increments[-1] < 0.05 * increments[0] + 1e-12


def test_abs_weight_sum_bounded_tau1k_pair_condition():
    for k in (1, 2, 3):
        sums = [
            abs_weight_sum(normalized_series(tau1k(k), "product", 2, D), [0.51, 0.51])
            for D in (6, 10, 14, 18)
        ]
        increments = [b - a for a, b in zip(sums, sums[1:])]
        assert increments[-1] < 0.05 * increments[0] + 1e-12


def test_abs_weight_sum_tauexp_infinite_support_bounded():
    # tauexp corrections have infinite support; increments still shrink fast
    sums = [
        abs_weight_sum(normalized_series(TAU_EXP, "product", 2, D), [0.51, 0.51])
        for D in (8, 16, 24, 32)
    ]
    increments = [b - a for a, b in zip(sums, sums[1:])]
    assert increments == sorted(increments, reverse=True)
    assert increments[-1] < 0.05 * increments[0]
    assert sums[-1] < 12.0


def test_abs_weight_sum_flags_wrong_normalization():
    # an un-normalized series keeps accumulating weighted mass over the
    # tested degree range instead of stabilizing
    raw = [
        abs_weight_sum(
            raw_local_series(generator_for(TAU, "product", 2), D), [0.51, 0.51]
        )
        for D in (6, 10, 14, 18)
    ]
    increments = [b - a for a, b in zip(raw, raw[1:])]
    assert increments[-1] > 1.0


# --- output formats ------------------------------------------------------------

def test_pretty_printer():
    s = normalized_series(tau1k(2), "product", 2, 4)
    assert s.pretty() == "1 + x1*x2 - x1*x2^2 - x1^2*x2"


def test_json_dump_shape():
    s = normalized_series(tau1k(2), "product", 2, 4)
    d = s.to_json_dict()
    assert d["r"] == 2 and d["D"] == 4
    assert [[0, 0], 1] in d["coeffs"]


def test_series_mul_truncation():
    a = series_one(2, 3)
    a.set_coeff((1, 0), 1)
    b = series_one(2, 3)
    b.set_coeff((0, 1), 1)
    prod = series_mul(a, b)
    assert prod.coeffs == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
