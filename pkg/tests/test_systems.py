"""Laurent system construction and the two-step recurrence route."""

import math

import numpy as np
import pytest

from olaurent import (
    LaurentPoly,
    TruncatedPowerSeries,
    build_by_recurrence,
    build_system,
    check_normalization,
    recurrence_data,
)
from olaurent.errors import InsufficientOrder, MissingCoefficients, ZeroCoefficient


def test_geometric_first_three(geometric):
    sys2 = build_system(geometric, 2)
    assert sys2.R[0] == LaurentPoly({0: 1})
    assert sys2.R[1] == LaurentPoly({-1: 1, 0: 1})
    assert sys2.R[2] == LaurentPoly({-1: 1, 0: 1, 1: 1})


def test_r0_is_one_for_any_source(exponential, exp_binomial):
    for src in (exponential, exp_binomial):
        assert build_system(src, 0).R[0] == LaurentPoly.one()


def test_exponential_fourth_polynomial(exponential):
    r3 = build_system(exponential, 3).R[3]
    assert r3.coeff(-2) == 1
    assert r3.coeff(-1) == 1
    assert r3.coeff(0) == 0.5
    assert r3.coeff(1) == pytest.approx(1 / 6, rel=1e-15)
    assert r3.max_exponent == 1 and r3.min_exponent == -2


@pytest.mark.parametrize("K", [0, 1, 7, 20])
def test_shape_law_exact(exp_binomial, K):
    sysK = build_system(exp_binomial, K)
    for n, r in enumerate(sysK.R):
        if n % 2 == 0:
            assert r.max_exponent == n // 2
            assert r.min_exponent >= -(n // 2)
        else:
            assert r.min_exponent == -(n // 2 + 1)
            assert r.max_exponent <= n // 2


def test_extremal_coefficients(exp_binomial):
    sysK = build_system(exp_binomial, 15)
    for n in range(16):
        if n % 2 == 0:
            assert sysK.R[n].coeff(n // 2) == exp_binomial.coeff(n)
        else:
            assert sysK.R[n].coeff(-(n // 2 + 1)) == 1


def test_shifted_system_reproduces_partial_sums(geometric, exponential):
    for src in (geometric, exponential):
        sysK = build_system(src, 9)
        for n in range(10):
            shifted = sysK.R[n].shift(math.ceil(n / 2))
            expect = LaurentPoly({k: src.coeff(k) for k in range(n + 1)})
            assert shifted == expect


def test_build_requires_enough_coefficients():
    short = TruncatedPowerSeries.source([1, 1, 1], radius=1.0)
    with pytest.raises(InsufficientOrder):
        build_system(short, 3)


def test_build_rejects_zero_coefficient():
    src = TruncatedPowerSeries([1, 1, 0, 1], radius=1.0)
    with pytest.raises(ZeroCoefficient):
        build_system(src, 3)
    with pytest.raises(ZeroCoefficient):
        recurrence_data(src, 3)


def test_recurrence_closed_forms_exponential(exponential):
    rd = recurrence_data(exponential, 12)
    n = np.arange(13)
    assert np.allclose(rd.c, np.where(n == 0, 1, -n), rtol=1e-13)
    assert np.allclose(rd.xi, [math.factorial(int(k)) for k in n], rtol=1e-13)
    # index 0 of g / index 1 of recur_lambda are conventions, skip them
    assert np.allclose(rd.g[1:], 1.0 / n[1:], rtol=1e-13)
    assert np.allclose(rd.f_rec[1:], -1.0 / n[1:], rtol=1e-13)
    assert np.allclose(rd.recur_lambda[2:], n[2:] - 1, rtol=1e-13)


def test_recurrence_closed_forms_geometric(geometric):
    rd = recurrence_data(geometric, 10)
    assert np.allclose(rd.c[1:], -1.0, rtol=0)
    assert np.allclose(rd.xi, [(-1.0) ** k * (-1.0) ** k for k in range(11)], rtol=0)
    assert np.allclose(rd.g[1:], 1.0, rtol=0)
    assert np.allclose(rd.f_rec[1:], -1.0, rtol=0)
    assert np.allclose(rd.recur_lambda[2:], 1.0, rtol=0)


def test_xi_zero_is_one(exp_binomial):
    assert recurrence_data(exp_binomial, 0).xi[0] == 1


def test_recurrence_initialization(geometric):
    rd = recurrence_data(geometric, 1)
    q = build_by_recurrence(rd, 1)
    assert q[0] == LaurentPoly.one()
    assert q[1] == LaurentPoly({-1: 1, 0: 1})


def test_recurrence_route_matches_direct_for_exponential(exponential):
    # xi_n * d_n = n!/n! = 1, so the raw recurrence output IS R_n
    rd = recurrence_data(exponential, 20)
    q = build_by_recurrence(rd, 20)
    sysK = build_system(exponential, 20)
    for n in range(21):
        diff = q[n] - sysK.R[n]
        scale = max(abs(c) for _, c in sysK.R[n].items())
        assert all(abs(c) <= 1e-13 * scale for _, c in diff.items())


def test_geometric_q2_equals_r2(geometric):
    rd = recurrence_data(geometric, 2)
    q = build_by_recurrence(rd, 2)
    assert q[2] == build_system(geometric, 2).R[2]


def test_recurrence_needs_enough_data(geometric):
    rd = recurrence_data(geometric, 3)
    with pytest.raises(MissingCoefficients):
        build_by_recurrence(rd, 4)


@pytest.mark.parametrize("family", ["geometric", "exponential", "exp_binomial"])
def test_normalization_report(family, request):
    src = request.getfixturevalue(family)
    sysK = build_system(src, 24)
    rd = recurrence_data(src, 24)
    report = check_normalization(sysK, rd)
    assert report.K == 24
    assert report.max_rel_deviation <= 1e-12
    assert len(report.per_index) == 25
    assert report.per_index[0] == 0.0


def test_recurrence_substitution_leaves_zero_residual(exp_binomial):
    # odd step: Q_{2n+1} - (x^{-1} + g) Q_{2n} - f Q_{2n-1} = 0
    # even step: Q_{2n+2} - (1 + g x) Q_{2n+1} - f Q_{2n} = 0
    rd = recurrence_data(exp_binomial, 16)
    q = build_by_recurrence(rd, 16)
    for k in range(1, 17):
        if k % 2 == 1:
            step = LaurentPoly({-1: 1, 0: rd.g[k]})
        else:
            step = LaurentPoly({0: 1, 1: rd.g[k]})
        prev2 = q[k - 2] if k >= 2 else LaurentPoly.zero()
        resid = q[k] - step * q[k - 1] - rd.f_rec[k] * prev2
        scale = max(abs(c) for _, c in q[k].items())
        assert all(abs(c) <= 1e-12 * scale for _, c in resid.items())
