"""The orthogonality functional: exact moments, quadrature, Gram matrices."""

import math

import numpy as np
import pytest

from olaurent import (
    ContourSpec,
    FamilySpec,
    LaurentPoly,
    TruncatedPowerSeries,
    apply_L,
    build_system,
    contour_L,
    exact_moments,
    gram_matrix,
    realize,
    specialized_L_exp_binomial,
)
from olaurent.errors import (
    InsufficientOrder,
    InvalidParams,
    NearZeroDenominator,
    RadiusInvalid,
    TailNotNegligible,
    UnsupportedFamily,
    WindowExceeded,
)


def test_moment_values_geometric(geometric):
    mom = exact_moments(geometric, 3)
    assert mom[0] == 1
    assert mom[-1] == -1
    assert mom[-2] == 0
    assert mom[-3] == 0
    for m in (1, 2, 3):
        assert mom[m] == 0j  # structural, not approximate


def test_moment_values_exponential(exponential):
    mom = exact_moments(exponential, 6)
    for m in range(7):
        assert mom[-m] == pytest.approx((-1.0) ** m / math.factorial(m), rel=1e-14)


def test_moment_window_enforced(geometric):
    mom = exact_moments(geometric, 3)
    with pytest.raises(WindowExceeded):
        mom[4]
    with pytest.raises(WindowExceeded):
        mom[-4]


def test_moments_need_normalized_source():
    s = TruncatedPowerSeries([2, 1, 1], radius=1.0)
    with pytest.raises(InvalidParams):
        exact_moments(s, 2)
    with pytest.raises(InsufficientOrder):
        exact_moments(TruncatedPowerSeries([1, 1], radius=1.0), 5)


def test_apply_L_basics(geometric):
    mom = exact_moments(geometric, 4)
    sys2 = build_system(geometric, 2)
    assert apply_L(LaurentPoly.one(), mom) == 1
    assert apply_L(sys2.R[1], mom) == 0
    assert apply_L(sys2.R[1] * sys2.R[1], mom) == -1
    assert apply_L(LaurentPoly.zero(), mom) == 0j


def test_apply_L_rejects_wide_support(geometric):
    mom = exact_moments(geometric, 2)
    with pytest.raises(WindowExceeded):
        apply_L(LaurentPoly.monomial(-3), mom)
    with pytest.raises(WindowExceeded):
        apply_L(LaurentPoly.monomial(3), mom)


def test_contour_of_constant_is_one(geometric, exponential, exp_binomial):
    for src, c in ((geometric, 0.5), (exponential, 0.8), (exp_binomial, 0.7)):
        v = contour_L(LaurentPoly.one(), src, ContourSpec(radius=c))
        assert abs(v - 1) <= 1e-12


def test_contour_kills_even_polynomials_geometric(geometric):
    sysK = build_system(geometric, 12)
    spec = ContourSpec(radius=0.5)
    for n in range(1, 13):
        assert abs(contour_L(sysK.R[n], geometric, spec)) <= 1e-10


def test_contour_r1_squared_geometric(geometric):
    sysK = build_system(geometric, 1)
    v = contour_L(sysK.R[1] * sysK.R[1], geometric, ContourSpec(radius=0.5, nodes=256))
    assert abs(v - (-1)) <= 1e-10


def test_contour_agrees_with_moments_for_empty_polynomial(geometric):
    assert contour_L(LaurentPoly.zero(), geometric, ContourSpec(radius=0.5)) == 0j


def test_contour_radius_must_sit_inside_disc(geometric):
    with pytest.raises(RadiusInvalid):
        contour_L(LaurentPoly.one(), geometric, ContourSpec(radius=1.0))


def test_contour_rejects_fat_truncation_tail():
    short = realize(FamilySpec.geometric(), 20)
    with pytest.raises(TailNotNegligible):
        contour_L(LaurentPoly.one(), short, ContourSpec(radius=0.5))


def test_contour_rejects_denominator_near_zero():
    # 1 - 2w vanishes at w = 0.5, which the k = 0 node hits when c = sqrt(1/2)
    f = TruncatedPowerSeries([1, -2] + [0] * 12, radius=math.inf)
    with pytest.raises(NearZeroDenominator):
        contour_L(LaurentPoly.one(), f, ContourSpec(radius=math.sqrt(0.5)))


def test_contour_spec_validation():
    with pytest.raises(InvalidParams):
        ContourSpec(radius=0.0)
    with pytest.raises(InvalidParams):
        ContourSpec(radius=0.5, nodes=8)


def test_node_doubling_converges_to_floor(exponential):
    sysK = build_system(exponential, 6)
    mom = exact_moments(exponential, 12)
    p = sysK.R[6] * sysK.R[6]
    exact = apply_L(p, mom)
    floor = 1e-12 * (1 + abs(exact))
    errs = {N: abs(contour_L(p, exponential, ContourSpec(radius=0.8, nodes=N)) - exact)
            for N in (16, 32, 64, 128, 256)}
    # the 16-node rule has genuine aliasing error; one doubling must crush it
    assert errs[16] > 100 * floor
    assert errs[32] <= errs[16] / 2
    for small, big in ((32, 64), (64, 128), (128, 256)):
        assert errs[big] <= errs[small] or errs[big] <= floor


def test_gram_geometric_small(geometric):
    G = gram_matrix(build_system(geometric, 2), exact_moments(geometric, 4))
    assert np.array_equal(G, np.diag([1.0, -1.0, 1.0]))


def test_gram_diagonal_tracks_source_coefficients(exponential):
    G = gram_matrix(build_system(exponential, 10), exact_moments(exponential, 12))
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) <= 1e-10
    for n in range(11):
        expect = exponential.coeff(n) if n % 2 == 0 else -exponential.coeff(n + 1)
        # the diagonal emerges from cancellation of O(1) moment products, so
        # its relative error grows as the values shrink toward 1/10!
        assert abs(G[n, n] - expect) <= 1e-11 * abs(expect)


def test_gram_needs_wide_enough_window(exponential):
    with pytest.raises(WindowExceeded):
        gram_matrix(build_system(exponential, 10), exact_moments(exponential, 9))


def test_specialized_route_exp_binomial(exp_binomial_spec, exp_binomial):
    sysK = build_system(exp_binomial, 1)
    assert abs(specialized_L_exp_binomial(LaurentPoly.one(), exp_binomial_spec) - 1) <= 1e-12
    assert abs(specialized_L_exp_binomial(sysK.R[1], exp_binomial_spec)) <= 1e-12
    r1sq = sysK.R[1] * sysK.R[1]
    expect = -exp_binomial.coeff(2)
    assert abs(specialized_L_exp_binomial(r1sq, exp_binomial_spec) - expect) <= 1e-11


def test_specialized_route_rejects_other_kinds():
    with pytest.raises(UnsupportedFamily):
        specialized_L_exp_binomial(LaurentPoly.one(), FamilySpec.geometric())
    with pytest.raises(InvalidParams):
        specialized_L_exp_binomial(
            LaurentPoly.one(),
            FamilySpec.exp_binomial(1.0, (0.5,), (1.0,)), nodes=4)


def test_two_routes_agree_on_random_polynomials(exp_binomial, exp_binomial_spec):
    rng = np.random.default_rng(11)
    mom = exact_moments(exp_binomial, 8)
    spec = ContourSpec(radius=0.7)
    for _ in range(10):
        terms = {int(e): complex(*rng.normal(size=2)) for e in rng.integers(-8, 9, size=5)}
        p = LaurentPoly(terms)
        ex = apply_L(p, mom)
        assert abs(contour_L(p, exp_binomial, spec) - ex) <= 1e-10 * (1 + abs(ex))
        assert abs(specialized_L_exp_binomial(p, exp_binomial_spec) - ex) <= 1e-10 * (1 + abs(ex))
