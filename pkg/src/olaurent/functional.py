"""The orthogonality functional, by exact moments and by contour quadrature.

The functional acts on Laurent polynomials through its moments
mu_m = L(x^m).  Writing e_m for the Maclaurin coefficients of 1/f,

    mu_0 = 1,   mu_{-m} = e_m,   mu_m = 0 for m >= 1,

where the vanishing of the positive moments is structural, not numeric.
An independent route evaluates the defining contour integral

    L(p) = (1/2 pi i) oint_{|y|=c} p(y^2) dy / (y f(y^2))

by the trapezoid rule on equispaced nodes, which converges geometrically
for analytic integrands.  On the system R_0..R_K these give
L(R_0) = 1 and L(R_n) = 0 for n >= 1, and the Gram matrix
G[n, m] = L(R_n R_m) is diagonal with G[2n, 2n] = d_{2n} and
G[2n+1, 2n+1] = -d_{2n+2}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (
    InsufficientOrder,
    InvalidParams,
    NearZeroDenominator,
    RadiusInvalid,
    TailNotNegligible,
    UnsupportedFamily,
    WindowExceeded,
)
from .families import FamilySpec
from .series import LaurentPoly, TruncatedPowerSeries
from .systems import OLPSystem

__all__ = [
    "MomentTable",
    "ContourSpec",
    "exact_moments",
    "apply_L",
    "contour_L",
    "gram_matrix",
    "specialized_L_exp_binomial",
]

MIN_DENOMINATOR = 1e-8
MAX_TAIL = 1e-13


@dataclass(frozen=True)
class MomentTable:
    """Moments mu_m for |m| <= window."""

    window: int
    mu: dict[int, complex] = field(repr=False)

    def __getitem__(self, m: int) -> complex:
        if abs(m) > self.window:
            raise WindowExceeded(f"moment {m} outside window [-{self.window}, {self.window}]")
        return self.mu[m]


@dataclass(frozen=True)
class ContourSpec:
    """Circle |y| = radius sampled at ``nodes`` equispaced points."""

    radius: float
    nodes: int = 512

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidParams("contour radius must be positive")
        if self.nodes < 16:
            raise InvalidParams("contour needs at least 16 nodes")


def exact_moments(source: TruncatedPowerSeries, window: int) -> MomentTable:
    """Moment table over [-window, window] from the reciprocal series."""
    if window < 0:
        raise InvalidParams("window must be >= 0")
    if source.order < window:
        raise InsufficientOrder(f"source order {source.order} < window {window}")
    if source.coeffs[0] != 1:
        raise InvalidParams("moments are normalized to d_0 = 1")
    e = kernels.reciprocal_coeffs(source.coeffs[:window + 1])
    mu: dict[int, complex] = {0: complex(e[0])}
    for m in range(1, window + 1):
        mu[-m] = complex(e[m])
        mu[m] = 0j  # structural zero
    return MomentTable(window=window, mu=mu)


def apply_L(p: LaurentPoly, moments: MomentTable) -> complex:
    """L(p) as the moment sum over the polynomial's support."""
    lo, hi = p.min_exponent, p.max_exponent
    if lo is None:
        return 0j
    if lo < -moments.window or hi > moments.window:
        raise WindowExceeded(
            f"support [{lo}, {hi}] exceeds moment window [-{moments.window}, {moments.window}]")
    return complex(sum(c * moments.mu[e] for e, c in p.items()))


def _contour_nodes(radius: float, nodes: int) -> np.ndarray:
    k = np.arange(nodes)
    return radius * np.exp(2j * np.pi * k / nodes)


def contour_L(p: LaurentPoly, source: TruncatedPowerSeries,
              spec: ContourSpec) -> complex:
    """Trapezoid quadrature of the defining contour integral.

    Requires the contour radius c to satisfy c^2 < radius(f), the
    truncated f to carry a negligible tail on the contour, and |f| to
    stay clear of zero on the nodes.
    """
    c = spec.radius
    if not c * c < source.radius:
        raise RadiusInvalid(
            f"contour radius {c} needs c^2 < series radius {source.radius}")
    tail = source.tail_bound(c * c)
    if not tail <= MAX_TAIL:
        raise TailNotNegligible(
            f"truncation tail estimate {tail:.3e} exceeds {MAX_TAIL:.0e} at |z| = {c * c}")
    # Off the unit circle the integrand spans roughly c**(2*lo) orders of
    # magnitude, so per-node double rounding would dominate the quadrature
    # error; evaluate in the widest available precision, round once at the end.
    y = kernels.circle_nodes_extended(c, spec.nodes)
    w = y * y
    f_vals = kernels.eval_poly_extended(source.coeffs, w)
    m = float(np.min(np.abs(f_vals)))
    if m <= MIN_DENOMINATOR:
        raise NearZeroDenominator(f"min |f| on contour = {m:.3e}")
    if p.min_exponent is None:
        return 0j
    dense, lo = p._dense()
    p_vals = kernels.eval_poly_extended(dense, w)
    if lo != 0:
        p_vals = p_vals * w ** lo
    return complex((p_vals / f_vals).sum() / spec.nodes)


def gram_matrix(system: OLPSystem, moments: MomentTable) -> np.ndarray:
    """G[n, m] = L(R_n R_m) for n, m <= K; complex symmetric."""
    K = system.K
    need = 2 * math.ceil(K / 2)
    if moments.window < need:
        raise WindowExceeded(f"Gram for K = {K} needs moment window >= {need}, "
                             f"have {moments.window}")
    G = np.zeros((K + 1, K + 1), dtype=np.complex128)
    for n in range(K + 1):
        for m in range(n + 1):
            v = apply_L(system.R[n] * system.R[m], moments)
            G[n, m] = v
            G[m, n] = v
    return G


def specialized_L_exp_binomial(p: LaurentPoly, spec: FamilySpec,
                               nodes: int = 512) -> complex:
    """Unit-circle quadrature using the closed-form reciprocal weight.

    For the exp-binomial family 1/f(y^2) = exp(-b y^2) prod_j
    (1 - a_j y^2)^(family_lambda_j), analytic on |y| = 1 because every
    a_j < 1; the principal branch is single-valued there since
    Re(1 - a_j y^2) > 0.
    """
    if spec.kind != "exp-binomial":
        raise UnsupportedFamily(f"specialized route needs exp-binomial, got {spec.kind!r}")
    if nodes < 16:
        raise InvalidParams("contour needs at least 16 nodes")
    y = _contour_nodes(1.0, nodes)
    w = y * y
    weight = np.exp(-spec.b * w)
    for aj, lj in zip(spec.a, spec.family_lambda):
        weight = weight * np.power(1.0 - aj * w, lj)
    vals = p(w) * weight
    return complex(math.fsum(vals.real), math.fsum(vals.imag)) / nodes
