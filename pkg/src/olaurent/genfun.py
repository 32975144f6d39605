"""Generating-function identities and the contour extraction of R_n.

Two identities are checked against truncated sums:

    f(x t) / (1 - t)   = sum_n f_n(x) t^n                  (|t| < 1)
    ((s+1)/(s-z)) f(s z) + ((s-1)/(s+z)) f(-s z)
                       = 2 sum_n R_n(x) z^n                (|z| < |s|)

where s is either square root of x; the left side is invariant under the
choice of branch.  Truncation residuals are compared against geometric
tail estimates.  Dividing the second identity by z^(n+1) and integrating
over |z| = |s|/2 extracts a single R_n(x).

Evaluations of f go through the truncated source series, so points are
required to sit inside the convergence disc with a fixed safety margin.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainViolation, InsufficientOrder, InvalidParams, PoleProximity
from .series import TruncatedPowerSeries
from .systems import OLPSystem

__all__ = [
    "GenfunSample",
    "GenfunCheck",
    "check_partial_sum_genfun",
    "check_laurent_genfun",
    "rn_by_contour",
]

RADIUS_MARGIN = 0.95
POLE_TOL = 1e-6


@dataclass(frozen=True)
class GenfunSample:
    """One evaluation point for a generating-function check.

    ``t`` drives the partial-sum identity, ``z`` the Laurent identity.
    ``sqrt_x`` defaults to the principal square root; pass the other
    branch explicitly to exercise branch invariance.
    """

    x: complex
    terms: int
    t: complex | None = None
    z: complex | None = None
    sqrt_x: complex | None = None

    def __post_init__(self):
        if self.terms < 0:
            raise InvalidParams("terms must be >= 0")
        if self.sqrt_x is None:
            object.__setattr__(self, "sqrt_x", cmath.sqrt(self.x))
        err = abs(self.sqrt_x * self.sqrt_x - self.x)
        if err > 1e-12 * max(1.0, abs(self.x)):
            raise InvalidParams(f"sqrt_x^2 differs from x by {err:.3e}")


@dataclass(frozen=True)
class GenfunCheck:
    """Residual of a truncated identity next to its tail estimate."""

    residual: float
    tail_bound: float
    lhs: complex


def _partial_values(source: TruncatedPowerSeries, x: complex, terms: int) -> np.ndarray:
    """f_0(x)..f_terms(x) by cumulative summation of d_k x^k."""
    k = np.arange(terms + 1)
    return np.cumsum(source.coeffs[:terms + 1] * np.asarray(x, np.complex128) ** k)


def check_partial_sum_genfun(system: OLPSystem, sample: GenfunSample) -> GenfunCheck:
    """Residual of f(xt)/(1-t) against sum_{n<=terms} f_n(x) t^n."""
    if sample.t is None:
        raise InvalidParams("partial-sum check needs sample.t")
    if sample.terms > system.K:
        raise InsufficientOrder(f"system built to K = {system.K}, need {sample.terms}")
    x, t, terms = sample.x, sample.t, sample.terms
    rho = system.source.radius
    if abs(t) >= 1:
        raise DomainViolation(f"|t| = {abs(t)} must be < 1")
    if not abs(x) <= RADIUS_MARGIN * rho:
        raise DomainViolation(f"|x| = {abs(x)} outside margin {RADIUS_MARGIN} * radius")
    f_n = _partial_values(system.source, x, terms)
    rhs = complex(np.dot(f_n, t ** np.arange(terms + 1)))
    lhs = system.source(x * t) / (1 - t)
    cmax = float(np.max(np.abs(f_n)))
    bound = (cmax * abs(t) ** (terms + 1) / (1 - abs(t))
             + system.source.tail_bound(abs(x * t)) / abs(1 - t))
    return GenfunCheck(residual=abs(lhs - rhs), tail_bound=bound, lhs=lhs)


def check_laurent_genfun(system: OLPSystem, sample: GenfunSample) -> GenfunCheck:
    """Residual of the two-kernel identity against 2 sum R_n(x) z^n."""
    if sample.z is None:
        raise InvalidParams("Laurent check needs sample.z")
    if sample.terms > system.K:
        raise InsufficientOrder(f"system built to K = {system.K}, need {sample.terms}")
    x, z, s, terms = sample.x, sample.z, sample.sqrt_x, sample.terms
    rho = system.source.radius
    if x == 0 or not abs(x) <= RADIUS_MARGIN * rho:
        raise DomainViolation(f"need 0 < |x| <= {RADIUS_MARGIN} * radius, got |x| = {abs(x)}")
    if not abs(z) < abs(s):
        raise DomainViolation(f"|z| = {abs(z)} must be < |sqrt x| = {abs(s)}")
    if abs(s - z) < POLE_TOL or abs(s + z) < POLE_TOL:
        raise PoleProximity("z too close to +-sqrt(x)")
    lhs = ((s + 1) / (s - z)) * system.source(s * z) \
        + ((s - 1) / (s + z)) * system.source(-s * z)
    f_n = _partial_values(system.source, x, terms)
    # R_n(x) z^n = f_n(x) w_n with w_n = z^n / x^ceil(n/2); the w ladder
    # multiplies by z/x on odd steps and z on even ones, so |w_n| decays
    # like (|z|/|s|)^n and never overflows
    if terms >= 1:
        n = np.arange(1, terms + 1)
        factors = np.where(n % 2 == 1, z / x, z).astype(np.complex128)
        w = np.concatenate(([1.0 + 0j], np.cumprod(factors)))
    else:
        w = np.ones(1, dtype=np.complex128)
    rhs = 2.0 * complex(np.dot(f_n, w))
    ratio = abs(z) / abs(s)
    cmax = 2.0 * float(np.max(np.abs(f_n))) * max(1.0, 1.0 / abs(s))
    prefac = abs((s + 1) / (s - z)) + abs((s - 1) / (s + z))
    bound = (cmax * ratio ** (terms + 1) / (1 - ratio)
             + prefac * system.source.tail_bound(abs(s * z)))
    return GenfunCheck(residual=abs(lhs - rhs), tail_bound=bound, lhs=lhs)


def rn_by_contour(source: TruncatedPowerSeries, n: int, x: complex,
                  nodes: int = 512) -> complex:
    """R_n(x) extracted from the Laurent generating function.

    Quadrature of the identity's left side against z^(-n-1) over the
    circle |z| = |sqrt x|/2; the result halves because the identity
    carries a factor 2 on the series side.
    """
    if n < 0:
        raise InvalidParams("n must be >= 0")
    if nodes < 16:
        raise InvalidParams("contour needs at least 16 nodes")
    if x == 0 or not abs(x) < source.radius:
        raise DomainViolation(f"need 0 < |x| < radius, got |x| = {abs(x)}")
    s = cmath.sqrt(x)
    r = abs(s) / 2
    # r**(-n) reaches 2**n here, so the sum cancels by that factor before the
    # coefficient emerges; evaluate in the widest available precision and use
    # the exact periodicity of the node phases, rounding once at the end
    z = kernels.circle_nodes_extended(r, nodes)
    se = kernels.QUAD_DTYPE(s)
    lhs = ((se + 1) / (se - z)) * kernels.eval_poly_extended(source.coeffs, se * z) \
        + ((se - 1) / (se + z)) * kernels.eval_poly_extended(source.coeffs, -se * z)
    zpow = kernels.circle_nodes_extended(1.0, nodes)[(-n * np.arange(nodes)) % nodes]
    scale = np.abs(z[0]) ** (-n)
    return complex((lhs * zpow).sum() * scale / (2.0 * nodes))
