"""Laurent systems attached to power-series partial sums.

Writing f_n for the n-th partial sum of the source, the system is

    R_{2n}(x)   = f_{2n}(x) / x^n
    R_{2n+1}(x) = f_{2n+1}(x) / x^(n+1),

so R_{2n} has exponents in [-n, n] with top coefficient d_{2n} and
R_{2n+1} has exponents in [-n-1, n] with bottom coefficient d_0 = 1.

The same system, scaled to Q_n = R_n / (xi_n d_n), satisfies a two-step
recurrence

    Q_{2n+1} = (x^{-1} + g_{2n+1}) Q_{2n} + f^rec_{2n+1} Q_{2n-1}
    Q_{2n+2} = (1 + g_{2n+2} x) Q_{2n+1} + f^rec_{2n+2} Q_{2n}

with Q_{-1} = 0, Q_0 = 1, whose coefficients derive from the source:
c_0 = 1, c_n = -d_{n-1}/d_n, xi_k = (-1)^k prod_{j<=k} c_j, g_k = -1/c_k
and f^rec_k = -recur_lambda_k xi_{k-2}/xi_k with recur_lambda_n =
d_{n-2}/d_{n-1}.  Two index conventions close the k = 1 gap: xi_{-1} = 1
and recur_lambda_1 = 1, which make f^rec_1 = -d_1; the value multiplies
Q_{-1} = 0, so any nonzero choice is equivalent, and this one continues
the closed forms of the stock families (for d_k = 1/k! it keeps
f^rec_k = -1/k at k = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InsufficientOrder, InvalidParams, MissingCoefficients, ZeroCoefficient
from .series import LaurentPoly, TruncatedPowerSeries

__all__ = [
    "OLPSystem",
    "RecurrenceData",
    "NormalizationReport",
    "build_system",
    "recurrence_data",
    "build_by_recurrence",
    "check_normalization",
]


@dataclass(frozen=True)
class OLPSystem:
    """Laurent system R_0..R_K plus the partial sums it came from."""

    source: TruncatedPowerSeries
    R: tuple[LaurentPoly, ...]
    partials: tuple[LaurentPoly, ...]
    K: int

    def monic_partial(self, n: int) -> LaurentPoly:
        """f_n / d_n, the monic normalization of the n-th partial sum."""
        return self.partials[n] * (1.0 / self.source.coeff(n))


@dataclass(frozen=True)
class RecurrenceData:
    """Recurrence coefficients derived from a source series.

    All sequences are indexed directly: ``c[n]`` is c_n and so on.
    ``recur_lambda[0]``, ``g[0]`` and ``f_rec[0]`` are unused slots kept
    as zero; ``recur_lambda[1] = 1`` is the convention described in the
    module docstring.  ``recur_lambda`` is the recurrence quantity, not
    the exp-binomial family parameter ``family_lambda``.
    """

    c: tuple[complex, ...]
    recur_lambda: tuple[complex, ...]
    xi: tuple[complex, ...]
    g: tuple[complex, ...]
    f_rec: tuple[complex, ...]
    K: int


@dataclass(frozen=True)
class NormalizationReport:
    """Per-index relative deviation between the two construction routes."""

    per_index: tuple[float, ...]
    max_rel_deviation: float
    K: int


def _validate_source(source: TruncatedPowerSeries, K: int) -> None:
    if source.order < K:
        raise InsufficientOrder(f"source order {source.order} < requested K = {K}")
    if source.coeffs[0] != 1:
        raise InvalidParams(f"source needs d_0 = 1, got {source.coeffs[0]}")
    for k in range(K + 1):
        if source.coeffs[k] == 0:
            raise ZeroCoefficient(f"d_{k} = 0; the construction needs nonzero coefficients")


def build_system(source: TruncatedPowerSeries, K: int) -> OLPSystem:
    """Build R_0..R_K directly from the partial sums."""
    if K < 0:
        raise InvalidParams("K must be >= 0")
    _validate_source(source, K)
    partials: list[LaurentPoly] = []
    acc: dict[int, complex] = {}
    for n in range(K + 1):
        acc[n] = complex(source.coeffs[n])
        partials.append(LaurentPoly(acc))
    R = tuple(p.shift(-math.ceil(n / 2)) for n, p in enumerate(partials))
    return OLPSystem(source=source, R=R, partials=tuple(partials), K=K)


def recurrence_data(source: TruncatedPowerSeries, K: int) -> RecurrenceData:
    """Recurrence coefficients c, recur_lambda, xi, g, f_rec up to index K."""
    if K < 0:
        raise InvalidParams("K must be >= 0")
    _validate_source(source, K)
    d = source.coeffs
    c: list[complex] = [1.0 + 0j]
    for n in range(1, K + 1):
        c.append(-complex(d[n - 1]) / complex(d[n]))
    lam: list[complex] = [0j, 1.0 + 0j][:K + 1]
    for n in range(2, K + 1):
        lam.append(complex(d[n - 2]) / complex(d[n - 1]))
    xi: list[complex] = []
    prod = 1.0 + 0j
    for k in range(K + 1):
        prod *= c[k]
        xi.append((-1) ** k * prod)
    g: list[complex] = [0j]
    for k in range(1, K + 1):
        g.append(-1.0 / c[k])
    f_rec: list[complex] = [0j]
    for k in range(1, K + 1):
        xi_km2 = xi[k - 2] if k >= 2 else 1.0 + 0j  # xi_{-1} = 1
        f_rec.append(-lam[k] * xi_km2 / xi[k])
    return RecurrenceData(c=tuple(c), recur_lambda=tuple(lam), xi=tuple(xi),
                          g=tuple(g), f_rec=tuple(f_rec), K=K)


def build_by_recurrence(rd: RecurrenceData, K: int) -> tuple[LaurentPoly, ...]:
    """Q_0..Q_K from the two-step recurrence, Q_{-1} = 0 and Q_0 = 1."""
    if K < 0:
        raise InvalidParams("K must be >= 0")
    if rd.K < K:
        raise MissingCoefficients(f"recurrence data stops at {rd.K}, need {K}")
    q_prev = LaurentPoly.zero()   # Q_{-1}
    q_cur = LaurentPoly.one()     # Q_0
    out = [q_cur]
    x_inv = LaurentPoly.monomial(-1)
    x = LaurentPoly.monomial(1)
    one = LaurentPoly.one()
    for k in range(1, K + 1):
        if k % 2 == 1:
            step = (x_inv + rd.g[k] * one) * q_cur + rd.f_rec[k] * q_prev
        else:
            step = (one + rd.g[k] * x) * q_cur + rd.f_rec[k] * q_prev
        q_prev, q_cur = q_cur, step
        out.append(q_cur)
    return tuple(out)


def check_normalization(system: OLPSystem, rd: RecurrenceData) -> NormalizationReport:
    """Compare the recurrence route against R_n / (xi_n d_n).

    Deviation for index n is max over exponents of |Q_n - R_n/(xi_n d_n)|
    divided by the largest reference coefficient magnitude.
    """
    K = min(system.K, rd.K)
    Q = build_by_recurrence(rd, K)
    per: list[float] = []
    for n in range(K + 1):
        target = system.R[n] * (1.0 / (rd.xi[n] * complex(system.source.coeffs[n])))
        scale = max(abs(c) for _, c in target.items())
        diff = Q[n] - target
        dev = max((abs(c) for _, c in diff.items()), default=0.0)
        per.append(dev / scale)
    return NormalizationReport(per_index=tuple(per),
                               max_rel_deviation=max(per, default=0.0), K=K)
