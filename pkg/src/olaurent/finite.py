"""Finite recurrence systems and atomic representing measures.

A finite system prescribes recurrence coefficients g_1..g_{4n} and
f_1..f_{4n} (every f_k nonzero).  Building Q_0..Q_{4n} and imposing
L(Q_0) = 1, L(Q_k) = 0 determines the moments mu_m for |m| <= 2n by a
triangular solve: each Q_k introduces exactly one new extreme exponent,
whose coefficient is the pivot.

With a = mu_{-level} nonzero and s_k = mu_{k-level}/a, a measure with
M = 2N+1 equal-angle atoms on a circle of radius r,

    z_j = r exp(2 pi i j / M),
    w_j = (1/M) (1 + 2 sum_k Re(s_k r^{-k} exp(-2 pi i j k / M))),

has moments sum_j w_j z_j^k = s_k for k = 0..N by root-of-unity
orthogonality.  Doubling r from 1 until 2 sum_k |s_k| r^{-k} <= 1/2
keeps every weight at or above 1/(2M).  The functional is then

    L(Q) = sum_j w_j Q(z_j) a z_j^level

for Laurent polynomials supported in [-level, level].

The moment identity is exact algebra, but a weight held to precision
eps can only pin moment k down to r^k * eps; the doubling search
routinely lands at r = 16 or 32, where no hardware float is wide
enough.  Weights are therefore carried as mpmath values with the
working precision scaled to r^N, and only rounded to doubles at the
reporting boundary (the ``atoms`` field).  Construction stays O(N^2)
on a handful of atoms, so the cost is irrelevant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import (
    DegenerateLeadingCoefficient,
    InvalidParams,
    MissingCoefficients,
    PivotVanished,
    RepresentationCondFailed,
    WindowExceeded,
)
from .functional import MomentTable
from .series import LaurentPoly, TruncatedPowerSeries
from .systems import recurrence_data

__all__ = [
    "FiniteSystemSpec",
    "FunctionalSolve",
    "AtomicMeasure",
    "build_Q",
    "solve_moments",
    "build_atomic_measure",
    "represent_functional",
]

DEGENERACY_TOL = 1e-12
PIVOT_TOL = 1e-12
COND_TOL = 1e-12

DEFAULT_G = 1.0 + 0j
DEFAULT_F = -1.0 + 0j


@dataclass(frozen=True)
class FiniteSystemSpec:
    """Recurrence coefficients for indices 1..4n; ``g[i]`` holds g_{i+1}.

    Sequences shorter than 4n are padded with the default extension
    g_k = 1, f_k = -1; the padding itself satisfies every constraint.
    """

    n_cap: int
    g: tuple[complex, ...] = ()
    f_rec: tuple[complex, ...] = ()

    def __post_init__(self):
        if self.n_cap < 1:
            raise InvalidParams("n_cap must be >= 1")
        full = 4 * self.n_cap
        g = tuple(complex(v) for v in self.g)
        f = tuple(complex(v) for v in self.f_rec)
        if len(g) > full or len(f) > full:
            raise InvalidParams(f"coefficient lists longer than 4n = {full}")
        g = g + (DEFAULT_G,) * (full - len(g))
        f = f + (DEFAULT_F,) * (full - len(f))
        if any(v == 0 for v in f):
            raise InvalidParams("every f_k must be nonzero")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "f_rec", f)

    @classmethod
    def from_partial_sums(cls, source: TruncatedPowerSeries, n_cap: int) -> "FiniteSystemSpec":
        """Coefficients of the source's own recurrence, out to index 4n."""
        rd = recurrence_data(source, 4 * n_cap)
        return cls(n_cap=n_cap, g=rd.g[1:], f_rec=rd.f_rec[1:])

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteSystemSpec":
        if not isinstance(obj, dict) or "n_cap" not in obj:
            raise InvalidParams("finite spec JSON needs 'n_cap'")

        def parse(values):
            return tuple(complex(v[0], v[1]) if isinstance(v, list) else complex(v)
                         for v in values)

        return cls(n_cap=int(obj["n_cap"]), g=parse(obj.get("g", ())),
                   f_rec=parse(obj.get("f_rec", ())))

    def to_json(self) -> dict:
        return {
            "n_cap": self.n_cap,
            "g": [[v.real, v.imag] for v in self.g],
            "f_rec": [[v.real, v.imag] for v in self.f_rec],
        }


@dataclass(frozen=True)
class FunctionalSolve:
    """Normalized moment data at a given representation level."""

    mu_table: MomentTable
    level: int
    a: complex
    s: tuple[complex, ...]

    @classmethod
    def from_moments(cls, moments: MomentTable, level: int) -> "FunctionalSolve":
        """Normalize by a = mu_{-level}; s_k = mu_{k-level}/a for k <= 2 level.

        Raises :class:`RepresentationCondFailed` when a vanishes (to
        rounding, relative to the largest moment in the window).
        """
        if level < 1:
            raise InvalidParams("level must be >= 1")
        if moments.window < level:
            raise WindowExceeded(f"moment window {moments.window} < level {level}")
        a = moments[-level]
        scale = max(abs(moments.mu[m]) for m in moments.mu)
        if abs(a) <= COND_TOL * scale:
            raise RepresentationCondFailed(
                f"a = mu[-{level}] = {a} vanishes; no atomic representation")
        s = tuple(moments[k - level] / a for k in range(2 * level + 1))
        return cls(mu_table=moments, level=level, a=a, s=s)


@dataclass(frozen=True)
class AtomicMeasure:
    """Atoms (location, weight) whose moments match s_0..s_N.

    ``atoms`` holds display-precision copies; the authoritative weights
    live in ``wide_weights`` together with the decimal precision they
    were built at.  ``moment`` and the representation evaluate against
    those, using the exact periodicity of the atom phases, so residuals
    stay far below any float tolerance even for large radii.
    """

    atoms: tuple[tuple[complex, float], ...]
    moment_window: int
    radius: float
    wide_weights: tuple = field(repr=False, default=())
    precision: int = field(repr=False, default=50)

    @property
    def locations(self) -> np.ndarray:
        return np.array([z for z, _ in self.atoms], dtype=np.complex128)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=np.float64)

    def moment(self, k: int) -> complex:
        m = len(self.atoms)
        with mpmath.workdps(self.precision):
            roots = mpmath.unitroots(m)
            acc = mpmath.mpc(0)
            for j, w in enumerate(self.wide_weights):
                acc += w * roots[(j * k) % m]
            return complex(acc * mpmath.mpf(self.radius) ** k)


def build_Q(spec: FiniteSystemSpec) -> tuple[LaurentPoly, ...]:
    """Q_0..Q_{4n} from the finite recurrence.

    Each step must keep the new extreme coefficient nonzero (top
    coefficient at even indices, bottom at odd ones); a collapse there
    signals an invalid parameter choice.
    """
    q_prev = LaurentPoly.zero()
    q_cur = LaurentPoly.one()
    out = [q_cur]
    x_inv = LaurentPoly.monomial(-1)
    x = LaurentPoly.monomial(1)
    one = LaurentPoly.one()
    for k in range(1, 4 * spec.n_cap + 1):
        gk, fk = spec.g[k - 1], spec.f_rec[k - 1]
        if k % 2 == 1:
            step = (x_inv + gk * one) * q_cur + fk * q_prev
            extreme = -(k + 1) // 2
        else:
            step = (one + gk * x) * q_cur + fk * q_prev
            extreme = k // 2
        scale = max((abs(c) for _, c in step.items()), default=0.0)
        if scale == 0.0 or abs(step.coeff(extreme)) < DEGENERACY_TOL * scale:
            raise DegenerateLeadingCoefficient(
                f"Q_{k} lost its coefficient at exponent {extreme}")
        q_prev, q_cur = q_cur, step
        out.append(q_cur)
    return tuple(out)


def solve_moments(Q: tuple[LaurentPoly, ...], window: int) -> MomentTable:
    """Triangular solve of L(Q_0) = 1, L(Q_k) = 0 for mu over [-window, window].

    Q_{2m+1} determines mu_{-m-1} (pivot at exponent -m-1); Q_{2m}
    determines mu_m (pivot at exponent m).
    """
    if window < 0:
        raise InvalidParams("window must be >= 0")
    if len(Q) < 2 * window + 1:
        raise MissingCoefficients(f"need Q_0..Q_{2 * window}, have {len(Q) - 1}")
    mu: dict[int, complex] = {0: 1.0 + 0j}
    for k in range(1, 2 * window + 1):
        new = -(k + 1) // 2 if k % 2 == 1 else k // 2
        poly = Q[k]
        pivot = poly.coeff(new)
        scale = max(abs(c) for _, c in poly.items())
        if abs(pivot) < PIVOT_TOL * scale:
            raise PivotVanished(f"pivot of Q_{k} at exponent {new} is {pivot}")
        acc = 0j
        for e, c in poly.items():
            if e != new:
                acc += c * mu[e]
        mu[new] = -acc / pivot
    return MomentTable(window=window, mu=mu)


def build_atomic_measure(s) -> AtomicMeasure:
    """Equal-angle atoms on a circle matching the moments s_0..s_N.

    The radius search doubles from 1 until the positivity bound
    2 sum |s_k| r^{-k} <= 1/2 holds, which caps the weight fluctuation
    and keeps every w_j >= 1/(2M).
    """
    s_arr = np.asarray(s, dtype=np.complex128)
    if s_arr.ndim != 1 or s_arr.shape[0] == 0:
        raise InvalidParams("s must be a non-empty 1-d sequence")
    if abs(s_arr[0] - 1.0) > 1e-12:
        raise InvalidParams(f"s_0 must be 1, got {s_arr[0]}")
    n = s_arr.shape[0] - 1
    m = 2 * n + 1
    mags = np.abs(s_arr[1:])
    r = 1.0
    while n > 0 and 2.0 * float(np.sum(mags * r ** -np.arange(1, n + 1))) > 0.5:
        r *= 2.0
        if r > 2.0 ** 120:
            raise InvalidParams("runaway radius search; moments grow too fast")
    # working precision: enough headroom that r^N cancellation still leaves
    # the moments pinned to ~30 digits
    top = float(np.max(mags)) if n > 0 else 0.0
    dps = 36 + math.ceil(n * math.log10(max(r, 1.0))) + math.ceil(math.log10(top + 2.0))
    with mpmath.workdps(dps):
        roots = mpmath.unitroots(m)
        rmp = mpmath.mpf(r)
        scaled = [mpmath.mpc(complex(s_arr[k])) * rmp ** (-k) for k in range(n + 1)]
        wide = []
        for j in range(m):
            acc = mpmath.mpf(1)
            for k in range(1, n + 1):
                acc += 2 * (scaled[k] * roots[(-j * k) % m]).real
            wide.append(acc / m)
        atoms = tuple((complex(rmp * roots[j]), float(wide[j])) for j in range(m))
    return AtomicMeasure(atoms=atoms, moment_window=n, radius=r,
                         wide_weights=tuple(wide), precision=dps)


def represent_functional(solve: FunctionalSolve, measure: AtomicMeasure,
                         p: LaurentPoly) -> complex:
    """L(p) = sum_j w_j p(z_j) a z_j^level for p supported in [-level, level]."""
    if abs(solve.a) == 0:
        raise RepresentationCondFailed("a = 0; representation undefined")
    level = solve.level
    lo, hi = p.min_exponent, p.max_exponent
    if lo is None:
        return 0j
    if lo < -level or hi > level:
        raise WindowExceeded(
            f"support [{lo}, {hi}] outside representation span [-{level}, {level}]")
    if measure.moment_window < 2 * level:
        raise InvalidParams(
            f"measure covers moments to {measure.moment_window}, need {2 * level}")
    m = len(measure.atoms)
    items = tuple(p.items())
    with mpmath.workdps(measure.precision):
        roots = mpmath.unitroots(m)
        rmp = mpmath.mpf(measure.radius)
        a = mpmath.mpc(complex(solve.a))
        coeffs = [(e, mpmath.mpc(complex(c)) * rmp ** e) for e, c in items]
        total = mpmath.mpc(0)
        for j, w in enumerate(measure.wide_weights):
            val = mpmath.mpc(0)
            for e, ce in coeffs:
                val += ce * roots[(j * e) % m]
            total += w * val * roots[(j * level) % m]
        return complex(total * a * rmp ** level)
