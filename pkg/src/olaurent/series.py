"""Truncated power series and sparse Laurent polynomials.

A :class:`TruncatedPowerSeries` stores Maclaurin coefficients ``d_0..d_T``
together with radius-of-convergence metadata.  Products truncate to the
smaller operand order; reciprocals use the standard triangular recurrence.

A :class:`LaurentPoly` is an immutable finite sum ``sum_k c_k x^k`` over
integer exponents of either sign, kept in canonical form: coefficients
that are exactly zero are never stored.  Arithmetic goes through the
normal operators; evaluation accepts scalars or numpy arrays and raises
:class:`~olaurent.errors.EvalAtZero` when a negative exponent meets the
origin.
"""

from __future__ import annotations

import math
from typing import Iterator, Mapping

import numpy as np

from . import kernels
from .errors import EvalAtZero, InvalidParams, NonzeroCoefficientViolated, ZeroConstantTerm

__all__ = ["TruncatedPowerSeries", "LaurentPoly"]


class TruncatedPowerSeries:
    """Maclaurin coefficients ``d_0..d_T`` plus a positive radius.

    Args:
        coeffs: complex coefficients, ascending powers, at least one entry.
        radius: radius of convergence of the underlying function; may be
            ``math.inf``.  Must be strictly positive.
    """

    __slots__ = ("coeffs", "radius")

    def __init__(self, coeffs, radius: float = math.inf):
        arr = np.asarray(coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] == 0:
            raise InvalidParams("coeffs must be a non-empty 1-d sequence")
        if not radius > 0:
            raise InvalidParams(f"radius must be positive, got {radius}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "radius", float(radius))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedPowerSeries is immutable")

    @classmethod
    def source(cls, coeffs, radius: float) -> "TruncatedPowerSeries":
        """Constructor for series serving as a partial-sum source.

        Rejects a constant term different from 1 and any zero coefficient,
        the two structural requirements for building a Laurent system.
        """
        s = cls(coeffs, radius)
        if s.coeffs[0] != 1:
            raise InvalidParams(f"source series needs d_0 = 1, got {s.coeffs[0]}")
        zeros = np.flatnonzero(s.coeffs == 0)
        if zeros.size:
            raise NonzeroCoefficientViolated(f"zero coefficient at index {zeros[0]}")
        return s

    @property
    def order(self) -> int:
        """Truncation order T (index of the last stored coefficient)."""
        return self.coeffs.shape[0] - 1

    def coeff(self, k: int) -> complex:
        """d_k, or 0 for k beyond the truncation order."""
        if k < 0:
            raise InvalidParams("power series coefficients start at k = 0")
        if k > self.order:
            return 0j
        return complex(self.coeffs[k])

    def __mul__(self, other: "TruncatedPowerSeries") -> "TruncatedPowerSeries":
        if not isinstance(other, TruncatedPowerSeries):
            return NotImplemented
        # mixed orders truncate to the shorter operand; radii take the min
        n = min(self.order, other.order) + 1
        prod = kernels.cauchy_product(self.coeffs, other.coeffs, n)
        return TruncatedPowerSeries(prod, min(self.radius, other.radius))

    def reciprocal(self) -> "TruncatedPowerSeries":
        """Coefficients of 1/f to the same order, same radius metadata.

        The metadata is a conservative bound: 1/f converges at least on the
        disc where f does whenever f has no zeros there, which is the regime
        every caller in this package operates in.
        """
        if self.coeffs[0] == 0:
            raise ZeroConstantTerm("cannot invert a series with a_0 = 0")
        return TruncatedPowerSeries(kernels.reciprocal_coeffs(self.coeffs), self.radius)

    def __call__(self, z):
        """Evaluate the truncated polynomial at a scalar or ndarray."""
        if isinstance(z, np.ndarray):
            pts = np.ascontiguousarray(z, dtype=np.complex128)
            return kernels.eval_poly(self.coeffs, pts)
        acc = complex(self.coeffs[-1])
        zz = complex(z)
        for k in range(self.coeffs.shape[0] - 2, -1, -1):
            acc = acc * zz + complex(self.coeffs[k])
        return acc

    def tail_bound(self, s: float) -> float:
        """Estimated magnitude of the dropped tail at ``|z| = s``.

        Extrapolates geometrically from the trailing retained terms: with
        t_k = |d_k| s^k and q the largest of the last few ratios t_k/t_{k-1},
        the estimate is t_T q/(1-q), or ``inf`` when q >= 1.
        """
        t = np.abs(self.coeffs) * float(s) ** np.arange(self.coeffs.shape[0])
        if self.order == 0:
            return 0.0
        w = min(8, self.order)
        num, den = t[-w:], t[-w - 1:-1]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(den > 0, num / np.where(den > 0, den, 1.0),
                              np.where(num > 0, np.inf, 0.0))
        q = float(np.max(ratios))
        if not q < 1.0:
            return math.inf
        return float(t[-1]) * q / (1.0 - q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedPowerSeries):
            return NotImplemented
        return (self.radius == other.radius
                and self.coeffs.shape == other.coeffs.shape
                and bool(np.all(self.coeffs == other.coeffs)))

    __hash__ = None

    def __repr__(self) -> str:
        head = ", ".join(f"{c:g}" for c in self.coeffs[:4])
        tail = ", ..." if self.order >= 4 else ""
        return f"TruncatedPowerSeries([{head}{tail}], order={self.order}, radius={self.radius})"


class LaurentPoly:
    """Finite Laurent polynomial ``sum_k c_k x^k``, exponents of any sign.

    Canonical form stores no exact-zero coefficients, so two polynomials
    are equal iff their term maps are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, complex] | None = None):
        canon: dict[int, complex] = {}
        if terms:
            for e, c in terms.items():
                c = complex(c)
                if c != 0:
                    canon[int(e)] = c
        object.__setattr__(self, "_terms", canon)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1.0})

    @classmethod
    def monomial(cls, exponent: int, coeff: complex = 1.0) -> "LaurentPoly":
        return cls({exponent: coeff})

    # -- inspection -----------------------------------------------------------

    def coeff(self, exponent: int) -> complex:
        return self._terms.get(int(exponent), 0j)

    def items(self) -> list[tuple[int, complex]]:
        """Terms as (exponent, coefficient) pairs, ascending exponent."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[int, complex]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def min_exponent(self) -> int | None:
        return min(self._terms) if self._terms else None

    @property
    def max_exponent(self) -> int | None:
        return max(self._terms) if self._terms else None

    # -- ring operations --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0j) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out: dict[int, complex] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = e1 + e2
                    out[e] = out.get(e, 0j) + c1 * c2
            return LaurentPoly(out)
        if isinstance(other, (int, float, complex)):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``x**k`` (exponent shift)."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    # -- evaluation ---------------------------------------------------------------

    def _dense(self) -> tuple[np.ndarray, int]:
        lo, hi = self.min_exponent, self.max_exponent
        dense = np.zeros(hi - lo + 1, dtype=np.complex128)
        for e, c in self._terms.items():
            dense[e - lo] = c
        return dense, lo

    def __call__(self, x):
        """Evaluate at a scalar or ndarray of points.

        Negative exponents are evaluated stably as a dense Horner pass
        times ``x**min_exponent``.
        """
        if isinstance(x, np.ndarray):
            pts = np.ascontiguousarray(x, dtype=np.complex128)
            if not self._terms:
                return np.zeros(pts.shape, dtype=np.complex128)
            dense, lo = self._dense()
            if lo < 0 and np.any(pts == 0):
                raise EvalAtZero("negative exponents cannot be evaluated at 0")
            vals = kernels.eval_poly(dense, pts)
            return vals if lo == 0 else vals * pts ** lo
        if not self._terms:
            return 0j
        xx = complex(x)
        dense, lo = self._dense()
        if lo < 0 and xx == 0:
            raise EvalAtZero("negative exponents cannot be evaluated at 0")
        acc = complex(dense[-1])
        for k in range(dense.shape[0] - 2, -1, -1):
            acc = acc * xx + complex(dense[k])
        return acc * xx ** lo if lo != 0 else acc

    # -- comparisons ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self._terms:
            return "LaurentPoly(0)"
        bits = [f"{c:g}*x^{e}" for e, c in self.items()]
        return "LaurentPoly(" + " + ".join(bits) + ")"
