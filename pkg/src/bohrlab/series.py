"""Truncated power series with rigorous tail bounds.

A :class:`TruncatedSeries` stores the coefficients ``c_0..c_M`` of an analytic
function together with an upper bound for the suppressed remainder
``sum_{n>M} |c_n| r^n`` valid for every ``r <= r_max``.  Tails come either
from a coefficient envelope ``|c_n| <= scale * n**power`` (preferred, it yields
bounds for weighted sums as well) or from a bare number.

Everything here is double precision.  Exact arithmetic lives in
:mod:`bohrlab.polyroots`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ArgumentError, CatalogError, ParameterDomainError, SubordinationError

EPS = float(np.finfo(float).eps)


def power_tail(scale: float, power: int, x: float, start: int) -> float:
    """Upper bound for ``sum_{n>=start} scale * n**power * x**n`` with ``0 <= x < 1``.

    The term ratio ``x*((n+1)/n)**power`` decreases towards ``x``; terms are
    summed explicitly until it drops below ``(1+x)/2`` and the remainder is
    bounded by a geometric series with that ratio.
    """
    if scale == 0.0 or x == 0.0:
        return 0.0
    if not 0.0 <= x < 1.0:
        return math.inf
    start = max(start, 1)
    cutoff = max(0.5, 0.5 * (1.0 + x))
    total = 0.0
    n = start
    while True:
        term = scale * n**power * x**n
        ratio = x * ((n + 1) / n) ** power
        if ratio <= cutoff:
            total += term / (1.0 - ratio)
            break
        total += term
        n += 1
    return total * (1.0 + 4.0 * EPS) + math.ulp(total)


@dataclass(frozen=True)
class Envelope:
    """Coefficient envelope ``|c_n| <= scale * n**power`` for all ``n >= 1``."""

    scale: float
    power: int

    def __post_init__(self):
        if self.scale < 0 or self.power < 0:
            raise ArgumentError("envelope scale and power must be nonnegative")

    def bound(self, n: int) -> float:
        return self.scale * n**self.power

    def tail(self, r: float, start: int, weight: int = 0) -> float:
        return power_tail(self.scale, self.power + weight, r, start)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients ``c_0..c_M`` plus a remainder bound valid on ``[0, r_max]``."""

    coeffs: np.ndarray
    r_max: float
    tail_bound: float = 0.0
    envelope: Optional[Envelope] = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex if np.iscomplexobj(self.coeffs) else float)
        if c.ndim != 1 or c.size == 0:
            raise ArgumentError("coeffs must be a nonempty 1-d sequence")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if not 0.0 <= self.r_max < 1.0:
            raise ParameterDomainError(f"r_max must lie in [0, 1), got {self.r_max}")
        if self.envelope is not None:
            object.__setattr__(
                self, "tail_bound", self.envelope.tail(self.r_max, self.truncation_order + 1)
            )
        if not self.tail_bound >= 0.0:
            raise ArgumentError("tail_bound must be nonnegative")

    @classmethod
    def polynomial(cls, coeffs: Sequence, r_max: float = 0.5) -> "TruncatedSeries":
        return cls(np.asarray(coeffs), r_max=r_max, envelope=Envelope(0.0, 0))

    @property
    def truncation_order(self) -> int:
        return self.coeffs.size - 1

    @property
    def abs_coeffs(self) -> np.ndarray:
        return np.abs(self.coeffs)

    def _check_r(self, r: float) -> None:
        if not 0.0 <= r <= self.r_max:
            raise ParameterDomainError(f"r={r} outside [0, r_max={self.r_max}]")

    def majorant(self, r: float, from_n: int = 0, weight: int = 0) -> float:
        """Truncated ``sum_{from_n<=n<=M} n**weight |c_n| r**n``."""
        self._check_r(r)
        n = np.arange(self.coeffs.size, dtype=float)
        terms = self.abs_coeffs * n**weight * r**n
        return float(np.sum(terms[from_n:]))

    def tail(self, r: float, weight: int = 0) -> float:
        """Bound for ``sum_{n>M} n**weight |c_n| r**n``."""
        self._check_r(r)
        M = self.truncation_order
        if self.envelope is not None:
            return self.envelope.tail(r, M + 1, weight)
        if self.tail_bound == 0.0:
            return 0.0
        if weight == 0:
            return self.tail_bound
        if r == 0.0:
            return 0.0
        # |c_n| r_max^n <= tail_bound for each single n > M
        if r >= self.r_max:
            return math.inf
        return power_tail(self.tail_bound, weight, r / self.r_max, M + 1)

    def __call__(self, z: complex) -> complex:
        return complex(np.polynomial.polynomial.polyval(z, self.coeffs))


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order, tail propagated at ``r_max``."""
    if a.r_max != b.r_max:
        raise ArgumentError(f"incompatible r_max: {a.r_max} vs {b.r_max}")
    rho = a.r_max
    M = min(a.truncation_order, b.truncation_order)
    full = np.convolve(a.coeffs, b.coeffs)
    n = np.arange(full.size, dtype=float)
    known_high = float(np.sum(np.abs(full[M + 1:]) * rho ** n[M + 1:]))
    ta, tb = a.tail(rho), b.tail(rho)
    ma, mb = a.majorant(rho), b.majorant(rho)
    tail = known_high + ma * tb + mb * ta + ta * tb
    if math.isfinite(tail) and tail > 0.0:
        tail = tail * (1.0 + 8.0 * EPS) + math.ulp(tail)
    return TruncatedSeries(full[: M + 1], r_max=rho, tail_bound=tail)


def _toeplitz_lower(c: np.ndarray, size: int) -> np.ndarray:
    """Matrix of multiplication by ``c`` on series truncated at ``size - 1``."""
    col = np.zeros(size, dtype=c.dtype)
    m = min(size, c.size)
    col[:m] = c[:m]
    T = np.zeros((size, size), dtype=c.dtype)
    for j in range(size):
        T[j:, j] = col[: size - j]
    return T


def compose_coeffs(outer: np.ndarray, inner: np.ndarray, M: int) -> np.ndarray:
    """Horner evaluation of ``outer(inner(z))`` modulo ``z**(M+1)``; inner[0] must be 0."""
    dtype = np.result_type(outer, inner)
    T = _toeplitz_lower(np.asarray(inner, dtype=dtype), M + 1)
    top = min(M, outer.size - 1)
    result = np.zeros(M + 1, dtype=dtype)
    result[0] = outer[top]
    for j in range(top - 1, -1, -1):
        result = T @ result
        result[0] += outer[j]
    return result


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Substitute ``inner`` (with zero constant term) into ``outer``.

    Coefficients up to order ``M = min(M_outer, M_inner)`` are exact.  The tail
    comes from the majorant composition ``|outer|(|inner|(r))`` and is infinite
    when the inner majorant leaves the outer series' validity disk.
    """
    if inner.coeffs[0] != 0:
        raise SubordinationError(
            f"inner series must vanish at the origin, constant term is {inner.coeffs[0]}"
        )
    M = min(outer.truncation_order, inner.truncation_order)
    coeffs = compose_coeffs(outer.coeffs, inner.coeffs, M)
    rho = inner.r_max
    x = inner.majorant(rho) + inner.tail(rho)
    tail = math.inf
    if x <= outer.r_max:
        total = float(np.polynomial.polynomial.polyval(x, outer.abs_coeffs)) + outer.tail(x)
        maj = compose_coeffs(outer.abs_coeffs, inner.abs_coeffs, M)
        partial = float(np.sum(maj * rho ** np.arange(M + 1)))
        tail = max(total - partial, 0.0) + 4.0 * math.ulp(total)
    return TruncatedSeries(coeffs, r_max=rho, tail_bound=tail)


@dataclass(frozen=True)
class ConcaveCoefficients:
    """``A_1..A_M`` of ``((1+z)/(1-z))**alpha - 1) / (2 alpha)``."""

    alpha: float
    values: tuple

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int) -> float:
        """1-based access, ``A[n]``."""
        if n < 1:
            raise IndexError("A_n is defined for n >= 1")
        return self.values[n - 1]


def _check_alpha(alpha) -> None:
    if not 1 <= alpha <= 2:
        raise ParameterDomainError(f"alpha must lie in [1, 2], got {alpha}")


def _concave_recurrence(alpha, M: int, one):
    # (n+1) w_{n+1} = 2 alpha w_n + (n-1) w_{n-1},  w = ((1+z)/(1-z))**alpha
    w_prev, w = one, 2 * alpha * one
    out = [w]
    for n in range(1, M):
        w_prev, w = w, (2 * alpha * w + (n - 1) * w_prev) / (n + 1)
        out.append(w)
    return [v / (2 * alpha) for v in out]


def concave_coefficients(alpha: float, M: int) -> ConcaveCoefficients:
    _check_alpha(alpha)
    if M < 1:
        raise ArgumentError(f"M must be >= 1, got {M}")
    values = _concave_recurrence(float(alpha), M, 1.0)
    return ConcaveCoefficients(float(alpha), tuple(values))


def concave_coefficients_exact(alpha, M: int) -> list:
    """Same recurrence over :class:`fractions.Fraction`; exact for rational alpha."""
    alpha = Fraction(alpha)
    _check_alpha(alpha)
    if M < 1:
        raise ArgumentError(f"M must be >= 1, got {M}")
    return _concave_recurrence(alpha, M, Fraction(1))


def f_alpha(alpha: float, r: float) -> float:
    return (((1.0 + r) / (1.0 - r)) ** alpha - 1.0) / (2.0 * alpha)


# -- closed-form catalog ------------------------------------------------------


class ClosedForm(str, Enum):
    GEOMETRIC = "sum_r^n"
    N_R = "sum_n_r^n"
    N_R_FROM2 = "sum_n>=2_n_r^n"
    N2_R_SHIFT = "sum_n^2_r^(n-1)"
    GEOMETRIC_SQ = "sum_r^2n"
    N_R_SQ = "sum_n_r^2n"
    N2_R_SQ = "sum_n^2_r^2n"
    N3_R_SQ = "sum_n^3_r^2n"
    F_ALPHA = "f_alpha"


@dataclass(frozen=True)
class ClosedFormSum:
    identifier: ClosedForm
    evaluate: Callable[..., float]
    term: Callable[..., float]
    start: int = 1


def _sum(ident, evaluate, term, start=1):
    return ident, ClosedFormSum(ident, evaluate, term, start)


CATALOG = dict(
    [
        _sum(ClosedForm.GEOMETRIC, lambda r: r / (1 - r), lambda n, r: r**n),
        _sum(ClosedForm.N_R, lambda r: r / (1 - r) ** 2, lambda n, r: n * r**n),
        _sum(
            ClosedForm.N_R_FROM2,
            lambda r: r**2 * (2 - r) / (1 - r) ** 2,
            lambda n, r: n * r**n,
            start=2,
        ),
        _sum(ClosedForm.N2_R_SHIFT, lambda r: (1 + r) / (1 - r) ** 3, lambda n, r: n**2 * r ** (n - 1)),
        _sum(ClosedForm.GEOMETRIC_SQ, lambda r: r**2 / (1 - r**2), lambda n, r: r ** (2 * n)),
        _sum(ClosedForm.N_R_SQ, lambda r: r**2 / (1 - r**2) ** 2, lambda n, r: n * r ** (2 * n)),
        _sum(
            ClosedForm.N2_R_SQ,
            lambda r: r**2 * (1 + r**2) / (1 - r**2) ** 3,
            lambda n, r: n**2 * r ** (2 * n),
        ),
        _sum(
            ClosedForm.N3_R_SQ,
            lambda r: r**2 * (r**4 + 4 * r**2 + 1) / (1 - r**2) ** 4,
            lambda n, r: n**3 * r ** (2 * n),
        ),
    ]
)


def _lookup(identifier) -> ClosedForm:
    try:
        return ClosedForm(identifier)
    except ValueError:
        raise CatalogError(f"unknown closed-form identifier {identifier!r}") from None


def closed_form(identifier, r: float, alpha: Optional[float] = None) -> float:
    ident = _lookup(identifier)
    if not 0.0 <= r < 1.0:
        raise ParameterDomainError(f"r must lie in [0, 1), got {r}")
    if ident is ClosedForm.F_ALPHA:
        if alpha is None:
            raise ArgumentError("f_alpha requires alpha")
        _check_alpha(alpha)
        return f_alpha(alpha, r)
    return float(CATALOG[ident].evaluate(r))


def partial_sum(identifier, r: float, M: int, alpha: Optional[float] = None) -> float:
    """Direct summation of the catalog series over ``start <= n <= M``."""
    ident = _lookup(identifier)
    if ident is ClosedForm.F_ALPHA:
        A = concave_coefficients(alpha, M).values
        return math.fsum(a * r**n for n, a in enumerate(A, start=1))
    entry = CATALOG[ident]
    return math.fsum(entry.term(n, r) for n in range(entry.start, M + 1))


def closed_form_tail(identifier, r: float, M: int, alpha: Optional[float] = None) -> float:
    """``closed_form - partial_sum`` with a two-ulp safety margin, never negative."""
    total = closed_form(identifier, r, alpha)
    return max(total - partial_sum(identifier, r, M, alpha), 0.0) + 2.0 * math.ulp(total)


# -- standard series ----------------------------------------------------------


def geometric(M: int, r_max: float, scale: float = 1.0, constant: float = 1.0) -> TruncatedSeries:
    """``constant + scale * sum_{n>=1} z^n``."""
    c = np.full(M + 1, scale, dtype=float)
    c[0] = constant
    return TruncatedSeries(c, r_max=r_max, envelope=Envelope(abs(scale), 0))


def koebe(M: int, r_max: float, scale: float = 1.0) -> TruncatedSeries:
    """``scale * z/(1-z)^2``."""
    c = scale * np.arange(M + 1, dtype=float)
    return TruncatedSeries(c, r_max=r_max, envelope=Envelope(abs(scale), 1))


def concave_extremal(alpha: float, M: int, r_max: float, scale: float = 1.0) -> TruncatedSeries:
    """``scale * f_alpha``.

    ``A_n(alpha)`` is nondecreasing in alpha (the exponent of a series with
    nonnegative coefficients), so ``A_n <= A_n(2) = n`` serves as envelope.
    """
    A = concave_coefficients(alpha, M).values
    c = np.concatenate(([0.0], scale * np.asarray(A)))
    return TruncatedSeries(c, r_max=r_max, envelope=Envelope(abs(scale), 1))
