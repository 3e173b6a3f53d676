"""Left-hand sides of the Bohr-type inequalities, evaluated on coefficient data.

Every functional returns a :class:`FunctionalValue`: the truncated value, a
rigorous bound on the suppressed tail and a floating rounding allowance.  The
true infinite-series value lies in ``[lower, upper]``.

``|h(z)|`` and ``|h'(z)|`` in the Rogosinski-type sums are replaced by the
majorant surrogates ``|phi(0)| + sum |a_n| r^n`` and ``sum n |a_n| r^(n-1)``;
these are what the radius proofs bound and they are attained on the positive
axis by every catalogued witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import NotAvailableError, ParameterDomainError, UsageError
from .radii import RadiusProblem, Theorem
from .series import EPS, TruncatedSeries

TARGETS = ("convex", "univalent", "concave")


@dataclass(frozen=True, eq=False)
class HarmonicPair:
    """Truncated ``f = h + conj(g)`` with ``h ~ a``, ``g ~ b`` and its hypotheses.

    ``lam`` is the distance from ``phi(0)`` to the boundary of ``phi(D)``,
    ``phi0_abs`` is ``|phi(0)|`` and ``target`` names the class of ``phi``.
    """

    a: TruncatedSeries
    b: TruncatedSeries
    k_bound: float
    lam: float
    phi0_abs: float = 0.0
    target: str = "univalent"
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.b.coeffs[0] != 0:
            raise ParameterDomainError("co-analytic part must satisfy b_0 = 0")
        if not 0.0 <= self.k_bound < 1.0:
            raise ParameterDomainError(f"k_bound must lie in [0, 1), got {self.k_bound}")
        if not 0.0 < self.lam <= 1.0:
            raise ParameterDomainError(f"lambda must lie in (0, 1], got {self.lam}")
        if self.target not in TARGETS:
            raise ParameterDomainError(f"unknown subordination target {self.target!r}")
        if self.phi0_abs < 0:
            raise ParameterDomainError("|phi(0)| must be nonnegative")

    @property
    def r_max(self) -> float:
        return min(self.a.r_max, self.b.r_max)

    @property
    def truncation_order(self) -> int:
        return min(self.a.truncation_order, self.b.truncation_order)


@dataclass(frozen=True)
class FunctionalValue:
    value: float
    tail_error: float = 0.0
    rounding: float = 0.0

    @property
    def lower(self) -> float:
        return self.value - self.rounding

    @property
    def upper(self) -> float:
        return self.value + self.tail_error + self.rounding

    def __add__(self, other: "FunctionalValue") -> "FunctionalValue":
        return FunctionalValue(
            self.value + other.value,
            self.tail_error + other.tail_error,
            self.rounding + other.rounding + EPS * abs(self.value + other.value),
        )

    def scale(self, c: float) -> "FunctionalValue":
        c = abs(c)
        return FunctionalValue(c * self.value, c * self.tail_error, c * self.rounding + EPS * c * self.value)


def _rounding(value: float, terms: int) -> float:
    return 2.0 * (terms + 1) * EPS * abs(value)


def _check_r(p: HarmonicPair, r: float) -> None:
    if not 0.0 <= r <= p.r_max:
        raise ParameterDomainError(f"r={r} outside [0, r_max={p.r_max}]")


def majorant_sum(p: HarmonicPair, r: float, from_n: int = 1) -> FunctionalValue:
    """``sum_{n >= from_n} (|a_n| + |b_n|) r^n``."""
    _check_r(p, r)
    value = p.a.majorant(r, from_n) + p.b.majorant(r, from_n)
    tail = p.a.tail(r) + p.b.tail(r)
    return FunctionalValue(value, tail, _rounding(value, p.truncation_order))


def refined_sum(p: HarmonicPair, r: float) -> FunctionalValue:
    """Majorant sum plus ``(1/(2-lam) + r/(1-r))`` times the squared-coefficient sum."""
    _check_r(p, r)
    lin = majorant_sum(p, r)
    n = np.arange(p.a.coeffs.size)
    quad_a = float(np.sum((p.a.abs_coeffs[1:] ** 2) * r ** (2 * n[1:])))
    n = np.arange(p.b.coeffs.size)
    quad_b = float(np.sum((p.b.abs_coeffs[1:] ** 2) * r ** (2 * n[1:])))
    # sum_{n>M} |c_n|^2 r^2n <= (sum_{n>M} |c_n| r^n)^2
    quad_tail = p.a.tail(r) ** 2 + p.b.tail(r) ** 2
    w = 1.0 / (2.0 - p.lam) + r / (1.0 - r)
    quad = FunctionalValue(quad_a + quad_b, quad_tail, _rounding(quad_a + quad_b, p.truncation_order))
    return lin + quad.scale(w)


def area_term(p: HarmonicPair, r: float) -> FunctionalValue:
    """``sqrt(S_r(h)/pi) = sqrt(sum n |a_n|^2 r^(2n))``."""
    _check_r(p, r)
    n = np.arange(p.a.coeffs.size)
    s = float(np.sum(n * p.a.abs_coeffs**2 * r ** (2 * n)))
    # sum_{n>M} n |a_n|^2 r^2n <= (sum_{n>M} n |a_n| r^n)^2
    t = p.a.tail(r, weight=1) ** 2
    root = math.sqrt(s)
    tail = math.sqrt(s + t) - root if math.isfinite(t) else math.inf
    if math.isfinite(tail):
        tail += 2.0 * math.ulp(math.sqrt(s + t))
    return FunctionalValue(root, tail, _rounding(root, p.a.truncation_order))


class Rogosinski(str, Enum):
    WITH_H_ABS = "with_h_abs"
    WITH_H_AND_HPRIME = "with_h_and_hprime"


def rogosinski_sum(p: HarmonicPair, r: float, variant="with_h_abs", from_n: int = 1) -> FunctionalValue:
    """Bohr-Rogosinski type sums with the majorant surrogate for ``|h|`` and ``|h'|``.

    ``with_h_abs``: ``|h(z)| + sum_{n>=from_n} (|a_n| + |b_n|) r^n``.
    ``with_h_and_hprime``: ``|h(z)| + |h'(z)| r + sum_{n>=2} |a_n| r^n + sum_{n>=1} |b_n| r^n``.
    """
    _check_r(p, r)
    variant = Rogosinski(variant)
    h_abs = p.phi0_abs + p.a.majorant(r, 1)
    ta = p.a.tail(r)
    if variant is Rogosinski.WITH_H_ABS:
        value = h_abs + p.a.majorant(r, from_n) + p.b.majorant(r, from_n)
        tail = 2 * ta + p.b.tail(r)
    else:
        hprime_r = p.a.majorant(r, 1, weight=1)
        value = h_abs + hprime_r + p.a.majorant(r, 2) + p.b.majorant(r, 1)
        tail = 2 * ta + p.a.tail(r, weight=1) + p.b.tail(r)
    return FunctionalValue(value, tail, _rounding(value, p.truncation_order))


def h_abs_pointwise(p: HarmonicPair, r: float, theta: float = 0.0) -> float:
    """``|h(r e^{i theta})|`` from the truncated coefficients; never exceeds the surrogate."""
    _check_r(p, r)
    return abs(p.a(r * complex(math.cos(theta), math.sin(theta))))


# -- theorem dispatch -----------------------------------------------------------


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


_CONVEX = {Theorem.ThmD, Theorem.ThmF, Theorem.T31, Theorem.T42, Theorem.T43}
_UNIVALENT = {Theorem.ThmC, Theorem.ThmE, Theorem.ThmG, Theorem.T32, Theorem.T41, Theorem.T41R, Theorem.T44}
_CONCAVE = {Theorem.ThmH, Theorem.ThmI, Theorem.T51, Theorem.T52}


def required_target(theorem: Theorem) -> str:
    if theorem in _CONVEX:
        return "convex"
    if theorem in _UNIVALENT:
        return "univalent"
    if theorem in _CONCAVE:
        return "concave"
    raise NotAvailableError(f"no harmonic-pair functional catalogued for {theorem.value}")


def _check_hypotheses(problem: RadiusProblem, p: HarmonicPair) -> None:
    need = required_target(problem.theorem)
    if need == "univalent":
        ok = True
    elif need == "convex":
        # f_1 = z/(1-z) is the convex half-plane map
        ok = p.target == "convex" or (p.target == "concave" and p.alpha == 1.0)
    else:
        ok = p.target == "concave" and p.alpha is not None and p.alpha <= problem.alpha + 1e-12
    if not ok:
        raise UsageError(
            f"{problem.theorem.value} needs a {need} subordination target"
            f"{'' if need != 'concave' else f' with alpha <= {problem.alpha}'}, "
            f"pair is {p.target}{'' if p.alpha is None else f'(alpha={p.alpha})'}"
        )
    if p.k_bound > problem.k + 1e-12:
        raise UsageError(f"pair dilatation bound k={p.k_bound} exceeds the theorem's k={problem.k}")


@dataclass(frozen=True)
class InequalityCheck:
    functional: FunctionalValue
    bound: float
    verdict: Verdict


def evaluate_inequality(problem: RadiusProblem, p: HarmonicPair, r: float) -> InequalityCheck:
    """Evaluate the theorem's left-hand side on ``p`` at ``r`` and compare with its bound."""
    _check_hypotheses(problem, p)
    t = problem.theorem
    bound = p.lam
    if t in (Theorem.ThmC, Theorem.ThmD, Theorem.ThmE, Theorem.ThmH, Theorem.T51):
        fv = majorant_sum(p, r)
    elif t in (Theorem.ThmF, Theorem.ThmG, Theorem.T31, Theorem.T32):
        fv = refined_sum(p, r)
    elif t in (Theorem.T41, Theorem.T41R, Theorem.T42):
        fv = majorant_sum(p, r) + area_term(p, r).scale(problem.mu)
    elif t in (Theorem.T43, Theorem.T44):
        fv = rogosinski_sum(p, r, Rogosinski.WITH_H_AND_HPRIME)
        bound = p.phi0_abs + p.lam
    elif t is Theorem.T52:
        fv = rogosinski_sum(p, r, Rogosinski.WITH_H_ABS)
        bound = p.phi0_abs + p.lam
    elif t is Theorem.ThmI:
        # analytic case: |g(z)| + sum_{n>=N} |b_n| r^n, pair carries g in ``a``
        fv = rogosinski_sum(p, r, Rogosinski.WITH_H_ABS, from_n=problem.N)
        bound = p.phi0_abs + p.lam
    else:  # pragma: no cover - required_target already filtered
        raise NotAvailableError(t.value)
    if fv.upper <= bound:
        verdict = Verdict.HOLDS
    elif fv.lower > bound:
        verdict = Verdict.FAILS
    else:
        verdict = Verdict.INCONCLUSIVE
    return InequalityCheck(fv, bound, verdict)


def check_inequality(problem: RadiusProblem, p: HarmonicPair, r: float) -> Verdict:
    return evaluate_inequality(problem, p, r).verdict
