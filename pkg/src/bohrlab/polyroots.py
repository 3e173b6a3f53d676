"""Exact rational polynomials, Sturm root counting and certified bisection.

Sturm chains are built over :class:`fractions.Fraction` from the squarefree
part of the input, so every count is exact.  Non-polynomial equations go
through :func:`bisect_monotone`, whose certificate is a floating sign change
on a bracket where the caller vouches for strict monotonicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .errors import (
    ArgumentError,
    BracketingError,
    DegenerateInputError,
    EndpointError,
    UniquenessError,
)

Rational = Union[int, Fraction]

ENDPOINT_EPS = Fraction(1, 10**9)


def to_fraction(x) -> Fraction:
    """Exact rational for ints, Fractions, rational strings and floats.

    Floats go through their shortest ``repr`` so that ``0.1`` becomes 1/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ArgumentError(f"cannot convert {x} to a rational")
        return Fraction(repr(x))
    return Fraction(x)


class RationalPolynomial:
    """Univariate polynomial with exact rational coefficients in ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [to_fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RationalPolynomial":
        p = cls([1])
        for root in roots:
            p = p * cls([-to_fraction(root), 1])
        return p

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``."""
        acc = Fraction(0) if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if not isinstance(x, float) else float(c))
        return acc

    def eval_float(self, x: float) -> float:
        """Value at a float argument, evaluated exactly and rounded once."""
        return float(self(Fraction(x)))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial([other])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
            mag = abs(c)
            coef = str(mag) if (mag != 1 or i == 0) else ""
            sep = "*" if coef and mono else ""
            parts.append(("-" if c < 0 else "+", f"{coef}{sep}{mono}"))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {t}" for s, t in parts[1:])

    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial([other])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = RationalPolynomial([1])
        for _ in range(n):
            result = result * self
        return result

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __divmod__(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.leading
        while len(rem) - 1 >= other.degree and rem:
            shift = len(rem) - 1 - other.degree
            factor = rem[-1] / lead
            q[shift] = factor
            for j, c in enumerate(other.coeffs):
                rem[shift + j] -= factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPolynomial(q), RationalPolynomial(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        lead = self.leading
        return RationalPolynomial(c / lead for c in self.coeffs)

    def divides(self, other: "RationalPolynomial") -> bool:
        """Exact test that ``self`` divides ``other`` over the rationals."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def to_strings(self) -> list:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "RationalPolynomial":
        return cls(Fraction(s) for s in items)


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: RationalPolynomial) -> RationalPolynomial:
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    if p.is_zero():
        raise DegenerateInputError("zero polynomial has no squarefree part")
    if p.degree < 1:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_chain(p: RationalPolynomial) -> list:
    """Sturm sequence ``p0 = sqf(p), p1 = p0', p_{i+1} = -rem(p_{i-1}, p_i)``."""
    p0 = squarefree_part(p)
    chain = [p0]
    if p0.degree < 1:
        return chain
    chain.append(p0.derivative())
    while chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)
    return chain


def sign_variations(chain: Sequence[RationalPolynomial], x: Fraction) -> int:
    signs = [v for v in (q(x) for q in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def _nudge_endpoints(p: RationalPolynomial, lo: Fraction, hi: Fraction):
    """Move root endpoints inward by ``ENDPOINT_EPS`` once, then insist they are not roots."""
    if p(lo) == 0:
        lo = lo + ENDPOINT_EPS
    if p(hi) == 0:
        hi = hi - ENDPOINT_EPS
    if lo >= hi:
        raise ArgumentError("interval collapsed while perturbing endpoint roots")
    if p(lo) == 0 or p(hi) == 0:
        raise EndpointError(f"endpoint still a root after perturbation: ({lo}, {hi})")
    return lo, hi


def _count(chain, lo, hi) -> int:
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def sturm_count(p: RationalPolynomial, lo: Rational, hi: Rational) -> int:
    """Exact number of distinct real roots of ``p`` in the open interval ``(lo, hi)``.

    A root sitting exactly on an endpoint is handled by shrinking the interval
    by 1e-9; the discarded sliver is checked to hold no further root, otherwise
    :class:`EndpointError` is raised.
    """
    if p.is_zero():
        raise DegenerateInputError("Sturm count of the zero polynomial is undefined")
    lo, hi = to_fraction(lo), to_fraction(hi)
    if not lo < hi:
        raise ArgumentError(f"need lo < hi, got ({lo}, {hi})")
    chain = sturm_chain(p)
    lo2, hi2 = _nudge_endpoints(chain[0], lo, hi)
    for edge, inner in ((lo, lo2), (hi, hi2)):
        if edge != inner:
            outer = 2 * edge - inner
            if chain[0](outer) == 0 or _count(chain, min(inner, outer), max(inner, outer)) != 1:
                raise EndpointError(f"root cluster within {ENDPOINT_EPS} of endpoint {edge}")
    return _count(chain, lo2, hi2)


class Certificate(str, Enum):
    STURM_COUNT_ONE = "sturm_count_one"
    MONOTONE_SIGN_CHANGE = "monotone_sign_change"


@dataclass(frozen=True)
class CertifiedRoot:
    """Isolating interval with its certificate and a refined estimate."""

    lo: Fraction
    hi: Fraction
    estimate: float
    certificate: Certificate
    residual: float
    tol: float
    polynomial: Optional[RationalPolynomial] = field(default=None, compare=False)
    count: Optional[int] = None

    @property
    def interval(self):
        return (self.lo, self.hi)

    @property
    def width(self) -> float:
        return float(self.hi - self.lo)

    def to_dict(self) -> dict:
        d = {
            "interval": [str(self.lo), str(self.hi)],
            "estimate": self.estimate,
            "certificate": self.certificate.value,
            "residual": self.residual,
            "tol": self.tol,
        }
        if self.polynomial is not None:
            d["poly"] = self.polynomial.to_strings()
            d["count"] = self.count
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CertifiedRoot":
        poly = d.get("poly")
        return cls(
            lo=Fraction(d["interval"][0]),
            hi=Fraction(d["interval"][1]),
            estimate=float(d["estimate"]),
            certificate=Certificate(d["certificate"]),
            residual=float(d["residual"]),
            tol=float(d["tol"]),
            polynomial=RationalPolynomial.from_strings(poly) if poly is not None else None,
            count=d.get("count"),
        )


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def isolate_root(
    p: RationalPolynomial, lo: Rational, hi: Rational, tol: float = 1e-12
) -> CertifiedRoot:
    """Bisect an interval holding exactly one root of ``p`` down to width ``tol``."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    n = sturm_count(p, lo, hi)
    if n != 1:
        raise UniquenessError(f"{p} has {n} distinct roots in ({lo}, {hi}), expected 1")
    q = squarefree_part(p)
    lo, hi = _nudge_endpoints(q, lo, hi)
    s_lo = _sign(q(lo))
    tol_q = to_fraction(tol)
    while hi - lo > tol_q:
        mid = (lo + hi) / 2
        v = q(mid)
        if v == 0:
            # rational root hit exactly: shrink symmetrically around it
            half = min(tol_q / 4, (hi - lo) / 4)
            lo, hi = mid - half, mid + half
            break
        if _sign(v) == s_lo:
            lo = mid
        else:
            hi = mid
    mid = float((lo + hi) / 2)
    dq = q.derivative()
    estimate = mid
    d = dq.eval_float(mid)
    if d != 0.0:
        step = mid - q.eval_float(mid) / d
        if float(lo) <= step <= float(hi):
            estimate = step
    return CertifiedRoot(
        lo=lo,
        hi=hi,
        estimate=estimate,
        certificate=Certificate.STURM_COUNT_ONE,
        residual=abs(p.eval_float(estimate)),
        tol=float(tol),
        polynomial=p,
        count=1,
    )


def bisect_monotone(
    F: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12
) -> CertifiedRoot:
    """Bisection for a function the caller knows to be strictly monotone on ``[lo, hi]``."""
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise ArgumentError(f"need lo < hi, got ({lo}, {hi})")
    f_lo, f_hi = F(lo), F(hi)
    if not f_lo * f_hi < 0:
        raise BracketingError(f"F({lo})={f_lo} and F({hi})={f_hi} do not bracket a root")
    s_lo = _sign(f_lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        v = F(mid)
        if v == 0.0:
            lo, hi = math.nextafter(mid, -math.inf), math.nextafter(mid, math.inf)
            if _sign(F(lo)) == _sign(F(hi)):
                lo, hi = mid - tol / 4, mid + tol / 4
            break
        if _sign(v) == s_lo:
            lo = mid
        else:
            hi = mid
    estimate = 0.5 * (lo + hi)
    return CertifiedRoot(
        lo=Fraction(lo),
        hi=Fraction(hi),
        estimate=estimate,
        certificate=Certificate.MONOTONE_SIGN_CHANGE,
        residual=abs(F(estimate)),
        tol=float(tol),
    )


def isolate_all(
    p: RationalPolynomial, lo: Rational, hi: Rational, tol: float = 1e-12
) -> list:
    """Certified roots of ``p`` in ``(lo, hi)``, in increasing order.

    Splits the interval by Sturm counts until each piece holds one root.
    """
    lo, hi = to_fraction(lo), to_fraction(hi)
    q = squarefree_part(p)
    n = sturm_count(q, lo, hi)
    if n == 0:
        return []
    if n == 1:
        root = isolate_root(q, lo, hi, tol)
        return [
            CertifiedRoot(
                lo=root.lo,
                hi=root.hi,
                estimate=root.estimate,
                certificate=root.certificate,
                residual=abs(p.eval_float(root.estimate)),
                tol=root.tol,
                polynomial=p,
                count=1,
            )
        ]
    mid = (lo + hi) / 2
    if q(mid) == 0:
        # keep the exact root on the left piece
        mid = mid + (hi - mid) / 1024
        while q(mid) == 0:
            mid = (mid + hi) / 2
    return isolate_all(p, lo, mid, tol) + isolate_all(p, mid, hi, tol)
