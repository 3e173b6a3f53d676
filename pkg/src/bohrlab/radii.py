"""Catalog of Bohr-type radii.

Each theorem is a :class:`RadiusProblem`: a defining equation in ``r`` bound to
its parameters, a search interval, the direction in which the defining
function is monotone there, and a kind (``polynomial``, ``transcendental`` or
``closed_form``).  :func:`solve_radius` dispatches to Sturm isolation, monotone
bisection or the closed form (which is still certified by one of the other
two routes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from . import series
from .errors import (
    BracketingError,
    CatalogError,
    CatalogInconsistencyError,
    ParameterDomainError,
    UniquenessError,
)
from .polyroots import (
    CertifiedRoot,
    RationalPolynomial,
    bisect_monotone,
    isolate_root,
    sturm_count,
    to_fraction,
)

X = RationalPolynomial.x()


class Theorem(str, Enum):
    ThmA = "ThmA"
    ThmB = "ThmB"
    ThmC = "ThmC"
    ThmD = "ThmD"
    ThmE = "ThmE"
    ThmF = "ThmF"
    ThmG = "ThmG"
    ThmH = "ThmH"
    ThmI = "ThmI"
    T31 = "T31"
    T32 = "T32"
    T41 = "T41"
    T41R = "T41R"
    T42 = "T42"
    T43 = "T43"
    T44 = "T44"
    T51 = "T51"
    T52 = "T52"

    @classmethod
    def parse(cls, name) -> "Theorem":
        if isinstance(name, cls):
            return name
        for t in cls:
            if t.value.lower() == str(name).lower():
                return t
        raise CatalogError(f"unknown theorem {name!r}; known: {', '.join(t.value for t in cls)}")


class Kind(str, Enum):
    POLYNOMIAL = "polynomial"
    TRANSCENDENTAL = "transcendental"
    CLOSED_FORM = "closed_form"


# parameters each theorem reads; the rest are dropped from the problem
_USES = {
    Theorem.ThmA: {"N"},
    Theorem.ThmB: {"a0"},
    Theorem.ThmC: set(),
    Theorem.ThmD: {"K"},
    Theorem.ThmE: {"K"},
    Theorem.ThmF: set(),
    Theorem.ThmG: set(),
    Theorem.ThmH: {"alpha"},
    Theorem.ThmI: {"alpha", "N"},
    Theorem.T31: {"K"},
    Theorem.T32: {"K", "variant"},
    Theorem.T41: {"K", "mu"},
    Theorem.T41R: {"K", "mu"},
    Theorem.T42: {"K", "mu"},
    Theorem.T43: {"K"},
    Theorem.T44: {"K"},
    Theorem.T51: {"K", "alpha"},
    Theorem.T52: {"K", "alpha"},
}

# theorems catalogued as sharp (a witness attains equality at the radius)
SHARP = {
    Theorem.ThmC,
    Theorem.ThmD,
    Theorem.ThmF,
    Theorem.ThmG,
    Theorem.ThmH,
    Theorem.T41,
    Theorem.T42,
    Theorem.T43,
    Theorem.T44,
    Theorem.T51,
    Theorem.T52,
}

T32_VARIANTS = ("proof", "statement", "printed")


@dataclass(frozen=True)
class QuasiconformalParam:
    """``K >= 1`` and its dilatation bound ``k = (K-1)/(K+1)``."""

    K: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.K) and self.K >= 1):
            raise ParameterDomainError(f"K must be a finite number >= 1, got {self.K}")

    @property
    def k(self) -> float:
        return (self.K - 1.0) / (self.K + 1.0)

    @property
    def K_exact(self) -> Fraction:
        return to_fraction(self.K)

    @property
    def k_exact(self) -> Fraction:
        K = self.K_exact
        return (K - 1) / (K + 1)

    @classmethod
    def from_k(cls, k: float) -> "QuasiconformalParam":
        if not 0 <= k < 1:
            raise ParameterDomainError(f"k must lie in [0, 1), got {k}")
        return cls((1 + k) / (1 - k))


@dataclass(frozen=True)
class RadiusProblem:
    theorem: Theorem
    qc: QuasiconformalParam = field(default_factory=QuasiconformalParam)
    alpha: Optional[float] = None
    mu: Optional[float] = None
    N: Optional[int] = None
    a0: Optional[float] = None
    variant: Optional[str] = None
    search_interval: tuple = (Fraction(0), Fraction(1))
    monotone: str = "decreasing"
    kind: Kind = Kind.POLYNOMIAL

    @property
    def K(self) -> float:
        return self.qc.K

    @property
    def k(self) -> float:
        return self.qc.k

    @property
    def sharp(self) -> bool:
        return self.theorem in SHARP

    def params(self) -> dict:
        """Parameters actually used by the theorem, for serialization."""
        out = {}
        uses = _USES[self.theorem]
        if "K" in uses:
            out["K"] = self.K
        for name in ("alpha", "mu", "N", "a0", "variant"):
            if name in uses:
                out[name] = getattr(self, name)
        return out

    def label(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.theorem.value}({inner})" if inner else self.theorem.value


def _r1_T32(k: float) -> float:
    """``3 + 2k - 2 sqrt(2 + 3k + k^2)``, the smaller root of ``r^2 - (6+4k) r + 1``."""
    s = 3.0 + 2.0 * k
    return 1.0 / (s + 2.0 * math.sqrt(2.0 + 3.0 * k + k * k))


def make_problem(
    theorem,
    K: float = 1.0,
    alpha: Optional[float] = None,
    mu: Optional[float] = None,
    N: Optional[int] = None,
    a0: Optional[float] = None,
    variant: Optional[str] = None,
) -> RadiusProblem:
    """Validate parameters and attach interval, monotonicity and kind.

    Parameters the theorem does not read are discarded; theorems about
    analytic functions (A, B, C, F, G, H, I) always use ``K = 1``.
    """
    thm = Theorem.parse(theorem)
    uses = _USES[thm]
    qc = QuasiconformalParam(float(K) if "K" in uses else 1.0)
    if "alpha" in uses:
        alpha = 1.0 if alpha is None else float(alpha)
        if not 1.0 <= alpha <= 2.0:
            raise ParameterDomainError(f"alpha must lie in [1, 2], got {alpha}")
    else:
        alpha = None
    if "mu" in uses:
        mu = 0.0 if mu is None else float(mu)
        if not (math.isfinite(mu) and mu >= 0):
            raise ParameterDomainError(f"mu must be a finite number >= 0, got {mu}")
    else:
        mu = None
    if "N" in uses:
        N = 1 if N is None else N
        if int(N) != N or N < 1:
            raise ParameterDomainError(f"N must be an integer >= 1, got {N}")
        N = int(N)
    else:
        N = None
    if "a0" in uses:
        a0 = 0.0 if a0 is None else abs(float(a0))
        if a0 > 1:
            raise ParameterDomainError(f"|a0| must be <= 1, got {a0}")
    else:
        a0 = None
    if "variant" in uses:
        variant = variant or "proof"
        if variant not in T32_VARIANTS:
            raise ParameterDomainError(f"T32 variant must be one of {T32_VARIANTS}, got {variant!r}")
    else:
        variant = None

    k = qc.k
    third = Fraction(1, 3)
    half = Fraction(1, 2)
    table = {
        Theorem.ThmA: ((0, 1), "increasing", Kind.POLYNOMIAL),
        Theorem.ThmB: ((0, 1), "increasing", Kind.CLOSED_FORM),
        Theorem.ThmC: ((0, 1), "decreasing", Kind.CLOSED_FORM),
        Theorem.ThmD: ((0, 1), "increasing", Kind.CLOSED_FORM),
        Theorem.ThmE: ((0, half), "decreasing", Kind.TRANSCENDENTAL),
        Theorem.ThmF: ((0, third), "decreasing", Kind.POLYNOMIAL),
        Theorem.ThmG: ((0, 1), "decreasing", Kind.POLYNOMIAL),
        Theorem.ThmH: ((0, half), "increasing", Kind.CLOSED_FORM),
        Theorem.ThmI: ((0, half), "increasing", Kind.TRANSCENDENTAL),
        Theorem.T31: ((0, 1 / (3 + 2 * qc.k_exact)), "decreasing", Kind.POLYNOMIAL),
        Theorem.T32: ((0, Fraction(_r1_T32(k))), "decreasing", Kind.POLYNOMIAL),
        Theorem.T41: (
            (0, third),
            "decreasing",
            Kind.POLYNOMIAL if mu == 0 else Kind.TRANSCENDENTAL,
        ),
        Theorem.T41R: ((0, third), "decreasing", Kind.TRANSCENDENTAL),
        Theorem.T42: ((0, 1), "increasing", Kind.CLOSED_FORM),
        Theorem.T43: ((0, 1), "decreasing", Kind.POLYNOMIAL),
        Theorem.T44: ((0, third), "decreasing", Kind.POLYNOMIAL),
        Theorem.T51: ((0, half), "increasing", Kind.CLOSED_FORM),
        Theorem.T52: ((0, third), "increasing", Kind.CLOSED_FORM),
    }
    (lo, hi), monotone, kind = table[thm]
    return RadiusProblem(
        theorem=thm,
        qc=qc,
        alpha=alpha,
        mu=mu,
        N=N,
        a0=a0,
        variant=variant,
        search_interval=(Fraction(lo), Fraction(hi)),
        monotone=monotone,
        kind=kind,
    )


# -- polynomial building blocks -------------------------------------------------


def thm_a_poly(N: int) -> RationalPolynomial:
    return 2 * (1 + X) * X**N - (1 - X) ** 2


def thm_g_poly() -> RationalPolynomial:
    return (1 - 6 * X + X**2) * (1 - X) ** 2 * (1 + X) ** 3 - 16 * X**2 * (1 + X**2)


def t31_poly(k: Fraction) -> RationalPolynomial:
    """``G1(1, r)``."""
    return (3 + 2 * k) * X**3 - (5 + 4 * k**2) * X**2 - (3 + 2 * k) * X + 1


def t32_R1(k: Fraction) -> RationalPolynomial:
    r = X
    return (
        r**7 - 4 * k * r**6 - 5 * r**6 + 16 * k**2 * r**5 - 4 * k * r**5 + 9 * r**5
        + 16 * k**2 * r**4 + 8 * k * r**4 + 27 * r**4 + 8 * k * r**3 + 16 * k**2 * r**3
        + 27 * r**3 - 4 * k * r**2 + 16 * k**2 * r**2 + 9 * r**2 - 4 * k * r - 5 * r + 1
    )


def t32_R2(k: Fraction) -> RationalPolynomial:
    r = X
    return (
        2 - 10 * r - 8 * k * r - 14 * r**2 - 8 * k * r**2 + 22 * r**3 + 16 * k * r**3
        + 22 * r**4 + 16 * k * r**4 - 14 * r**5 - 8 * k * r**5 - 10 * r**6 - 8 * k * r**6
        + 2 * r**7
    )


def t32_poly(k: Fraction, variant: str = "proof") -> RationalPolynomial:
    """Defining polynomial of the refined univalent radius.

    ``proof``: ``G2(1, r) = 16(k^2+1)(r^2+1) r^3 - R1(r) + R2(r)`` assembled from
    the proof's own ``R1, R2``.  ``printed``: the expanded septic as typeset in
    the proof.  ``statement``: the quartic of the theorem statement.
    """
    r = X
    if variant == "proof":
        return 16 * (k**2 + 1) * (r**2 + 1) * r**3 - t32_R1(k) + t32_R2(k)
    if variant == "printed":
        return (
            r**7 - 4 * k * r**6 - 5 * r**6 - 4 * k * r**5 - 7 * r**5 + 16 * k**2 * r**4
            + 27 * r**4 + 8 * k * r**4 + 11 * r**3 + 8 * k * r**3 + 9 * r**2 - 4 * k * r**2
            + 16 * k**2 * r**2 - 5 * r - 4 * k * r + 1
        )
    if variant == "statement":
        return (
            1 - 5 * r - 4 * k * r - 21 * r**2 - 4 * k * r**2 - 16 * k**2 * r**2 + r**3
            - 16 * r**4 - 16 * k**2 * r**4
        )
    raise ParameterDomainError(f"unknown T32 variant {variant!r}")


def t41_poly(k: Fraction) -> RationalPolynomial:
    """``G3`` at ``mu = 0``: ``(1-r^2)^2 - 4(1+k) r (1+r)^2``."""
    return (1 - X**2) ** 2 - 4 * (1 + k) * X * (1 + X) ** 2


def t42_poly(k: Fraction, mu: Fraction) -> RationalPolynomial:
    return (2 * k + 3) * X**2 + 2 * (mu + k + 1) * X - 1


def t43_poly(k: Fraction) -> RationalPolynomial:
    return (1 - X) ** 2 - 2 * (X**2 + (k + 1) * X) * (1 - X) - 2 * X


def t44_poly(k: Fraction) -> RationalPolynomial:
    return (1 - X) ** 3 - 4 * (X**2 * (2 - X) + (1 + k) * X) * (1 - X) - 4 * X * (1 + X)


# -- defining functions ---------------------------------------------------------


@dataclass(frozen=True)
class DefiningFunction:
    F: Callable[[float], float]
    polynomial: Optional[RationalPolynomial] = None

    def __call__(self, r: float) -> float:
        return self.F(r)


def _poly_fn(p: RationalPolynomial) -> DefiningFunction:
    coeffs = [float(c) for c in p.coeffs]

    def F(r: float) -> float:
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * r + c
        return acc

    return DefiningFunction(F, p)


def _power_ratio(r: float, alpha: float) -> float:
    return ((1.0 + r) / (1.0 - r)) ** alpha


def defining_function(problem: RadiusProblem) -> DefiningFunction:
    """The theorem's equation ``F(r) = 0`` as printed, with its exact polynomial when one exists."""
    t = problem.theorem
    k = problem.k
    kq = problem.qc.k_exact
    if t is Theorem.ThmA:
        return _poly_fn(thm_a_poly(problem.N))
    if t is Theorem.ThmB:
        return _poly_fn((2 + to_fraction(problem.a0)) * X - 1)
    if t is Theorem.ThmC:
        return _poly_fn((1 - X) ** 2 - 4 * X)
    if t is Theorem.ThmD:
        return _poly_fn((2 * kq + 3) * X - 1)
    if t is Theorem.ThmE:
        return DefiningFunction(lambda r: (1 - r) ** 2 - 4 * r * (1 + k * math.sqrt(1 + r)))
    if t is Theorem.ThmF:
        return _poly_fn(t31_poly(Fraction(0)))
    if t is Theorem.ThmG:
        return _poly_fn(thm_g_poly())
    if t is Theorem.ThmH:
        a = problem.alpha
        return DefiningFunction(lambda r: _power_ratio(r, a) - 2.0)
    if t is Theorem.ThmI:
        a, N = problem.alpha, problem.N
        head = series.concave_coefficients(a, max(N - 1, 1)).values[: N - 1]

        def F(x: float) -> float:
            # sum_{n>=N} A_n x^n = f_alpha(x) - sum_{n<N} A_n x^n
            partial = math.fsum(A * x**n for n, A in enumerate(head, start=1))
            return 2.0 * series.f_alpha(a, x) - partial - 1.0 / (2.0 * a)

        return DefiningFunction(F)
    if t is Theorem.T31:
        return _poly_fn(t31_poly(kq))
    if t is Theorem.T32:
        return _poly_fn(t32_poly(kq, problem.variant))
    if t is Theorem.T41:
        mu = problem.mu
        if mu == 0:
            return _poly_fn(t41_poly(kq))
        return DefiningFunction(
            lambda r: (1 - r**2) ** 2
            - 4 * (1 + k) * r * (1 + r) ** 2
            - 4 * mu * r * math.sqrt(r**4 + 4 * r**2 + 1)
        )
    if t is Theorem.T41R:
        mu = problem.mu
        return DefiningFunction(
            lambda r: (1 - r**2) ** 2
            - 4 * (1 + k * math.sqrt(r + 1)) * r * (1 + r) ** 2
            - 4 * mu * r * math.sqrt(r**4 + 4 * r**2 + 1)
        )
    if t is Theorem.T42:
        return _poly_fn(t42_poly(kq, to_fraction(problem.mu)))
    if t is Theorem.T43:
        return _poly_fn(t43_poly(kq))
    if t is Theorem.T44:
        return _poly_fn(t44_poly(kq))
    if t is Theorem.T51:
        a = problem.alpha
        return DefiningFunction(lambda r: (k + 1) * (_power_ratio(r, a) - 1) - 1)
    if t is Theorem.T52:
        a = problem.alpha
        return DefiningFunction(lambda r: (k + 2) * (_power_ratio(r, a) - 1) - 1)
    raise CatalogError(f"no defining function for {t}")


def theorem_h_radius(alpha: float, verbatim: bool = False) -> float:
    """Concave-family Bohr radius ``(2^(1/a) - 1)/(2^(1/a) + 1)``.

    The product form ``(2^(1/a) - 1)(2^(1/a) + 1) = 4^(1/a) - 1`` is at least 1
    on ``[1, 2]`` and cannot be a radius; asking for it raises.
    """
    if not 1 <= alpha <= 2:
        raise ParameterDomainError(f"alpha must lie in [1, 2], got {alpha}")
    t = 2.0 ** (1.0 / alpha)
    if verbatim:
        raise ParameterDomainError(
            f"product form (2^(1/alpha)-1)(2^(1/alpha)+1) = {(t - 1) * (t + 1):.6g} >= 1 "
            f"for alpha={alpha}; it is not a radius in (0, 1). "
            "The quotient (2^(1/alpha)-1)/(2^(1/alpha)+1) is used instead."
        )
    return (t - 1.0) / (t + 1.0)


def closed_form_radius(problem: RadiusProblem) -> Optional[float]:
    t = problem.theorem
    K, k = problem.K, problem.k
    if t is Theorem.ThmB:
        return 1.0 / (2.0 + problem.a0)
    if t is Theorem.ThmC:
        return 1.0 / (3.0 + 2.0 * math.sqrt(2.0))
    if t is Theorem.ThmD:
        return (K + 1.0) / (5.0 * K + 1.0)
    if t is Theorem.ThmH:
        return theorem_h_radius(problem.alpha)
    if t is Theorem.T42:
        b = problem.mu + k + 1.0
        return 1.0 / (b + math.sqrt(b * b + 2.0 * k + 3.0))
    if t in (Theorem.T51, Theorem.T52):
        base = (3 * K + 1) / (2 * K) if t is Theorem.T51 else (4 * K + 2) / (3 * K + 1)
        tt = base ** (1.0 / problem.alpha)
        return (tt - 1.0) / (tt + 1.0)
    return None


# upper containment claimed for the radius; T51 reaches 1/3 at K = alpha = 1
_CONTAINMENT = {
    Theorem.T41: (Fraction(1, 3), True),
    Theorem.T41R: (Fraction(1, 3), True),
    Theorem.T44: (Fraction(1, 3), True),
    Theorem.T51: (Fraction(1, 3), False),
    Theorem.T52: (Fraction(1, 3), True),
}


def _containment_bound(problem: RadiusProblem):
    if problem.theorem is Theorem.T31:
        return 1 / (3 + 2 * problem.qc.k_exact), True
    return _CONTAINMENT.get(problem.theorem, (None, True))


def solve_radius(problem: RadiusProblem, tol: float = 1e-12) -> CertifiedRoot:
    """Certified radius for ``problem``.

    Raises :class:`CatalogInconsistencyError` if the equation has no unique
    root on the search interval or the root leaves the claimed containment.
    """
    fn = defining_function(problem)
    lo, hi = problem.search_interval
    if fn.polynomial is not None:
        n = sturm_count(fn.polynomial, lo, hi)
        if n != 1:
            raise CatalogInconsistencyError(
                f"{problem.label()}: {n} distinct roots of {fn.polynomial} in ({lo}, {hi}), expected 1"
            )
        try:
            root = isolate_root(fn.polynomial, lo, hi, tol)
        except UniquenessError as exc:  # pragma: no cover - guarded by the count above
            raise CatalogInconsistencyError(str(exc)) from exc
    else:
        try:
            root = bisect_monotone(fn.F, float(lo), float(hi), tol)
        except BracketingError as exc:
            raise CatalogInconsistencyError(f"{problem.label()}: {exc}") from exc

    exact = closed_form_radius(problem)
    if exact is not None:
        slack = 4 * math.ulp(exact)
        if not float(root.lo) - slack <= exact <= float(root.hi) + slack:
            raise CatalogInconsistencyError(
                f"{problem.label()}: closed form {exact!r} outside certified interval "
                f"[{float(root.lo)!r}, {float(root.hi)!r}]"
            )
        root = CertifiedRoot(
            lo=root.lo,
            hi=root.hi,
            estimate=exact,
            certificate=root.certificate,
            residual=abs(fn(exact)),
            tol=root.tol,
            polynomial=root.polynomial,
            count=root.count,
        )

    bound, strict = _containment_bound(problem)
    if bound is not None:
        ok = root.lo < bound if strict else root.lo <= bound
        if not ok:
            raise CatalogInconsistencyError(
                f"{problem.label()}: radius {root.estimate} violates containment below {bound}"
            )
    return root


# -- T31 lambda branch -----------------------------------------------------------


def G1(lam: float, r: float, k: float) -> float:
    return (
        4 * (k**2 + 1) * r**3 * lam**2
        - ((7 + 2 * k + 4 * k**2) * r**3 + (3 + 4 * k**2) * r**2 - (3 + 2 * k) * r + 1) * lam
        + (6 + 4 * k) * r**3
        - 2 * r**2
        - (6 + 4 * k) * r
        + 2
    )


@dataclass(frozen=True)
class LambdaBranch:
    r: float
    K: float
    lambda1: float
    residual: float


def lambda_branch(r: float, K: float, tol: float = 1e-12) -> LambdaBranch:
    """Largest admissible distance ``lambda1(r)`` for radii between ``r0(K)`` and ``(K+1)/(5K+1)``."""
    qc = QuasiconformalParam(K)
    k = qc.k
    r0 = solve_radius(make_problem(Theorem.T31, K=K), tol=min(tol, 1e-12)).estimate
    top = (K + 1) / (5 * K + 1)
    if not (r0 - tol <= r < top):
        raise ParameterDomainError(f"r={r} outside the band [{r0}, {top}) for K={K}")
    g0, g1 = G1(0.0, r, k), G1(1.0, r, k)
    if g0 < 0 or g1 > max(tol, 1e-12):
        raise CatalogInconsistencyError(f"sign pattern G1(0,r)={g0}, G1(1,r)={g1} at r={r}")
    a = 4 * (k**2 + 1) * r**3
    b = (7 + 2 * k + 4 * k**2) * r**3 + (3 + 4 * k**2) * r**2 - (3 + 2 * k) * r + 1
    c = g0
    disc = b * b - 4 * a * c
    if disc < 0 or b <= 0:
        raise CatalogInconsistencyError(f"G1(., {r}) has no real root")
    lam = 2 * c / (b + math.sqrt(disc))
    if not 0 < lam <= 1 + tol:
        raise CatalogInconsistencyError(f"lambda1={lam} not in (0, 1] at r={r}")
    lam = min(lam, 1.0)
    return LambdaBranch(r=r, K=K, lambda1=lam, residual=abs(G1(lam, r, k)))


# -- T32 cross-check ------------------------------------------------------------


def t32_refined_bound(r: float, k: float, lam: float = 1.0) -> float:
    """Upper bound for the refined sum of a univalent subordinate pair (equality for ``4 lam z/(1-z)^2``)."""
    head = 4 * (k + 1) * lam * r / (1 - r) ** 2
    quad = 16 * lam**2 * (k**2 + 1) * r**2 * (1 + r**2) / (1 - r**2) ** 3
    return head + (1 / (2 - lam) + r / (1 - r)) * quad


def cross_check_T32(K: float, tol: float = 1e-12) -> dict:
    """Solve every variant of the refined univalent equation and compare them.

    The report carries, per variant, the Sturm count on ``(0, r1(k))``, the
    certified root when unique, and the witness value of the refined sum at
    that root; pairwise it carries root gaps and exact divisibility.  It makes
    no claim about which variant is intended.
    """
    qc = QuasiconformalParam(K)
    kq = qc.k_exact
    prob = make_problem(Theorem.T32, K=K)
    lo, hi = prob.search_interval
    variants = {}
    polys = {}
    for v in T32_VARIANTS:
        p = t32_poly(kq, v)
        polys[v] = p
        count = sturm_count(p, lo, hi)
        entry = {"poly": p.to_strings(), "degree": p.degree, "sturm_count": count, "root": None}
        if count == 1:
            root = isolate_root(p, lo, hi, tol)
            entry["root"] = root.estimate
            entry["interval"] = [str(root.lo), str(root.hi)]
            entry["refined_bound_at_root"] = t32_refined_bound(root.estimate, qc.k)
        variants[v] = entry
    pairs = {}
    names = list(T32_VARIANTS)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            ra, rb = variants[a]["root"], variants[b]["root"]
            pairs[f"{a}|{b}"] = {
                "gap": None if ra is None or rb is None else abs(ra - rb),
                "within_tol": None if ra is None or rb is None else abs(ra - rb) <= tol,
                f"{a}_divides_{b}": polys[a].divides(polys[b]),
                f"{b}_divides_{a}": polys[b].divides(polys[a]),
            }
    return {
        "K": K,
        "k": qc.k,
        "interval": [str(lo), str(hi)],
        "tol": tol,
        "variants": variants,
        "pairs": pairs,
    }


# -- squaring cross-check for T41 ------------------------------------------------


def t41_squared_roots(K: float, mu: float, tol: float = 1e-12) -> list:
    """Roots of ``G3`` on ``(0, 1/3)`` via the polynomial ``P^2 - 16 mu^2 r^2 Q``.

    ``G3 = P - 4 mu r sqrt(Q)`` vanishes only where ``P >= 0``, so squared roots
    with ``P < 0`` are spurious and dropped.
    """
    from .polyroots import isolate_all

    qc = QuasiconformalParam(K)
    kq, muq = qc.k_exact, to_fraction(mu)
    P = t41_poly(kq)
    Q = X**4 + 4 * X**2 + 1
    squared = P * P - 16 * muq**2 * X**2 * Q
    roots = isolate_all(squared, Fraction(0), Fraction(1, 3), tol)
    return [c for c in roots if P.eval_float(c.estimate) >= 0]
