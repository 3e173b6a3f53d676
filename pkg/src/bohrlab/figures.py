"""Exact certificates for the four auxiliary polynomial claims behind the radii.

F1  ``r1(k) = (1+k-sqrt(4k-3k^2))/(4k^2-2k+1) > 1/(3+2k)``;
F2  ``R3(k) - R4(k) sqrt(2+3k+k^2) <= 0``;
F3  ``7r^6-30r^5-35r^4+33r^2-22r-5`` has no root in ``(0, 1)``;
F4  ``16r^3-33r^2+6r+11`` has no root in ``(0, 1)``.

F1 and F2 are reduced to polynomial sign conditions (both sides are positive,
so squaring is an equivalence) and checked in exact rational arithmetic on a
grid of ``k``; a Sturm count on the whole of ``[0, 1)`` is reported as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .polyroots import RationalPolynomial, sturm_count

X = RationalPolynomial.x()

F3_POLY = 7 * X**6 - 30 * X**5 - 35 * X**4 + 33 * X**2 - 22 * X - 5
F4_POLY = 16 * X**3 - 33 * X**2 + 6 * X + 11

R3 = RationalPolynomial([97732, 432283, 843432, 951408, 672704, 296704, 74752, 8192])
R4 = RationalPolynomial([69107, 253840, 408176, 372928, 204032, 62464, 8192])

# (1+k)(3+2k) - (4k^2-2k+1) = 2+7k-2k^2 > 0 on [0,1), so F1 <=> F1_POLY > 0
F1_POLY = (2 + 7 * X - 2 * X**2) ** 2 - (4 * X - 3 * X**2) * (3 + 2 * X) ** 2
# R3, R4 > 0 on [0,1), so F2 <=> F2_POLY >= 0
F2_POLY = R4 * R4 * (2 + 3 * X + X**2) - R3 * R3


def default_grid(points: int = 99) -> list:
    """``k = j/(points+1)`` for ``j = 1..points``; the default gives 0.01..0.99."""
    return [Fraction(j, points + 1) for j in range(1, points + 1)]


@dataclass(frozen=True)
class FigureCertificate:
    name: str
    claim: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "claim": self.claim, "passed": self.passed, "details": self.details}


def r1_figure1(k: float) -> float:
    return (1 + k - (4 * k - 3 * k * k) ** 0.5) / (4 * k * k - 2 * k + 1)


def _grid_certificate(name, claim, poly, grid, strict) -> FigureCertificate:
    failures = []
    for k in grid:
        v = poly(k)
        if not (v > 0 if strict else v >= 0):
            failures.append(str(k))
    roots = sturm_count(poly, 0, 1)
    at_zero = poly(Fraction(0))
    whole = roots == 0 and (at_zero > 0 if strict else at_zero >= 0)
    return FigureCertificate(
        name,
        claim,
        passed=not failures,
        details={
            "grid_points": len(grid),
            "grid_failures": failures,
            "reduced_poly": poly.to_strings(),
            "sturm_count_open_unit": roots,
            "holds_on_whole_interval": whole,
        },
    )


def certify_f1(grid=None) -> FigureCertificate:
    grid = default_grid() if grid is None else [Fraction(g) for g in grid]
    return _grid_certificate("F1", "r1(k) > 1/(3+2k)", F1_POLY, grid, strict=True)


def certify_f2(grid=None) -> FigureCertificate:
    grid = default_grid() if grid is None else [Fraction(g) for g in grid]
    return _grid_certificate("F2", "R3(k) - R4(k)*sqrt(2+3k+k^2) <= 0", F2_POLY, grid, strict=False)


def _no_root_certificate(name, poly) -> FigureCertificate:
    count = sturm_count(poly, 0, 1)
    return FigureCertificate(
        name,
        f"{poly} has no root in (0, 1)",
        passed=count == 0,
        details={"poly": poly.to_strings(), "sturm_count": count, "interval": ["0", "1"]},
    )


def certify_f3() -> FigureCertificate:
    return _no_root_certificate("F3", F3_POLY)


def certify_f4() -> FigureCertificate:
    return _no_root_certificate("F4", F4_POLY)


def certify_all(grid=None) -> list:
    return [certify_f1(grid), certify_f2(grid), certify_f3(), certify_f4()]
