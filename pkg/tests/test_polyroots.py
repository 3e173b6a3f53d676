import math
from fractions import Fraction

import pytest

from bohrlab.errors import (
    ArgumentError,
    BracketingError,
    DegenerateInputError,
    EndpointError,
    UniquenessError,
)
from bohrlab.polyroots import (
    Certificate,
    CertifiedRoot,
    RationalPolynomial,
    bisect_monotone,
    isolate_all,
    isolate_root,
    poly_gcd,
    squarefree_part,
    sturm_count,
    to_fraction,
)

from oracles import R, count_roots_open, expand_ascending

X = RationalPolynomial.x()
F_POLY = RationalPolynomial([1, -3, -5, 3])  # 3r^3 - 5r^2 - 3r + 1
G_POLY = RationalPolynomial(expand_ascending((1 - 6 * R + R**2) * (1 - R) ** 2 * (1 + R) ** 3 - 16 * R**2 * (1 + R**2)))
R_STAR = 0.24682982621045851  # sympy real root of 3r^3-5r^2-3r+1
R_G = 0.12844508160068846  # sympy real root of the expanded ThmG polynomial


# -- arithmetic -----------------------------------------------------------------


def test_normalization_and_degree():
    p = RationalPolynomial([1, 2, 0, 0])
    assert p.degree == 1 and p.coeffs == (Fraction(1), Fraction(2))
    assert RationalPolynomial([]).is_zero()
    assert RationalPolynomial([0, 0]).is_zero()
    assert p.leading == 2


def test_arithmetic_identities():
    p = (X - 1) * (X + 2)
    assert p == X**2 + X - 2
    q, r = divmod(X**3 - 1, X - 1)
    assert q == X**2 + X + 1 and r.is_zero()
    assert (X - 1).divides(X**3 - 1)
    assert not (X - 2).divides(X**3 - 1)
    assert (X**3).derivative() == 3 * X**2
    assert poly_gcd((X - 1) ** 2 * (X + 1), (X - 1) * (X + 3)) == X - 1
    assert squarefree_part((X - 1) ** 3 * (X + 2)) == (X - 1) * (X + 2)


def test_exact_evaluation():
    p = 3 * X**2 - 1
    assert p(Fraction(1, 3)) == Fraction(-2, 3)
    assert p(0.5) == pytest.approx(-0.25)


def test_string_roundtrip():
    p = RationalPolynomial([Fraction(1, 3), Fraction(-7, 2), 5])
    assert RationalPolynomial.from_strings(p.to_strings()) == p
    assert str(F_POLY) == "3*r^3 - 5*r^2 - 3*r + 1"


def test_float_conversion_goes_through_repr():
    assert to_fraction(0.1) == Fraction(1, 10)


# -- Sturm counts -------------------------------------------------------------


def test_sturm_examples():
    assert sturm_count(F_POLY, 0, 1) == 1
    assert sturm_count(RationalPolynomial([-5, -22, 33, 0, -35, -30, 7]), 0, 1) == 0
    assert sturm_count(RationalPolynomial([11, 6, -33, 16]), 0, 1) == 0


def test_sturm_counts_distinct_roots():
    p = (X - Fraction(1, 4)) ** 3 * (X - Fraction(1, 2))
    assert sturm_count(p, 0, 1) == 2


def test_sturm_endpoint_root_perturbed():
    p = (X - 1) * (X - Fraction(1, 2))
    assert sturm_count(p, 0, 1) == 1
    assert sturm_count(p, Fraction(1, 2), 1) == 0


def test_sturm_endpoint_cluster_raises():
    eps = Fraction(1, 10**10)
    p = (X - 1) * (X - 1 + eps)
    with pytest.raises(EndpointError):
        sturm_count(p, 0, 1)


def test_sturm_errors():
    with pytest.raises(DegenerateInputError):
        sturm_count(RationalPolynomial([0]), 0, 1)
    with pytest.raises(ArgumentError):
        sturm_count(F_POLY, 1, 0)


def test_sturm_invariant_under_positive_scaling():
    for c in (Fraction(1, 7), 3, 1000):
        assert sturm_count(c * G_POLY, 0, 1) == sturm_count(G_POLY, 0, 1)


@pytest.mark.parametrize(
    "coeffs",
    [
        [1, -3, -5, 3],
        [-5, -22, 33, 0, -35, -30, 7],
        [11, 6, -33, 16],
        [1, -10, 35, -50, 24],
        [-1, 0, 4, 0, -4, 0, 1],
    ],
)
def test_sturm_vs_sympy(coeffs):
    assert sturm_count(RationalPolynomial(coeffs), Fraction(1, 100), Fraction(99, 100)) == count_roots_open(
        coeffs, Fraction(1, 100), Fraction(99, 100)
    )


# -- isolation ----------------------------------------------------------------


def test_isolate_theorem_f():
    c = isolate_root(F_POLY, 0, 1, 1e-8)
    assert c.certificate is Certificate.STURM_COUNT_ONE
    assert c.hi - c.lo <= Fraction(1, 10**8)
    assert c.lo < Fraction(R_STAR) < c.hi
    assert c.estimate == pytest.approx(0.24683, abs=5e-6)


def test_isolate_theorem_g():
    c = isolate_root(G_POLY, 0, 1, 1e-9)
    assert c.estimate == pytest.approx(R_G, abs=1e-9)
    assert c.estimate == pytest.approx(0.128445, abs=5e-7)


def test_isolate_quadratic_matches_formula():
    c = isolate_root(X**2 + 4 * X - 1, 0, 1, 1e-12)
    assert abs(c.estimate - (math.sqrt(5) - 2)) <= 1e-12
    assert c.lo < c.hi
    p = X**2 + 4 * X - 1
    assert p(c.lo) * p(c.hi) < 0


def test_isolate_requires_unique_root():
    with pytest.raises(UniquenessError):
        isolate_root((X - Fraction(1, 4)) * (X - Fraction(1, 2)), 0, 1)
    with pytest.raises(UniquenessError):
        isolate_root(X + 1, 0, 1)


def test_isolate_exact_rational_root():
    c = isolate_root(3 * X - 1, 0, 1, 1e-12)
    assert c.lo < Fraction(1, 3) < c.hi
    assert c.residual <= 1e-15


def test_isolate_all_sorted():
    p = (X - Fraction(1, 5)) * (X - Fraction(1, 2)) * (X - Fraction(3, 4))
    roots = isolate_all(p, 0, 1, 1e-12)
    assert [round(r.estimate, 12) for r in roots] == [0.2, 0.5, 0.75]


def test_certificate_roundtrip():
    c = isolate_root(G_POLY, 0, 1, 1e-12)
    d = c.to_dict()
    back = CertifiedRoot.from_dict(d)
    assert back == c
    assert back.polynomial == c.polynomial
    assert back.to_dict() == d


# -- monotone bisection -------------------------------------------------------


def test_bisect_g7_k0_alpha1():
    c = bisect_monotone(lambda r: (1 + r) / (1 - r) - 1 - 1, 0, 1 / 3 + 1e-3, 1e-12)
    assert c.certificate is Certificate.MONOTONE_SIGN_CHANGE
    assert abs(c.estimate - 1 / 3) <= 1e-12


def test_bisect_g8_k0_alpha1():
    c = bisect_monotone(lambda r: 2 * ((1 + r) / (1 - r) - 1) - 1, 0, 1 / 3, 1e-12)
    assert abs(c.estimate - 0.2) <= 1e-12


def test_bisect_theorem_e_at_k0():
    c = bisect_monotone(lambda r: (1 - r) ** 2 - 4 * r, 0, 1, 1e-12)
    assert abs(c.estimate - (3 - 2 * math.sqrt(2))) <= 1e-12


def test_bisect_bracketing_error():
    with pytest.raises(BracketingError):
        bisect_monotone(lambda r: r + 1, 0, 1)
