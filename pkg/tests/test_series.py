import math
from fractions import Fraction

import numpy as np
import pytest

from bohrlab.errors import ArgumentError, CatalogError, ParameterDomainError, SubordinationError
from bohrlab.series import (
    CATALOG,
    ClosedForm,
    Envelope,
    TruncatedSeries,
    closed_form,
    closed_form_tail,
    compose,
    concave_coefficients,
    concave_coefficients_exact,
    concave_extremal,
    geometric,
    koebe,
    multiply,
    partial_sum,
    power_tail,
)

from oracles import concave_oracle


# -- concave coefficients -------------------------------------------------------


def test_concave_alpha_one():
    assert list(concave_coefficients(1.0, 3).values) == [1.0, 1.0, 1.0]


def test_concave_alpha_two():
    assert list(concave_coefficients(2.0, 4).values) == [1.0, 2.0, 3.0, 4.0]


def test_concave_alpha_three_halves_matches_oracle():
    got = concave_coefficients(1.5, 5).values
    np.testing.assert_allclose(got, concave_oracle(1.5, 5), rtol=0, atol=1e-12)


@pytest.mark.parametrize("alpha", [1.0, 1.25, 1.5, 2.0])
def test_concave_recurrence_vs_binomial_oracle(alpha):
    got = concave_coefficients(alpha, 50).values
    ref = concave_oracle(alpha, 50)
    for g, r in zip(got, ref):
        assert abs(g - r) <= 1e-12 * max(1.0, abs(r))


@pytest.mark.parametrize("alpha", [1.0, 1.1, 1.5, 1.9, 2.0])
def test_concave_first_values(alpha):
    A = concave_coefficients(alpha, 5)
    assert A[1] == pytest.approx(1.0, abs=1e-12)
    assert A[2] == pytest.approx(alpha, abs=1e-12)
    assert A[3] == pytest.approx((2 * alpha**2 + 1) / 3, abs=1e-12)
    assert all(v >= 0 for v in A.values)


def test_concave_exact_integer_path():
    assert concave_coefficients_exact(1, 60) == [Fraction(1)] * 60
    assert concave_coefficients_exact(2, 60) == [Fraction(n) for n in range(1, 61)]
    assert concave_coefficients_exact(Fraction(3, 2), 3)[2] == Fraction(2 * Fraction(9, 4) + 1, 3)


def test_concave_errors():
    with pytest.raises(ParameterDomainError):
        concave_coefficients(0.5, 3)
    with pytest.raises(ParameterDomainError):
        concave_coefficients(2.5, 3)
    with pytest.raises(ArgumentError):
        concave_coefficients(1.5, 0)
    with pytest.raises(IndexError):
        concave_coefficients(1.5, 3)[0]


# -- closed forms ---------------------------------------------------------------


def test_closed_form_examples():
    assert closed_form(ClosedForm.N3_R_SQ, 0.5) == pytest.approx(44 / 27, rel=1e-15)
    assert closed_form("sum_n_r^n", 0.5) == 2.0
    assert closed_form(ClosedForm.F_ALPHA, 1 / 3, alpha=1.0) == pytest.approx(0.5, rel=1e-15)


def test_closed_form_errors():
    with pytest.raises(CatalogError):
        closed_form("sum_nonsense", 0.2)
    with pytest.raises(ParameterDomainError):
        closed_form(ClosedForm.GEOMETRIC, 1.0)
    with pytest.raises(ArgumentError):
        closed_form(ClosedForm.F_ALPHA, 0.2)


@pytest.mark.parametrize("ident", list(ClosedForm))
@pytest.mark.parametrize("r", [0.1, 0.25, 0.3])
def test_closed_form_vs_partial_sum(ident, r):
    alpha = 1.5 if ident is ClosedForm.F_ALPHA else None
    total = closed_form(ident, r, alpha)
    part = partial_sum(ident, r, 500, alpha)
    tail = closed_form_tail(ident, r, 500, alpha)
    assert part <= total + 1e-15
    assert abs(total - part) <= tail + 1e-10


def test_closed_form_catalog_starts_at_zero_except_shifted_entry():
    for ident, entry in CATALOG.items():
        if ident is ClosedForm.N2_R_SHIFT:
            # sum_{n>=1} n^2 r^(n-1) has constant term 1
            assert entry.evaluate(0.0) == 1.0
        else:
            assert entry.evaluate(0.0) == 0.0


@pytest.mark.parametrize("ident", list(ClosedForm))
def test_closed_form_increasing(ident):
    rs = np.linspace(0.01, 0.95, 60)
    vals = [closed_form(ident, r, 1.25) for r in rs]
    assert all(b > a for a, b in zip(vals, vals[1:]))


# -- tails -------------------------------------------------------------------


@pytest.mark.parametrize("power", [0, 1, 2, 3])
@pytest.mark.parametrize("x", [0.1, 0.5, 0.9, 0.99])
def test_power_tail_is_upper_bound(power, x):
    start = 20
    exact = math.fsum(n**power * x**n for n in range(start, 20000))
    bound = power_tail(1.0, power, x, start)
    assert exact <= bound <= exact * 2.5 / (1 - x) + 1e-300


def test_envelope_tail_against_closed_form():
    s = koebe(50, r_max=0.5)
    for r in (0.1, 0.25, 0.5):
        exact = closed_form(ClosedForm.N_R, r) - partial_sum(ClosedForm.N_R, r, 50)
        assert s.tail(r) >= exact - 1e-300


def test_truncated_series_validation():
    with pytest.raises(ParameterDomainError):
        TruncatedSeries(np.ones(3), r_max=1.0)
    with pytest.raises(ArgumentError):
        TruncatedSeries(np.ones(3), r_max=0.5, tail_bound=-1.0)
    s = geometric(10, 0.5)
    assert s.truncation_order == 10 and s.coeffs.size == 11
    with pytest.raises(ParameterDomainError):
        s.majorant(0.6)
    with pytest.raises(ValueError):
        s.coeffs[0] = 3.0


# -- multiply / compose -------------------------------------------------------


def test_multiply_geometric():
    g = geometric(5, 0.5)
    p = multiply(g, g)
    np.testing.assert_array_equal(p.coeffs, [1, 2, 3, 4, 5, 6])
    exact_tail = math.fsum((n + 1) * 0.5**n for n in range(6, 2000))
    assert p.tail_bound >= exact_tail


def test_multiply_monomials():
    z = TruncatedSeries.polynomial([0, 1, 0, 0], r_max=0.5)
    p = multiply(z, z)
    np.testing.assert_array_equal(p.coeffs, [0, 0, 1, 0])
    assert p.tail_bound == 0.0


def test_multiply_f_alpha_by_one_minus_z():
    f1 = concave_extremal(1.0, 10, r_max=0.5)
    one_minus_z = TruncatedSeries.polynomial([1, -1] + [0] * 9, r_max=0.5)
    p = multiply(f1, one_minus_z)
    np.testing.assert_allclose(p.coeffs, [0, 1] + [0] * 9, atol=1e-15)


def test_multiply_incompatible_radius():
    with pytest.raises(ArgumentError):
        multiply(geometric(5, 0.5), geometric(5, 0.4))


def test_compose_identity_and_square():
    outer = geometric(4, 0.5)
    z = TruncatedSeries.polynomial([0, 1, 0, 0, 0], r_max=0.5)
    np.testing.assert_array_equal(compose(outer, z).coeffs, outer.coeffs)
    z2 = TruncatedSeries.polynomial([0, 0, 1, 0, 0], r_max=0.5)
    np.testing.assert_array_equal(compose(outer, z2).coeffs, [1, 0, 1, 0, 1])


def test_compose_koebe_scaled():
    outer = koebe(6, r_max=0.9)
    inner = TruncatedSeries.polynomial([0, 0.5, 0, 0, 0, 0, 0], r_max=0.5)
    got = compose(outer, inner)
    np.testing.assert_allclose(got.coeffs, [n * 0.5**n for n in range(7)], rtol=1e-15)
    exact_tail = math.fsum(n * 0.25**n for n in range(7, 500))
    assert got.tail_bound >= exact_tail


def test_compose_requires_vanishing_inner():
    with pytest.raises(SubordinationError):
        compose(geometric(4, 0.5), TruncatedSeries.polynomial([0.1, 1, 0, 0, 0]))


def test_compose_exact_on_polynomials():
    outer = TruncatedSeries.polynomial([1, 2, 3, 0, 0, 0, 0], r_max=0.5)
    inner = TruncatedSeries.polynomial([0, 1, 1, 0, 0, 0, 0], r_max=0.5)
    # 1 + 2(z+z^2) + 3(z+z^2)^2 = 1 + 2z + 5z^2 + 6z^3 + 3z^4
    np.testing.assert_array_equal(compose(outer, inner).coeffs, [1, 2, 5, 6, 3, 0, 0])


def test_envelope_rejects_negative():
    with pytest.raises(ArgumentError):
        Envelope(-1.0, 0)
