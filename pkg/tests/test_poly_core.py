import pytest
from sympy import Rational, oo

from poly_core.fields import BinomialField, FieldElement
from poly_core.polynomials import (LAMBDA, exact_divide, local_factors,
                                   monomial_split, partial_derivative, resultant,
                                   to_unipoly)
from poly_core.series import PuiseuxSeries, series_order, substitute
from utils.errors import (DegenerateResultant, IncompatibleFields, IndeterminateOrder,
                          NotDivisible, UnknownVariable, ZeroPolynomial)


def test_partial_derivative(xy, poly):
    x, y = xy
    p = poly(x**2 * y + y**3, xy)
    assert partial_derivative(p, x) == poly(2 * x * y, xy)
    assert partial_derivative(p, 'y') == poly(x**2 + 3 * y**2, xy)


def test_partial_derivative_unknown_variable(xy, poly):
    with pytest.raises(UnknownVariable):
        partial_derivative(poly(xy[0], xy), 'z')


def test_resultant_row_order(xy, poly):
    x, y = xy
    res = resultant(poly(y**2 - x**3, xy), poly(y, xy), y)
    assert res == poly(-x**3, xy)


def test_resultant_needs_positive_degree(xy, poly):
    x, y = xy
    with pytest.raises(DegenerateResultant):
        resultant(poly(y**2 - x**3, xy), poly(x, xy), y)


def test_exact_divide():
    assert exact_divide(to_unipoly([1, 0, -1]), to_unipoly([1, -1])) == to_unipoly([1, 1])
    with pytest.raises(NotDivisible):
        exact_divide(to_unipoly([1, 0, 1]), to_unipoly([1, -1]))
    with pytest.raises(ZeroPolynomial):
        exact_divide(to_unipoly([1, 1]), to_unipoly([0]))
    assert to_unipoly([1, 1]).gens == (LAMBDA,)


def test_monomial_split(xy, poly):
    x, y = xy
    content, rest = monomial_split(poly(x**2 * y + x**3, xy))
    assert content == (2, 0)
    assert rest == poly(y + x, xy)


def test_local_factors_drop_units(xy, poly):
    x, y = xy
    factors = local_factors(poly(x * (x - y) * (x + y + 1), xy))
    assert {f.as_expr() for f, _ in factors} == {x, x - y}
    assert all(e == 1 for _, e in factors)


def test_binomial_field_arithmetic():
    sqrt2 = FieldElement.generator_of(BinomialField(2, 2))
    assert sqrt2 * sqrt2 == 2
    assert sqrt2.inverse() * sqrt2 == 1
    assert not sqrt2.is_rational()
    assert (sqrt2 ** 3).monomial() == (Rational(2), 1)


def test_incompatible_fields():
    a = FieldElement.generator_of(BinomialField(2, 2))
    b = FieldElement.generator_of(BinomialField(2, 3))
    with pytest.raises(IncompatibleFields):
        a + b


def test_substitute_exact_zero(xy, poly):
    x, y = xy
    T = PuiseuxSeries.parameter_series()
    branch = {'x': T, 'y': T * T}
    assert series_order(substitute(poly(x**2 - y, xy), branch)) == oo
    assert series_order(substitute(poly(x * y, xy), branch)) == 3


def test_truncated_series_order_is_indeterminate():
    with pytest.raises(IndeterminateOrder):
        series_order(PuiseuxSeries.zero(truncation=5))


def test_series_ramification_is_normalized():
    s = PuiseuxSeries.build({2: 1, 4: 3}, ramification=2)
    assert s.ramification == 1
    assert series_order(s) == 1
    assert str(PuiseuxSeries.monomial(1, 1, ramification=2)).endswith("T^1/2")
