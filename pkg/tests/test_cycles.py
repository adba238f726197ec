import pytest
from sympy import symbols

from cycles.cascade import (check_critical_point, check_prepolarity, intersect,
                            le_numbers, polar_le_cascade)
from cycles.intersections import intersection_numbers, le_greuel_check
from puiseux.components import NormalForm
from utils.errors import ImproperIntersection, NotCriticalPoint

TRUNC = 32


@pytest.fixture
def whitney(txy, poly):
    t, x, y = txy
    return poly(y**2 - x**3 - t * x**2, txy)


def test_whitney_cascade(whitney):
    cascade = polar_le_cascade(whitney, TRUNC)
    assert cascade.lambda0 == 2
    assert cascade.sigma_dim == 1
    assert len(cascade.gammas[1].components) == 1
    assert [c.describe() for c in cascade.lambdas[1].components] == ['V(x, y)']


def test_whitney_le_numbers(whitney):
    le = le_numbers(polar_le_cascade(whitney, TRUNC), TRUNC)
    assert le.values[0] == 2
    assert le.values[1] == 1
    assert le.generic == {1: (('L1.1', 1),)}


def test_whitney_intersection_numbers(whitney):
    cascade = polar_le_cascade(whitney, TRUNC)
    data = intersection_numbers(cascade.gammas[1], whitney, whitney.gens[0], TRUNC)
    assert (data.gamma1, data.lambda0, data.tau) == (1, 2, 3)
    (branch,) = data.components
    assert (branch.m, branch.n, branch.l) == (1, 3, 2)
    assert data.totals_coprime


def test_isolated_cusp_has_no_le_cycles(xy, poly):
    x, y = xy
    cascade = polar_le_cascade(poly(y**2 - x**3, xy), TRUNC)
    assert cascade.sigma_dim == 0
    assert cascade.lambda0 == 2


def test_not_a_critical_point(xy, poly):
    x, y = xy
    with pytest.raises(NotCriticalPoint):
        check_critical_point(poly(x + y**2, xy))
    with pytest.raises(NotCriticalPoint):
        check_critical_point(poly(1 + x**2, xy))


def test_improper_intersection(xy):
    with pytest.raises(ImproperIntersection):
        intersect(NormalForm.whole_space(xy), 0)


def test_le_greuel():
    assert le_greuel_check(2, 1, 3)
    assert not le_greuel_check(2, 2, 3)


def test_polar_curve_inside_hyperplane_is_not_prepolar(xy, poly):
    x, y = xy
    f = poly(x * y, xy)
    cascade = polar_le_cascade(f, TRUNC)
    assert [c.describe() for c in cascade.gammas[1].components] == ['V(x)']
    with pytest.raises(ImproperIntersection, match='not prepolar'):
        intersection_numbers(cascade.gammas[1], f, x, TRUNC)


def test_prepolarity(txy, poly, whitney):
    t, x, y = txy
    assert check_prepolarity(whitney, 1).verdict == 'yes'
    isolated = check_prepolarity(poly(t**3 + t * x**2 + y**2, txy), 0)
    assert (isolated.verdict, isolated.slice_sigma_dim) == ('no', 1)
    assert check_prepolarity(poly(t * y, txy), 0).verdict == 'no'
    assert check_prepolarity(poly(t**2 + x, txy), 0).reason == 'smooth slice'


def test_four_variable_prepolarity(poly):
    s, t, x, y = symbols('s t x y')
    f = poly(y**2 - x**4 + (s**3 - t**2) * x**3, (s, t, x, y))
    result = check_prepolarity(f, 2)
    assert (result.verdict, result.slice_sigma_dim) == ('yes', 1)
