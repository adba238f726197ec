import pytest
from sympy import Rational, Symbol, symbols

from poly_core.polynomials import make_poly
from poly_core.series import PuiseuxSeries
from puiseux.branches import BranchParam, branch_multiplicity, puiseux_branches
from puiseux.components import normal_form, parameterize_component
from puiseux.newton import NewtonSegment, newton_polygon, polygon_from_support
from utils.errors import DecompositionFailure, NonSquareFree, NotNormalForm


def test_cusp_polygon(xy, poly):
    x, y = xy
    assert newton_polygon(poly(y**2 - x**3, xy)) == [NewtonSegment(3, 2, 1, (0, 2), (3, 0))]


def test_polygon_segments_by_increasing_slope(xy, poly):
    x, y = xy
    segments = newton_polygon(poly(y**3 + x**2 * y + x**5, xy))
    assert [(s.rise, s.run, s.length) for s in segments] == [(1, 1, 2), (3, 1, 1)]
    assert segments[0].lattice_points() == [(0, 3), (1, 2), (2, 1)]


def test_polygon_needs_both_axes():
    assert polygon_from_support({(1, 1): 1}) == []


def test_monomial_content_has_no_segments(xy, poly):
    x, y = xy
    assert newton_polygon(poly(x * y, xy)) == []


def test_cusp_branch(xy, poly):
    x, y = xy
    (branch,) = puiseux_branches(poly(y**2 - x**3, xy), 16)
    assert branch.conjugacy == 1
    assert branch_multiplicity(branch, poly(x, xy)) == 2
    assert branch_multiplicity(branch, poly(y, xy)) == 3


@pytest.mark.parametrize('expr', ['y**2 - x**2', 'y**2 - 2*x**2', 'y**2 - x**2 - x**3'])
def test_branch_count_matches_degree_in_y(xy, poly, expr):
    x, y = xy
    g = poly(expr, xy)
    branches = puiseux_branches(g, 32)
    # V(x) meets the curve with multiplicity deg_y g
    assert sum(branch_multiplicity(b, poly(x, xy)) * b.conjugacy for b in branches) == g.degree(y)


def test_non_squarefree_rejected(xy, poly):
    x, y = xy
    with pytest.raises(NonSquareFree):
        puiseux_branches(poly((y - x)**2 * (y + x), xy), 16)


def test_normal_form_prefers_linear_last_coordinate(txy):
    t, x, y = txy
    form = normal_form([x - t**2, y], (t, x, y))
    assert form.solved_map() == {x: t**2, y: 0}
    assert form.free == (t,)
    assert form.residual is None
    assert form.dimension == 1


def test_normal_form_rejects_two_nonlinear_equations(txy):
    t, x, y = txy
    with pytest.raises(NotNormalForm):
        normal_form([x**2 - y**3, t**2 - x**3], (t, x, y))


def test_whitney_polar_branch(txy, poly):
    t, x, y = txy
    (branch,) = parameterize_component([y, 3 * x + 2 * t], (t, x, y))
    f = poly(y**2 - x**3 - t * x**2, txy)
    assert branch_multiplicity(branch, poly(t, txy)) == 1
    assert branch_multiplicity(branch, f) == 3


def test_hinted_parameterization(txy):
    t, x, y = txy
    T = Symbol('T')
    (branch,) = parameterize_component([y, x - t**2], (t, x, y), hint={'t': T, 'x': T**2, 'y': 0})
    assert branch_multiplicity(branch, make_poly(x, (t, x, y))) == 2


def test_hint_missing_a_coordinate(txy):
    t, x, y = txy
    with pytest.raises(NotNormalForm):
        parameterize_component([y, x - t**2], (t, x, y), hint={'t': symbols('T')})


def test_fractional_order_is_rejected(xy, poly):
    x, y = xy
    half = PuiseuxSeries.build({1: 1}, ramification=2)
    branch = BranchParam(('x', 'y'), (half, PuiseuxSeries.parameter_series()))
    assert branch_multiplicity(branch, poly(y, xy)) == 1
    with pytest.raises(DecompositionFailure):
        branch_multiplicity(branch, poly(x, xy))


def test_hint_must_be_primitive(txy):
    t, x, y = txy
    T = Symbol('T')
    with pytest.raises(NotNormalForm, match='primitive'):
        parameterize_component([y, x - t**2], (t, x, y), hint={'t': T**2, 'x': T**4, 'y': 0})


def test_hint_must_be_polynomial(txy):
    t, x, y = txy
    T = Symbol('T')
    with pytest.raises(NotNormalForm, match='not a polynomial'):
        parameterize_component([y, x - t**2], (t, x, y), hint={'t': T**Rational(1, 2), 'x': T, 'y': 0})
