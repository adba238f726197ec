"""Seeded randomized checks against independent sympy computations."""

import random
from math import gcd

import pytest
from sympy import Poly, Rational, Symbol, cyclotomic_poly, gcd as poly_gcd, symbols

from cerf.carrousel import CarrouselVerdict, CerfComponent, Verdict, cerf_component
from cli.analysis import AnalysisConfig, run_analysis
from cli.parser import parse_polynomial, print_polynomial
from cli.render import render, report_to_dict
from cycles.cascade import CycleComponent, polar_le_cascade
from cycles.intersections import intersection_numbers
from monodromy.charpoly import CharPoly
from monodromy.constraints import char_rel_candidates
from poly_core.fields import BinomialField, FieldElement
from poly_core.polynomials import exact_divide, make_poly, partial_derivative, resultant, to_unipoly
from poly_core.series import PuiseuxSeries, series_order
from puiseux.branches import branch_multiplicity, puiseux_branches
from puiseux.components import branch_from_hint, normal_form

L = Symbol('L')
SEED = 1729


def random_factors(rng, count, top=12):
    return [(rng.randint(1, top), rng.choice((1, -1))) for _ in range(count)]


def product_poly(vector):
    out = Poly(1, L, domain='ZZ')
    for d, e in vector.items():
        out *= Poly(cyclotomic_poly(d, L), L, domain='ZZ') ** e
    return out


def test_double_suspension_is_identity():
    rng = random.Random(SEED)
    for _ in range(200):
        c = CharPoly.build(random_factors(rng, rng.randint(0, 3)), random_factors(rng, rng.randint(0, 2)))
        assert c.suspend().suspend() == c
        assert c.suspend().degree == c.degree


def test_binomial_products_expand():
    rng = random.Random(SEED + 1)
    for _ in range(50):
        factors = random_factors(rng, rng.randint(1, 3))
        expected = Poly(1, L, domain='ZZ')
        for k, eps in factors:
            expected *= Poly(L**k - eps, L, domain='ZZ')
        assert CharPoly.build(factors).expand() == tuple(int(c) for c in expected.all_coeffs())


def test_quotients_by_divisors_expand():
    rng = random.Random(SEED + 2)
    for _ in range(25):
        c = CharPoly.build(random_factors(rng, 2, top=8))
        divisor = rng.choice(c.divisors())
        quotient = c / divisor
        assert quotient.is_polynomial()
        remaining = c.cyclotomic()
        remaining.subtract(divisor.cyclotomic())
        expected = product_poly({d: e for d, e in remaining.items() if e})
        assert quotient.expand() == tuple(int(x) for x in expected.all_coeffs())


def test_relative_candidates_have_zero_trace():
    rng = random.Random(SEED + 3)
    verdict = CarrouselVerdict(Verdict.YES, Verdict.YES)
    for _ in range(40):
        components = [CerfComponent(f"G{i}", 1, rng.randint(2, 12), conjugacy=rng.randint(1, 2))
                      for i in range(rng.randint(1, 3))]
        candidates, audit = char_rel_candidates(components, verdict)
        expected = 1
        for c in components:
            expected *= c.conjugacy + 1
        assert len(candidates) == expected
        assert audit == []
        assert all(c.trace() == 0 for c in candidates)


FAMILY = [(a, b, c) for a in range(3, 8) for b in range(2, a) for c in range(1, 4)
          if gcd(a, b) == 1 and gcd(a - b, c) == 1]


@pytest.mark.parametrize('a,b,c', FAMILY)
def test_family_intersection_numbers(a, b, c):
    t, x, y = symbols('t x y')
    f = make_poly(y**2 - x**a - t**c * x**b, (t, x, y))
    cascade = polar_le_cascade(f, 64)
    data = intersection_numbers(cascade.gammas[1], f, t, 64)
    assert (data.gamma1, data.lambda0, data.tau) == (a - b, a * c - a + b, a * c)
    assert data.tau == data.gamma1 + data.lambda0
    assert cascade.lambda0 == data.lambda0


def _plane_pairs():
    rng = random.Random(SEED + 4)
    pairs = []
    while len(pairs) < 30:
        p, q = rng.randint(2, 4), rng.randint(2, 7)
        if gcd(p, q) != 1:
            continue
        pairs.append((p, q, rng.randint(1, 4), rng.randint(1, 6), rng.choice((2, 3, 5, -2))))
    return pairs


@pytest.mark.parametrize('p,q,r,s,k', _plane_pairs())
def test_branch_contact_matches_resultant(p, q, r, s, k):
    x, y = symbols('x y')
    g = make_poly(y**p - x**q, (x, y))
    h = make_poly(y**r - k * x**s, (x, y))
    contact = sum(branch_multiplicity(b, h) * b.conjugacy for b in puiseux_branches(g, 64))
    res = resultant(g, h, y)
    assert contact == min(sum(m) for m in res.monoms())


def random_rational(rng, nonzero=False):
    while True:
        value = Rational(rng.randint(-6, 6), rng.randint(1, 4))
        if value or not nonzero:
            return value


def random_expr(rng, gens, terms=4, top=3):
    expr = 0
    for _ in range(terms):
        monomial = 1
        for g in gens:
            monomial *= g ** rng.randint(0, top)
        expr += random_rational(rng, nonzero=True) * monomial
    return expr


def _teissier_cases():
    rng = random.Random(SEED + 5)
    cases = []
    while len(cases) < 50:
        shape = rng.choice(('plane', 'suspended', 'family'))
        k = rng.choice((1, 2, 3, -2, Rational(1, 2)))
        if shape == 'family':
            cases.append((shape, rng.choice(FAMILY), k, 0))
        else:
            squares = rng.randint(1, 2) if shape == 'suspended' else 0
            cases.append((shape, (rng.randint(2, 5), rng.randint(2, 7)), k, squares))
    return cases


@pytest.mark.parametrize('shape,params,k,squares', _teissier_cases())
def test_teissier_identity(shape, params, k, squares):
    if shape == 'family':
        a, b, c = params
        t, x, y = symbols('t x y')
        coords = (t, x, y)
        f = make_poly(y**2 - x**a - k * t**c * x**b, coords)
        expected = (a - b, a * c)
    else:
        p, q = params
        coords = symbols('x y') + symbols('z w')[:squares]
        x, y = coords[:2]
        f = make_poly(y**p - k * x**q + sum(v**2 for v in coords[2:]), coords)
        expected = (p - 1, (p - 1) * q)
    cascade = polar_le_cascade(f, 64)
    data = intersection_numbers(cascade.gammas[1], f, coords[0], 64)
    assert (data.gamma1, data.tau) == expected
    assert data.tau == data.gamma1 + data.lambda0
    assert cascade.lambda0 == data.lambda0
    assert all(d.n == d.m + d.l for d in data.components)


FIELD = BinomialField(3, 2)


def random_element(rng):
    if rng.random() < 0.2:
        return FieldElement.rational(random_rational(rng))
    return FieldElement(FIELD, tuple(random_rational(rng) for _ in range(3)))


def test_field_ring_axioms():
    rng = random.Random(SEED + 6)
    for _ in range(100):
        a, b, c = random_element(rng), random_element(rng), random_element(rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0
        if not a.is_zero():
            assert a * a.inverse() == 1
            assert (a * b) / a == b


def test_mixed_partials_commute():
    rng = random.Random(SEED + 7)
    gens = symbols('x y z')
    for _ in range(60):
        p = make_poly(random_expr(rng, gens), gens)
        for u, v in ((gens[0], gens[1]), (gens[1], gens[2]), (gens[0], gens[2])):
            assert partial_derivative(partial_derivative(p, u), v) == \
                partial_derivative(partial_derivative(p, v), u)
        assert partial_derivative(p, 'y') == p.diff(gens[1])


def random_series(rng):
    coefficients = {rng.randint(0, 8): random_element(rng) for _ in range(rng.randint(1, 3))}
    coefficients[rng.randint(0, 8)] = random_rational(rng, nonzero=True)
    return PuiseuxSeries.build(coefficients, ramification=rng.randint(1, 4))


def test_series_order_is_additive():
    rng = random.Random(SEED + 8)
    for _ in range(60):
        a, b = random_series(rng), random_series(rng)
        if not a.terms or not b.terms:
            continue
        assert series_order(a * b) == series_order(a) + series_order(b)


def random_unipoly(rng, top=5):
    coeffs = [rng.randint(-5, 5) for _ in range(rng.randint(1, top))]
    return to_unipoly([rng.choice((-3, -2, -1, 1, 2, 3))] + coeffs)


def test_exact_divide_inverts_products():
    rng = random.Random(SEED + 9)
    for _ in range(60):
        p, q = random_unipoly(rng), random_unipoly(rng)
        assert exact_divide(p * q, q) == p


def random_monic_in_y(rng, x, y, degree):
    return y**degree + sum(random_rational(rng) * x**rng.randint(0, 3) * y**j for j in range(degree))


def test_resultant_vanishes_exactly_on_common_factors():
    rng = random.Random(SEED + 10)
    x, y = symbols('x y')
    for i in range(40):
        if i % 2:
            g = random_monic_in_y(rng, x, y, 1)
            p = make_poly(g * random_monic_in_y(rng, x, y, rng.randint(1, 2)), (x, y))
            q = make_poly(g * random_monic_in_y(rng, x, y, rng.randint(1, 2)), (x, y))
            assert resultant(p, q, y).is_zero
        else:
            p = make_poly(random_monic_in_y(rng, x, y, rng.randint(1, 3)), (x, y))
            q = make_poly(random_monic_in_y(rng, x, y, rng.randint(1, 3)), (x, y))
            shared = poly_gcd(p, q).degree(y) > 0
            assert resultant(p, q, y).is_zero == shared


def test_carrousel_coefficient_ignores_reparameterization(txy):
    rng = random.Random(SEED + 11)
    t, x, y = txy
    T = Symbol('T')
    f = make_poly(y**2 - x**3 - t * x**2, txy)
    form = normal_form([y, 3 * x + 2 * t], txy)
    betas = set()
    for _ in range(10):
        scale = random_rational(rng, nonzero=True)
        branch = branch_from_hint(form, {'t': scale * T, 'x': -2 * scale * T / 3, 'y': 0})
        cerf = cerf_component(CycleComponent('G1.1', form, 1, branch), f, t)
        assert (cerf.m, cerf.n) == (1, 3)
        betas.add(cerf.beta)
    assert betas == {FieldElement.rational(Rational(-27, 4))}


def test_print_then_parse_is_stable():
    rng = random.Random(SEED + 12)
    gens = symbols('x y z')
    for _ in range(40):
        p = make_poly(random_expr(rng, gens, terms=rng.randint(1, 5)), gens)
        if p.is_zero:
            continue
        text = print_polynomial(p)
        again = parse_polynomial(text, gens)
        assert again == p
        assert print_polynomial(again) == text


@pytest.mark.parametrize('polynomial,variables,options', [
    ('y^2 - x^3 - t*x^2', 't,x,y', {'chi_link': 1}),
    ('y^2 - x^3', 'x,y', {}),
    ('(x^2+y^2-z^2)*(y-z)', 'x,y,z', {'z0': 'z', 'observed_betti': {2: 0}}),
])
def test_reports_are_deterministic(polynomial, variables, options):
    def build():
        return run_analysis(AnalysisConfig(polynomial=polynomial, variables=variables.split(','), **options))
    first, second = build(), build()
    assert report_to_dict(first) == report_to_dict(second)
    assert render(first, 'text') == render(second, 'text')
