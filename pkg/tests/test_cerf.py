import pytest
from sympy import Rational

from cerf.carrousel import (CerfComponent, Verdict, cerf_component,
                            check_carrousel_form, check_semisimple,
                            classify_component)
from cycles.cascade import CycleComponent, polar_le_cascade
from cycles.intersections import split_by_branch
from poly_core.fields import BinomialField, FieldElement
from puiseux.components import normal_form
from utils.errors import NonReducedComponent


def rational(value):
    return FieldElement.rational(value)


def test_classify_flags():
    flags = classify_component(CerfComponent('G1.1', 1, 3))
    assert flags.relatively_prime and flags.unitary
    assert flags.prime_order == 3
    assert flags.labels() == ['relatively-prime', 'unitary', 'prime(3)']

    flags = classify_component(CerfComponent('G1.1', 2, 4))
    assert not flags.relatively_prime
    assert flags.prime_order is None


def test_whitney_cerf_component(txy, poly):
    t, x, y = txy
    f = poly(y**2 - x**3 - t * x**2, txy)
    (comp,) = split_by_branch(polar_le_cascade(f, 32).gammas[1], 32)
    c = cerf_component(comp, f, t)
    assert (c.m, c.n) == (1, 3)
    assert (c.p, c.q) == (1, 3)
    # t = T, f = -4/27 T^3 along the branch
    assert c.beta == Rational(-27, 4)


def test_non_reduced_component_rejected(xy, poly):
    x, y = xy
    comp = CycleComponent('G1.1', normal_form([y], xy), multiplicity=2)
    with pytest.raises(NonReducedComponent):
        cerf_component(comp, poly(y**2 - x**3, xy), x)


def test_carrousel_form():
    assert check_carrousel_form([]) == (Verdict.YES, ['empty-polar-curve'])
    coprime = [CerfComponent('a', 1, 3), CerfComponent('b', 2, 5)]
    assert check_carrousel_form(coprime)[0] == Verdict.YES
    assert check_carrousel_form(coprime, [1, 2])[0] == Verdict.UNKNOWN
    assert check_carrousel_form([CerfComponent('a', 2, 4)])[0] == Verdict.UNKNOWN


def test_semisimple_single_component():
    verdict = check_semisimple([CerfComponent('a', 1, 3, rational(2))])
    assert verdict.semi_simple == Verdict.YES
    assert verdict.reasons == ('single-component',)


def test_semisimple_rejects_non_coprime():
    verdict = check_semisimple([CerfComponent('a', 2, 4, rational(1))])
    assert verdict.semi_simple == Verdict.NO


def test_semisimple_compares_approximations():
    same = [CerfComponent('a', 1, 3, rational(2)), CerfComponent('b', 1, 3, rational(2))]
    assert check_semisimple(same).semi_simple == Verdict.NO
    distinct = [CerfComponent('a', 1, 3, rational(2)), CerfComponent('b', 1, 3, rational(5))]
    assert check_semisimple(distinct).semi_simple == Verdict.YES
    unknown = [CerfComponent('a', 1, 3, None), CerfComponent('b', 1, 3, rational(5))]
    assert check_semisimple(unknown).semi_simple == Verdict.UNKNOWN


def test_approximation_collision_is_reported():
    same = [CerfComponent('a', 1, 3, rational(2)), CerfComponent('b', 1, 3, rational(2))]
    verdict = check_semisimple(same)
    assert len(verdict.warnings) == 1
    assert verdict.warnings[0].startswith('cerf/approximation-collision: a and b')
    distinct = [CerfComponent('a', 1, 3, rational(2)), CerfComponent('b', 1, 3, rational(5))]
    assert check_semisimple(distinct).warnings == ()


def test_conjugate_branches():
    theta = FieldElement.generator_of(BinomialField(2, Rational(-3, 5)))
    assert check_semisimple([CerfComponent('a', 1, 5, theta * 7, conjugacy=2)]).semi_simple == Verdict.YES
    assert check_semisimple([CerfComponent('a', 1, 5, rational(7), conjugacy=2)]).semi_simple == Verdict.NO


def test_unknown_carrousel_form_propagates():
    verdict = check_semisimple([CerfComponent('a', 1, 3)], Verdict.UNKNOWN)
    assert verdict.semi_simple == Verdict.UNKNOWN
    assert 'carrousel-form-unknown' in verdict.reasons
