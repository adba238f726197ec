"""Shared builders for the test suite."""

from functools import lru_cache

import pytest
from sympy import symbols

from cli.analysis import AnalysisConfig, run_analysis
from poly_core.polynomials import make_poly


@pytest.fixture
def txy():
    return symbols('t x y')


@pytest.fixture
def xy():
    return symbols('x y')


@pytest.fixture
def poly():
    def build(expr, gens):
        return make_poly(expr, gens)
    return build


@lru_cache(maxsize=None)
def _analyze(polynomial: str, variables: str, **options):
    return run_analysis(AnalysisConfig(polynomial=polynomial, variables=variables.split(','), **options))


@pytest.fixture(scope='session')
def analyze():
    """Run (and memoize) an analysis: analyze('y^2 - x^3', 'x,y', chi_link=1)."""
    def run(polynomial: str, variables: str, **options):
        return _analyze(polynomial, variables, **options)
    return run


@pytest.fixture(scope='session')
def whitney_report(analyze):
    return analyze('y^2 - x^3 - t*x^2', 't,x,y', chi_link=1)
