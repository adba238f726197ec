"""
Multivariate polynomials over Q and integer univariate polynomials.

MultiPoly values are ``sympy.Poly`` objects over QQ whose generators are the
ambient coordinates; UniPoly values are ``sympy.Poly`` over ZZ in ``L``.
"""

from typing import List, Sequence, Tuple

from sympy import Poly, Symbol, expand, factor_list, sqf_list
from sympy.polys.subresultants_qq_zz import sylvester

from utils.errors import (DegenerateResultant, NotDivisible, UnknownVariable,
                          ZeroPolynomial)

MultiPoly = Poly
UniPoly = Poly

LAMBDA = Symbol('L')


def make_poly(expr, gens: Sequence) -> MultiPoly:
    """Build a MultiPoly over QQ in the given generators."""
    return Poly(expand(expr), *gens, domain='QQ')


def partial_derivative(p: MultiPoly, v) -> MultiPoly:
    """
    Formal partial derivative.

    Args:
        p: polynomial
        v: generator (symbol or its name)

    Raises:
        UnknownVariable: v is not a generator of p
    """
    gen = _find_gen(p, v)
    return p.diff(gen)


def _find_gen(p: MultiPoly, v):
    for gen in p.gens:
        if gen == v or str(gen) == str(v):
            return gen
    raise UnknownVariable(f"{v} is not one of {', '.join(map(str, p.gens))}", module='poly_core')


def resultant(p: MultiPoly, q: MultiPoly, v) -> MultiPoly:
    """
    Sylvester resultant in ``v``.

    The Sylvester matrix has the coefficient rows of ``p`` first, so that
    Res_y(y^2 - x^3, y) = -x^3. The determinant uses Bareiss fraction-free
    elimination.

    Raises:
        DegenerateResultant: p or q has degree 0 in v
    """
    gen = _find_gen(p, v)
    _find_gen(q, v)
    if p.degree(gen) <= 0 or q.degree(gen) <= 0:
        raise DegenerateResultant(f"both polynomials need positive degree in {gen}", module='poly_core')
    matrix = sylvester(p.as_expr(), q.as_expr(), gen)
    det = matrix.det(method='bareiss')
    return make_poly(det, p.gens)


def exact_divide(p: UniPoly, q: UniPoly) -> UniPoly:
    """
    Exact quotient p / q.

    Raises:
        ZeroPolynomial: q is zero
        NotDivisible: the remainder is nonzero
    """
    if q.is_zero:
        raise ZeroPolynomial("division by the zero polynomial", module='poly_core')
    quotient, remainder = p.div(q)
    if not remainder.is_zero:
        raise NotDivisible(f"{p.as_expr()} is not divisible by {q.as_expr()}", module='poly_core')
    return quotient


def monomial_split(p: MultiPoly) -> Tuple[Tuple[int, ...], MultiPoly]:
    """
    Split off the monomial content.

    Returns:
        (exponent vector of the content, remaining polynomial divisible by no variable)
    """
    if p.is_zero:
        raise ZeroPolynomial("monomial content of the zero polynomial", module='poly_core')
    content, rest = p.terms_gcd()
    return tuple(content), rest


def vanishes_at_origin(p: MultiPoly) -> bool:
    return p.coeff_monomial(tuple(0 for _ in p.gens)) == 0


def is_squarefree(p: MultiPoly) -> bool:
    _, factors = sqf_list(p)
    return all(mult == 1 for _, mult in factors)


def local_factors(p: MultiPoly) -> List[Tuple[MultiPoly, int]]:
    """
    Irreducible factors over Q that vanish at the origin, with exponents.

    Monomial content is reported as the coordinate factors themselves.
    Factors that are units at the origin are dropped.
    """
    content, rest = monomial_split(p)
    factors: List[Tuple[MultiPoly, int]] = []
    for gen, exponent in zip(p.gens, content):
        if exponent:
            factors.append((make_poly(gen, p.gens), exponent))
    if rest.total_degree() > 0:
        _, pieces = factor_list(rest)
        for piece, exponent in pieces:
            piece = Poly(piece, *p.gens, domain='QQ')
            if vanishes_at_origin(piece):
                factors.append((piece.monic(), exponent))
    return factors


def to_unipoly(coeffs: Sequence[int]) -> UniPoly:
    """UniPoly in L from descending integer coefficients."""
    return Poly(list(coeffs), LAMBDA, domain='ZZ')
