"""
Newton-Puiseux expansion of plane-curve germs at the origin.

Every branch is returned with an integral parameterization
u = T^R, w = S(T) (ramification 1 in T). Conjugate branches that differ
only by the choice of a root in a binomial extension are returned once,
with their count in ``conjugacy``.
"""

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol, factor_list, oo

from poly_core.fields import BinomialField, FieldElement
from poly_core.polynomials import is_squarefree, monomial_split
from poly_core.series import PuiseuxSeries, series_order, substitute
from puiseux.newton import NewtonSegment, Point, polygon_from_support
from utils.errors import (DecompositionFailure, InfiniteContact, NonSquareFree,
                          UnsupportedShape, ZeroPolynomial)
from utils.logger import get_logger

logger = get_logger()

BiPoly = Dict[Point, FieldElement]

MAX_DEPTH = 32


@dataclass(frozen=True)
class BranchParam:
    """Parameterization of one branch (or one conjugacy class of branches)."""

    ambient: Tuple[str, ...]
    series: Tuple[PuiseuxSeries, ...]
    equations: Tuple[Poly, ...] = ()
    field: Optional[BinomialField] = None
    conjugacy: int = 1

    def assignment(self) -> Dict[str, PuiseuxSeries]:
        return dict(zip(self.ambient, self.series))

    def series_for(self, var) -> PuiseuxSeries:
        return self.assignment()[str(var)]

    def residuals(self) -> List[PuiseuxSeries]:
        """Source equations evaluated along the branch."""
        return [substitute(eq, self.assignment()) for eq in self.equations]

    def describe(self) -> str:
        parts = [f"{var} = {s}" for var, s in zip(self.ambient, self.series)]
        suffix = f" [x{self.conjugacy} over Q({self.field})]" if self.field is not None else ''
        return ', '.join(parts) + suffix


@dataclass(frozen=True)
class _LocalBranch:
    u: PuiseuxSeries
    w: PuiseuxSeries
    field: Optional[BinomialField]
    conjugacy: int


@dataclass(frozen=True)
class _Root:
    kappa: FieldElement
    field: Optional[BinomialField]
    conjugacy: int
    multiplicity: int


# ============== bivariate helpers ==============

def _from_poly(g: Poly) -> BiPoly:
    return {(m[0], m[1]): FieldElement.rational(c) for m, c in g.terms() if c != 0}


def _content(G: BiPoly) -> Tuple[int, int]:
    return min(i for i, _ in G), min(j for _, j in G)


def _divide(G: BiPoly, ci: int, cj: int) -> BiPoly:
    return {(i - ci, j - cj): c for (i, j), c in G.items()}


def _transform(G: BiPoly, seg: NewtonSegment, kappa: FieldElement) -> BiPoly:
    """G(T^p, T^q (kappa + W)) / T^weight."""
    out: BiPoly = {}
    weight = seg.weight
    powers = {0: FieldElement.rational(1)}
    for (i, j), a in G.items():
        base = seg.run * i + seg.rise * j - weight
        for m in range(j + 1):
            if j - m not in powers:
                powers[j - m] = kappa ** (j - m)
            coeff = a * comb(j, m) * powers[j - m]
            key = (base, m)
            out[key] = out[key] + coeff if key in out else coeff
    return {k: c for k, c in out.items() if not c.is_zero()}


def _evaluate(G: BiPoly, phi: PuiseuxSeries) -> PuiseuxSeries:
    """G(T, phi(T))."""
    total = PuiseuxSeries.zero(phi.parameter)
    powers = {0: PuiseuxSeries.constant(1, phi.parameter)}
    for (i, j), c in sorted(G.items()):
        if j not in powers:
            powers[j] = phi ** j
        total = total + (powers[j] * c).shift(i)
    return total


# ============== edge roots ==============

def _is_binomial(F: Poly) -> bool:
    return len(F.terms()) == 2 and F.coeff_monomial(1) != 0


def _merge_field(current: Optional[BinomialField], new: Optional[BinomialField]) -> Optional[BinomialField]:
    if new is None or current is None or new == current:
        return new or current
    raise UnsupportedShape(f"branch needs Q({new}) on top of Q({current})", module='puiseux')


def _pth_root(s0, p: int, current: Optional[BinomialField]) -> Tuple[FieldElement, Optional[BinomialField]]:
    """One solution kappa of kappa^p = s0 (all choices give the same branch)."""
    if p == 1:
        return FieldElement.rational(s0), None
    theta = Symbol('theta')
    _, factors = factor_list(Poly(theta**p - s0, theta, domain='QQ'))
    factors = sorted((F for F, _ in factors), key=lambda F: F.degree())
    F = factors[0]
    if F.degree() == 1:
        c1, c0 = F.all_coeffs()
        return FieldElement.rational(-c0 / c1), None
    if _is_binomial(F):
        lead = F.LC()
        field = BinomialField(F.degree(), -F.coeff_monomial(1) / lead)
        _merge_field(current, field)
        return FieldElement.generator_of(field), field
    raise UnsupportedShape(f"root of theta^{p} = {s0} is not in a binomial extension", module='puiseux')


def _segment_roots(G: BiPoly, seg: NewtonSegment, current: Optional[BinomialField]) -> List[_Root]:
    coeffs = [G.get(pt, FieldElement.rational(0)) for pt in seg.lattice_points()]
    length, p = seg.length, seg.run

    if all(c.is_rational() for c in coeffs):
        s = Symbol('s')
        edge = Poly(sum(c.as_rational() * s**(length - k) for k, c in enumerate(coeffs)), s, domain='QQ')
        _, factors = factor_list(edge)
        roots: List[_Root] = []
        for F, mult in factors:
            if F.degree() == 1:
                c1, c0 = F.all_coeffs()
                kappa, field = _pth_root(-c0 / c1, p, current)
                roots.append(_Root(kappa, field, 1, mult))
            elif _is_binomial(F):
                e = F.degree()
                field = BinomialField(p * e, -F.coeff_monomial(1) / F.LC())
                if not field.is_irreducible():
                    raise UnsupportedShape(f"edge root field Q({field}) is not a field", module='puiseux')
                _merge_field(current, field)
                roots.append(_Root(FieldElement.generator_of(field), field, e, mult))
            else:
                raise UnsupportedShape(f"edge polynomial factor {F.as_expr()} is not binomial", module='puiseux')
        return roots

    if length == 1 and p == 1:
        kappa = -coeffs[1] / coeffs[0]
        return [_Root(kappa, kappa.field, 1, 1)]
    raise UnsupportedShape("edge polynomial over an extension field needs a further extension", module='puiseux')


# ============== expansion ==============

def _implicit_branch(G: BiPoly, trunc: int, field: Optional[BinomialField]) -> _LocalBranch:
    """The smooth branch w = phi(u) through the origin when (0, 1) is in the support."""
    a = G[(0, 1)]
    rest = {k: c for k, c in G.items() if k != (0, 1)}
    t = PuiseuxSeries.parameter_series()
    if all(j == 0 for _, j in rest):
        phi = PuiseuxSeries.build({i: -c / a for (i, _), c in rest.items()})
        return _LocalBranch(t, phi, field, 1)

    phi = PuiseuxSeries.zero(truncation=trunc)
    for _ in range(trunc + 1):
        updated = _evaluate(rest, phi).scale(-a.inverse()).truncate(trunc)
        if updated == phi:
            break
        phi = updated
    return _LocalBranch(t, phi, field, 1)


def _solve(G: BiPoly, trunc: int, depth: int, field: Optional[BinomialField]) -> List[_LocalBranch]:
    if depth > MAX_DEPTH:
        raise NonSquareFree("branch expansion did not separate; repeated factor suspected", module='puiseux')
    ci, cj = _content(G)
    if ci > 0:
        raise UnsupportedShape("unexpected parameter content during expansion", module='puiseux')
    if cj >= 2:
        raise NonSquareFree("repeated factor along an expansion step", module='puiseux')

    branches: List[_LocalBranch] = []
    t = PuiseuxSeries.parameter_series()
    if cj == 1:
        branches.append(_LocalBranch(t, PuiseuxSeries.zero(), field, 1))
        G = _divide(G, 0, 1)

    j_top = min(j for i, j in G if i == 0)
    if j_top == 0:
        return branches
    if j_top == 1:
        branches.append(_implicit_branch(G, trunc, field))
        return branches

    for seg in polygon_from_support(G):
        for root in _segment_roots(G, seg, field):
            subfield = _merge_field(field, root.field)
            G1 = _transform(G, seg, root.kappa)
            for sub in _solve(G1, trunc, depth + 1, subfield):
                power = sub.u.terms[0][0]
                u = PuiseuxSeries.monomial(1, seg.run * power)
                w = (sub.w + root.kappa).shift(seg.rise * power)
                branches.append(_LocalBranch(u, w, _merge_field(subfield, sub.field),
                                             root.conjugacy * sub.conjugacy))
    return branches


def puiseux_branches(g: Poly, trunc: int) -> List[BranchParam]:
    """
    Branches of the plane curve g(u, w) = 0 at the origin.

    Args:
        g: bivariate polynomial over QQ (generators u, w in that order)
        trunc: working truncation in the branch parameter

    Returns:
        One BranchParam per conjugacy class of branches

    Raises:
        NonSquareFree: g has a repeated factor
        UnsupportedShape: a coefficient falls outside binomial extensions
    """
    if g.is_zero:
        raise ZeroPolynomial("branches of the zero polynomial", module='puiseux')
    if len(g.gens) != 2:
        raise UnsupportedShape(f"plane curve expected, got {len(g.gens)} variables", module='puiseux')
    if g.coeff_monomial((0, 0)) != 0:
        return []
    if not is_squarefree(g):
        raise NonSquareFree(f"{g.as_expr()} has a repeated factor", module='puiseux')

    ambient = tuple(str(v) for v in g.gens)
    (ci, cj), rest = monomial_split(g)
    t = PuiseuxSeries.parameter_series()
    zero = PuiseuxSeries.zero()

    branches: List[BranchParam] = []
    if ci == 1:
        branches.append(BranchParam(ambient, (zero, t), (g,)))
    if cj == 1:
        branches.append(BranchParam(ambient, (t, zero), (g,)))
    if rest.total_degree() > 0 and rest.coeff_monomial((0, 0)) == 0:
        for local in _solve(_from_poly(rest), trunc, 0, None):
            branches.append(BranchParam(ambient, (local.u, local.w), (g,), local.field, local.conjugacy))

    logger.debug(f"{len(branches)} branch class(es) of {g.as_expr()}")
    return branches


def branch_multiplicity(b: BranchParam, g: Poly) -> int:
    """
    Intersection multiplicity of one branch with V(g).

    Raises:
        InfiniteContact: g vanishes identically along the branch
        IndeterminateOrder: the truncation is too low to certify the order
        DecompositionFailure: the order is not an integer (the branch is not
            parameterized by T itself)
    """
    order = series_order(substitute(g, b.assignment()))
    if order == oo:
        raise InfiniteContact(f"{g.as_expr()} vanishes along the branch", module='puiseux')
    if order.q != 1:
        raise DecompositionFailure(
            f"order {order} of {g.as_expr()} along the branch is not an integer", module='puiseux')
    return int(order)


def branch_orders(b: BranchParam, polys: Sequence[Poly]) -> List[int]:
    return [branch_multiplicity(b, p) for p in polys]
