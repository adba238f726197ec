"""
Polar / Le cycle cascade.

Starting from V(df/dz_n), each polar cycle is intersected with the next
partial derivative; components inside the critical locus go to the Le
cycle of that dimension, the others continue as the next polar cycle.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol, expand, sympify

from poly_core.polynomials import local_factors, make_poly, partial_derivative
from puiseux.branches import BranchParam, branch_multiplicity
from puiseux.components import (HintSet, NormalForm, solvable_variable,
                                normal_form, parameterize_component)
from utils.errors import (DecompositionFailure, ImproperIntersection,
                          InfiniteContact, MilnorError, NotCriticalPoint)
from utils.logger import StageLogger, get_logger

logger = get_logger()

Piece = Tuple[NormalForm, int]


@dataclass(frozen=True)
class CycleComponent:
    name: str
    form: NormalForm
    multiplicity: int = 1
    parameterization: Optional[BranchParam] = None

    @property
    def dimension(self) -> int:
        return self.form.dimension

    @property
    def conjugacy(self) -> int:
        return self.parameterization.conjugacy if self.parameterization is not None else 1

    @property
    def equations(self) -> List[object]:
        return self.form.equations()

    def describe(self) -> str:
        prefix = str(self.multiplicity) if self.multiplicity > 1 else ''
        return f"{prefix}{self.form.describe()}"


@dataclass(frozen=True)
class Cycle:
    ambient: Tuple[Symbol, ...]
    components: Tuple[CycleComponent, ...] = ()

    @classmethod
    def from_pieces(cls, ambient: Sequence[Symbol], pieces: Sequence[Piece], prefix: str) -> 'Cycle':
        merged = merge_pieces(pieces)
        comps = tuple(CycleComponent(f"{prefix}.{i}", form, mult)
                      for i, (form, mult) in enumerate(merged, start=1))
        return cls(tuple(ambient), comps)

    def is_empty(self) -> bool:
        return not self.components

    def pieces(self) -> List[Piece]:
        return [(c.form, c.multiplicity) for c in self.components]

    def describe(self) -> str:
        return ' + '.join(c.describe() for c in self.components) if self.components else '0'


@dataclass(frozen=True)
class CascadeResult:
    coords: Tuple[Symbol, ...]
    gammas: Dict[int, Cycle] = field(default_factory=dict)
    lambdas: Dict[int, Cycle] = field(default_factory=dict)
    lambda0: int = 0

    @property
    def sigma_dim(self) -> int:
        """Largest k with a nonzero Le cycle."""
        dims = [k for k, cyc in self.lambdas.items() if not cyc.is_empty()]
        return max(dims) if dims else 0


def merge_pieces(pieces: Sequence[Piece]) -> List[Piece]:
    order: List[Tuple] = []
    totals: Dict[Tuple, Piece] = {}
    for form, mult in pieces:
        key = form.key()
        if key in totals:
            totals[key] = (form, totals[key][1] + mult)
        else:
            order.append(key)
            totals[key] = (form, mult)
    return [totals[k] for k in order]


# ============== intersections ==============

def intersect(form: NormalForm, h, hints: Optional[HintSet] = None) -> List[Piece]:
    """
    Decompose form . V(h) into components one dimension lower.

    Raises:
        ImproperIntersection: h vanishes on the component
        DecompositionFailure: a non-linear factor meets a non-linear residual
    """
    h = expand(sympify(h))
    restricted = expand(h.xreplace(form.solved_map()))
    if restricted == 0 or (form.residual is not None and form.vanishes(h)):
        raise ImproperIntersection(f"{h} vanishes on {form.describe()}", module='cycles')

    ambient = form.ambient
    base = [expand(v - e) for v, e in form.solved]

    if hints is not None:
        hinted = hints.decomposition(h, restricted)
        if hinted is not None:
            return [(normal_form(form.equations() + [g], ambient), mult) for g, mult in hinted]

    pieces: List[Piece] = []
    for factor, exponent in local_factors(Poly(restricted, *form.free, domain='QQ')):
        factor = factor.as_expr()
        if form.residual is None:
            pieces.append((normal_form(base + [factor], ambient), exponent))
            continue

        var = solvable_variable(factor, [v for v in form.free if v in factor.free_symbols])
        if var is None:
            raise DecompositionFailure(
                f"cannot split V({form.residual}, {factor}); supply a decompose hint", module='cycles')
        coeff = Poly(factor, var).coeff_monomial(var)
        value = expand(-(factor - coeff * var) / coeff)
        rest = expand(sympify(form.residual).xreplace({var: value}))
        if rest == 0:
            raise ImproperIntersection(f"{form.describe()} lies in V({factor})", module='cycles')
        remaining = [v for v in form.free if v != var]
        for inner, inner_exp in local_factors(Poly(rest, *remaining, domain='QQ')):
            pieces.append((normal_form(base + [factor, inner.as_expr()], ambient), exponent * inner_exp))
    return pieces


def curve_branches(form: NormalForm, trunc: int, hints: Optional[HintSet] = None,
                   name: Optional[str] = None) -> Tuple[BranchParam, ...]:
    hint = hints.component(name) if hints is not None and name else None
    return parameterize_component(form, form.ambient, trunc, hint)


def local_intersection_number(form: NormalForm, h, trunc: int, hints: Optional[HintSet] = None,
                              name: Optional[str] = None) -> int:
    """(C . V(h)) at the origin for a curve component C, summed over branches."""
    poly = Poly(expand(sympify(h)), *form.ambient, domain='QQ')
    total = 0
    for branch in curve_branches(form, trunc, hints, name):
        try:
            total += branch_multiplicity(branch, poly) * branch.conjugacy
        except InfiniteContact as exc:
            raise ImproperIntersection(f"{h} vanishes on {form.describe()}", module='cycles') from exc
    return total


# ============== critical locus ==============

def component_membership_in_critical_locus(component, f: Poly) -> bool:
    """True when every partial derivative of f vanishes on the component."""
    form = component.form if isinstance(component, CycleComponent) else component
    return all(form.vanishes(partial_derivative(f, v).as_expr()) for v in f.gens)


def check_critical_point(f: Poly) -> None:
    origin = {v: 0 for v in f.gens}
    if f.as_expr().subs(origin) != 0:
        raise NotCriticalPoint("f does not vanish at the origin", module='cycles')
    for v in f.gens:
        if partial_derivative(f, v).as_expr().subs(origin) != 0:
            raise NotCriticalPoint(f"df/d{v} does not vanish at the origin", module='cycles')


def _cascade_cycles(f: Poly, hints: Optional[HintSet] = None) -> Tuple[Dict[int, Cycle], Dict[int, Cycle]]:
    """Polar and Le cycles of every positive dimension, without lambda^0."""
    coords = tuple(f.gens)
    n = len(coords) - 1
    partials = {v: partial_derivative(f, v).as_expr() for v in coords}

    gammas: Dict[int, Cycle] = {}
    lambdas: Dict[int, Cycle] = {}
    current: List[Piece] = [(NormalForm.whole_space(coords), 1)]
    if n == 0:
        gammas[1] = Cycle.from_pieces(coords, current, 'G1')

    for k in range(n, 0, -1):
        h = partials[coords[k]]
        pieces: List[Piece] = []
        for form, mult in current:
            pieces.extend((piece, mult * e) for piece, e in intersect(form, h, hints))
        polar, le = [], []
        for form, mult in merge_pieces(pieces):
            (le if component_membership_in_critical_locus(form, f) else polar).append((form, mult))
        gammas[k] = Cycle.from_pieces(coords, polar, f"G{k}")
        lambdas[k] = Cycle.from_pieces(coords, le, f"L{k}")
        current = polar
    return gammas, lambdas


def polar_le_cascade(f: Poly, trunc: int, hints: Optional[HintSet] = None) -> CascadeResult:
    """
    Polar and Le cycles of f with respect to its generator order z_0, ..., z_n.

    Raises:
        NotCriticalPoint: the origin is not a critical point of f
        ImproperIntersection: some step is not proper
        DecompositionFailure: a component could not be split
    """
    check_critical_point(f)
    coords = tuple(f.gens)

    with StageLogger("Polar cascade") as log:
        gammas, lambdas = _cascade_cycles(f, hints)
        for k in sorted(lambdas, reverse=True):
            log.info(f"Gamma^{k} = {gammas[k].describe()}; Lambda^{k} = {lambdas[k].describe()}")

        h0 = partial_derivative(f, coords[0]).as_expr()
        lambda0 = sum(c.multiplicity * local_intersection_number(c.form, h0, trunc, hints, c.name)
                      for c in gammas[1].components)
        log.info(f"Lambda^0 = {lambda0}[0]")

    return CascadeResult(coords, gammas, lambdas, lambda0)


# ============== Le numbers ==============

@dataclass(frozen=True)
class LeNumbers:
    values: Dict[int, int]
    contributions: Dict[int, Tuple[Tuple[str, int], ...]]
    cycles: Dict[int, Cycle]

    def as_list(self) -> List[int]:
        return [self.values[k] for k in sorted(self.values)]

    @property
    def generic(self) -> Dict[int, Tuple[Tuple[str, int], ...]]:
        """Generic Le number of each component: its multiplicity in Lambda^k."""
        return {k: tuple((c.name, c.multiplicity) for c in cyc.components)
                for k, cyc in self.cycles.items()}


def le_numbers(result: CascadeResult, trunc: int, hints: Optional[HintSet] = None) -> LeNumbers:
    """
    Le numbers at the origin: lambda^k = (Lambda^k . V(z_0, ..., z_{k-1}))_0.

    Raises:
        ImproperIntersection: a Le cycle is not sliced properly by the coordinates
    """
    coords = result.coords
    values: Dict[int, int] = {0: result.lambda0}
    contributions: Dict[int, Tuple[Tuple[str, int], ...]] = {0: (('Lambda^0', result.lambda0),)}
    for k in sorted(result.lambdas):
        parts = []
        for comp in result.lambdas[k].components:
            sliced: List[Piece] = [(comp.form, comp.multiplicity)]
            for j in range(k - 1):
                sliced = [(piece, mult * e) for form, mult in sliced
                          for piece, e in intersect(form, coords[j], hints)]
            amount = sum(mult * local_intersection_number(form, coords[k - 1], trunc, hints)
                         for form, mult in sliced)
            parts.append((comp.name, amount))
        values[k] = sum(a for _, a in parts)
        contributions[k] = tuple(parts)
    return LeNumbers(values, contributions, dict(result.lambdas))


# ============== prepolarity ==============

@dataclass(frozen=True)
class Prepolarity:
    verdict: str
    slice_sigma_dim: Optional[int] = None
    reason: str = ''


def check_prepolarity(f: Poly, sigma_dim: int, hints: Optional[HintSet] = None) -> Prepolarity:
    """
    Whether V(z_0) is prepolar for f at the origin, i.e.
    dim Sigma(f restricted to V(z_0)) <= max(sigma_dim - 1, 0).

    The verdict is ``yes``, ``no`` or ``unknown`` when the slice cascade fails.
    """
    coords = f.gens
    if len(coords) == 1:
        return Prepolarity('yes', None, 'point slice')
    z0, rest = coords[0], coords[1:]
    f0 = make_poly(f.as_expr().subs(z0, 0), rest)
    if f0.is_zero:
        return Prepolarity('no', None, f"f vanishes on V({z0})")
    try:
        check_critical_point(f0)
    except NotCriticalPoint:
        return Prepolarity('yes', None, 'smooth slice')

    try:
        _, lambdas = _cascade_cycles(f0, hints)
    except MilnorError as exc:
        logger.warning(f"prepolarity of V({z0}) undecided: {exc.code}: {exc.message}")
        return Prepolarity('unknown', None, exc.code)
    dims = [k for k, cyc in lambdas.items() if not cyc.is_empty()]
    slice_dim = max(dims) if dims else 0
    bound = max(sigma_dim - 1, 0)
    verdict = 'yes' if slice_dim <= bound else 'no'
    return Prepolarity(verdict, slice_dim, f"dim Sigma(f|V({z0})) = {slice_dim}, bound {bound}")
