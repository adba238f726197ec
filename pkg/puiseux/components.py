"""
Normal forms of cycle components and their parameterization.

A component is kept as solved coordinates (variable = polynomial in the
free coordinates) plus at most one residual equation in the free
coordinates.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import Poly, Symbol, expand, reduced, sympify
from sympy.polys.polyerrors import BasePolynomialError

from poly_core.series import PuiseuxSeries, substitute
from puiseux.branches import BranchParam, puiseux_branches
from utils.errors import NotNormalForm
from utils.logger import get_logger

logger = get_logger()


@dataclass
class HintSet:
    """User-supplied parameterizations and decompositions."""

    components: Dict[str, Dict[str, object]] = field(default_factory=dict)
    decompositions: Dict[str, List[Tuple[object, int]]] = field(default_factory=dict)

    def component(self, name: str) -> Optional[Dict[str, object]]:
        return self.components.get(name)

    def decomposition(self, *exprs) -> Optional[List[Tuple[object, int]]]:
        for expr in exprs:
            found = self.decompositions.get(str(expand(sympify(expr))))
            if found is not None:
                return found
        return None


@dataclass(frozen=True)
class NormalForm:
    ambient: Tuple[Symbol, ...]
    solved: Tuple[Tuple[Symbol, object], ...]
    residual: Optional[object] = None
    free: Tuple[Symbol, ...] = ()

    @classmethod
    def whole_space(cls, ambient: Sequence[Symbol]) -> 'NormalForm':
        ambient = tuple(ambient)
        return cls(ambient, (), None, ambient)

    @property
    def dimension(self) -> int:
        return len(self.free) - (1 if self.residual is not None else 0)

    def solved_map(self) -> Dict[Symbol, object]:
        return dict(self.solved)

    def equations(self) -> List[object]:
        eqs = [expand(var - expr) for var, expr in self.solved]
        if self.residual is not None:
            eqs.append(self.residual)
        return eqs

    def key(self) -> Tuple:
        order = {v: i for i, v in enumerate(self.ambient)}
        solved = tuple((str(v), str(e)) for v, e in sorted(self.solved, key=lambda ve: order[ve[0]]))
        return solved, str(self.residual)

    def restrict(self, expr):
        """Substitute the solved coordinates and reduce modulo the residual."""
        value = expand(sympify(expr).xreplace(self.solved_map()))
        if self.residual is not None and value != 0:
            value = reduced(value, [self.residual], *self.free)[1]
        return expand(value)

    def vanishes(self, expr) -> bool:
        return self.restrict(expr) == 0

    def contains(self, other: 'NormalForm') -> bool:
        """True when ``other`` lies inside this component."""
        return all(other.vanishes(eq) for eq in self.equations())

    def describe(self) -> str:
        eqs = [str(e).replace('**', '^') for e in self.equations()]
        return f"V({', '.join(eqs)})" if eqs else 'whole space'


def solvable_variable(eq, candidates: Sequence[Symbol]) -> Optional[Symbol]:
    """Last candidate in which eq is linear with a constant nonzero coefficient."""
    for var in reversed(candidates):
        poly = Poly(eq, var)
        if poly.degree() != 1:
            continue
        coeff = poly.coeff_monomial(var)
        if coeff != 0 and not coeff.free_symbols:
            return var
    return None


def normal_form(equations: Sequence, ambient: Sequence[Symbol]) -> NormalForm:
    """
    Bring a list of equations into solved-plus-residual shape.

    Raises:
        NotNormalForm: more than one non-linear equation remains, or the
            equations have no zero at the origin
    """
    ambient = tuple(ambient)
    solved: Dict[Symbol, object] = {}
    pending = [expand(sympify(e)) for e in equations]

    progress = True
    while progress:
        progress = False
        remaining = []
        for eq in pending:
            eq = expand(eq.xreplace(solved)) if solved else eq
            if eq == 0:
                continue
            remaining.append(eq)
        pending = remaining
        free = [v for v in ambient if v not in solved]
        for index, eq in enumerate(pending):
            var = solvable_variable(eq, [v for v in free if v in eq.free_symbols])
            if var is None:
                continue
            coeff = Poly(eq, var).coeff_monomial(var)
            value = expand(-(eq - coeff * var) / coeff)
            solved = {k: expand(v.xreplace({var: value})) for k, v in solved.items()}
            solved[var] = value
            pending.pop(index)
            progress = True
            break

    if any(not eq.free_symbols for eq in pending):
        raise NotNormalForm("equations have no common zero at the origin", module='puiseux')
    if len(pending) > 1:
        raise NotNormalForm(f"{len(pending)} non-linear equations remain: "
                            f"{', '.join(map(str, pending))}", module='puiseux')

    free = tuple(v for v in ambient if v not in solved)
    residual = None
    if pending:
        residual = Poly(pending[0], *free, domain='QQ').monic().as_expr()
        solved = {k: reduced(v, [residual], *free)[1] if v != 0 else v for k, v in solved.items()}

    order = {v: i for i, v in enumerate(ambient)}
    ordered = tuple(sorted(((k, expand(v)) for k, v in solved.items()), key=lambda kv: order[kv[0]]))
    return NormalForm(ambient, ordered, residual, free)


# ============== parameterization ==============

def _series_for_solved(form: NormalForm, free_series: Mapping[Symbol, PuiseuxSeries]) -> Dict[str, PuiseuxSeries]:
    result = {str(v): s for v, s in free_series.items()}
    gens = tuple(free_series)
    for var, expr in form.solved:
        result[str(var)] = substitute(Poly(expr, *gens, domain='QQ'), free_series)
    return result


def _ambient_polys(form: NormalForm) -> Tuple[Poly, ...]:
    return tuple(Poly(eq, *form.ambient, domain='QQ') for eq in form.equations())


def _hint_poly(var, value, T: Symbol) -> Poly:
    try:
        return Poly(value, T, domain='QQ')
    except BasePolynomialError as exc:
        raise NotNormalForm(f"hint for {var} is not a polynomial in T: {value}", module='puiseux') from exc


def branch_from_hint(form: NormalForm, hint: Mapping[str, object]) -> BranchParam:
    """
    Branch given explicitly as polynomials in T for every ambient coordinate.

    The parameterization must be primitive: the exponents of T that occur
    have gcd 1.

    Raises:
        NotNormalForm: the hint misses a coordinate, is not a primitive
            polynomial parameterization, or does not satisfy the equations
    """
    T = Symbol('T')
    polys = []
    for var in form.ambient:
        if str(var) not in hint:
            raise NotNormalForm(f"hint does not give {var}", module='puiseux')
        polys.append(_hint_poly(var, hint[str(var)], T))

    step = 0
    for p in polys:
        for (e,), c in p.terms():
            if c != 0 and e > 0:
                step = gcd(step, e)
    if step == 0:
        raise NotNormalForm("hinted parameterization is constant", module='puiseux')
    if step != 1:
        raise NotNormalForm(f"hinted parameterization is not primitive: every exponent of T "
                            f"is a multiple of {step}", module='puiseux')

    series = tuple(substitute(p, {T: PuiseuxSeries.parameter_series()}) for p in polys)
    branch = BranchParam(tuple(str(v) for v in form.ambient), series, _ambient_polys(form))
    if any(r.terms for r in branch.residuals()):
        raise NotNormalForm("hinted parameterization does not satisfy the component equations", module='puiseux')
    return branch


def parameterize_component(equations: Sequence, ambient: Sequence[Symbol], trunc: int = 32,
                           hint: Optional[Mapping[str, object]] = None) -> Tuple[BranchParam, ...]:
    """
    Parameterize a curve component in binomial-and-linear normal form.

    Args:
        equations: defining equations (sympy expressions or a NormalForm)
        ambient: ordered ambient coordinates
        trunc: working truncation for plane-curve expansion
        hint: optional explicit parameterization (coordinate name -> polynomial in T)

    Returns:
        One BranchParam per conjugacy class of branches

    Raises:
        NotNormalForm: the component is not a curve in supported shape
    """
    form = equations if isinstance(equations, NormalForm) else normal_form(equations, ambient)
    if hint is not None:
        return (branch_from_hint(form, hint),)
    if form.dimension != 1:
        raise NotNormalForm(f"{form.describe()} has dimension {form.dimension}, not 1", module='puiseux')

    source = _ambient_polys(form)
    names = tuple(str(v) for v in form.ambient)

    if form.residual is None:
        (var,) = form.free
        series = _series_for_solved(form, {var: PuiseuxSeries.parameter_series()})
        return (BranchParam(names, tuple(series[n] for n in names), source),)

    if len(form.free) != 2:
        raise NotNormalForm(f"residual of {form.describe()} is not a plane curve", module='puiseux')
    u, w = form.free
    plane = Poly(form.residual, u, w, domain='QQ')
    branches = []
    for local in puiseux_branches(plane, trunc):
        series = _series_for_solved(form, {u: local.series[0], w: local.series[1]})
        branches.append(BranchParam(names, tuple(series[n] for n in names), source,
                                    local.field, local.conjugacy))
    logger.debug(f"{form.describe()}: {len(branches)} branch class(es)")
    return tuple(branches)
