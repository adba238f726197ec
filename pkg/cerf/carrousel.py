"""
Cerf-diagram invariants of polar components and carrousel decisions.

The image of a polar branch under (z_0, f) is a curve in the (u, v)-plane
with u ~ a T^m, v ~ b T^n. Its carrousel coefficient is computed as
beta = a^q / b^p, which needs no root extraction.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, isprime

from cycles.cascade import CycleComponent
from poly_core.fields import FieldElement
from poly_core.polynomials import make_poly
from poly_core.series import substitute
from puiseux.branches import branch_multiplicity
from utils.errors import IncompatibleFields, NonReducedComponent
from utils.logger import get_logger

logger = get_logger()


class Verdict(str, Enum):
    YES = 'yes'
    NO = 'no'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class ComponentFlags:
    relatively_prime: bool
    unitary: bool
    prime_order: Optional[int] = None

    def labels(self) -> List[str]:
        out = []
        if self.relatively_prime:
            out.append('relatively-prime')
        if self.unitary:
            out.append('unitary')
        if self.prime_order is not None:
            out.append(f'prime({self.prime_order})')
        return out


@dataclass(frozen=True)
class CerfComponent:
    name: str
    m: int
    n: int
    beta: Optional[FieldElement] = None
    conjugacy: int = 1
    flags: Optional[ComponentFlags] = None

    @property
    def g(self) -> int:
        return gcd(self.m, self.n)

    @property
    def p(self) -> int:
        return self.m // self.g

    @property
    def q(self) -> int:
        return self.n // self.g


@dataclass(frozen=True)
class CarrouselVerdict:
    carrousel_form: Verdict
    semi_simple: Verdict
    reasons: Tuple[str, ...] = field(default_factory=tuple)
    warnings: Tuple[str, ...] = field(default_factory=tuple)


def classify_component(c: CerfComponent) -> ComponentFlags:
    return ComponentFlags(
        relatively_prime=c.g == 1,
        unitary=c.m == 1,
        prime_order=c.n if isprime(c.n) else None,
    )


def cerf_component(component: CycleComponent, f: Poly, z0) -> CerfComponent:
    """
    Cerf component of one parameterized polar branch class.

    Raises:
        NonReducedComponent: the polar component has multiplicity > 1
        IndeterminateOrder: the truncation cannot certify a leading term
    """
    if component.multiplicity > 1:
        raise NonReducedComponent(
            f"{component.name} has multiplicity {component.multiplicity}", module='cerf')
    branch = component.parameterization
    u_poly = make_poly(z0, f.gens)
    m = branch_multiplicity(branch, u_poly)
    n = branch_multiplicity(branch, f)

    g = gcd(m, n)
    a = substitute(u_poly, branch.assignment()).leading_coefficient()
    b = substitute(f, branch.assignment()).leading_coefficient()
    try:
        beta = a ** (n // g) / b ** (m // g)
    except IncompatibleFields as exc:
        logger.warning(f"{component.name}: carrousel coefficient unknown ({exc.message})")
        beta = None

    result = CerfComponent(component.name, m, n, beta, component.conjugacy)
    return replace(result, flags=classify_component(result))


def check_carrousel_form(components: Sequence[CerfComponent],
                         multiplicities: Sequence[int] = ()) -> Tuple[Verdict, List[str]]:
    """Sufficient test: every component relatively prime and every multiplicity 1."""
    if not components:
        return Verdict.YES, ['empty-polar-curve']
    if any(mult != 1 for mult in multiplicities):
        return Verdict.UNKNOWN, ['non-reduced-polar-curve']
    if all(c.g == 1 for c in components):
        return Verdict.YES, ['all-relatively-prime']
    return Verdict.UNKNOWN, ['not-all-relatively-prime']


def _conjugates_distinct(c: CerfComponent) -> Verdict:
    """Whether the conjugate branches in one class have distinct coefficients."""
    if c.conjugacy == 1:
        return Verdict.YES
    if c.beta is None:
        return Verdict.UNKNOWN
    if c.beta.is_rational():
        return Verdict.NO
    mono = c.beta.monomial()
    if mono is None:
        return Verdict.UNKNOWN
    _, j = mono
    d = c.beta.degree
    return Verdict.YES if (d // c.conjugacy) % gcd(j, d) == 0 else Verdict.UNKNOWN


def _pair_distinct(a: CerfComponent, b: CerfComponent) -> Verdict:
    if a.beta is None or b.beta is None:
        return Verdict.UNKNOWN
    if a.beta.is_rational() and b.beta.is_rational():
        return Verdict.NO if a.beta == b.beta else Verdict.YES
    if a.beta.is_rational() != b.beta.is_rational():
        return Verdict.YES
    if a.beta.field == b.beta.field and a.beta == b.beta:
        return Verdict.NO
    return Verdict.UNKNOWN


def check_semisimple(components: Sequence[CerfComponent],
                     carrousel_form: Verdict = Verdict.YES) -> CarrouselVerdict:
    """
    Decide semi-simplicity of the carrousel.

    Components must have coprime (m, n), and distinct components need
    distinct (p, q, beta). Root-of-unity ambiguity gives ``unknown``.
    """
    if carrousel_form != Verdict.YES:
        _, reasons = check_carrousel_form(components)
        return CarrouselVerdict(carrousel_form, Verdict.UNKNOWN, tuple(reasons) + ('carrousel-form-unknown',))

    reasons: List[str] = []
    warnings: List[str] = []
    if not components:
        return CarrouselVerdict(Verdict.YES, Verdict.YES, ('empty-polar-curve',))
    if any(c.g != 1 for c in components):
        bad = [c.name for c in components if c.g != 1]
        return CarrouselVerdict(Verdict.YES, Verdict.NO, (f"non-coprime:{','.join(bad)}",))

    verdicts: List[Verdict] = []
    for c in components:
        v = _conjugates_distinct(c)
        if v != Verdict.YES:
            reasons.append(f"conjugates-{v.value}:{c.name}")
        verdicts.append(v)

    by_type: Dict[Tuple[int, int], List[CerfComponent]] = {}
    for c in components:
        by_type.setdefault((c.p, c.q), []).append(c)
    for (p, q), group in by_type.items():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                v = _pair_distinct(a, b)
                if v == Verdict.NO:
                    message = (f"cerf/approximation-collision: {a.name} and {b.name} "
                               f"share (p, q, beta) = ({p}, {q}, {a.beta})")
                    warnings.append(message)
                if v != Verdict.YES:
                    reasons.append(f"approximation-{v.value}:{a.name}~{b.name}")
                verdicts.append(v)

    if Verdict.NO in verdicts:
        semi = Verdict.NO
    elif Verdict.UNKNOWN in verdicts:
        semi = Verdict.UNKNOWN
    else:
        semi = Verdict.YES
        reasons.append('distinct-approximations' if len(components) > 1 else 'single-component')
    return CarrouselVerdict(Verdict.YES, semi, tuple(reasons), tuple(warnings))
