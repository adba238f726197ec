"""
Report assembly: candidate options, filter chain and audit trail.

An option is a choice of relative characteristic polynomial and of the
characteristic polynomial of the boundary image (or just the image rank
when the carrousel is not known to be semi-simple). Filters remove
options one at a time; every removal is recorded.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol, expand, isprime

from cerf.carrousel import CarrouselVerdict, CerfComponent, Verdict
from cycles.cascade import CascadeResult, LeNumbers, Prepolarity, local_intersection_number
from cycles.intersections import IntersectionData, le_greuel_check
from monodromy.charpoly import CharPoly
from monodromy.constraints import (AuditEntry, CaseVerdict, PrimeCase, RankState,
                                   char_rel_candidates, classify_prime_case,
                                   divisibility_filter, swing_bounds,
                                   trace_from_complex_link)
from monodromy.joins import join_data
from puiseux.components import HintSet, NormalForm
from utils.errors import EmptyAdmissibleSet, InconsistentInputs, NotAJoin
from utils.logger import StageLogger, get_logger

logger = get_logger()

SLICE_PARAMETER = Symbol('_delta')


@dataclass(frozen=True)
class DerivedValue:
    value: object
    source: str


@dataclass
class DerivedInputs:
    """External quantities with the provenance of each value."""

    sigma_dim: Optional[DerivedValue] = None
    chi_link: Optional[DerivedValue] = None
    b_slice: Optional[DerivedValue] = None
    slice_char: Optional[DerivedValue] = None
    transversal_chars: Tuple[Tuple[str, CharPoly], ...] = ()
    extra_slice_chars: Tuple[CharPoly, ...] = ()
    lower_betti: Dict[int, int] = field(default_factory=dict)
    observed_trace: Optional[int] = None
    observed_betti: Dict[int, int] = field(default_factory=dict)

    @staticmethod
    def value_of(item: Optional[DerivedValue]):
        return None if item is None else item.value


@dataclass(frozen=True)
class Option:
    label: str
    rank_im: int
    char_rel: Optional[CharPoly] = None
    char_im: Optional[CharPoly] = None
    betti: Dict[int, int] = field(default_factory=dict)
    cases: Tuple[PrimeCase, ...] = ()

    @property
    def char_n(self) -> Optional[CharPoly]:
        if self.char_rel is None or self.char_im is None:
            return None
        return self.char_rel / self.char_im

    def describe(self) -> str:
        if self.char_rel is None:
            return f"rank(im) = {self.rank_im}"
        return f"char_rel = {self.char_rel}, char_im = {self.char_im}"


@dataclass
class ConstraintReport:
    polynomial: str
    coords: Tuple[str, ...]
    profile: str
    cascade: CascadeResult
    le: LeNumbers
    intersections: IntersectionData
    cerf: Tuple[CerfComponent, ...]
    verdict: CarrouselVerdict
    derived: DerivedInputs
    rank_state: RankState
    char_rel: Tuple[CharPoly, ...]
    options: Tuple[Option, ...]
    case_verdict: Optional[CaseVerdict] = None
    audit: List[AuditEntry] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    le_greuel: Optional[bool] = None
    prepolarity: Optional[Prepolarity] = None

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def totals_coprime(self) -> bool:
        return self.intersections.totals_coprime


# ============== derived inputs ==============

def _is_linear(form: NormalForm) -> bool:
    if form.residual is not None:
        return False
    return all(expr == 0 or Poly(expr, *form.free, domain='QQ').total_degree() <= 1
               for _, expr in form.solved)


def complex_link_chi(cascade: CascadeResult, trunc: int,
                     hints: Optional[HintSet] = None) -> Optional[DerivedValue]:
    """Euler characteristic of the complex link of the critical locus, when derivable."""
    sigma = cascade.sigma_dim
    if sigma == 0:
        return DerivedValue(0, 'isolated singularity')
    top = cascade.lambdas[sigma].components
    lower = [c for k in range(1, sigma) if k in cascade.lambdas for c in cascade.lambdas[k].components]
    if len(top) == 1 and _is_linear(top[0].form) and all(top[0].form.contains(c.form) for c in lower):
        return DerivedValue(1, 'smooth critical locus')
    if sigma == 1:
        z0 = cascade.coords[0]
        points = sum(local_intersection_number(c.form, z0, trunc, hints, c.name) for c in top)
        return DerivedValue(points, 'Le cycles')
    return None


def transversal_slice_chars(f: Poly, cascade: CascadeResult) -> List[Tuple[str, CharPoly]]:
    """
    Characteristic polynomials of transversal slices along the one-dimensional
    Le cycle components that are graphs over the z_0-axis.
    """
    lambda1 = cascade.lambdas.get(1)
    if lambda1 is None:
        return []
    z0, rest = cascade.coords[0], cascade.coords[1:]
    found: List[Tuple[str, CharPoly]] = []
    for comp in lambda1.components:
        form = comp.form
        if form.residual is not None or form.free != (z0,):
            continue
        moved = {z0: SLICE_PARAMETER}
        for v, expr in form.solved:
            moved[v] = v + expr.xreplace({z0: SLICE_PARAMETER})
        g = expand(f.as_expr().xreplace(moved))
        try:
            data = join_data(g, rest)
        except NotAJoin as exc:
            logger.debug(f"{comp.name}: transversal slice is not a join ({exc.message})")
            continue
        logger.debug(f"{comp.name}: transversal slice char {data.char}")
        found.append((comp.name, data.char))
    return found


# ============== filters ==============

class _Chain:
    def __init__(self, options: List[Option]):
        self.options = options
        self.audit: List[AuditEntry] = []

    def apply(self, rule: str, keep, detail) -> None:
        survivors = []
        for opt in self.options:
            if keep(opt):
                survivors.append(opt)
            else:
                self.audit.append(AuditEntry('monodromy', rule, opt.label, f"{opt.describe()}: {detail(opt)}"))
        self.options = survivors


def _roman(number: int) -> str:
    numerals = ((50, 'l'), (40, 'xl'), (10, 'x'), (9, 'ix'), (5, 'v'), (4, 'iv'), (1, 'i'))
    out = ''
    for value, letters in numerals:
        while number >= value:
            out += letters
            number -= value
    return out


def _divides_off_unit_roots(char_im: CharPoly, char_rel: CharPoly) -> bool:
    rel = char_rel.cyclotomic()
    return all(rel.get(d, 0) >= e for d, e in char_im.cyclotomic().items() if d > 2)


def _betti_vector(n: int, tau: int, rank: int, b_slice: Optional[int], lower: Dict[int, int]) -> Dict[int, int]:
    betti = {n: tau - rank}
    if b_slice is not None and n >= 1:
        betti[n - 1] = b_slice - rank
    for k, v in lower.items():
        if k < n - 1:
            betti[k] = v
    return dict(sorted(betti.items(), reverse=True))


def _initial_options(cerf: Sequence[CerfComponent], verdict: CarrouselVerdict, rank_state: RankState,
                     slice_char: Optional[CharPoly], n: int, lower: Dict[int, int],
                     audit: List[AuditEntry]) -> Tuple[List[CharPoly], List[Option]]:
    b_slice = rank_state.b_slice
    options: List[Option] = []
    if verdict.semi_simple != Verdict.YES:
        lo, hi = rank_state.rank_im_bounds
        for rank in range(lo, hi + 1):
            options.append(Option(f"c{len(options) + 1}", rank,
                                  betti=_betti_vector(n, rank_state.tau, rank, b_slice, lower)))
        return [], options

    rel, rel_audit = char_rel_candidates(cerf, verdict)
    audit.extend(rel_audit)
    for char_rel in rel:
        source = slice_char if slice_char is not None else char_rel
        for char_im in source.divisors():
            options.append(Option(f"c{len(options) + 1}", char_im.degree, char_rel, char_im,
                                  _betti_vector(n, rank_state.tau, char_im.degree, b_slice, lower)))
    return rel, options


def build_report(f: Poly, cascade: CascadeResult, le: LeNumbers, inter: IntersectionData,
                 cerf: Sequence[CerfComponent], verdict: CarrouselVerdict, derived: DerivedInputs,
                 profile: str = 'standard', warnings: Sequence[str] = (),
                 prepolarity: Optional[Prepolarity] = None) -> ConstraintReport:
    """
    Assemble the admissible options and the audit trail.

    Raises:
        InconsistentInputs: the rank interval is empty
        EmptyAdmissibleSet: the filters remove every option
    """
    coords = tuple(str(v) for v in f.gens)
    n = len(coords) - 1
    warnings = list(warnings)
    audit: List[AuditEntry] = []
    value = DerivedInputs.value_of

    sigma_dim = value(derived.sigma_dim)
    chi = value(derived.chi_link)
    b_slice = value(derived.b_slice)
    slice_char: Optional[CharPoly] = value(derived.slice_char)

    with StageLogger("Constraint report") as log:
        if prepolarity is not None and prepolarity.verdict == 'no':
            warnings.append(f"cycles/not-prepolar: {prepolarity.reason}")

        rank_state = swing_bounds(inter, b_slice, n)
        log.info(f"rank(im) in {list(rank_state.rank_im_bounds)}, b~_{n} in {list(rank_state.betti_bounds)}")

        le_greuel = None
        if sigma_dim == 0 and b_slice is not None and derived.b_slice.source != 'Le-Greuel':
            le_greuel = le_greuel_check(inter.lambda0, b_slice, inter.tau)
            if not le_greuel:
                warnings.append(f"Le-Greuel: lambda^0 + mu(f_0) = {inter.lambda0 + b_slice} != tau = {inter.tau}")

        if verdict.semi_simple != Verdict.YES:
            warnings.append(f"carrousel semi-simplicity is {verdict.semi_simple.value}; options carry ranks only")

        rel, options = _initial_options(cerf, verdict, rank_state, slice_char, n, derived.lower_betti, audit)
        chain = _Chain(options)
        lo, hi = rank_state.rank_im_bounds
        chain.apply('swing', lambda o: lo <= o.rank_im <= hi,
                    lambda o: f"rank(im) = {o.rank_im} outside [{lo}, {hi}]")

        if profile == 'strict':
            chain.apply('multiplicativity', lambda o: o.char_im is None or o.char_im.divides(o.char_rel),
                        lambda o: f"char^n = {o.char_n} is not a polynomial")
        else:
            chain.apply('multiplicativity', lambda o: o.char_im is None or _divides_off_unit_roots(o.char_im, o.char_rel),
                        lambda o: f"char_im does not divide char_rel on eigenvalues other than +-1")

        if chi is not None:
            required = -trace_from_complex_link(chi, n)
            chain.apply('complex-link-trace',
                        lambda o: o.char_im is None or o.rank_im != inter.gamma1 or o.char_im.trace() == required,
                        lambda o: f"b~_{n} = lambda^0 needs trace(char_im) = {required}, got {o.char_im.trace()}")

        slice_chars: List[CharPoly] = []
        if slice_char is not None:
            slice_chars.append(slice_char)
            if sigma_dim == 1:
                slice_chars.extend(c for _, c in derived.transversal_chars)
            slice_chars.extend(derived.extra_slice_chars)
        if len(slice_chars) > 1:
            chain.apply('slice-divisibility',
                        lambda o: o.char_im is None or divisibility_filter(slice_char / o.char_im, slice_chars),
                        lambda o: f"char^{n - 1} = {slice_char / o.char_im} does not divide every slice polynomial")

        case_verdict = None
        single = inter.components[0] if len(inter.components) == 1 else None
        if single is not None and single.weight == 1 and isprime(inter.tau):
            try:
                case_verdict = classify_prime_case(
                    inter.tau, inter, single.m == 1, n, chi_link=chi, mu0_slice=b_slice,
                    observed_trace=derived.observed_trace, sigma_dim=sigma_dim, rank_state=rank_state,
                    observed_betti=derived.observed_betti.get(n))
            except InconsistentInputs as exc:
                raise EmptyAdmissibleSet(exc.message, module='monodromy', audit=audit + chain.audit) from exc
            audit.extend(case_verdict.audit)
            matched = {o.label: tuple(case_verdict.matching(o.betti[n], o.char_n)) for o in chain.options}
            chain.apply('prime-case', lambda o: bool(matched[o.label]),
                        lambda o: f"b~_{n} = {o.betti[n]}, char^n = {o.char_n} matches no admissible case")
            chain.options = [Option(o.label, o.rank_im, o.char_rel, o.char_im, o.betti, matched[o.label])
                             for o in chain.options]

        if derived.observed_trace is not None:
            chain.apply('observed-trace',
                        lambda o: o.char_n is None or o.char_n.trace() == derived.observed_trace,
                        lambda o: f"trace(char^n) = {o.char_n.trace()}, observed {derived.observed_trace}")
        for degree, observed in sorted(derived.observed_betti.items()):
            chain.apply('observed-betti',
                        lambda o, k=degree, v=observed: o.betti.get(k, v) == v,
                        lambda o, k=degree, v=observed: f"b~_{k} = {o.betti.get(k)}, observed {v}")

        audit.extend(chain.audit)
        if not chain.options:
            raise EmptyAdmissibleSet("every option was removed by the filters", module='monodromy', audit=audit)

        chain.options = [replace(o, label=_roman(i)) for i, o in enumerate(chain.options, start=1)]
        for opt in chain.options:
            char_n = opt.char_n
            if char_n is not None and not char_n.is_polynomial():
                warnings.append(f"option {opt.label}: char^{n} = {char_n} is not a polynomial "
                                f"(kept under the {profile} profile)")

        if case_verdict is not None:
            realized = {c for o in chain.options for c in o.cases}
            case_verdict = CaseVerdict(case_verdict.prime, tuple(c for c in PrimeCase if c in realized),
                                       case_verdict.consequences, case_verdict.audit)

        for message in warnings:
            logger.warning(message)
        log.info(f"{len(chain.options)} admissible option(s), {len(audit)} audit entries")

    return ConstraintReport(
        polynomial=str(f.as_expr()),
        coords=coords,
        profile=profile,
        cascade=cascade,
        le=le,
        intersections=inter,
        cerf=tuple(cerf),
        verdict=verdict,
        derived=derived,
        rank_state=rank_state,
        char_rel=tuple(rel),
        options=tuple(chain.options),
        case_verdict=case_verdict,
        audit=audit,
        warnings=warnings,
        le_greuel=le_greuel,
        prepolarity=prepolarity,
    )
