"""
Analysis orchestration: configuration, the cascade-to-report pipeline,
truncation escalation and the derived slice inputs.
"""

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from sympy import Poly, Symbol

from cerf.carrousel import (CarrouselVerdict, Verdict, cerf_component,
                            check_carrousel_form, check_semisimple)
from cli.hints import load_hints
from cli.parser import parse_polynomial
from config import ANALYSIS_CONFIG, OUTPUT_FORMATS, PROFILE_ALIASES, PROFILES
from cycles.cascade import check_prepolarity, le_numbers, polar_le_cascade
from cycles.intersections import intersection_numbers
from monodromy.charpoly import CharPoly, parse_factorspec
from monodromy.joins import join_data
from monodromy.report import (ConstraintReport, DerivedInputs, DerivedValue,
                              build_report, complex_link_chi,
                              transversal_slice_chars)
from poly_core.polynomials import make_poly
from puiseux.components import HintSet
from utils.errors import (IndeterminateOrder, InvalidConfig, MilnorError,
                          NonReducedComponent, NotAJoin)
from utils.logger import StageLogger, get_logger

logger = get_logger()


@dataclass
class AnalysisConfig:
    polynomial: str
    variables: List[str]
    z0: Optional[str] = None
    observed_trace: Optional[int] = None
    chi_link: Optional[int] = None
    mu0_slice: Optional[int] = None
    sigma_dim: Optional[int] = None
    f0_char: Optional[str] = None
    slice_chars: List[str] = field(default_factory=list)
    observed_betti: Dict[int, int] = field(default_factory=dict)
    hints: Optional[str] = None
    profile: str = ANALYSIS_CONFIG['profile']
    truncation_cap: int = ANALYSIS_CONFIG['truncation_cap']
    output_format: str = ANALYSIS_CONFIG['output_format']

    def __post_init__(self):
        self.profile = PROFILE_ALIASES.get(self.profile, self.profile)

    @classmethod
    def from_dict(cls, data: Dict) -> 'AnalysisConfig':
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidConfig(f"unknown configuration keys: {', '.join(sorted(unknown))}", module='cli')
        values = dict(data)
        if isinstance(values.get('variables'), str):
            values['variables'] = [v.strip() for v in values['variables'].split(',') if v.strip()]
        if 'observed_betti' in values:
            values['observed_betti'] = {int(k): int(v) for k, v in values['observed_betti'].items()}
        try:
            return cls(**values)
        except TypeError as exc:
            raise InvalidConfig(str(exc), module='cli') from exc

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> 'AnalysisConfig':
        try:
            data = json.loads(Path(path).read_text(encoding='utf-8'))
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidConfig(f"cannot read config {path}: {exc}", module='cli') from exc
        return cls.from_dict(data)

    def to_dict(self) -> Dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def ordered_variables(self) -> Tuple[str, ...]:
        """Declared variables with z0 moved to the front."""
        self.validate()
        names = list(self.variables)
        z0 = self.z0 or names[0]
        return (z0, *[v for v in names if v != z0])

    def validate(self) -> None:
        """
        Raises:
            InvalidConfig: inconsistent or out-of-range settings
        """
        if not self.variables:
            raise InvalidConfig("no variables declared", module='cli')
        if len(set(self.variables)) != len(self.variables):
            raise InvalidConfig("variables must be distinct", module='cli')
        if self.z0 is not None and self.z0 not in self.variables:
            raise InvalidConfig(f"z0 = {self.z0!r} is not a declared variable", module='cli')
        if self.profile not in PROFILES:
            raise InvalidConfig(f"profile must be one of {', '.join(PROFILES + tuple(PROFILE_ALIASES))}", module='cli')
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidConfig(f"format must be one of {', '.join(OUTPUT_FORMATS)}", module='cli')
        if self.truncation_cap < ANALYSIS_CONFIG['truncation_factor']:
            raise InvalidConfig(f"truncation cap {self.truncation_cap} is too small", module='cli')
        for name in ('mu0_slice', 'sigma_dim'):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise InvalidConfig(f"{name} must be non-negative", module='cli')


# ============== slice data ==============

@dataclass(frozen=True)
class SliceData:
    b_slice: Optional[DerivedValue] = None
    char: Optional[DerivedValue] = None
    lower_betti: Dict[int, int] = field(default_factory=dict)


def _unique(values):
    values = list(values)
    if values and all(v == values[0] for v in values):
        return values[0]
    return None


def derive_slice(f: Poly, cfg: AnalysisConfig, depth: int, sigma_dim: int, gamma1: int) -> SliceData:
    """Milnor data of f_0 = f restricted to z_0 = 0, from the join rule or a recursive analysis."""
    coords = f.gens
    n = len(coords) - 1
    if n == 0:
        return SliceData()
    rest = coords[1:]
    f0 = make_poly(f.as_expr().subs(coords[0], 0), rest)
    if f0.is_zero:
        logger.warning("f vanishes on the hyperplane z_0 = 0")
        return SliceData()
    if f0.total_degree() > 0 and any(f0.coeff_monomial(v) != 0 for v in rest):
        return SliceData(DerivedValue(0, 'smooth slice'), DerivedValue(CharPoly.one(), 'smooth slice'),
                         {k: 0 for k in range(n - 1)})

    try:
        data = join_data(f0, rest)
        return SliceData(DerivedValue(data.mu, 'join rule'), DerivedValue(data.char, 'join rule'),
                         {k: 0 for k in range(n - 1)})
    except NotAJoin as exc:
        logger.debug(f"slice is not a join: {exc.message}")

    if depth < ANALYSIS_CONFIG['slice_depth'] and n >= 1:
        sub_cfg = AnalysisConfig(polynomial=str(f0.as_expr()), variables=[str(v) for v in rest],
                                 profile=cfg.profile, truncation_cap=cfg.truncation_cap)
        try:
            sub = analyze_polynomial(f0, sub_cfg, None, depth + 1)
        except MilnorError as exc:
            logger.warning(f"slice analysis failed: {exc.code}: {exc.message}")
        else:
            top = n - 1
            b = _unique(o.betti[top] for o in sub.options)
            chars = [o.char_n for o in sub.options]
            char = None
            if all(c is not None and c.is_polynomial() for c in chars):
                first = chars[0]
                if all(c.same_as(first) for c in chars):
                    char = first
            lower = {}
            for k in range(top):
                value = _unique(o.betti.get(k) for o in sub.options)
                if value is not None:
                    lower[k] = value
            if b is not None:
                return SliceData(DerivedValue(b, 'slice analysis'),
                                 DerivedValue(char, 'slice analysis') if char is not None else None, lower)

    if sigma_dim == 0:
        return SliceData(DerivedValue(gamma1, 'Le-Greuel'), None, {k: 0 for k in range(n - 1)})
    return SliceData()


# ============== pipeline ==============

def _carrousel(gamma_components, f: Poly, z0) -> Tuple[list, CarrouselVerdict]:
    try:
        cerf = [cerf_component(c, f, z0) for c in gamma_components]
    except NonReducedComponent as exc:
        logger.warning(f"carrousel analysis skipped: {exc.message}")
        return [], CarrouselVerdict(Verdict.UNKNOWN, Verdict.UNKNOWN, ('non-reduced-polar-curve',))
    form, _ = check_carrousel_form(cerf, [c.multiplicity for c in gamma_components])
    return cerf, check_semisimple(cerf, form)


def _pipeline(f: Poly, cfg: AnalysisConfig, hints: Optional[HintSet], depth: int, trunc: int) -> ConstraintReport:
    z0 = f.gens[0]
    cascade = polar_le_cascade(f, trunc, hints)
    le = le_numbers(cascade, trunc, hints)
    prepolarity = check_prepolarity(f, cascade.sigma_dim, hints)
    inter = intersection_numbers(cascade.gammas[1], f, z0, trunc, hints)
    cerf, verdict = _carrousel([d.component for d in inter.components], f, z0)

    sigma = DerivedValue(cfg.sigma_dim, 'input') if cfg.sigma_dim is not None \
        else DerivedValue(cascade.sigma_dim, 'Le cycles')
    chi = DerivedValue(cfg.chi_link, 'input') if cfg.chi_link is not None \
        else complex_link_chi(cascade, trunc, hints)

    slice_data = derive_slice(f, cfg, depth, sigma.value, inter.gamma1)
    b_slice = DerivedValue(cfg.mu0_slice, 'input') if cfg.mu0_slice is not None else slice_data.b_slice
    slice_char = DerivedValue(parse_factorspec(cfg.f0_char), 'input') if cfg.f0_char else slice_data.char

    derived = DerivedInputs(
        sigma_dim=sigma,
        chi_link=chi,
        b_slice=b_slice,
        slice_char=slice_char,
        transversal_chars=tuple(transversal_slice_chars(f, cascade)),
        extra_slice_chars=tuple(parse_factorspec(s) for s in cfg.slice_chars),
        lower_betti=slice_data.lower_betti,
        observed_trace=cfg.observed_trace,
        observed_betti=dict(cfg.observed_betti),
    )
    warnings = []
    if verdict.carrousel_form != Verdict.YES:
        warnings.append(f"carrousel form not established ({', '.join(verdict.reasons)})")
    warnings.extend(verdict.warnings)
    if len(cerf) > 1 and not inter.totals_coprime:
        logger.info(f"gcd(gamma^1, tau) = gcd({inter.gamma1}, {inter.tau}) != 1")
    return build_report(f, cascade, le, inter, cerf, verdict, derived, cfg.profile, warnings, prepolarity)


def initial_truncation(f: Poly, cap: int) -> int:
    return min(cap, max(8, ANALYSIS_CONFIG['truncation_factor'] * f.total_degree()))


def analyze_polynomial(f: Poly, cfg: AnalysisConfig, hints: Optional[HintSet] = None,
                       depth: int = 0) -> ConstraintReport:
    """Run the pipeline, doubling the truncation while orders stay undetermined."""
    trunc = initial_truncation(f, cfg.truncation_cap)
    while True:
        try:
            return _pipeline(f, cfg, hints, depth, trunc)
        except IndeterminateOrder:
            if trunc >= cfg.truncation_cap:
                raise
            trunc = min(2 * trunc, cfg.truncation_cap)
            logger.info(f"raising working truncation to {trunc}")


def run_analysis(cfg: AnalysisConfig) -> ConstraintReport:
    """
    Parse, analyze and assemble the report for one configuration.

    Raises:
        ConfigError: invalid configuration, expression or hints
        AnalysisError: any analysis failure, with its stable code
    """
    cfg.validate()
    names = cfg.ordered_variables()
    symbols = [Symbol(v) for v in names]
    with StageLogger(f"Analysis of {cfg.polynomial.strip()}"):
        f = parse_polynomial(cfg.polynomial, symbols)
        hints = load_hints(cfg.hints, symbols) if cfg.hints else None
        return analyze_polynomial(f, cfg, hints)


def with_overrides(cfg: AnalysisConfig, **overrides) -> AnalysisConfig:
    """Copy of cfg with every non-None override applied."""
    return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
