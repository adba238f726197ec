"""
Truncated fractional-power series in one parameter.

A series stores integer exponents k meaning T^(k/r) for its ramification
index r. ``truncation`` is the first exponent (in the same units) whose
coefficient is unknown; ``None`` marks an exact (finite) series.
"""

from dataclasses import dataclass
from math import gcd
from typing import Dict, Mapping, Optional, Tuple

from sympy import Poly, Rational, oo

from poly_core.fields import FieldElement
from utils.errors import IndeterminateOrder, MixedParameters, UnknownVariable

DEFAULT_PARAMETER = 'T'


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _min_truncation(*values: Optional[int]) -> Optional[int]:
    known = [v for v in values if v is not None]
    return min(known) if known else None


@dataclass(frozen=True)
class PuiseuxSeries:
    parameter: str
    ramification: int
    terms: Tuple[Tuple[int, FieldElement], ...]
    truncation: Optional[int] = None

    # ============== constructors ==============

    @classmethod
    def build(cls, terms: Mapping[int, object], parameter: str = DEFAULT_PARAMETER,
              ramification: int = 1, truncation: Optional[int] = None) -> 'PuiseuxSeries':
        """Normalize raw terms: drop zeros and unknown exponents, minimize ramification."""
        cleaned: Dict[int, FieldElement] = {}
        for k, coeff in terms.items():
            coeff = FieldElement.coerce(coeff)
            if coeff.is_zero():
                continue
            if truncation is not None and k >= truncation:
                continue
            cleaned[k] = coeff

        g = ramification
        for k in cleaned:
            g = gcd(g, k)
        if truncation is not None:
            g = gcd(g, truncation)
        g = max(g, 1)
        if g > 1:
            cleaned = {k // g: c for k, c in cleaned.items()}
            ramification //= g
            truncation = None if truncation is None else truncation // g

        return cls(parameter, ramification, tuple(sorted(cleaned.items(), key=lambda kv: kv[0])), truncation)

    @classmethod
    def constant(cls, value, parameter: str = DEFAULT_PARAMETER) -> 'PuiseuxSeries':
        return cls.build({0: value}, parameter)

    @classmethod
    def monomial(cls, coeff, exponent: int, parameter: str = DEFAULT_PARAMETER,
                 ramification: int = 1) -> 'PuiseuxSeries':
        return cls.build({exponent: coeff}, parameter, ramification)

    @classmethod
    def parameter_series(cls, parameter: str = DEFAULT_PARAMETER) -> 'PuiseuxSeries':
        return cls.monomial(1, 1, parameter)

    @classmethod
    def zero(cls, parameter: str = DEFAULT_PARAMETER, truncation: Optional[int] = None) -> 'PuiseuxSeries':
        return cls(parameter, 1, (), truncation)

    # ============== inspection ==============

    @property
    def is_exact(self) -> bool:
        return self.truncation is None

    def coefficients(self) -> Dict[int, FieldElement]:
        return dict(self.terms)

    def valuation_bound(self):
        """Lowest exponent that may be nonzero (first term, else truncation, else oo)."""
        if self.terms:
            return self.terms[0][0]
        if self.truncation is not None:
            return self.truncation
        return oo

    def leading_coefficient(self) -> FieldElement:
        if not self.terms:
            raise IndeterminateOrder("series has no certified leading term", module='poly_core')
        return self.terms[0][1]

    def field(self):
        fields = {c.field for _, c in self.terms if c.field is not None}
        return fields.pop() if len(fields) == 1 else None

    # ============== arithmetic ==============

    def _check_parameter(self, other: 'PuiseuxSeries') -> None:
        if self.parameter != other.parameter:
            raise MixedParameters(f"series in {self.parameter} and {other.parameter}", module='poly_core')

    def ramify(self, factor: int) -> 'PuiseuxSeries':
        """Same series with ramification multiplied by ``factor`` (not normalized)."""
        if factor == 1:
            return self
        trunc = None if self.truncation is None else self.truncation * factor
        return PuiseuxSeries(self.parameter, self.ramification * factor,
                             tuple((k * factor, c) for k, c in self.terms), trunc)

    def _aligned(self, other: 'PuiseuxSeries') -> Tuple['PuiseuxSeries', 'PuiseuxSeries', int]:
        self._check_parameter(other)
        r = _lcm(self.ramification, other.ramification)
        return self.ramify(r // self.ramification), other.ramify(r // other.ramification), r

    def __add__(self, other) -> 'PuiseuxSeries':
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.constant(other, self.parameter)
        a, b, r = self._aligned(other)
        total: Dict[int, FieldElement] = dict(a.terms)
        for k, c in b.terms:
            total[k] = total[k] + c if k in total else c
        return PuiseuxSeries.build(total, self.parameter, r, _min_truncation(a.truncation, b.truncation))

    __radd__ = __add__

    def __neg__(self) -> 'PuiseuxSeries':
        return PuiseuxSeries(self.parameter, self.ramification,
                             tuple((k, -c) for k, c in self.terms), self.truncation)

    def __sub__(self, other) -> 'PuiseuxSeries':
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.constant(other, self.parameter)
        return self + (-other)

    def scale(self, coeff) -> 'PuiseuxSeries':
        coeff = FieldElement.coerce(coeff)
        if coeff.is_zero():
            return PuiseuxSeries.zero(self.parameter)
        return PuiseuxSeries.build({k: c * coeff for k, c in self.terms},
                                   self.parameter, self.ramification, self.truncation)

    def __mul__(self, other) -> 'PuiseuxSeries':
        if not isinstance(other, PuiseuxSeries):
            return self.scale(other)
        a, b, r = self._aligned(other)
        if (not a.terms and a.is_exact) or (not b.terms and b.is_exact):
            return PuiseuxSeries.zero(self.parameter)

        bounds = []
        if a.truncation is not None:
            bounds.append(a.truncation + b.valuation_bound())
        if b.truncation is not None:
            bounds.append(b.truncation + a.valuation_bound())
        trunc = min(bounds) if bounds else None

        product: Dict[int, FieldElement] = {}
        for i, x in a.terms:
            for j, y in b.terms:
                k = i + j
                if trunc is not None and k >= trunc:
                    break
                product[k] = product[k] + x * y if k in product else x * y
        return PuiseuxSeries.build(product, self.parameter, r, trunc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'PuiseuxSeries':
        if exponent < 0:
            raise ValueError("negative powers of series are not supported")
        result = PuiseuxSeries.constant(1, self.parameter)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def truncate(self, order: int) -> 'PuiseuxSeries':
        """Forget everything at or beyond T^(order / ramification)."""
        trunc = order if self.truncation is None else min(order, self.truncation)
        return PuiseuxSeries.build(dict(self.terms), self.parameter, self.ramification, trunc)

    def compose_power(self, power: int) -> 'PuiseuxSeries':
        """Substitute T -> T^power."""
        trunc = None if self.truncation is None else self.truncation * power
        return PuiseuxSeries.build({k * power: c for k, c in self.terms},
                                   self.parameter, self.ramification, trunc)

    def shift(self, exponent: int) -> 'PuiseuxSeries':
        """Multiply by T^(exponent / ramification)."""
        trunc = None if self.truncation is None else self.truncation + exponent
        return PuiseuxSeries.build({k + exponent: c for k, c in self.terms},
                                   self.parameter, self.ramification, trunc)

    # ============== display ==============

    def __str__(self) -> str:
        parts = []
        for k, c in self.terms:
            exp = Rational(k, self.ramification)
            parts.append(f"({c})*{self.parameter}^{exp}" if k else f"({c})")
        body = ' + '.join(parts) if parts else '0'
        if self.truncation is not None:
            body += f" + O({self.parameter}^{Rational(self.truncation, self.ramification)})"
        return body


def series_order(s: PuiseuxSeries):
    """
    Certified order of vanishing.

    Returns:
        Rational k/r of the first nonzero term, or ``oo`` for an exact zero series

    Raises:
        IndeterminateOrder: the series is truncated before any nonzero term
    """
    if s.terms:
        return Rational(s.terms[0][0], s.ramification)
    if s.truncation is None:
        return oo
    raise IndeterminateOrder(
        f"no nonzero term below {s.parameter}^{Rational(s.truncation, s.ramification)}",
        module='poly_core')


def substitute(p: Poly, assignment: Mapping[object, PuiseuxSeries]) -> PuiseuxSeries:
    """
    Compose a polynomial with series.

    Args:
        p: polynomial whose generators must all be assigned
        assignment: map from generator (symbol or name) to series

    Returns:
        The composed series with a computed truncation order
    """
    by_name = {str(k): v for k, v in assignment.items()}
    series = []
    for gen in p.gens:
        if str(gen) not in by_name:
            raise UnknownVariable(f"no series assigned to {gen}", module='poly_core')
        series.append(by_name[str(gen)])

    parameters = {s.parameter for s in series}
    if len(parameters) > 1:
        raise MixedParameters(f"series use parameters {sorted(parameters)}", module='poly_core')
    parameter = parameters.pop() if parameters else DEFAULT_PARAMETER

    powers: Dict[Tuple[int, int], PuiseuxSeries] = {}

    def power(index: int, exponent: int) -> PuiseuxSeries:
        key = (index, exponent)
        if key not in powers:
            if exponent == 1:
                powers[key] = series[index]
            else:
                powers[key] = power(index, exponent - 1) * series[index]
        return powers[key]

    total = PuiseuxSeries.zero(parameter)
    for monom, coeff in p.terms():
        term = PuiseuxSeries.constant(Rational(coeff), parameter)
        for index, exponent in enumerate(monom):
            if exponent:
                term = term * power(index, exponent)
        total = total + term
    return total


