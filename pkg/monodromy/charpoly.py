"""
Characteristic polynomials in binomial factor form.

A CharPoly is a signed quotient of products of binomials L^k - 1
(eps = +1) and L^k + 1 (eps = -1). Divisibility, gcd, trace and divisor
enumeration work on the cyclotomic exponent vector:

    L^k - 1 = prod_{d | k} Phi_d
    L^k + 1 = prod_{d | 2k, d does not divide k} Phi_d
"""

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import Poly, divisors
from sympy import mobius as sympy_mobius

from poly_core.polynomials import LAMBDA, exact_divide, to_unipoly
from utils.errors import InvalidConfig, NotDivisible

Factor = Tuple[int, int]

_FACTOR_RE = re.compile(r'L(?:\^(\d+))?([+-])1')


def mobius(n: int) -> int:
    return int(sympy_mobius(n))


def factor_cyclotomics(k: int, eps: int) -> List[int]:
    """Indices d of the cyclotomic factors Phi_d of L^k - 1 (eps = 1) or L^k + 1 (eps = -1)."""
    if eps == 1:
        return list(divisors(k))
    return [d for d in divisors(2 * k) if k % d != 0]


def _factor_str(k: int, eps: int) -> str:
    base = 'L' if k == 1 else f'L^{k}'
    return f"{base}{'-' if eps == 1 else '+'}1"


def _product_str(factors: Iterable[Factor]) -> str:
    return ''.join(f"({_factor_str(k, e)})" for k, e in factors)


@dataclass(frozen=True)
class CharPoly:
    numerator: Tuple[Factor, ...] = ()
    denominator: Tuple[Factor, ...] = ()
    sign: int = 1

    # ============== construction ==============

    @classmethod
    def build(cls, numerator: Iterable[Factor] = (), denominator: Iterable[Factor] = (),
              sign: int = 1) -> 'CharPoly':
        """Sorted factor form with identical numerator/denominator factors cancelled."""
        num = Counter(numerator)
        den = Counter(denominator)
        common = num & den
        num -= common
        den -= common
        return cls(tuple(sorted(num.elements())), tuple(sorted(den.elements())), sign)

    @classmethod
    def one(cls) -> 'CharPoly':
        return cls()

    @classmethod
    def binomial(cls, k: int, eps: int) -> 'CharPoly':
        return cls(((k, eps),))

    @classmethod
    def from_cyclotomic(cls, vector) -> 'CharPoly':
        """
        Readable factor form of prod Phi_d^{e_d}.

        Binomials are taken greedily, largest first, while their cyclotomic
        support fits; leftover Phi_d are written as Mobius quotients and
        adjacent pairs (L^2k - 1)/(L^k - 1) are merged into L^k + 1.
        """
        remaining = Counter({d: e for d, e in dict(vector).items() if e})
        if any(e < 0 for e in remaining.values()):
            positive = Counter({d: e for d, e in remaining.items() if e > 0})
            negative = Counter({d: -e for d, e in remaining.items() if e < 0})
            top = cls.from_cyclotomic(positive)
            bottom = cls.from_cyclotomic(negative)
            return cls.build(top.numerator + bottom.denominator, top.denominator + bottom.numerator)

        numerator: List[Factor] = []
        while remaining:
            top = max(remaining)
            best: Optional[Factor] = None
            for k in range(top, 0, -1):
                for eps in (-1, 1):
                    support = factor_cyclotomics(k, eps)
                    if all(remaining[d] > 0 for d in support):
                        best = (k, eps)
                        break
                if best is not None:
                    break
            if best is None:
                break
            numerator.append(best)
            remaining.subtract(factor_cyclotomics(*best))
            remaining = +remaining

        num: Counter = Counter(numerator)
        den: Counter = Counter()
        for d, e in remaining.items():
            for k in divisors(d):
                mu = mobius(d // k)
                if mu == 1:
                    num[(k, 1)] += e
                elif mu == -1:
                    den[(k, 1)] += e
        num, den = _merge_pairs(num, den)
        return cls.build(num.elements(), den.elements())

    # ============== inspection ==============

    def cyclotomic(self) -> Counter:
        vector: Counter = Counter()
        for k, eps in self.numerator:
            vector.update(factor_cyclotomics(k, eps))
        for k, eps in self.denominator:
            vector.subtract(factor_cyclotomics(k, eps))
        return Counter({d: e for d, e in vector.items() if e})

    def is_polynomial(self) -> bool:
        return all(e > 0 for e in self.cyclotomic().values())

    @property
    def degree(self) -> int:
        return sum(k for k, _ in self.numerator) - sum(k for k, _ in self.denominator)

    def trace(self) -> int:
        """Sum of the roots (with multiplicity), i.e. the trace of the monodromy."""
        return sum(e * mobius(d) for d, e in self.cyclotomic().items())

    def expand(self) -> Optional[Tuple[int, ...]]:
        """Descending integer coefficients, or None when not a polynomial."""
        num = reduce(lambda acc, f: acc * _binomial_poly(*f), self.numerator, to_unipoly([1]))
        den = reduce(lambda acc, f: acc * _binomial_poly(*f), self.denominator, to_unipoly([1]))
        try:
            quotient = exact_divide(num, den)
        except NotDivisible:
            return None
        return tuple(int(c) * self.sign for c in quotient.all_coeffs())

    def as_poly(self) -> Optional[Poly]:
        coeffs = self.expand()
        return to_unipoly(coeffs) if coeffs is not None else None

    # ============== algebra ==============

    def __mul__(self, other: 'CharPoly') -> 'CharPoly':
        return CharPoly.build(self.numerator + other.numerator,
                              self.denominator + other.denominator, self.sign * other.sign)

    def __truediv__(self, other: 'CharPoly') -> 'CharPoly':
        return CharPoly.build(self.numerator + other.denominator,
                              self.denominator + other.numerator, self.sign * other.sign)

    def suspend(self) -> 'CharPoly':
        """Factor-level substitution L -> -L, normalized to be monic."""
        def flip(factors):
            return [(k, -eps if k % 2 else eps) for k, eps in factors]
        return CharPoly.build(flip(self.numerator), flip(self.denominator), self.sign)

    def divides(self, other: 'CharPoly') -> bool:
        mine, theirs = self.cyclotomic(), other.cyclotomic()
        return all(theirs.get(d, 0) >= e for d, e in mine.items())

    def same_as(self, other: 'CharPoly') -> bool:
        return self.sign == other.sign and self.cyclotomic() == other.cyclotomic()

    def gcd(self, other: 'CharPoly') -> 'CharPoly':
        mine, theirs = self.cyclotomic(), other.cyclotomic()
        return CharPoly.from_cyclotomic({d: min(e, theirs[d]) for d, e in mine.items() if theirs.get(d, 0) > 0})

    def divisors(self) -> List['CharPoly']:
        """Monic divisors, ordered by degree and then by printed form."""
        vector = sorted(self.cyclotomic().items())
        ranges = [range(e + 1) for _, e in vector]
        found = []
        for exps in itertools.product(*ranges):
            found.append(CharPoly.from_cyclotomic({d: x for (d, _), x in zip(vector, exps) if x}))
        return sorted(found, key=lambda c: (c.degree, str(c)))

    # ============== display ==============

    def __str__(self) -> str:
        prefix = '-' if self.sign < 0 else ''
        if not self.numerator and not self.denominator:
            return f"{prefix}1"
        top = _product_str(self.numerator) if self.numerator else '1'
        if not self.denominator:
            return prefix + top
        bottom = _product_str(self.denominator)
        if len(self.denominator) > 1:
            bottom = f"({bottom})"
        return f"{prefix}{top}/{bottom}"

    def expanded_str(self) -> Optional[str]:
        poly = self.as_poly()
        if poly is None:
            return None
        return str(poly.as_expr()).replace('**', '^')


def _binomial_poly(k: int, eps: int) -> Poly:
    return Poly(LAMBDA**k - eps, LAMBDA, domain='ZZ')


def _merge_pairs(num: Counter, den: Counter) -> Tuple[Counter, Counter]:
    """Rewrite (L^2k - 1)/(L^k - 1) as L^k + 1 on either side of the fraction."""
    changed = True
    while changed:
        changed = False
        for top, bottom in ((num, den), (den, num)):
            for (k2, eps), count in sorted(top.items(), reverse=True):
                if eps != 1 or k2 % 2 or count <= 0:
                    continue
                k = k2 // 2
                if bottom[(k, 1)] > 0:
                    top[(k2, 1)] -= 1
                    bottom[(k, 1)] -= 1
                    top[(k, -1)] += 1
                    changed = True
                    break
            if changed:
                break
    return +num, +den


def parse_factorspec(text: str) -> CharPoly:
    """
    Parse ``(L^k+-1)`` products with an optional ``/`` denominator.

    Examples: ``(L^4-1)(L+1)/(L^2-1)``, ``(L^12+1)/[(L+1)(L^4+1)]``, ``1``.

    Raises:
        InvalidConfig: the text is not a factor specification
    """
    compact = re.sub(r'\s+', '', text or '')
    if not compact:
        raise InvalidConfig("empty factor specification", module='monodromy')
    sign = 1
    if compact.startswith('-'):
        sign, compact = -1, compact[1:]
    halves = compact.split('/')
    if len(halves) > 2:
        raise InvalidConfig(f"more than one '/' in {text!r}", module='monodromy')

    parsed: List[List[Factor]] = []
    for half in halves:
        factors = [(int(k) if k else 1, 1 if op == '-' else -1) for k, op in _FACTOR_RE.findall(half)]
        residue = _FACTOR_RE.sub('', half)
        if residue.strip('()[]') not in ('', '1') or not re.fullmatch(r'[\[\]()1]*', residue):
            raise InvalidConfig(f"cannot read factor specification {text!r}", module='monodromy')
        if not factors and residue.strip('()[]') != '1':
            raise InvalidConfig(f"cannot read factor specification {text!r}", module='monodromy')
        if any(k < 1 for k, _ in factors):
            raise InvalidConfig(f"exponents must be positive in {text!r}", module='monodromy')
        parsed.append(factors)

    denominator = parsed[1] if len(parsed) == 2 else []
    return CharPoly.build(parsed[0], denominator, sign)


def cyclotomic_str(vector: Dict[int, int]) -> str:
    parts = [f"Phi{d}" + (f"^{e}" if e != 1 else '') for d, e in sorted(vector.items())]
    return '*'.join(parts) if parts else '1'
