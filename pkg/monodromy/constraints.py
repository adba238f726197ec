"""
Constraint engine: rank bounds, trace rules, prime-order case analysis.

All statements concern ranks and characteristic polynomials of the free
parts; the boundary map itself is never built.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import isprime

from cerf.carrousel import CarrouselVerdict, CerfComponent, Verdict
from monodromy.charpoly import CharPoly
from utils.errors import InconsistentInputs, NonPolynomial, NotPrime, NotSemisimple
from utils.logger import get_logger

logger = get_logger()


@dataclass(frozen=True)
class AuditEntry:
    """One filter decision: which rule removed (or annotated) what, and why."""

    module: str
    rule: str
    subject: str
    detail: str

    def to_dict(self) -> Dict[str, str]:
        return {'module': self.module, 'rule': self.rule, 'subject': self.subject, 'detail': self.detail}


# ============== ranks ==============

@dataclass(frozen=True)
class RankState:
    n: Optional[int]
    tau: int
    gamma1: int
    lambda0: int
    b_slice: Optional[int]
    rank_im_bounds: Tuple[int, int]

    @property
    def betti_bounds(self) -> Tuple[int, int]:
        lo, hi = self.rank_im_bounds
        return self.tau - hi, self.tau - lo

    def admits_betti(self, value: int) -> bool:
        lo, hi = self.betti_bounds
        return lo <= value <= hi


def swing_bounds(d, b_slice: Optional[int] = None, n: Optional[int] = None) -> RankState:
    """
    rank(im) in [gamma^1, min(tau, b_slice)], and b~_n = tau - rank(im).

    Raises:
        InconsistentInputs: the interval is empty, or lambda^0 = 0 at a critical point
    """
    if d.tau > 0 and d.lambda0 == 0:
        raise InconsistentInputs(
            f"lambda^0 = 0 with tau = {d.tau}: df/dz_0 cannot vanish at a critical point then",
            module='monodromy')
    hi = d.tau if b_slice is None else min(d.tau, b_slice)
    lo = d.gamma1
    if lo > hi:
        raise InconsistentInputs(f"rank of the boundary image must lie in [{lo}, {hi}]", module='monodromy')
    return RankState(n, d.tau, d.gamma1, d.lambda0, b_slice, (lo, hi))


def trace_from_complex_link(chi: int, n: int) -> int:
    """Monodromy trace on the top reduced homology when b~_n = lambda^0."""
    return (-1) ** (n + 1) * (1 - chi)


# ============== relative characteristic polynomials ==============

def char_rel_candidates(components: Sequence[CerfComponent],
                        verdict: CarrouselVerdict) -> Tuple[List[CharPoly], List[AuditEntry]]:
    """
    Products of (L^n_D +- 1) over the polar components.

    A class of e conjugate branches contributes (L^n - 1)^(e-j) (L^n + 1)^j.
    Candidates whose trace is not 0 are removed.

    Raises:
        NotSemisimple: the carrousel is not known to be semi-simple
    """
    if verdict.semi_simple != Verdict.YES:
        raise NotSemisimple(f"semi-simplicity is {verdict.semi_simple.value}", module='monodromy')

    partial: List[List[Tuple[int, int]]] = [[]]
    for c in components:
        choices = [[(c.n, 1)] * (c.conjugacy - j) + [(c.n, -1)] * j for j in range(c.conjugacy + 1)]
        partial = [head + choice for head in partial for choice in choices]

    candidates: List[CharPoly] = []
    audit: List[AuditEntry] = []
    for factors in partial:
        cand = CharPoly.build(factors)
        if cand.trace() != 0:
            audit.append(AuditEntry('monodromy', 'acampo-trace', str(cand),
                                    f"trace {cand.trace()} on the relative cohomology, must be 0"))
            continue
        candidates.append(cand)
    return candidates, audit


def divisibility_filter(cand: CharPoly, slice_chars: Sequence[CharPoly]) -> bool:
    """
    True when cand divides the gcd of the slice characteristic polynomials.

    Raises:
        NonPolynomial: an input is not a polynomial
    """
    for c in (cand, *slice_chars):
        if not c.is_polynomial():
            raise NonPolynomial(f"{c} is not a polynomial", module='monodromy')
    if not slice_chars:
        return True
    common = slice_chars[0]
    for other in slice_chars[1:]:
        common = common.gcd(other)
    return cand.divides(common)


# ============== prime order ==============

class PrimeCase(str, Enum):
    CASE0 = '0'
    CASE1A = '1a'
    CASE1B = '1b'
    CASE2A = '2a'
    CASE2B = '2b'


@dataclass(frozen=True)
class CaseConsequence:
    case: PrimeCase
    betti_n: int
    char_n: CharPoly
    notes: Tuple[str, ...] = ()

    @property
    def trace(self) -> int:
        return self.char_n.trace()


@dataclass(frozen=True)
class CaseVerdict:
    prime: int
    admissible: Tuple[PrimeCase, ...]
    consequences: Dict[PrimeCase, CaseConsequence] = field(default_factory=dict)
    audit: Tuple[AuditEntry, ...] = ()

    def matching(self, betti_n: int, char_n: Optional[CharPoly]) -> List[PrimeCase]:
        out = []
        for case in self.admissible:
            cons = self.consequences[case]
            if cons.betti_n != betti_n:
                continue
            if char_n is not None and not char_n.same_as(cons.char_n):
                continue
            out.append(case)
        return out


def case_consequences(prime: int) -> Dict[PrimeCase, CaseConsequence]:
    p = prime
    rider = ('H~_{n-1}(F_f) free', 'polar curve unitary')
    return {
        PrimeCase.CASE0: CaseConsequence(PrimeCase.CASE0, 0, CharPoly.one(),
                                         (f'rank H~_(n-1)(F_f0) >= {p}', 'dim Sigma f >= 1')),
        PrimeCase.CASE1A: CaseConsequence(PrimeCase.CASE1A, 1, CharPoly.binomial(1, 1),
                                          rider if p == 2 else ()),
        PrimeCase.CASE1B: CaseConsequence(PrimeCase.CASE1B, 1, CharPoly.binomial(1, -1),
                                          rider if p == 2 else ()),
        PrimeCase.CASE2A: CaseConsequence(PrimeCase.CASE2A, p - 1, CharPoly.build([(p, 1)], [(1, 1)]), rider),
        PrimeCase.CASE2B: CaseConsequence(PrimeCase.CASE2B, p - 1, CharPoly.build([(p, -1)], [(1, -1)]), rider),
    }


def classify_prime_case(prime: int, d, unitary: bool, n: int,
                        chi_link: Optional[int] = None,
                        mu0_slice: Optional[int] = None,
                        observed_trace: Optional[int] = None,
                        sigma_dim: Optional[int] = None,
                        rank_state: Optional[RankState] = None,
                        observed_betti: Optional[int] = None) -> CaseVerdict:
    """
    Admissible cases when the polar curve is a single branch of prime order.

    Raises:
        NotPrime: the order is not prime
        InconsistentInputs: every case is excluded
    """
    if not isprime(prime):
        raise NotPrime(f"{prime} is not prime", module='monodromy')
    consequences = case_consequences(prime)
    alive = list(PrimeCase)
    audit: List[AuditEntry] = []

    def drop(case: PrimeCase, rule: str, detail: str) -> None:
        if case in alive:
            alive.remove(case)
            audit.append(AuditEntry('monodromy', rule, f"Case{case.value}", detail))

    for case in (PrimeCase.CASE2A, PrimeCase.CASE2B):
        if prime == 2:
            drop(case, 'prime-case', 'order 2 excludes Case 2')
        elif not unitary:
            drop(case, 'prime-case', 'Case 2 needs a unitary polar curve')

    if sigma_dim == 0:
        drop(PrimeCase.CASE0, 'prime-case', 'Case 0 needs a critical locus of positive dimension')
    if mu0_slice is not None and mu0_slice < prime:
        drop(PrimeCase.CASE0, 'slice-rank', f'rank H~_(n-1)(F_f0) = {mu0_slice} < {prime}')

    for case in list(alive):
        betti = consequences[case].betti_n
        if rank_state is not None and not rank_state.admits_betti(betti):
            lo, hi = rank_state.betti_bounds
            drop(case, 'swing', f'b~_n = {betti} outside [{lo}, {hi}]')
        elif sigma_dim == 0 and betti != d.lambda0:
            drop(case, 'isolated', f'b~_n = mu = {d.lambda0} for an isolated singularity, not {betti}')

    if chi_link is not None:
        required = trace_from_complex_link(chi_link, n)
        for case in list(alive):
            cons = consequences[case]
            if cons.betti_n == d.lambda0 and cons.trace != required:
                drop(case, 'complex-link-trace',
                     f'b~_n = lambda^0 forces trace {required}, case has trace {cons.trace}')

    if observed_trace is not None:
        for case in list(alive):
            if consequences[case].trace != observed_trace:
                drop(case, 'observed-trace', f'observed trace {observed_trace}')
    if observed_betti is not None:
        for case in list(alive):
            if consequences[case].betti_n != observed_betti:
                drop(case, 'observed-betti', f'observed b~_n = {observed_betti}')

    if not alive:
        raise InconsistentInputs(f"no case of prime order {prime} survives", module='monodromy')
    logger.info(f"prime order {prime}: cases {', '.join(c.value for c in alive)}")
    return CaseVerdict(prime, tuple(alive), consequences, tuple(audit))
