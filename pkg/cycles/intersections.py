"""
Local intersection numbers of the relative polar curve.

For each polar branch D: m_D = (D . V(z_0)), n_D = (D . V(f)) and
l_D = (D . V(df/dz_0)), with n_D = m_D + l_D checked branch by branch.
"""

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Tuple

from sympy import Poly

from cycles.cascade import Cycle, CycleComponent, curve_branches
from poly_core.polynomials import make_poly, partial_derivative
from puiseux.branches import branch_multiplicity
from puiseux.components import HintSet
from utils.errors import ImproperIntersection, InfiniteContact, TeissierViolation
from utils.logger import StageLogger


@dataclass(frozen=True)
class PolarBranchData:
    """Invariants of one conjugacy class of polar branches (per geometric branch)."""

    component: CycleComponent
    m: int
    n: int
    l: int

    @property
    def name(self) -> str:
        return self.component.name

    @property
    def weight(self) -> int:
        return self.component.multiplicity * self.component.conjugacy


@dataclass(frozen=True)
class IntersectionData:
    gamma1: int
    lambda0: int
    tau: int
    components: Tuple[PolarBranchData, ...] = ()

    @property
    def polar_curve(self) -> Tuple[CycleComponent, ...]:
        return tuple(d.component for d in self.components)

    def pairs(self) -> List[Tuple[int, int]]:
        return [(d.m, d.n) for d in self.components]

    @property
    def totals_coprime(self) -> bool:
        return gcd(self.gamma1, self.tau) == 1


def split_by_branch(gamma1: Cycle, trunc: int, hints: Optional[HintSet] = None) -> List[CycleComponent]:
    """One parameterized component per branch class; names get a '#k' suffix when split."""
    out: List[CycleComponent] = []
    for comp in gamma1.components:
        branches = curve_branches(comp.form, trunc, hints, comp.name)
        for k, branch in enumerate(branches, start=1):
            name = comp.name if len(branches) == 1 else f"{comp.name}#{k}"
            out.append(CycleComponent(name, comp.form, comp.multiplicity, branch))
    return out


def intersection_numbers(gamma1: Cycle, f: Poly, z0, trunc: int,
                         hints: Optional[HintSet] = None) -> IntersectionData:
    """
    gamma^1, lambda^0 and tau of the polar curve.

    Raises:
        TeissierViolation: n_D != m_D + l_D or not n_D > m_D >= 1 on some branch
    """
    coords = f.gens
    z0_poly = make_poly(z0, coords)
    df0 = partial_derivative(f, z0)

    data: List[PolarBranchData] = []
    with StageLogger("Intersection numbers") as log:
        for comp in split_by_branch(gamma1, trunc, hints):
            branch = comp.parameterization
            try:
                m = branch_multiplicity(branch, z0_poly)
                n = branch_multiplicity(branch, f)
                l = branch_multiplicity(branch, df0)
            except InfiniteContact as exc:
                raise ImproperIntersection(
                    f"polar component {comp.name} = {comp.form.describe()} is not cut properly "
                    f"({exc.message}); {z0} is not prepolar", module='cycles') from exc
            if n != m + l or not n > m >= 1:
                raise TeissierViolation(
                    f"{comp.name}: n={n}, m={m}, (D.V(df/d{z0}))={l}", module='cycles')
            log.debug(f"{comp.name}: m={m}, n={n}, l={l}, weight={comp.multiplicity}x{comp.conjugacy}")
            data.append(PolarBranchData(comp, m, n, l))

        gamma = sum(d.m * d.weight for d in data)
        tau = sum(d.n * d.weight for d in data)
        lam = sum(d.l * d.weight for d in data)
        log.info(f"gamma^1={gamma}, lambda^0={lam}, tau={tau}")

    return IntersectionData(gamma, lam, tau, tuple(data))


def le_greuel_check(lambda0: int, mu_slice: int, tau: int) -> bool:
    """mu(f) + mu(f_0) = tau for an isolated singularity (lambda^0 = mu(f))."""
    return lambda0 + mu_slice == tau
