"""
Newton polygons of plane-curve germs.

Points are (i, j) = (exponent of the first variable u, exponent of the
second variable w). A segment from (i1, j1) to (i2, j2) with i2 > i1 and
j2 < j1 supports branches w ~ kappa * u^(rise/run).
"""

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Mapping, Tuple

from sympy import Poly, Rational

from poly_core.polynomials import monomial_split
from utils.errors import UnsupportedShape, ZeroPolynomial

Point = Tuple[int, int]


@dataclass(frozen=True)
class NewtonSegment:
    rise: int      # q: change of the u-exponent (reduced)
    run: int       # p: change of the w-exponent (reduced)
    length: int    # lattice length
    start: Point   # end with the larger w-exponent
    end: Point

    @property
    def slope(self) -> Rational:
        return Rational(self.rise, self.run)

    @property
    def weight(self) -> int:
        """Common value of run*i + rise*j along the segment."""
        return self.run * self.start[0] + self.rise * self.start[1]

    def lattice_points(self) -> List[Point]:
        return [(self.start[0] + k * self.rise, self.start[1] - k * self.run)
                for k in range(self.length + 1)]


def polygon_from_support(support: Mapping[Point, object]) -> List[NewtonSegment]:
    """
    Lower-left boundary from (0, j_top) down to (i_bot, 0).

    The support must contain a point on each axis; otherwise there is no
    boundary reaching the origin's axes and an empty list is returned.
    """
    points = [pt for pt, c in support.items() if c != 0]
    on_w_axis = [j for i, j in points if i == 0]
    on_u_axis = [i for i, j in points if j == 0]
    if not on_w_axis or not on_u_axis:
        return []

    current = (0, min(on_w_axis))
    segments: List[NewtonSegment] = []
    while current[1] > 0:
        best = None
        best_ratio = None
        for pt in points:
            if pt[1] >= current[1] or pt[0] < current[0]:
                continue
            ratio = Rational(pt[0] - current[0], current[1] - pt[1])
            if best is None or ratio < best_ratio or (ratio == best_ratio and pt[1] < best[1]):
                best, best_ratio = pt, ratio
        if best is None:
            break
        di, dj = best[0] - current[0], current[1] - best[1]
        g = gcd(di, dj)
        segments.append(NewtonSegment(di // g, dj // g, g, current, best))
        current = best
    return segments


def support_of(g: Poly) -> Dict[Point, Rational]:
    if len(g.gens) != 2:
        raise UnsupportedShape(f"Newton polygon needs exactly two variables, got {len(g.gens)}", module='puiseux')
    return {(m[0], m[1]): c for m, c in g.terms()}


def newton_polygon(g: Poly) -> List[NewtonSegment]:
    """
    Newton polygon of a bivariate polynomial, ordered by increasing slope.

    Monomial content is split off first; it contributes axis branches, not
    segments, so x*y has an empty polygon.
    """
    if g.is_zero:
        raise ZeroPolynomial("Newton polygon of the zero polynomial", module='puiseux')
    _, rest = monomial_split(g)
    return polygon_from_support(support_of(rest))
