"""
Milnor data of Fermat-type joins.

A polynomial is treated as a join when it is semi-quasi-homogeneous with
respect to the weights of its pure powers: every variable x_i carries a
pure power c_i x_i^{a_i} (a_i >= 2) and every other monomial has weighted
degree sum e_i / a_i > 1. The Milnor number and monodromy then agree with
those of the Fermat sum of the pure powers.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from sympy import Poly, Rational, expand, sympify, totient

from monodromy.charpoly import CharPoly
from utils.errors import NotAJoin
from utils.logger import get_logger

logger = get_logger()


@dataclass(frozen=True)
class JoinData:
    exponents: Tuple[int, ...]
    mu: int
    char: CharPoly


def join_exponents(poly, gens: Sequence = ()) -> Tuple[int, ...]:
    """
    Exponents (a_1, ..., a_k) of the pure powers, in generator order.

    Coefficients may contain symbols other than the generators (slice
    parameters); they only need to be nonzero.

    Raises:
        NotAJoin: a variable lacks a pure power of degree >= 2, or a mixed
            monomial has weighted degree <= 1
    """
    if isinstance(poly, Poly):
        gens = gens or poly.gens
        poly = poly.as_expr()
    p = Poly(expand(sympify(poly)), *gens)
    if p.is_zero:
        raise NotAJoin("zero polynomial", module='monodromy')

    exponents: List[int] = []
    for index, gen in enumerate(p.gens):
        pure = [m[index] for m, c in p.terms()
                if c != 0 and all(e == 0 for j, e in enumerate(m) if j != index) and m[index] > 0]
        if not pure:
            raise NotAJoin(f"no pure power of {gen}", module='monodromy')
        a = min(pure)
        if a < 2:
            raise NotAJoin(f"{gen} appears linearly", module='monodromy')
        exponents.append(a)

    for monomial, _ in p.terms():
        weight = sum(Rational(e, a) for e, a in zip(monomial, exponents))
        if weight == 1 and sum(1 for e in monomial if e) == 1:
            continue
        if weight <= 1:
            raise NotAJoin(f"monomial {Poly({monomial: 1}, *p.gens).as_expr()} has weighted degree {weight}",
                           module='monodromy')
    logger.debug(f"join exponents {tuple(exponents)} for {p.as_expr()}")
    return tuple(exponents)


def _eigenvalue_orders(exponents: Sequence[int]) -> Counter:
    """Orders of the products of the nontrivial a_i-th roots of unity."""
    sums: Counter = Counter({Rational(0): 1})
    for a in exponents:
        updated: Counter = Counter()
        for value, count in sums.items():
            for j in range(1, a):
                updated[(value + Rational(j, a)) % 1] += count
        sums = updated
    orders: Counter = Counter()
    for value, count in sums.items():
        orders[value.q] += count
    return orders


def milnor_number_suspension(exponents: Sequence[int]) -> JoinData:
    """
    Milnor number and characteristic polynomial of x_1^{a_1} + ... + x_k^{a_k}.

    With at most one exponent above 2 the result is the suspension of a
    one-variable power; otherwise it is read off the tensor product of
    the cyclic monodromies.
    """
    exponents = tuple(int(a) for a in exponents)
    if not exponents or any(a < 2 for a in exponents):
        raise NotAJoin(f"exponents {exponents} do not describe an isolated join", module='monodromy')
    mu = 1
    for a in exponents:
        mu *= a - 1

    others = [a for a in exponents if a != 2]
    squares = len(exponents) - len(others)
    if len(others) == 1:
        char = CharPoly.build([(others[0], 1)], [(1, 1)])
        suspensions = squares
    elif not others:
        char = CharPoly.binomial(1, -1)
        suspensions = squares - 1
    else:
        vector: Dict[int, int] = {}
        for order, count in _eigenvalue_orders(exponents).items():
            vector[order] = count // int(totient(order))
        return JoinData(exponents, mu, CharPoly.from_cyclotomic(vector))

    for _ in range(suspensions):
        char = char.suspend()
    return JoinData(exponents, mu, char)


def join_data(poly, gens: Sequence = ()) -> JoinData:
    """Recognize a join and return its Milnor data."""
    return milnor_number_suspension(join_exponents(poly, gens))
