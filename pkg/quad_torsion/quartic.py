#!/usr/bin/env python

"""
Cyclic quartic extensions of conductor m: quartic characters, explicit
generators with their minimal polynomials, the discriminant criterion, and the
square identity linking the two Kummer generators
"""

# Standard imports
from dataclasses import dataclass
from itertools import product
from math import (
    gcd,
    lcm
)

# Third party imports
import sympy

# Local imports
from quad_torsion.arith import is_perfect_square
from quad_torsion.methods import InvalidInputError
from quad_torsion.quadfield import (
    QuadInt,
    is_square
)

X = sympy.Symbol('x')
ROOT_A, ROOT_B, ROOT_C = sympy.symbols('sqrt_A sqrt_B sqrt_C', positive=True)


class ConstraintUnsatisfied(InvalidInputError):
    """
    Raised when the arguments of the square identity do not satisfy
    A x^2 - B y^2 - C z^2 = 0
    """


@dataclass(frozen=True, order=True)
class CharVector:
    """
    Exponent vector e of the character prod chi_j^e_j, with chi_j a character
    of order 4 and conductor p_j and entries in Z/4
    """
    e: tuple

    def __post_init__(self):
        if any(entry not in range(4) for entry in self.e):
            raise InvalidInputError(
                f'Character exponents {self.e} must lie in 0..3'
            )

    def __str__(self):
        return '(' + ', '.join(str(entry) for entry in self.e) + ')'

    @property
    def order(self):
        return lcm(*(4 // gcd(entry, 4) for entry in self.e))

    def is_quartic(self):
        return any(entry % 2 for entry in self.e)

    def square(self):
        return CharVector(tuple(2 * entry % 4 for entry in self.e))

    def negate(self):
        return CharVector(tuple(-entry % 4 for entry in self.e))


def enumerate_characters(t):
    """
    :param t: type int: Number of primes
    :return: list of every CharVector of length t
    """
    return [CharVector(e) for e in product(range(4), repeat=t)]


def enumerate_quartic_characters(t):
    """
    Characters with every exponent odd, paired with their inverses. Each pair
    cuts out one cyclic quartic field of conductor m and discriminant m^3
    :param t: type int: Number of primes, at least 1
    :return: list of (e, -e) pairs with the first entry of e equal to 1
    """
    if t < 1:
        raise InvalidInputError('At least one prime is required')
    return [
        (CharVector((1,) + tail), CharVector((1,) + tail).negate())
        for tail in product((1, 3), repeat=t - 1)
    ]


def conductor(chi, primes):
    """
    :param chi: type CharVector
    :param primes: type sequence of the primes of m in ascending order
    :return: Product of the primes on which chi is nontrivial
    """
    if len(chi.e) != len(primes):
        raise InvalidInputError(
            f'Character {chi} does not match {len(primes)} primes'
        )
    value = 1
    for entry, p in zip(chi.e, primes):
        if entry:
            value *= p
    return value


def character_discriminant(chi, primes):
    """
    Conductor-discriminant value cond(chi)^2 * cond(chi^2) of the cyclic
    quartic field cut out by a character of order 4
    """
    if not chi.is_quartic():
        raise InvalidInputError(f'{chi} does not have order 4')
    return conductor(chi, primes) ** 2 * conductor(chi.square(), primes)


@dataclass(frozen=True)
class QuarticPoly:
    """
    The biquadratic polynomial x^4 + p x^2 + q
    """
    p: int
    q: int

    def __str__(self):
        return str(self.as_expr())

    def as_expr(self):
        return X ** 4 + self.p * X ** 2 + self.q

    def as_poly(self):
        return sympy.Poly(self.as_expr(), X, domain='QQ')

    def discriminant(self):
        """
        Resultant of the polynomial and its derivative; the sign and leading
        coefficient corrections are both 1 for a monic quartic
        :return: int
        """
        expression = self.as_expr()
        return int(sympy.resultant(expression, sympy.diff(expression, X), X))


def _check_rep(m, rep):
    if rep.m != m:
        raise InvalidInputError(
            f'({rep.a}, {rep.b}) is a representation of {rep.m}, not {m}'
        )


def min_poly(m, rep):
    """
    Minimal polynomial of sqrt(m + 2b sqrt(m)), from (x^2 - m)^2 = 4b^2 m and
    m^2 - 4b^2 m = a^2 m
    :param m: type int: Valid field parameter
    :param rep: type TwoSquares
    :return: QuarticPoly x^4 - 2m x^2 + a^2 m
    """
    _check_rep(m, rep)
    return QuarticPoly(p=-2 * m, q=rep.a * rep.a * m)


def kummer_min_poly(m, rep):
    """
    Minimal polynomial of sqrt(2m + 2a sqrt(m)), which generates the same
    quartic field
    :return: QuarticPoly x^4 - 4m x^2 + 16 b^2 m
    """
    _check_rep(m, rep)
    return QuarticPoly(p=-4 * m, q=16 * rep.b * rep.b * m)


def is_irreducible(poly):
    """
    :param poly: type QuarticPoly
    :return: bool: Irreducibility over the rationals
    """
    return bool(poly.as_poly().is_irreducible)


def disc_check(poly, m):
    """
    Whether the polynomial discriminant is m^3 times a nonzero square. This is
    necessary for the field discriminant to be m^3, not sufficient
    :param poly: type QuarticPoly
    :param m: type int
    :return: bool
    """
    d = poly.discriminant()
    cube = m ** 3
    if d == 0 or d % cube:
        return False
    return bool(is_perfect_square(d // cube))


def _radical_vector(expression, values):
    """
    Coordinates of a polynomial in sqrt(A), sqrt(B), sqrt(C) in the basis of
    the eight square-free monomials, using sqrt(A)^2 = A and so on
    :return: dict of exponent tuple: coefficient, without zero entries
    """
    roots = (ROOT_A, ROOT_B, ROOT_C)
    relations = [root ** 2 - value for root, value in zip(roots, values)]
    _, remainder = sympy.reduced(sympy.expand(expression), relations, *roots)
    return {
        monomial: coefficient
        for monomial, coefficient in
        sympy.Poly(remainder, *roots).as_dict().items()
        if coefficient != 0
    }


def legendre_identity_check(A, B, C, x, y, z):
    """
    For A x^2 = B y^2 + C z^2, compare both sides of
    2 (x sqrt(A) + y sqrt(B)) (x sqrt(A) + z sqrt(C))
        = (x sqrt(A) + y sqrt(B) + z sqrt(C))^2
    coordinate by coordinate in the basis 1, sqrt(A), ..., sqrt(ABC)
    :return: bool
    """
    if min(A, B, C) < 0:
        raise ConstraintUnsatisfied(
            f'A, B, C = {A}, {B}, {C} must be non-negative'
        )
    if A * x * x - B * y * y - C * z * z:
        raise ConstraintUnsatisfied(
            f'{A} * {x}^2 - {B} * {y}^2 - {C} * {z}^2 != 0'
        )
    values = (A, B, C)
    left = 2 * (x * ROOT_A + y * ROOT_B) * (x * ROOT_A + z * ROOT_C)
    right = (x * ROOT_A + y * ROOT_B + z * ROOT_C) ** 2
    return _radical_vector(left, values) == _radical_vector(right, values)


def _radicands(m, rep):
    root = QuadInt.sqrt_m(m)
    return (
        QuadInt.from_int(m, m) + 2 * rep.b * root,
        QuadInt.from_int(2 * m, m) + 2 * rep.a * root
    )


def same_field_check(m, rep):
    """
    Whether 2 (sqrt(m) + a) (sqrt(m) + 2b) = (sqrt(m) + a + 2b)^2 and
    (2m + 2a sqrt(m)) (sqrt(m) + 2b)^2 = (m + 2b sqrt(m)) (sqrt(m) + a + 2b)^2
    hold in the maximal order, so that the two radicands differ by a square
    :return: bool
    """
    _check_rep(m, rep)
    root = QuadInt.sqrt_m(m)
    plus_a, plus_b = root + rep.a, root + 2 * rep.b
    both = root + (rep.a + 2 * rep.b)
    identity = 2 * plus_a * plus_b == both * both
    first, second = _radicands(m, rep)
    cross = second * plus_b * plus_b == first * both * both
    return identity and cross


def distinct_extensions_check(m, reps):
    """
    Whether distinct representations give distinct quartic fields: the product
    of the radicands m + 2b sqrt(m) of any two is not a square in K
    :param reps: type list of TwoSquares
    :return: bool
    """
    radicands = []
    for rep in reps:
        _check_rep(m, rep)
        radicands.append(_radicands(m, rep)[0])
    for index, first in enumerate(radicands):
        for second in radicands[index + 1:]:
            if is_square(first * second) is not None:
                return False
    return True
