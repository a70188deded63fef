#!/usr/bin/env python

"""
Arithmetic in the ring of integers of K = Q(sqrt(m)) for m congruent to 1 mod
4, continued fractions, and the fundamental unit
"""

# Standard imports
from dataclasses import dataclass
from functools import lru_cache
import logging
import math

# Local imports
from quad_torsion.arith import (
    factor,
    is_perfect_square,
    isqrt
)
from quad_torsion.methods import (
    InconsistencyError,
    InvalidInputError
)


def _sign(x, y, m):
    """
    Exact sign of x + y * sqrt(m) for a non-square m > 0
    """
    if y == 0:
        return (x > 0) - (x < 0)
    if x == 0:
        return (y > 0) - (y < 0)
    if x > 0 and y > 0:
        return 1
    if x < 0 and y < 0:
        return -1
    # Opposite signs: the larger square wins
    if x > 0:
        return 1 if x * x > m * y * y else -1
    return 1 if m * y * y > x * x else -1


@dataclass(frozen=True)
class QuadInt:
    """
    Element (x + y * sqrt(m)) / 2 of the maximal order of Q(sqrt(m)). The
    doubled coordinates keep every element integral; x and y share parity.
    Ordering is that of the real embedding with sqrt(m) > 0.
    """
    x: int
    y: int
    m: int

    def __post_init__(self):
        if self.m % 4 != 1:
            raise InvalidInputError(
                f'm = {self.m} is not congruent to 1 mod 4'
            )
        if (self.x - self.y) % 2:
            raise InvalidInputError(
                f'({self.x} + {self.y} sqrt({self.m})) / 2 is not an '
                f'algebraic integer'
            )

    @classmethod
    def from_int(cls, n, m):
        return cls(2 * n, 0, m)

    @classmethod
    def sqrt_m(cls, m):
        return cls(0, 2, m)

    def _same_field(self, other):
        if isinstance(other, int):
            return QuadInt.from_int(other, self.m)
        if other.m != self.m:
            raise InvalidInputError(
                f'Cannot combine elements of Q(sqrt({self.m})) and '
                f'Q(sqrt({other.m}))'
            )
        return other

    def __add__(self, other):
        other = self._same_field(other)
        return QuadInt(self.x + other.x, self.y + other.y, self.m)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.x, -self.y, self.m)

    def __sub__(self, other):
        return self + (-self._same_field(other))

    def __mul__(self, other):
        other = self._same_field(other)
        return QuadInt(
            (self.x * other.x + self.m * self.y * other.y) // 2,
            (self.x * other.y + self.y * other.x) // 2,
            self.m
        )

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            inverse = QuadInt.from_int(1, self.m).divide(self)
            if inverse is None:
                raise InvalidInputError(f'{self} is not a unit')
            return inverse ** -exponent
        result = QuadInt.from_int(1, self.m)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __lt__(self, other):
        return (self._same_field(other) - self).sign() > 0

    def __gt__(self, other):
        return (self - self._same_field(other)).sign() > 0

    def __le__(self, other):
        return not self > other

    def __ge__(self, other):
        return not self < other

    def __float__(self):
        return (self.x + self.y * math.sqrt(self.m)) / 2

    def __str__(self):
        if self.x % 2 == 0:
            rational, radical, denominator = self.x // 2, self.y // 2, ''
        else:
            rational, radical, denominator = self.x, self.y, '/2'
        if radical == 0:
            return f'{rational}{denominator}'
        operator = '-' if radical < 0 else '+'
        coefficient = '' if abs(radical) == 1 else str(abs(radical))
        text = f'{rational} {operator} {coefficient}sqrt({self.m})'
        return f'({text}){denominator}' if denominator else text

    def conj(self):
        """
        :return: The Galois conjugate (x - y * sqrt(m)) / 2
        """
        return QuadInt(self.x, -self.y, self.m)

    def norm(self):
        """
        :return: The norm (x^2 - m * y^2) / 4
        """
        return (self.x * self.x - self.m * self.y * self.y) // 4

    def trace(self):
        return self.x

    def sign(self):
        """
        :return: The sign (1, 0, -1) of the real embedding
        """
        return _sign(self.x, self.y, self.m)

    def is_unit(self):
        return abs(self.norm()) == 1

    def divide(self, other):
        """
        Exact division in the maximal order
        :param other: type QuadInt: Nonzero divisor
        :return: The quotient, or None when it is not an algebraic integer
        """
        other = self._same_field(other)
        n = other.norm()
        if n == 0:
            raise InvalidInputError('Division by zero')
        # self / other = self * conj(other) / N(other)
        numerator = self * other.conj()
        if numerator.x % n or numerator.y % n:
            return None
        x, y = numerator.x // n, numerator.y // n
        if (x - y) % 2:
            return None
        return QuadInt(x, y, self.m)


def mul(alpha, beta):
    """
    :return: The product of two elements of the same field
    """
    return alpha * beta


def conj(alpha):
    """
    :return: The image of alpha under the nontrivial automorphism
    """
    return alpha.conj()


def norm(alpha):
    """
    :return: The norm alpha * conj(alpha)
    """
    return alpha.norm()


def check_field_parameter(m):
    """
    Ensure m is a squarefree integer greater than 1 and congruent to 1 mod 4
    :param m: type int
    """
    if m <= 1 or m % 4 != 1 or not factor(m).is_squarefree:
        raise InvalidInputError(
            f'm = {m} must be a squarefree integer > 1 congruent to 1 mod 4'
        )


@dataclass(frozen=True)
class CFCycle:
    """
    One period of the continued fraction of the quadratic irrational
    (p0 + sqrt(m)) / q0.

    Attributes:
        m (int): Radicand.
        p0 (int): Numerator offset of the seed.
        q0 (int): Denominator of the seed.
        leading (int): The partial quotient before the period starts.
        partial_quotients (tuple): Partial quotients over one full period.
        start (tuple): (P, Q) of the first reduced complete quotient; one
            period returns to it.
    """
    m: int
    p0: int
    q0: int
    leading: int
    partial_quotients: tuple
    start: tuple

    @property
    def period(self):
        return len(self.partial_quotients)


def _complete_quotient_step(p, q, m, root):
    """
    One step of the expansion of (p + sqrt(m)) / q
    :return: (partial quotient, next p, next q)
    """
    a = (p + root) // q
    p_next = a * q - p
    q_next = (m - p_next * p_next) // q
    return a, p_next, q_next


@lru_cache(maxsize=4096)
def continued_fraction_cycle(m):
    """
    Expand (1 + sqrt(m)) / 2. Every complete quotient after the first is
    reduced, so the expansion is purely periodic from the first step onward
    :param m: type int: Valid field parameter
    :return: CFCycle
    """
    check_field_parameter(m)
    root = isqrt(m)
    leading, p, q = _complete_quotient_step(1, 2, m, root)
    start = (p, q)
    quotients = []
    while True:
        a, p, q = _complete_quotient_step(p, q, m, root)
        quotients.append(a)
        if (p, q) == start:
            break
        if q <= 0:
            raise InconsistencyError(
                f'Non-reduced complete quotient in the expansion for {m}'
            )
    return CFCycle(
        m=m,
        p0=1,
        q0=2,
        leading=leading,
        partial_quotients=tuple(quotients),
        start=start
    )


@lru_cache(maxsize=4096)
def fundamental_unit(m):
    """
    Fundamental unit of the maximal order of Q(sqrt(m)) from one period of
    the continued fraction of omega = (1 + sqrt(m)) / 2. With p/q the
    convergent before the period closes, epsilon = p - q * conj(omega)
    :param m: type int: Valid field parameter
    :return: (epsilon: QuadInt, norm: +1 or -1)
    """
    cycle = continued_fraction_cycle(m)
    # Convergents p_k / q_k of [leading; a_1, ..., a_(l-1)]
    p_previous, q_previous = 1, 0
    p_current, q_current = cycle.leading, 1
    for a in cycle.partial_quotients[:-1]:
        p_previous, p_current = p_current, a * p_current + p_previous
        q_previous, q_current = q_current, a * q_current + q_previous
    epsilon = QuadInt(2 * p_current - q_current, q_current, m)
    unit_norm = epsilon.norm()
    if unit_norm != (-1) ** cycle.period or epsilon <= 1:
        raise InconsistencyError(
            f'Continued fraction of period {cycle.period} produced {epsilon} '
            f'with norm {unit_norm} for m = {m}'
        )
    logging.debug(
        'Fundamental unit of Q(sqrt(%s)): %s, norm %s, period %s',
        m, epsilon, unit_norm, cycle.period
    )
    return epsilon, unit_norm


def search_fundamental_unit(m, limit):
    """
    Brute-force search for the smallest solution of x^2 - m * y^2 = +-4
    :param m: type int: Valid field parameter
    :param limit: type int: Largest y to try
    :return: QuadInt (x + y sqrt(m)) / 2, or None if no y up to limit works
    """
    for y in range(1, limit + 1):
        solutions = [
            is_perfect_square(m * y * y + offset) for offset in (-4, 4)
        ]
        solutions = [x for x in solutions if x]
        if solutions:
            return QuadInt(min(solutions), y, m)
    return None


def solve_unit_equation(eta):
    """
    Express a unit as +-epsilon^k
    :param eta: type QuadInt
    :return: (sign, k) or None if eta is not a unit
    """
    if not eta.is_unit():
        return None
    epsilon, _ = fundamental_unit(eta.m)
    sign = eta.sign()
    remainder = eta if sign > 0 else -eta
    exponent = 0
    while remainder > 1:
        remainder = remainder.divide(epsilon)
        exponent += 1
    while remainder < 1:
        remainder = remainder * epsilon
        exponent -= 1
    if remainder != QuadInt.from_int(1, eta.m):
        raise InconsistencyError(
            f'{eta} is a unit but not a power of {epsilon} up to sign'
        )
    return sign, exponent


def normalize_generator(alpha):
    """
    Choose the associate of alpha (up to sign and powers of epsilon) with
    alpha > 0 and 1 <= alpha / |conj(alpha)| < epsilon^2
    :param alpha: type QuadInt: Nonzero element
    :return: QuadInt
    """
    epsilon, _ = fundamental_unit(alpha.m)
    epsilon_squared = epsilon * epsilon
    if alpha.sign() < 0:
        alpha = -alpha

    def absolute_conjugate(value):
        conjugate = value.conj()
        return conjugate if conjugate.sign() > 0 else -conjugate

    # Multiplying by epsilon scales the ratio by epsilon^2
    while alpha >= epsilon_squared * absolute_conjugate(alpha):
        alpha = alpha.divide(epsilon)
    while alpha < absolute_conjugate(alpha):
        alpha = alpha * epsilon
    return alpha


def is_square(beta):
    """
    Find a square root of beta inside the maximal order
    :param beta: type QuadInt
    :return: QuadInt gamma with gamma^2 = beta, or None
    """
    m = beta.m
    if beta.x == 0 and beta.y == 0:
        return beta
    n = is_perfect_square(beta.norm())
    if n is None:
        return None
    # gamma = (u + v sqrt(m)) / 2 has u^2 + m v^2 = 2x, uv = y and
    # u^2 - m v^2 = +-4n
    for sign in (1, -1):
        u_squared = beta.x + 2 * sign * n
        m_v_squared = beta.x - 2 * sign * n
        if m_v_squared < 0 or m_v_squared % m:
            continue
        u = is_perfect_square(u_squared)
        v = is_perfect_square(m_v_squared // m)
        if u is None or v is None or (u - v) % 2:
            continue
        if u * v != abs(beta.y):
            continue
        gamma = QuadInt(u, v if beta.y >= 0 else -v, m)
        if gamma * gamma == beta:
            return gamma
    return None
