#!/usr/bin/env python

"""
Representations m = a^2 + 4b^2 built from the Gaussian factors of the primes
dividing m
"""

# Standard imports
from dataclasses import dataclass
from itertools import product
import logging

# Local imports
from quad_torsion.arith import (
    cornacchia_two_squares,
    invalid_m_reason,
    is_perfect_square,
    isqrt
)
from quad_torsion.methods import (
    InconsistencyError,
    InvalidInputError
)


@dataclass(frozen=True)
class GaussInt:
    """
    Gaussian integer re + im * i
    """
    re: int
    im: int

    def __mul__(self, other):
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re
        )

    def conjugate(self):
        return GaussInt(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im


@dataclass(frozen=True, order=True)
class TwoSquares:
    """
    One representation m = a^2 + 4b^2 with a odd and a, b > 0. Ordering is by
    a, which is the order reports list the representations in.
    """
    a: int
    b: int
    m: int

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0 or self.a % 2 == 0:
            raise InvalidInputError(
                f'({self.a}, {self.b}) is not a representation with a odd '
                f'and a, b positive'
            )
        if self.a * self.a + 4 * self.b * self.b != self.m:
            raise InvalidInputError(
                f'{self.a}^2 + 4 * {self.b}^2 != {self.m}'
            )

    def gaussian(self):
        """
        :return: GaussInt mu = a + 2b * i with norm m
        """
        return GaussInt(self.a, 2 * self.b)


def _normalize(z, m):
    """
    Turn a Gaussian integer of norm m into a TwoSquares with a odd and a, b > 0
    """
    x, y = abs(z.re), abs(z.im)
    if x % 2 == 0:
        x, y = y, x
    return TwoSquares(a=x, b=y // 2, m=m)


def enumerate_reps(f):
    """
    Enumerate the 2^(t-1) essentially different representations of m by
    multiplying the Gaussian factors c_j + 2d_j * i of the primes of m over
    every conjugation pattern. The first factor is never conjugated, which
    quotients out global conjugation
    :param f: type Factorization of a valid m
    :return: list of TwoSquares sorted by a
    """
    reason = invalid_m_reason(f)
    if reason:
        raise InvalidInputError(
            f'Cannot enumerate representations of {f.n}: {reason}'
        )
    gaussian_factors = []
    for p in f.primes:
        c, d = cornacchia_two_squares(p)
        gaussian_factors.append(GaussInt(c, 2 * d))
    reps = set()
    for pattern in product((False, True), repeat=f.t - 1):
        z = gaussian_factors[0]
        for conjugate, mu in zip(pattern, gaussian_factors[1:]):
            z = z * (mu.conjugate() if conjugate else mu)
        reps.add(_normalize(z, f.n))
    if len(reps) != 2 ** (f.t - 1):
        raise InconsistencyError(
            f'Expected {2 ** (f.t - 1)} representations of {f.n}, found '
            f'{len(reps)}'
        )
    logging.debug('Representations of %s: %s', f.n, sorted(reps))
    return sorted(reps)


def search_reps(m):
    """
    Exhaustive search over odd a below the square root of m
    :param m: type int: Odd positive integer
    :return: list of TwoSquares with a, b > 0 sorted by a
    """
    found = []
    for a in range(1, isqrt(m) + 1, 2):
        rest = m - a * a
        if rest <= 0 or rest % 4:
            continue
        b = is_perfect_square(rest // 4)
        if b:
            found.append(TwoSquares(a=a, b=b, m=m))
    return found
