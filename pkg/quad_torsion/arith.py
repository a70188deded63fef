#!/usr/bin/env python

"""
Integer utilities: factorization, primality, modular square roots of -1,
Cornacchia's algorithm, and perfect square detection
"""

# Standard imports
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
import logging
import random

# Third party imports
import gmpy2

# Local imports
from quad_torsion.methods import InvalidInputError

# Trial division bound used before switching to Pollard rho
TRIAL_DIVISION_BOUND = 10 ** 6

# The first thirteen primes as Miller-Rabin bases are a deterministic test for
# every n below 3.317 * 10^24
MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MILLER_RABIN_LIMIT = 3317044064679887385961981

_SEED = 0


def set_seed(seed):
    """
    Set the global seed used by every randomized routine
    :param seed: type int: Seed value
    """
    global _SEED
    _SEED = int(seed)
    logging.debug('Random number generator seed set to %s', _SEED)


def get_seed():
    """
    :return: The configured global seed
    """
    return _SEED


def _rng(tag, value, seed=None):
    """
    Private generator derived from the global seed and the argument of the
    calling routine, so calls are reproducible and independent of each other
    """
    seed = _SEED if seed is None else seed
    return random.Random(f'{seed}:{tag}:{value}')


def isqrt(n):
    """
    :param n: type int: Non-negative integer
    :return: floor of the square root of n
    """
    return int(gmpy2.isqrt(n))


def is_perfect_square(n):
    """
    Determine whether n is a perfect square
    :param n: type int
    :return: The non-negative root, or None when n is not a square (negative n
        are never squares)
    """
    if n < 0:
        return None
    if gmpy2.is_square(n):
        return int(gmpy2.isqrt(n))
    return None


def gcdext(a, b):
    """
    Extended Euclidean algorithm
    :return: (g, u, v) with u * a + v * b = g = gcd(a, b) >= 0
    """
    g, u, v = gmpy2.gcdext(a, b)
    return int(g), int(u), int(v)


@lru_cache(maxsize=None)
def small_primes(limit=TRIAL_DIVISION_BOUND):
    """
    Sieve of Eratosthenes
    :param limit: type int: Exclusive upper bound
    :return: tuple of the primes below limit
    """
    sieve = bytearray([1]) * limit
    sieve[:2] = b'\x00\x00'
    for p in range(2, isqrt(limit - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, limit, p)))
    return tuple(p for p in range(limit) if sieve[p])


def is_prime(n):
    """
    Deterministic Miller-Rabin test for n below 3.3 * 10^24. Larger n are
    tested with the same bases, which no known composite passes
    :param n: type int
    :return: bool
    """
    if n < 2:
        return False
    for p in MILLER_RABIN_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in MILLER_RABIN_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    if n >= MILLER_RABIN_LIMIT:
        logging.debug('Primality of %s certified only probabilistically', n)
    return True


def pollard_brent(n, seed=None):
    """
    Find a nontrivial factor of a composite n with Brent's variant of Pollard's
    rho algorithm
    :param n: type int: Odd composite integer
    :param seed: type int: Optional seed overriding the global one
    :return: A factor 1 < f < n
    """
    if n % 2 == 0:
        return 2
    rng = _rng('rho', n, seed)
    g = n
    while g == n:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), rng.randrange(1, n)
        g, r, q = 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        # The batched gcd overshot; backtrack one step at a time
        if g == n:
            while True:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                if g > 1:
                    break
    return g


@dataclass(frozen=True)
class Factorization:
    """
    Prime factorization of a positive integer.

    Attributes:
        n (int): The factored integer.
        factors (tuple): (prime, exponent) pairs with ascending primes.
    """
    n: int
    factors: tuple

    @property
    def primes(self):
        """
        :return: tuple of the distinct primes
        """
        return tuple(p for p, _ in self.factors)

    @property
    def t(self):
        """
        :return: Number of distinct primes
        """
        return len(self.factors)

    @property
    def is_squarefree(self):
        """
        :return: bool: Whether every exponent is 1
        """
        return all(e == 1 for _, e in self.factors)

    def product(self):
        """
        :return: The product of prime^exponent over the factors
        """
        value = 1
        for p, e in self.factors:
            value *= p ** e
        return value


def _split(n, found, seed):
    """
    Recursively split n into primes, recording them in the found dictionary
    """
    if n == 1:
        return
    if is_prime(n):
        found[n] = found.get(n, 0) + 1
        return
    root = is_perfect_square(n)
    if root is not None:
        _split(root, found, seed)
        _split(root, found, seed)
        return
    divisor = pollard_brent(n, seed=seed)
    _split(divisor, found, seed)
    _split(n // divisor, found, seed)


def factor(n, seed=None):
    """
    Factor n by trial division up to 10^6 followed by Pollard rho
    :param n: type int: Positive integer
    :param seed: type int: Optional seed overriding the global one
    :return: Factorization
    """
    if n < 1:
        raise InvalidInputError(f'Cannot factor {n}: n must be positive')
    remaining = n
    found = {}
    for p in small_primes():
        if p * p > remaining:
            break
        while remaining % p == 0:
            found[p] = found.get(p, 0) + 1
            remaining //= p
    # Whatever remains has no prime factor below the trial division bound
    _split(remaining, found, seed)
    return Factorization(n=n, factors=tuple(sorted(found.items())))


def invalid_m_reason(f):
    """
    Explain why a factorization is not a valid field parameter
    :param f: type Factorization
    :return: None if m is a squarefree product of primes congruent to 1 mod 4,
        otherwise a string naming the failed condition
    """
    if f.t == 0:
        return f'{f.n} has no prime factors'
    if not f.is_squarefree:
        squared = [p for p, e in f.factors if e > 1]
        return f'{f.n} is not squarefree (divisible by {squared[0]}^2)'
    bad = [p for p in f.primes if p % 4 != 1]
    if bad:
        return f'{f.n} has the prime factor {bad[0]}, which is not ' \
               f'congruent to 1 mod 4'
    return None


def is_valid_m(f):
    """
    :param f: type Factorization
    :return: bool: True iff f is a squarefree product of t >= 1 primes, each
        congruent to 1 mod 4
    """
    return invalid_m_reason(f) is None


def validated_factorization(m):
    """
    Factor m and ensure it is a valid field parameter
    :param m: type int
    :return: Factorization
    """
    f = factor(m) if m >= 1 else None
    reason = 'm must be positive' if f is None else invalid_m_reason(f)
    if reason:
        raise InvalidInputError(
            f'm = {m} is not a squarefree product of primes congruent to '
            f'1 mod 4: {reason}'
        )
    return f


def _check_prime_one_mod_four(p):
    if p % 4 != 1 or not is_prime(p):
        raise InvalidInputError(
            f'{p} is not a prime congruent to 1 mod 4'
        )


def sqrt_minus_one_mod_p(p, seed=None):
    """
    Square root of -1 modulo a prime p congruent to 1 mod 4, from a random
    quadratic non-residue c as c^((p - 1) / 4)
    :param p: type int: Prime congruent to 1 mod 4
    :param seed: type int: Optional seed overriding the global one
    :return: The root r with r^2 = -1 mod p and r <= p - r
    """
    _check_prime_one_mod_four(p)
    rng = _rng('sqrt-1', p, seed)
    while True:
        c = rng.randrange(2, p)
        # Euler's criterion
        if pow(c, (p - 1) // 2, p) == p - 1:
            break
    r = pow(c, (p - 1) // 4, p)
    return min(r, p - r)


def cornacchia_two_squares(p, seed=None):
    """
    Write p = c^2 + 4d^2 with Cornacchia's algorithm: run the Euclidean
    algorithm on p and a square root of -1 until the remainder drops below the
    square root of p
    :param p: type int: Prime congruent to 1 mod 4
    :param seed: type int: Optional seed overriding the global one
    :return: (c, d) with c odd and c, d > 0
    """
    _check_prime_one_mod_four(p)
    r0, r1 = p, sqrt_minus_one_mod_p(p, seed=seed)
    while r1 * r1 > p:
        r0, r1 = r1, r0 % r1
    x = r1
    y = is_perfect_square(p - x * x)
    if y is None:
        raise InvalidInputError(f'Cornacchia failed for {p}')
    # Exactly one of x, y is odd
    c, even = (x, y) if x % 2 else (y, x)
    return c, even // 2
