#!/usr/bin/env python

"""
Integral ideals of the maximal order of Q(sqrt(m)) in normal form, the ideals
a_j = (a_j, 2b_j + sqrt(m)) and b_e = product of ramified primes, and the
dictionary between ideals and binary quadratic forms
"""

# Standard imports
from dataclasses import dataclass
from math import gcd
import logging

# Local imports
from quad_torsion.arith import (
    gcdext,
    validated_factorization
)
from quad_torsion.forms import (
    QForm,
    WIDE,
    label as form_label,
    principal_generator,
    reduce as reduce_form
)
from quad_torsion.methods import (
    InconsistencyError,
    InvalidInputError
)
from quad_torsion.quadfield import QuadInt


def _window(l, a):
    """
    Move the odd residue l mod 2a into (-a, a]
    """
    l %= 2 * a
    return l - 2 * a if l > a else l


@dataclass(frozen=True)
class IdealNF:
    """
    The integral ideal g * [a, (l + sqrt(m)) / 2] with l odd, l^2 = m mod 4a
    and -a < l <= a. The representation is unique, so ideals are equal exactly
    when their fields are.

    Attributes:
        m (int): Field parameter.
        a (int): Norm of the primitive part.
        l (int): Offset of the second basis element.
        scale (int): Rational content g.
    """
    m: int
    a: int
    l: int
    scale: int = 1

    def __post_init__(self):
        if self.a <= 0 or self.scale <= 0:
            raise InvalidInputError(
                f'Ideal norm part {self.a} and content {self.scale} must be '
                f'positive'
            )
        if self.l % 2 == 0 or not -self.a < self.l <= self.a:
            raise InvalidInputError(
                f'l = {self.l} must be odd and lie in (-{self.a}, {self.a}]'
            )
        if (self.l * self.l - self.m) % (4 * self.a):
            raise InvalidInputError(
                f'[{self.a}, ({self.l} + sqrt({self.m}))/2] is not an ideal'
            )

    def __str__(self):
        text = f'[{self.a}, ({self.l} + sqrt({self.m}))/2]'
        return text if self.scale == 1 else f'{self.scale}{text}'

    @property
    def norm(self):
        return self.scale * self.scale * self.a

    def basis(self):
        """
        :return: Z-basis (g * a, g * (l + sqrt(m)) / 2) as QuadInt
        """
        g = self.scale
        return (
            QuadInt(2 * g * self.a, 0, self.m),
            QuadInt(g * self.l, g, self.m)
        )


def unit_ideal(m):
    return IdealNF(m=m, a=1, l=1)


def _hermite_form(m, vectors):
    """
    Hermite normal form of the lattice spanned by elements of the maximal
    order, written in the basis (1, omega) with omega = (1 + sqrt(m)) / 2
    :param vectors: iterable of QuadInt spanning an ideal as a Z-module
    :return: IdealNF
    """
    modulus = 0
    pivot_u, pivot_v = 0, 0
    for element in vectors:
        # (x + y sqrt(m)) / 2 = (x - y) / 2 + y * omega
        u, v = (element.x - element.y) // 2, element.y
        if v == 0:
            modulus = gcd(modulus, u)
            continue
        if pivot_v == 0:
            pivot_u, pivot_v = u, v
            continue
        g, s, t = gcdext(pivot_v, v)
        remainder = (v // g) * pivot_u - (pivot_v // g) * u
        modulus = gcd(modulus, remainder)
        pivot_u, pivot_v = s * pivot_u + t * u, g
    if modulus == 0 or pivot_v == 0:
        raise InvalidInputError('The generators do not span a full lattice')
    if pivot_v < 0:
        pivot_u, pivot_v = -pivot_u, -pivot_v
    pivot_u %= modulus
    if modulus % pivot_v or pivot_u % pivot_v:
        raise InconsistencyError(
            f'Lattice with basis ({modulus}, 0), ({pivot_u}, {pivot_v}) is '
            f'not an ideal of the maximal order of Q(sqrt({m}))'
        )
    a = modulus // pivot_v
    return IdealNF(
        m=m,
        a=a,
        l=_window(2 * (pivot_u // pivot_v) + 1, a),
        scale=pivot_v
    )


def ideal_from_generators(m, generators):
    """
    The ideal generated by the given elements
    :param m: type int: Field parameter
    :param generators: iterable of QuadInt, not all zero
    :return: IdealNF
    """
    omega = QuadInt(1, 1, m)
    spanning = []
    for gamma in generators:
        if gamma.m != m:
            raise InvalidInputError(
                f'{gamma} does not lie in Q(sqrt({m}))'
            )
        spanning.extend((gamma, gamma * omega))
    return _hermite_form(m, spanning)


def principal(alpha):
    """
    :param alpha: type QuadInt: Nonzero element
    :return: IdealNF of (alpha)
    """
    return ideal_from_generators(alpha.m, [alpha])


def _check_same_field(first, second):
    if first.m != second.m:
        raise InvalidInputError(
            f'Ideals of Q(sqrt({first.m})) and Q(sqrt({second.m})) cannot be '
            f'combined'
        )


def mul(first, second):
    """
    Product of two ideals from the four products of their Z-bases
    :return: IdealNF
    """
    _check_same_field(first, second)
    return _hermite_form(
        first.m,
        [
            alpha * beta
            for alpha in first.basis()
            for beta in second.basis()
        ]
    )


def conj(ideal):
    """
    :return: The Galois conjugate g * [a, (-l + sqrt(m)) / 2]
    """
    return IdealNF(
        m=ideal.m,
        a=ideal.a,
        l=_window(-ideal.l, ideal.a),
        scale=ideal.scale
    )


def norm(ideal):
    return ideal.norm


def ideal_a(rep):
    """
    The ideal (a, 2b + sqrt(m)) of a representation m = a^2 + 4b^2
    :param rep: type TwoSquares
    :return: IdealNF of norm a
    """
    m = rep.m
    ideal = ideal_from_generators(
        m,
        [QuadInt.from_int(rep.a, m), QuadInt(4 * rep.b, 2, m)]
    )
    if ideal.norm != rep.a:
        raise InconsistencyError(
            f'The ideal of ({rep.a}, {rep.b}) has norm {ideal.norm}, not '
            f'{rep.a}'
        )
    return ideal


def verify_square_principal(rep):
    """
    :param rep: type TwoSquares
    :return: bool: Whether the square of (a, 2b + sqrt(m)) is (2b + sqrt(m))
    """
    ideal = ideal_a(rep)
    return mul(ideal, ideal) == principal(QuadInt(4 * rep.b, 2, rep.m))


def ramified_prime(m, p):
    """
    The prime ideal (p, sqrt(m)) above a prime p dividing m
    :param m: type int: Valid field parameter
    :param p: type int: Prime dividing m
    :return: IdealNF
    """
    if p <= 1 or m % p:
        raise InvalidInputError(f'{p} is not a prime dividing {m}')
    ideal = ideal_from_generators(
        m,
        [QuadInt.from_int(p, m), QuadInt.sqrt_m(m)]
    )
    if mul(ideal, ideal) != principal(QuadInt.from_int(p, m)):
        raise InconsistencyError(
            f'The square of the prime above {p} is not ({p})'
        )
    return ideal


def ideal_b(m, e):
    """
    Product of the ramified primes selected by an exponent vector
    :param m: type int: Valid field parameter
    :param e: type sequence of 0/1 entries, one per prime of m in ascending
        order
    :return: IdealNF
    """
    primes = validated_factorization(m).primes
    if len(e) != len(primes) or any(bit not in (0, 1) for bit in e):
        raise InvalidInputError(
            f'Exponent vector {tuple(e)} must have {len(primes)} entries in '
            f'(0, 1)'
        )
    ideal = unit_ideal(m)
    for bit, p in zip(e, primes):
        if bit:
            ideal = mul(ideal, ramified_prime(m, p))
    return ideal


def to_form(ideal):
    """
    Form (a, l, (l^2 - m) / 4a) of the primitive part of the ideal. The
    content g does not change the class
    :return: QForm
    """
    return QForm(
        ideal.a,
        ideal.l,
        (ideal.l * ideal.l - ideal.m) // (4 * ideal.a)
    )


def from_form(form):
    """
    Ideal [a, (b + sqrt(m)) / 2] of a form moved to positive leading
    coefficient within its narrow class
    :param form: type QForm: Primitive form of discriminant m
    :return: IdealNF
    """
    if form.a < 0:
        form, _ = reduce_form(form)
        if form.a < 0:
            # (x, y) -> (-y, x); reduced forms have ac < 0
            form = QForm(form.c, -form.b, form.a)
    return IdealNF(
        m=form.discriminant,
        a=form.a,
        l=_window(form.b, form.a)
    )


def generator(ideal):
    """
    Generator of the ideal when it is principal
    :return: QuadInt normalized up to units, or None
    """
    alpha = principal_generator(to_form(ideal))
    if alpha is None:
        return None
    alpha = alpha * ideal.scale
    if principal(alpha) != ideal:
        raise InconsistencyError(
            f'{alpha} does not generate {ideal}'
        )
    logging.debug('%s = (%s)', ideal, alpha)
    return alpha


def is_principal(ideal):
    return generator(ideal) is not None


def label(ideal, strictness=WIDE):
    """
    :return: ClassLabel of the class of the ideal
    """
    return form_label(to_form(ideal), strictness)
