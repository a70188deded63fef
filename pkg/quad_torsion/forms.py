#!/usr/bin/env python

"""
Indefinite binary quadratic forms of fundamental discriminant m: reduction,
cycles, composition, narrow and wide equivalence, class enumeration, and
principal generators
"""

# Standard imports
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
import logging

# Local imports
from quad_torsion.arith import (
    factor,
    gcdext,
    is_perfect_square,
    isqrt
)
from quad_torsion.methods import (
    InconsistencyError,
    InvalidInputError
)
from quad_torsion.quadfield import (
    QuadInt,
    check_field_parameter,
    normalize_generator
)

NARROW = 'narrow'
WIDE = 'wide'

IDENTITY = ((1, 0), (0, 1))


@dataclass(frozen=True, order=True)
class QForm:
    """
    Binary quadratic form a x^2 + b xy + c y^2. Ordering is lexicographic on
    (a, b, c), which is how class labels pick their canonical representative.
    """
    a: int
    b: int
    c: int

    def __str__(self):
        return f'({self.a}, {self.b}, {self.c})'

    @property
    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self):
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self):
        """
        0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, decided with
        integer arithmetic only
        """
        d = self.discriminant
        b, twice_a = self.b, 2 * abs(self.a)
        if b <= 0 or b * b >= d:
            return False
        if (twice_a + b) ** 2 <= d:
            return False
        return twice_a - b < 0 or (twice_a - b) ** 2 < d

    def evaluate(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y


@dataclass(frozen=True, order=True)
class ClassLabel:
    """
    Canonical name of an ideal class: the least reduced form of its narrow
    cycle, or of the union of the two narrow cycles making up a wide class.
    """
    form: QForm
    strictness: str

    def __str__(self):
        return f'{self.strictness}{self.form}'


def _check_form(form):
    d = form.discriminant
    if d <= 0 or is_perfect_square(d) is not None:
        raise InvalidInputError(
            f'{form} has discriminant {d}, which is not a positive non-square'
        )
    if not form.is_primitive():
        raise InvalidInputError(f'{form} is not primitive')


def _check_same_discriminant(first, second):
    if first.discriminant != second.discriminant:
        raise InvalidInputError(
            f'{first} and {second} have different discriminants'
        )


def _matrix_product(first, second):
    (p, q), (r, s) = first
    (w, x), (y, z) = second
    return (
        (p * w + q * y, p * x + q * z),
        (r * w + s * y, r * x + s * z)
    )


def apply_transform(form, matrix):
    """
    Substitute (x, y) -> (px + qy, rx + sy) into the form
    :param form: type QForm
    :param matrix: type tuple: ((p, q), (r, s))
    :return: QForm
    """
    (p, q), (r, s) = matrix
    a, b, c = form.a, form.b, form.c
    return QForm(
        form.evaluate(p, r),
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        form.evaluate(q, s)
    )


def principal_form(discriminant):
    """
    :return: QForm (1, 1, (1 - D) / 4), the identity of the class group
    """
    return QForm(1, 1, (1 - discriminant) // 4)


def inverse(form):
    return QForm(form.a, -form.b, form.c)


def negative_partner(form):
    """
    The form (-a, b, -c). An ideal scaled by an element of negative norm has
    this form, so the partner shares the wide class of the original
    """
    return QForm(-form.a, form.b, -form.c)


def ramified_form(m, p):
    """
    Form (p, p, (p - m/p) / 4) of the ramified prime ideal above p
    :param m: type int: Valid field parameter
    :param p: type int: Prime dividing m
    :return: QForm
    """
    if m % p:
        raise InvalidInputError(f'{p} does not divide {m}')
    return QForm(p, p, (p - m // p) // 4)


def _rho_step(form, root):
    """
    Right neighbour (c, s, (s^2 - D) / 4c) with s = -b mod 2c normalized into
    (sqrt(D) - 2|c|, sqrt(D)) when |c| < sqrt(D), and into (-|c|, |c|]
    otherwise
    :return: (neighbour, transformation matrix)
    """
    d = form.discriminant
    c = form.c
    modulus = 2 * abs(c)
    if abs(c) > root:
        s = (-form.b) % modulus
        if s > abs(c):
            s -= modulus
    else:
        s = root - (root + form.b) % modulus
    t = (s + form.b) // (2 * c)
    return QForm(c, s, (s * s - d) // (4 * c)), ((0, -1), (1, t))


def rho(form):
    """
    :param form: type QForm: Primitive form of non-square discriminant
    :return: The right neighbour of the form
    """
    _check_form(form)
    return _rho_step(form, isqrt(form.discriminant))[0]


def reduce(form):
    """
    Apply neighbour steps until the form is reduced
    :param form: type QForm: Primitive form of positive non-square
        discriminant
    :return: (reduced form, transformation matrix of determinant 1 taking the
        input to the output)
    """
    _check_form(form)
    root = isqrt(form.discriminant)
    bound = 64 + 8 * max(
        abs(form.a), abs(form.b), abs(form.c), 2
    ).bit_length()
    transform = IDENTITY
    for _ in range(bound):
        if form.is_reduced():
            return form, transform
        form, step = _rho_step(form, root)
        transform = _matrix_product(transform, step)
    raise InconsistencyError(
        f'Reduction did not terminate within {bound} steps'
    )


def _walk_cycle(start):
    """
    Yield (form, transform from start) around the cycle of a reduced form,
    beginning with the start itself
    """
    root = isqrt(start.discriminant)
    form, transform = start, IDENTITY
    while True:
        yield form, transform
        form, step = _rho_step(form, root)
        transform = _matrix_product(transform, step)
        if form == start:
            return


def cycle(form):
    """
    :param form: type QForm: Reduced form
    :return: list of the reduced forms of the cycle, starting with the form
    """
    _check_form(form)
    if not form.is_reduced():
        raise InvalidInputError(f'{form} is not reduced')
    return [member for member, _ in _walk_cycle(form)]


def _positive_leading(form):
    """
    An equivalent form with a > 0
    """
    if form.a > 0:
        return form
    form, _ = reduce(form)
    if form.a < 0:
        # Reduced forms have ac < 0
        form = rho(form)
    return form


def compose(first, second):
    """
    Gauss composition of two primitive forms of the same discriminant, via
    the united-form algorithm with two extended Euclidean steps
    :return: Reduced QForm in the product class
    """
    _check_form(first)
    _check_form(second)
    _check_same_discriminant(first, second)
    d = first.discriminant
    first, second = _positive_leading(first), _positive_leading(second)
    if first.a > second.a:
        first, second = second, first
    a1, b1 = first.a, first.b
    a2, b2, c2 = second.a, second.b, second.c
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, g = 0, a1
    else:
        g, y1, _ = gcdext(a2, a1)
    if s % g == 0:
        x2, y2, g1 = 0, -1, g
    else:
        g1, x2, v = gcdext(s, g)
        y2 = -v
    v1, v2 = a1 // g1, a2 // g1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    composed = QForm(a3, b3, (b3 * b3 - d) // (4 * a3))
    return reduce(composed)[0]


def equivalent(first, second, strictness=NARROW):
    """
    Narrow: the reduction of the second form lies in the cycle of the
    reduction of the first. Wide: the second form or its negative partner is
    narrowly equivalent to the first
    :return: bool
    """
    _check_same_discriminant(first, second)
    members = set(cycle(reduce(first)[0]))
    if reduce(second)[0] in members:
        return True
    if strictness == WIDE:
        return reduce(negative_partner(second))[0] in members
    return False


def reduced_forms(m):
    """
    Every primitive reduced form of discriminant m
    :param m: type int: Valid field parameter
    :return: sorted list of QForm
    """
    root = isqrt(m)
    found = []
    for b in range(1, root + 1, 2):
        n = (m - b * b) // 4
        for leading in range(1, (root + b) // 2 + 1):
            if n % leading:
                continue
            form = QForm(leading, b, -n // leading)
            if not form.is_reduced() or not form.is_primitive():
                continue
            found.extend((form, negative_partner(form)))
    return sorted(found)


class ClassGroup:
    """
    The narrow and wide class groups of discriminant m, enumerated by
    partitioning the reduced forms into cycles. Instances are not modified
    after construction and may be shared across threads.

    Attributes:
        m (int): Discriminant.
        cycles (dict): Narrow label form: list of the forms of its cycle.
    """

    def __init__(self, m):
        check_field_parameter(m)
        self.m = m
        self.cycles = {}
        self._narrow_of = {}
        for form in reduced_forms(m):
            if form in self._narrow_of:
                continue
            members = cycle(form)
            representative = min(members)
            self.cycles[representative] = members
            for member in members:
                self._narrow_of[member] = representative
        self._wide_of = {
            representative: min(
                representative,
                self._narrow_of[negative_partner(representative)]
            )
            for representative in self.cycles
        }
        logging.debug(
            'Discriminant %s: %s narrow and %s wide classes',
            m, self.class_number(NARROW), self.class_number(WIDE)
        )

    def label(self, form, strictness=WIDE):
        """
        :param form: type QForm: Primitive form of discriminant m
        :param strictness: type str: narrow or wide
        :return: ClassLabel
        """
        if form.discriminant != self.m:
            raise InvalidInputError(
                f'{form} does not have discriminant {self.m}'
            )
        representative = self._narrow_of[reduce(form)[0]]
        if strictness == WIDE:
            representative = self._wide_of[representative]
        return ClassLabel(representative, strictness)

    def labels(self, strictness=WIDE):
        """
        :return: sorted list of the ClassLabel of every class
        """
        if strictness == WIDE:
            forms = set(self._wide_of.values())
        else:
            forms = set(self.cycles)
        return sorted(ClassLabel(form, strictness) for form in forms)

    def class_number(self, strictness=WIDE):
        return len(self.labels(strictness))

    def principal(self, strictness=WIDE):
        return self.label(principal_form(self.m), strictness)

    def cycle_length(self, label):
        """
        :param label: type ClassLabel
        :return: Number of reduced forms in the class
        """
        narrow_forms = [
            representative for representative, wide in self._wide_of.items()
            if label.strictness == NARROW and representative == label.form
            or label.strictness == WIDE and wide == label.form
        ]
        return sum(len(self.cycles[form]) for form in narrow_forms)


@lru_cache(maxsize=256)
def class_group(m):
    """
    Cached ClassGroup of discriminant m
    """
    return ClassGroup(m)


def label(form, strictness=WIDE):
    """
    :return: ClassLabel of the form
    """
    return class_group(form.discriminant).label(form, strictness)


def two_torsion_classes(m, strictness=WIDE):
    """
    Classes whose square is principal
    :param m: type int: Valid field parameter
    :param strictness: type str: narrow or wide
    :return: sorted list of ClassLabel
    """
    group = class_group(m)
    principal = group.principal(strictness)
    return [
        class_label for class_label in group.labels(strictness)
        if group.label(
            compose(class_label.form, class_label.form), strictness
        ) == principal
    ]


def ambiguous_classes(m, strictness=WIDE):
    """
    The subgroup generated by the classes of the ramified prime ideals
    :param m: type int: Valid field parameter
    :param strictness: type str: narrow or wide
    :return: sorted list of ClassLabel
    """
    group = class_group(m)
    found = {group.principal(strictness): principal_form(m)}
    for p in factor(m).primes:
        generator = ramified_form(m, p)
        for form in list(found.values()):
            product = compose(form, generator)
            found.setdefault(group.label(product, strictness), product)
    return sorted(found)


def principal_generator(form):
    """
    Generator of the ideal [|a|, (b + sqrt(m)) / 2] attached to the form when
    that ideal is principal in the wide sense. The form is reduced and its
    cycle walked until a form with leading coefficient +-1 appears; the first
    column (p, r) of the accumulated transformation gives the element
    p|a| + r (b + sqrt(m)) / 2 of norm +-|a|, which therefore generates the
    ideal
    :param form: type QForm: Primitive form of discriminant m
    :return: QuadInt normalized up to units, or None
    """
    _check_form(form)
    m = form.discriminant
    leading = abs(form.a)
    oriented = QForm(leading, form.b, (form.b * form.b - m) // (4 * leading))
    start, transform = reduce(oriented)
    for member, step in _walk_cycle(start):
        if abs(member.a) != 1:
            continue
        (p, _), (r, _) = _matrix_product(transform, step)
        alpha = QuadInt(2 * p * leading + r * form.b, r, m)
        if abs(alpha.norm()) != leading:
            raise InconsistencyError(
                f'Generator {alpha} of the ideal of {form} has norm '
                f'{alpha.norm()}'
            )
        return normalize_generator(alpha)
    return None
