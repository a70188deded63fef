from quad_torsion.arith import factor
from quad_torsion.forms import \
    NARROW, \
    WIDE, \
    QForm, \
    compose, \
    label as form_label, \
    reduced_forms
from quad_torsion.ideals import \
    IdealNF, \
    conj, \
    from_form, \
    generator, \
    ideal_a, \
    ideal_b, \
    ideal_from_generators, \
    is_principal, \
    label, \
    mul, \
    norm, \
    principal, \
    ramified_prime, \
    to_form, \
    unit_ideal, \
    verify_square_principal
from quad_torsion.methods import InvalidInputError
from quad_torsion.quadfield import QuadInt
from quad_torsion.reps import \
    TwoSquares, \
    enumerate_reps
from quad_torsion.verify import valid_m_in_range
from hypothesis import \
    given, \
    settings, \
    strategies as st
import itertools
import random
import pytest


@pytest.fixture(name='variables', scope='module')
def setup():
    class Variables:
        def __init__(self):
            self.m = 1885
            self.reps = enumerate_reps(factor(self.m))
            self.ideals = [ideal_a(rep) for rep in self.reps]
            self.primes = [ramified_prime(self.m, p) for p in (5, 13, 29)]
            self.alpha_29 = QuadInt(174, 4, 1885)

    return Variables()


@pytest.mark.parametrize('m,a,b,l',
                         [(1885, 43, 3, -37),
                          (1885, 11, 21, 9),
                          (1885, 21, 19, 17),
                          (1885, 27, 17, 7),
                          (65, 7, 2, -3),
                          (65, 1, 4, 1),
                          (5, 1, 1, 1)])
def test_ideal_a(m, a, b, l):
    assert ideal_a(TwoSquares(a=a, b=b, m=m)) == IdealNF(m=m, a=a, l=l)


def test_ideal_a_norm(variables):
    for rep, ideal in zip(variables.reps, variables.ideals):
        assert norm(ideal) == rep.a
        assert ideal.scale == 1


def test_verify_square_principal(variables):
    for rep in variables.reps:
        assert verify_square_principal(rep)
    assert verify_square_principal(TwoSquares(a=7, b=2, m=65))


@pytest.mark.parametrize('m,a,l,scale',
                         [(1885, 43, -36, 1),
                          (1885, 43, 49, 1),
                          (1885, 43, 3, 1),
                          (1885, 0, 1, 1),
                          (1885, 1, 1, 0)])
def test_ideal_nf_invalid(m, a, l, scale):
    with pytest.raises(InvalidInputError):
        IdealNF(m=m, a=a, l=l, scale=scale)


def test_ideal_str():
    assert str(IdealNF(m=1885, a=43, l=-37)) == '[43, (-37 + sqrt(1885))/2]'
    assert str(IdealNF(m=5, a=1, l=1, scale=3)) == '3[1, (1 + sqrt(5))/2]'


def test_ramified_prime(variables):
    prime = ramified_prime(variables.m, 5)
    assert prime == IdealNF(m=1885, a=5, l=5)
    assert to_form(prime) == QForm(5, 5, -93)
    assert mul(prime, prime) == principal(QuadInt.from_int(5, 1885))


@pytest.mark.parametrize('p', [1, 7, 25])
def test_ramified_prime_invalid(p):
    with pytest.raises(InvalidInputError):
        ramified_prime(1885, p)


def test_ideal_b_all_primes(variables):
    assert ideal_b(variables.m, (1, 1, 1)) == \
        principal(QuadInt.sqrt_m(variables.m))
    assert ideal_b(variables.m, (1, 1, 1)) == \
        IdealNF(m=1885, a=1885, l=1885)


def test_ideal_b_empty(variables):
    assert ideal_b(variables.m, (0, 0, 0)) == unit_ideal(variables.m)


def test_ideal_b_products(variables):
    for e in itertools.product((0, 1), repeat=3):
        ideal = ideal_b(variables.m, e)
        assert norm(ideal) == 5 ** e[0] * 13 ** e[1] * 29 ** e[2]
        assert mul(ideal, ideal) == principal(QuadInt.from_int(norm(ideal),
                                                               variables.m))


@pytest.mark.parametrize('e', [(1, 0), (1, 0, 2), (0, 0, 0, 1)])
def test_ideal_b_invalid(e):
    with pytest.raises(InvalidInputError):
        ideal_b(1885, e)


def test_principal_ramified_relation(variables):
    # (87 + 2 sqrt(1885)) generates the prime above 29
    assert principal(variables.alpha_29) == ideal_b(variables.m, (0, 0, 1))
    assert generator(ideal_b(variables.m, (0, 0, 1))) == variables.alpha_29


def test_generator_scaled(variables):
    three = QuadInt.from_int(3, variables.m)
    ideal = principal(three)
    assert ideal == IdealNF(m=1885, a=1, l=1, scale=3)
    assert generator(ideal) == three


def test_is_principal(variables):
    assert not is_principal(variables.primes[0])
    assert not is_principal(variables.primes[1])
    assert is_principal(variables.primes[2])
    for ideal in variables.ideals:
        assert not is_principal(ideal)


def test_generator_generates():
    for p in (5, 13):
        prime = ramified_prime(65, p)
        alpha = generator(mul(prime, prime))
        assert principal(alpha) == mul(prime, prime)
    prime = ramified_prime(5, 5)
    assert principal(generator(prime)) == prime


def test_mul_commutative_and_associative(variables):
    first, second, third = variables.ideals[0], variables.ideals[3], \
        variables.primes[0]
    assert mul(first, second) == mul(second, first)
    assert mul(mul(first, second), third) == mul(first, mul(second, third))
    assert norm(mul(first, second)) == norm(first) * norm(second)


def test_mul_unit(variables):
    for ideal in variables.ideals:
        assert mul(ideal, unit_ideal(variables.m)) == ideal


def test_mul_mixed_fields():
    with pytest.raises(InvalidInputError):
        mul(unit_ideal(5), unit_ideal(13))


def test_ideal_from_generators_mixed_fields():
    with pytest.raises(InvalidInputError):
        ideal_from_generators(5, [QuadInt.from_int(3, 13)])


def test_ideal_times_conjugate(variables):
    for ideal in variables.ideals + variables.primes:
        assert mul(ideal, conj(ideal)) == \
            principal(QuadInt.from_int(norm(ideal), variables.m))


def test_conj(variables):
    assert conj(IdealNF(m=1885, a=43, l=-37)) == IdealNF(m=1885, a=43, l=37)
    for prime in variables.primes:
        assert conj(prime) == prime


def test_form_round_trip(variables):
    for ideal in variables.ideals + variables.primes:
        assert from_form(to_form(ideal)) == ideal


def test_from_form_negative_leading():
    form = QForm(-1, 1, 16)
    ideal = from_form(form)
    assert ideal.a > 0
    assert label(ideal, NARROW) == form_label(form, NARROW)


def test_label_matches_form(variables):
    for ideal in variables.ideals:
        assert label(ideal) == form_label(to_form(ideal))
    assert label(variables.primes[0]) == label(variables.primes[1])


ELEMENTS = st.tuples(
    st.integers(min_value=-60, max_value=60),
    st.integers(min_value=-60, max_value=60)
).filter(lambda pair: pair != (0, 0))


def random_ideal(form, pair):
    """
    Ideal of a reduced form times the principal ideal of u + v(1 + sqrt(m))/2
    """
    m = form.discriminant
    u, v = pair
    return mul(from_form(form), principal(QuadInt(2 * u + v, v, m)))


def check_ideal_laws(first, second):
    m = first.m
    primitive = IdealNF(m=m, a=first.a, l=first.l)
    assert from_form(to_form(first)) == primitive
    assert mul(first, conj(first)) == \
        principal(QuadInt.from_int(norm(first), m))
    product = mul(first, second)
    assert norm(product) == norm(first) * norm(second)
    composed = compose(to_form(first), to_form(second))
    for strictness in (NARROW, WIDE):
        assert label(product, strictness) == form_label(composed, strictness)


@settings(max_examples=50, deadline=None)
@given(m=st.sampled_from([65, 1885]),
       data=st.data())
def test_ideal_laws(m, data):
    forms = st.sampled_from(reduced_forms(m))
    check_ideal_laws(
        random_ideal(data.draw(forms), data.draw(ELEMENTS)),
        random_ideal(data.draw(forms), data.draw(ELEMENTS))
    )


@pytest.mark.slow
@settings(max_examples=10000, deadline=None)
@given(m=st.sampled_from([65, 85, 1105, 1885]),
       data=st.data())
def test_ideal_laws_many(m, data):
    forms = st.sampled_from(reduced_forms(m))
    check_ideal_laws(
        random_ideal(data.draw(forms), data.draw(ELEMENTS)),
        random_ideal(data.draw(forms), data.draw(ELEMENTS))
    )


def test_mul_matches_compose(variables):
    for first, second in itertools.product(variables.ideals,
                                            variables.primes):
        assert label(mul(first, second), NARROW) == form_label(
            compose(to_form(first), to_form(second)), NARROW
        )


@pytest.mark.slow
def test_square_principal_sampled():
    candidates = valid_m_in_range(1, 10 ** 5)
    sample = candidates[:200] + random.Random(0).sample(candidates[200:], 800)
    for m in sample:
        for rep in enumerate_reps(factor(m)):
            assert verify_square_principal(rep), (m, rep)
