from quad_torsion.arith import factor
from quad_torsion.methods import InvalidInputError
from quad_torsion.quartic import \
    CharVector, \
    ConstraintUnsatisfied, \
    QuarticPoly, \
    character_discriminant, \
    conductor, \
    disc_check, \
    distinct_extensions_check, \
    enumerate_characters, \
    enumerate_quartic_characters, \
    is_irreducible, \
    kummer_min_poly, \
    legendre_identity_check, \
    min_poly, \
    same_field_check
from quad_torsion.reps import \
    TwoSquares, \
    enumerate_reps
from quad_torsion.verify import valid_m_in_range
from hypothesis import \
    given, \
    settings, \
    strategies as st
import pytest


@pytest.fixture(name='variables', scope='module')
def setup():
    class Variables:
        def __init__(self):
            self.m = 1885
            self.primes = (5, 13, 29)
            self.reps = enumerate_reps(factor(self.m))
            self.golden = TwoSquares(a=1, b=1, m=5)

    return Variables()


@pytest.mark.parametrize('e,order',
                         [((0, 0, 0), 1),
                          ((2, 0, 2), 2),
                          ((1, 0, 2), 4),
                          ((3, 3, 1), 4)])
def test_char_vector_order(e, order):
    assert CharVector(e).order == order


def test_char_vector_invalid():
    with pytest.raises(InvalidInputError):
        CharVector((1, 4))


def test_char_vector_square_and_negate():
    chi = CharVector((1, 3, 2))
    assert chi.square() == CharVector((2, 2, 0))
    assert chi.negate() == CharVector((3, 1, 2))
    assert chi.is_quartic()
    assert not chi.square().is_quartic()


def test_enumerate_characters():
    characters = enumerate_characters(2)
    assert len(characters) == 16
    assert len(set(characters)) == 16
    assert sum(chi.order == 4 for chi in characters) == 12


def test_enumerate_quartic_characters():
    pairs = enumerate_quartic_characters(3)
    assert len(pairs) == 4
    assert pairs[0] == (CharVector((1, 1, 1)), CharVector((3, 3, 3)))
    for chi, inverse in pairs:
        assert all(entry % 2 for entry in chi.e)
        assert inverse == chi.negate()


def test_enumerate_quartic_characters_invalid():
    with pytest.raises(InvalidInputError):
        enumerate_quartic_characters(0)


def test_conductor(variables):
    assert conductor(CharVector((1, 0, 2)), variables.primes) == 5 * 29
    assert conductor(CharVector((0, 0, 0)), variables.primes) == 1
    with pytest.raises(InvalidInputError):
        conductor(CharVector((1, 1)), variables.primes)


def test_character_discriminant(variables):
    for chi, _ in enumerate_quartic_characters(3):
        assert character_discriminant(chi, variables.primes) == \
            variables.m ** 3
    assert character_discriminant(CharVector((1, 0, 2)), variables.primes) \
        == 145 ** 2 * 5
    with pytest.raises(InvalidInputError):
        character_discriminant(CharVector((2, 2, 2)), variables.primes)


def test_min_poly_golden(variables):
    poly = min_poly(5, variables.golden)
    assert poly == QuarticPoly(p=-10, q=5)
    assert str(poly) == 'x**4 - 10*x**2 + 5'
    assert poly.discriminant() == 2 ** 12 * 5 ** 3
    assert disc_check(poly, 5)
    assert is_irreducible(poly)


def test_kummer_min_poly_golden(variables):
    poly = kummer_min_poly(5, variables.golden)
    assert poly == QuarticPoly(p=-20, q=80)
    assert poly.discriminant() == 5 ** 3 * 256 ** 2
    assert disc_check(poly, 5)


def test_min_poly_1885(variables):
    for rep in variables.reps:
        poly = min_poly(variables.m, rep)
        assert poly.discriminant() == \
            variables.m ** 3 * (64 * rep.a * rep.b ** 2) ** 2
        assert disc_check(poly, variables.m)
        assert is_irreducible(poly)
        assert disc_check(kummer_min_poly(variables.m, rep), variables.m)
        assert is_irreducible(kummer_min_poly(variables.m, rep))


def test_disc_check_negative_control(variables):
    for rep in variables.reps:
        poly = QuarticPoly(p=-2 * variables.m, q=rep.a * rep.a)
        assert not disc_check(poly, variables.m)
    assert not disc_check(QuarticPoly(p=-10, q=1), 5)
    assert not disc_check(QuarticPoly(p=-2, q=1), 5)


def test_is_irreducible_reducible():
    # (x^2 - 1)(x^2 - 4)
    assert not is_irreducible(QuarticPoly(p=-5, q=4))


def test_min_poly_wrong_field(variables):
    with pytest.raises(InvalidInputError):
        min_poly(13, variables.golden)


@pytest.mark.parametrize('A,B,C,x,y,z',
                         [(5, 1, 1, 1, 1, 2),
                          (13, 1, 1, 1, 3, 2),
                          (1885, 1, 1, 1, 43, 6),
                          (2, 1, 1, 1, 1, 1),
                          (6, 5, 1, 1, 1, 1)])
def test_legendre_identity(A, B, C, x, y, z):
    assert legendre_identity_check(A, B, C, x, y, z)


@pytest.mark.parametrize('A,B,C,x,y,z',
                         [(5, 1, 1, 1, 1, 1),
                          (-5, 1, 1, 1, 1, 2),
                          (3, 1, 1, 1, 1, 1)])
def test_legendre_identity_unsatisfied(A, B, C, x, y, z):
    with pytest.raises(ConstraintUnsatisfied):
        legendre_identity_check(A, B, C, x, y, z)


def test_same_field_check(variables):
    assert same_field_check(5, variables.golden)
    for rep in variables.reps:
        assert same_field_check(variables.m, rep)


def test_distinct_extensions(variables):
    assert distinct_extensions_check(variables.m, variables.reps)
    assert not distinct_extensions_check(
        variables.m, [variables.reps[0], variables.reps[0]]
    )
    assert distinct_extensions_check(5, [variables.golden])


@pytest.mark.slow
def test_quartic_sweep():
    for m in valid_m_in_range(1, 10 ** 4):
        reps = enumerate_reps(factor(m))
        for rep in reps:
            poly = min_poly(m, rep)
            assert disc_check(poly, m), (m, rep)
            assert is_irreducible(poly), (m, rep)
            assert same_field_check(m, rep), (m, rep)
        assert distinct_extensions_check(m, reps), m


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(B=st.integers(min_value=1, max_value=500),
       C=st.integers(min_value=1, max_value=500),
       x=st.integers(min_value=1, max_value=50),
       y=st.integers(min_value=-50, max_value=50),
       z=st.integers(min_value=-50, max_value=50))
def test_legendre_identity_random(B, C, x, y, z):
    # A x^2 = (B x^2) y^2 + (C x^2) z^2 with A = B y^2 + C z^2
    A = B * y * y + C * z * z
    assert legendre_identity_check(A, B * x * x, C * x * x, x, y, z)


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(m=st.deferred(
    lambda: st.sampled_from(valid_m_in_range(10 ** 4, 10 ** 5))
))
def test_same_field_check_random(m):
    for rep in enumerate_reps(factor(m)):
        assert same_field_check(m, rep)
