from quad_torsion.arith import \
    factor, \
    is_valid_m
from quad_torsion.methods import InvalidInputError
from quad_torsion.reps import \
    GaussInt, \
    TwoSquares, \
    enumerate_reps, \
    search_reps
import random
import pytest


@pytest.fixture(name='variables', scope='module')
def setup():
    class Variables:
        def __init__(self):
            self.valid_m = [m for m in range(5, 5000, 4)
                            if is_valid_m(factor(m))]

    return Variables()


def pairs(reps):
    return [(rep.a, rep.b) for rep in reps]


@pytest.mark.parametrize('m,expected',
                         [(5, [(1, 1)]),
                          (13, [(3, 1)]),
                          (65, [(1, 4), (7, 2)]),
                          (85, [(7, 3), (9, 1)]),
                          (1885, [(11, 21), (21, 19), (27, 17), (43, 3)])])
def test_enumerate_reps(m, expected):
    assert pairs(enumerate_reps(factor(m))) == expected


def test_reps_are_representations():
    for rep in enumerate_reps(factor(1885)):
        assert rep.a ** 2 + 4 * rep.b ** 2 == 1885
        assert rep.a % 2 == 1


def test_reps_sorted_by_a():
    reps = enumerate_reps(factor(5 * 13 * 17 * 29))
    assert [rep.a for rep in reps] == sorted(rep.a for rep in reps)
    assert len(reps) == 8


def test_enumerate_matches_search(variables):
    for m in variables.valid_m:
        reps = enumerate_reps(factor(m))
        assert len(reps) == 2 ** (factor(m).t - 1)
        assert reps == search_reps(m)


@pytest.mark.slow
def test_enumerate_matches_search_to_one_hundred_thousand():
    for m in range(5, 10 ** 5, 4):
        f = factor(m)
        if not is_valid_m(f):
            continue
        assert enumerate_reps(f) == search_reps(m)


@pytest.mark.slow
def test_enumerate_matches_search_sampled_to_one_million():
    rng = random.Random(0)
    for m in rng.sample(range(10 ** 5 + 1, 10 ** 6, 4), 2250):
        f = factor(m)
        if not is_valid_m(f) or f.t > 4:
            continue
        assert len(enumerate_reps(f)) == 2 ** (f.t - 1)
        assert enumerate_reps(f) == search_reps(m)


@pytest.mark.parametrize('m', [4, 21, 45, 1])
def test_enumerate_reps_invalid(m):
    with pytest.raises(InvalidInputError):
        enumerate_reps(factor(m))


@pytest.mark.parametrize('a,b,m',
                         [(2, 1, 8),
                          (1, 0, 1),
                          (3, 1, 14),
                          (-1, 1, 5)])
def test_two_squares_invalid(a, b, m):
    with pytest.raises(InvalidInputError):
        TwoSquares(a=a, b=b, m=m)


def test_two_squares_gaussian():
    rep = TwoSquares(a=43, b=3, m=1885)
    mu = rep.gaussian()
    assert mu == GaussInt(43, 6)
    assert mu.norm() == 1885


def test_gauss_int_arithmetic():
    first, second = GaussInt(1, 2), GaussInt(3, 2)
    assert first * second == GaussInt(-1, 8)
    assert (first * second).norm() == first.norm() * second.norm()
    assert first.conjugate() == GaussInt(1, -2)
