from quad_torsion.forms import \
    NARROW, \
    WIDE, \
    QForm, \
    ambiguous_classes, \
    apply_transform, \
    class_group, \
    compose, \
    cycle, \
    equivalent, \
    inverse, \
    label, \
    negative_partner, \
    principal_form, \
    principal_generator, \
    ramified_form, \
    reduce, \
    reduced_forms, \
    rho, \
    two_torsion_classes
from quad_torsion.methods import InvalidInputError
from quad_torsion.quadfield import QuadInt
from hypothesis import \
    given, \
    settings, \
    strategies as st
import pytest

REDUCED_1885 = reduced_forms(1885)


@pytest.fixture(name='variables', scope='module')
def setup():
    class Variables:
        def __init__(self):
            self.m = 1885
            # Forms of the ideals (a, 2b + sqrt(m)) for the representations
            # (43, 3), (11, 21), (21, 19) and (27, 17)
            self.form_43 = QForm(43, -37, -3)
            self.form_11 = QForm(11, 9, -41)
            self.form_21 = QForm(21, 17, -19)
            self.form_27 = QForm(27, 7, -17)
            self.form_p5 = QForm(5, 5, -93)
            self.form_p13 = QForm(13, 13, -33)
            self.form_p29 = QForm(29, 29, -9)
            self.principal = principal_form(1885)

    return Variables()


def sl2_matrix(exponents):
    """
    Product of the matrices T^k S with T = ((1, 1), (0, 1)), S = ((0, -1),
    (1, 0))
    """
    matrix = ((1, 0), (0, 1))
    for k in exponents:
        (p, q), (r, s) = matrix
        # Multiply by T^k, then by S
        p, q, r, s = p, q + k * p, r, s + k * r
        matrix = ((q, -p), (s, -r))
    return matrix


def test_discriminant(variables):
    for form in (variables.form_43, variables.form_11, variables.form_21,
                 variables.form_27, variables.form_p5, variables.form_p29):
        assert form.discriminant == variables.m


@pytest.mark.parametrize('form,expected',
                         [(QForm(1, 1, -1), True),
                          (QForm(-1, 1, 1), True),
                          (QForm(1, 43, -9), True),
                          (QForm(1, 1, -471), False),
                          (QForm(29, 29, -9), True),
                          (QForm(5, 5, -93), False)])
def test_is_reduced(form, expected):
    assert form.is_reduced() is expected


def test_reduce_already_reduced():
    assert reduce(QForm(1, 1, -1)) == (QForm(1, 1, -1), ((1, 0), (0, 1)))


def test_reduce_principal_form(variables):
    reduced, transform = reduce(variables.principal)
    assert reduced.is_reduced()
    assert apply_transform(variables.principal, transform) == reduced
    assert reduced in cycle(reduce(QForm(1, 43, -9))[0])


def test_rho_golden():
    assert rho(QForm(1, 1, -1)) == QForm(-1, 1, 1)
    assert rho(QForm(-1, 1, 1)) == QForm(1, 1, -1)


def test_cycle_golden():
    assert cycle(QForm(1, 1, -1)) == [QForm(1, 1, -1), QForm(-1, 1, 1)]


def test_cycle_not_reduced():
    with pytest.raises(InvalidInputError):
        cycle(QForm(1, 1, -471))


@pytest.mark.parametrize('form',
                         [QForm(2, 2, 2),
                          QForm(1, 0, -1),
                          QForm(2, 1, 3)])
def test_reduce_invalid(form):
    with pytest.raises(InvalidInputError):
        reduce(form)


def test_compose_mismatched():
    with pytest.raises(InvalidInputError):
        compose(QForm(1, 1, -1), QForm(1, 1, -3))


def test_cycles_partition_reduced_forms():
    group = class_group(65)
    members = [form for forms in group.cycles.values() for form in forms]
    assert len(members) == len(set(members))
    assert set(members) == set(reduced_forms(65))
    for forms in group.cycles.values():
        assert len(forms) % 2 == 0
        assert all(form.is_reduced() for form in forms)


@pytest.mark.parametrize('m,narrow,wide',
                         [(5, 1, 1),
                          (13, 1, 1),
                          (65, 2, 2),
                          (85, 2, 2),
                          (1885, 8, 4)])
def test_class_numbers(m, narrow, wide):
    group = class_group(m)
    assert group.class_number(NARROW) == narrow
    assert group.class_number(WIDE) == wide


def test_narrow_class_number_doubles(variables):
    group = class_group(variables.m)
    assert group.class_number(NARROW) == 2 * group.class_number(WIDE)


def test_class_group_cached():
    assert class_group(1885) is class_group(1885)


def test_class_group_invalid():
    with pytest.raises(InvalidInputError):
        class_group(45)


def test_worked_equivalences(variables):
    assert equivalent(variables.form_11, variables.form_21, WIDE)
    assert equivalent(variables.form_43, variables.form_27, WIDE)
    assert not equivalent(variables.form_43, variables.form_11, WIDE)
    for form in (variables.form_43, variables.form_11, variables.form_21,
                 variables.form_27):
        assert not equivalent(form, variables.principal, WIDE)


def test_compose_with_ramified_prime(variables):
    product = compose(variables.form_43, variables.form_p5)
    assert equivalent(product, variables.form_11, WIDE)


def test_ramified_classes(variables):
    assert label(variables.form_p29) == label(variables.principal)
    assert label(variables.form_p5) != label(variables.principal)
    assert label(variables.form_p5) == label(variables.form_p13)


def test_ramified_form(variables):
    assert ramified_form(variables.m, 5) == variables.form_p5
    assert ramified_form(variables.m, 29) == variables.form_p29
    with pytest.raises(InvalidInputError):
        ramified_form(variables.m, 7)


def test_two_torsion_and_ambiguous(variables):
    two_torsion = two_torsion_classes(variables.m)
    ambiguous = ambiguous_classes(variables.m)
    assert len(two_torsion) == 4
    assert set(ambiguous) == {label(variables.principal),
                              label(variables.form_p5)}
    assert set(ambiguous) <= set(two_torsion)
    assert label(variables.form_43) in two_torsion
    assert label(variables.form_11) in two_torsion


@pytest.mark.parametrize('m,size',
                         [(5, 1),
                          (65, 2),
                          (85, 2),
                          (5 * 13 * 17, 4)])
def test_two_torsion_size(m, size):
    assert len(two_torsion_classes(m)) == size


def test_ambiguous_equals_two_torsion_for_negative_unit():
    assert ambiguous_classes(65) == two_torsion_classes(65)


def test_principal_generator_ramified(variables):
    assert principal_generator(variables.form_p29) == QuadInt(174, 4, 1885)
    assert principal_generator(variables.form_p5) is None
    assert principal_generator(variables.form_43) is None


@pytest.mark.parametrize('m', [5, 65, 1885])
def test_principal_generator_unit(m):
    assert principal_generator(principal_form(m)) == QuadInt(2, 0, m)


def test_principal_generator_negative_leading():
    # (-1, 1, 16) of discriminant 65 belongs to the ideal [1, (1 + sqrt(65))/2]
    assert principal_generator(QForm(-1, 1, 16)) == QuadInt(2, 0, 65)


def test_negative_partner_is_wide_equivalent(variables):
    for form in REDUCED_1885:
        assert equivalent(form, negative_partner(form), WIDE)
    assert not equivalent(variables.principal,
                          negative_partner(variables.principal), NARROW)


def test_class_label_is_least_form(variables):
    group = class_group(variables.m)
    for class_label in group.labels(NARROW):
        assert class_label.form == min(group.cycles[class_label.form])


def check_sl2_transform(form, exponents):
    matrix = sl2_matrix(exponents)
    (p, q), (r, s) = matrix
    assert p * s - q * r == 1
    transformed = apply_transform(form, matrix)
    assert transformed.discriminant == form.discriminant
    assert equivalent(form, transformed, NARROW)
    reduced, transform = reduce(transformed)
    assert apply_transform(transformed, transform) == reduced


def check_composition_laws(first, second, third):
    principal = principal_form(first.discriminant)
    assert equivalent(compose(principal, first), first, NARROW)
    assert equivalent(compose(first, inverse(first)), principal, NARROW)
    assert equivalent(compose(first, second), compose(second, first), NARROW)
    assert equivalent(
        compose(compose(first, second), third),
        compose(first, compose(second, third)),
        NARROW
    )


@settings(max_examples=200, deadline=None)
@given(form=st.sampled_from(REDUCED_1885),
       exponents=st.lists(st.integers(min_value=-25, max_value=25),
                          min_size=1, max_size=6))
def test_equivalence_under_sl2(form, exponents):
    check_sl2_transform(form, exponents)


@settings(max_examples=200, deadline=None)
@given(first=st.sampled_from(REDUCED_1885),
       second=st.sampled_from(REDUCED_1885),
       third=st.sampled_from(REDUCED_1885))
def test_composition_laws(first, second, third):
    check_composition_laws(first, second, third)


@pytest.mark.slow
@settings(max_examples=10000, deadline=None)
@given(form=st.sampled_from(REDUCED_1885),
       exponents=st.lists(st.integers(min_value=-40, max_value=40),
                          min_size=1, max_size=8))
def test_equivalence_under_sl2_many(form, exponents):
    check_sl2_transform(form, exponents)


@pytest.mark.slow
@settings(max_examples=10000, deadline=None)
@given(m=st.sampled_from([65, 85, 1105, 1885]),
       data=st.data())
def test_composition_laws_many(m, data):
    forms = st.sampled_from(reduced_forms(m))
    check_composition_laws(
        data.draw(forms), data.draw(forms), data.draw(forms)
    )


def test_two_torsion_squares_are_principal(variables):
    principal = label(variables.principal)
    for class_label in two_torsion_classes(variables.m):
        assert label(compose(class_label.form, class_label.form)) == principal
