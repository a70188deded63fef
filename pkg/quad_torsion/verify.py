#!/usr/bin/env python

"""
Per-m classification of the order-2 ideal classes of Q(sqrt(m)) and batch
scanning over ranges of m
"""

# Standard imports
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import (
    dataclass,
    field
)
from itertools import product
from typing import (
    Dict,
    List,
    Optional,
    Tuple
)
import logging
import time

# Local imports
from quad_torsion.arith import (
    factor,
    is_valid_m,
    set_seed,
    validated_factorization
)
from quad_torsion.forms import (
    NARROW,
    WIDE,
    ClassLabel,
    class_group,
    equivalent,
    principal_form,
    ambiguous_classes,
    two_torsion_classes
)
from quad_torsion.ideals import (
    generator,
    ideal_a,
    ideal_b,
    label,
    to_form,
    verify_square_principal
)
from quad_torsion.methods import (
    InconsistencyError,
    InvalidInputError
)
from quad_torsion.quadfield import (
    QuadInt,
    fundamental_unit,
    solve_unit_equation
)
from quad_torsion.quartic import (
    disc_check,
    distinct_extensions_check,
    is_irreducible,
    min_poly,
    same_field_check
)
from quad_torsion.reps import (
    TwoSquares,
    enumerate_reps
)


@dataclass
class Check:
    """
    Outcome of one assertion of the classification
    """
    name: str
    passed: bool
    detail: str = ''


@dataclass
class RamifiedRelation:
    """
    A product b_e of ramified primes, other than (1) and (sqrt(m)), that is
    principal, with its generator
    """
    e: Tuple[int, ...]
    alpha: QuadInt


@dataclass
class BranchA:
    """
    Details recorded when the fundamental unit has norm -1
    """
    principal_index: Optional[int] = None
    alpha: Optional[QuadInt] = None
    eta: Optional[QuadInt] = None
    eta_norm: Optional[int] = None
    eta_exponent: Optional[int] = None
    suitable_alpha: Optional[QuadInt] = None


@dataclass
class BranchB:
    """
    Details recorded when the fundamental unit has norm +1

    Attributes:
        pairs (list): 1-based indices of the representations sharing a class.
        relation (RamifiedRelation): The first principal b_e found.
        relation_exponent (int): k with alpha^2 / N(b_e) = epsilon^k.
        unit_alpha (QuadInt): Generator with alpha^2 / N(b_e) = epsilon.
    """
    pairs: List[Tuple[int, ...]] = field(default_factory=list)
    relation: Optional[RamifiedRelation] = None
    relation_exponent: Optional[int] = None
    unit_alpha: Optional[QuadInt] = None


@dataclass
class Report:
    """
    Classification of the order-2 ideal classes of Q(sqrt(m)). Theorem checks
    use the strictness in theorem_strictness; labels are recorded for every
    requested strictness. Failed assertions are stored in checks, while an
    error message is stored when classification could not complete.
    """
    m: int
    primes: Tuple[int, ...] = ()
    epsilon: Optional[QuadInt] = None
    unit_norm: Optional[int] = None
    reps: List[TwoSquares] = field(default_factory=list)
    theorem_strictness: str = WIDE
    class_numbers: Dict[str, int] = field(default_factory=dict)
    ideal_classes: Dict[str, List[ClassLabel]] = field(default_factory=dict)
    ramified_classes: Dict[str, List[Tuple[Tuple[int, ...], ClassLabel]]] = \
        field(default_factory=dict)
    two_torsion: List[ClassLabel] = field(default_factory=list)
    ambiguous: List[ClassLabel] = field(default_factory=list)
    # Sizes of the two-torsion and of the ambiguous classes per strictness
    torsion_counts: Dict[str, Dict[str, int]] = field(default_factory=dict)
    branch: Optional[str] = None
    branch_a: Optional[BranchA] = None
    branch_b: Optional[BranchB] = None
    checks: List[Check] = field(default_factory=list)
    error: Optional[str] = None
    elapsed: Optional[float] = None

    @property
    def t(self):
        return len(self.primes)

    @property
    def index(self):
        """
        :return: Index of the ambiguous classes in the two-torsion, if known
        """
        if not self.ambiguous:
            return None
        return len(self.two_torsion) // len(self.ambiguous)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    @property
    def passed(self):
        return self.error is None and not self.failures

    def check(self, name, passed, detail=''):
        self.checks.append(
            Check(name=name, passed=bool(passed), detail=detail)
        )
        if not passed:
            logging.warning(
                'm = %s: check failed: %s %s', self.m, name, detail
            )


def recorded_strictness(strictness):
    """
    :return: (strictness of the theorem checks, strictness modes recorded)
    """
    if strictness == NARROW:
        return NARROW, (NARROW,)
    if strictness == WIDE:
        return WIDE, (WIDE,)
    return WIDE, (WIDE, NARROW)


def _vectors(t):
    return list(product((0, 1), repeat=t))


def _modulus(primes, e):
    value = 1
    for bit, p in zip(e, primes):
        if bit:
            value *= p
    return value


def find_ramified_relation(m):
    """
    Search for a principal product b_e of ramified primes with e other than
    (0, ..., 0) and (1, ..., 1). Such a relation exists exactly when the
    fundamental unit has norm +1
    :param m: type int: Valid field parameter
    :return: RamifiedRelation, or None
    """
    f = validated_factorization(m)
    trivial = {(0,) * f.t, (1,) * f.t}
    for e in _vectors(f.t):
        if e in trivial:
            continue
        alpha = generator(ideal_b(m, e))
        if alpha is not None:
            logging.debug('m = %s: b_%s = (%s)', m, e, alpha)
            return RamifiedRelation(e=e, alpha=alpha)
    return None


def eta_unit(rep, alpha):
    """
    The unit (2b + sqrt(m)) / alpha^2 for a generator alpha of the ideal
    (a, 2b + sqrt(m))
    :param rep: type TwoSquares
    :param alpha: type QuadInt: Generator of ideal_a(rep)
    :return: QuadInt
    """
    beta = QuadInt(4 * rep.b, 2, rep.m)
    eta = beta.divide(alpha * alpha)
    if eta is None or not eta.is_unit():
        raise InconsistencyError(
            f'({beta}) / ({alpha})^2 is not a unit of Q(sqrt({rep.m}))'
        )
    return eta


def _record_classes(report, reps, vectors, modes):
    m = report.m
    ideals = [ideal_a(rep) for rep in reps]
    for rep in reps:
        report.check(
            f'a({rep.a}, {rep.b}) squared is (2b + sqrt(m))',
            verify_square_principal(rep)
        )
    for mode in modes:
        report.class_numbers[mode] = class_group(m).class_number(mode)
        report.ideal_classes[mode] = [label(ideal, mode) for ideal in ideals]
        report.ramified_classes[mode] = [
            (e, label(ideal_b(m, e), mode)) for e in vectors
        ]
        report.torsion_counts[mode] = {
            'two_torsion': len(two_torsion_classes(m, mode)),
            'ambiguous': len(ambiguous_classes(m, mode))
        }
    return ideals


def _check_branch_a(report, ideals, relation):
    mode = report.theorem_strictness
    m = report.m
    classes = report.ideal_classes[mode]
    principal = class_group(m).principal(mode)
    two_torsion = set(report.two_torsion)
    details = BranchA()
    report.branch_a = details
    report.check(
        'ideal classes pairwise distinct',
        len(set(classes)) == len(classes)
    )
    report.check(
        'ideal classes are the two-torsion',
        set(classes) == two_torsion,
        f'{len(set(classes))} classes, {len(two_torsion)} of order <= 2'
    )
    principal_indices = [
        index for index, class_label in enumerate(classes)
        if class_label == principal
    ]
    report.check(
        'exactly one principal ideal',
        len(principal_indices) == 1,
        f'{len(principal_indices)} principal'
    )
    ramified = report.ramified_classes[mode]
    for index, class_label in enumerate(classes):
        matches = [e for e, ramified_label in ramified
                   if ramified_label == class_label]
        complementary = len(matches) == 2 and all(
            x + y == 1 for x, y in zip(*matches)
        )
        report.check(
            f'ideal {index + 1} matches one pair of ramified ideals',
            complementary,
            f'{len(matches)} matches'
        )
    report.check('no ramified relation', relation is None)
    report.check(
        'ambiguous classes are the two-torsion',
        set(report.ambiguous) == two_torsion
    )
    if not principal_indices:
        return
    index = principal_indices[0]
    rep = report.reps[index]
    alpha = generator(ideals[index])
    details.principal_index = index + 1
    report.check('principal ideal has a generator', alpha is not None)
    if alpha is None:
        return
    eta = eta_unit(rep, alpha)
    solution = solve_unit_equation(eta)
    details.alpha, details.eta, details.eta_norm = alpha, eta, eta.norm()
    report.check('eta has norm -1', eta.norm() == -1)
    exponent = solution[1] if solution else None
    details.eta_exponent = exponent
    report.check(
        'eta is an odd power of epsilon',
        exponent is not None and exponent % 2 == 1,
        f'exponent {exponent}'
    )
    if exponent is not None and exponent % 2 == 1:
        suitable = alpha * report.epsilon ** ((exponent - 1) // 2)
        details.suitable_alpha = suitable
        report.check(
            'suitable generator gives eta = epsilon',
            eta_unit(rep, suitable) == report.epsilon
        )
    report.check(
        'principal ideal re-verifies through forms',
        equivalent(to_form(ideals[index]), principal_form(m), mode)
    )


def _check_branch_b(report, ideals, relation):
    mode = report.theorem_strictness
    classes = report.ideal_classes[mode]
    ramified = [class_label for _, class_label
                in report.ramified_classes[mode]]
    two_torsion, ambiguous = set(report.two_torsion), set(report.ambiguous)
    details = BranchB()
    report.branch_b = details
    report.check(
        'ideal and ramified classes disjoint',
        not set(classes) & set(ramified)
    )
    counts = Counter(classes)
    report.check(
        'each ideal class hit exactly twice',
        report.t >= 2 and all(count == 2 for count in counts.values())
        and len(counts) == 2 ** (report.t - 2),
        f'counts {sorted(counts.values())}'
    )
    report.check(
        'ideal classes cover the two-torsion outside the ambiguous classes',
        set(classes) == two_torsion - ambiguous
    )
    report.check(
        'ambiguous classes have index 2',
        len(two_torsion) == 2 * len(ambiguous),
        f'{len(two_torsion)} / {len(ambiguous)}'
    )
    # b_e and b_(1 - e) differ by (sqrt(m)); count each such pair once
    ramified_counts = Counter(
        class_label for (e, _), class_label
        in zip(report.ramified_classes[mode], ramified) if e[0] == 0
    )
    report.check(
        'each ambiguous class hit by exactly two ramified pairs',
        set(ramified_counts) == ambiguous
        and all(count == 2 for count in ramified_counts.values()),
        f'counts {sorted(ramified_counts.values())}'
    )
    groups = {}
    for index, class_label in enumerate(classes):
        groups.setdefault(class_label, []).append(index + 1)
    details.pairs = sorted(tuple(indices) for indices in groups.values())
    report.check(
        'paired ideals re-verify through forms',
        all(
            equivalent(
                to_form(ideals[pair[0] - 1]), to_form(ideals[other - 1]), mode
            )
            for pair in details.pairs for other in pair[1:]
        )
    )
    report.check('ramified relation found', relation is not None)
    if relation is None:
        return
    details.relation = relation
    n = _modulus(report.primes, relation.e)
    unit = (relation.alpha * relation.alpha).divide(
        QuadInt.from_int(n, report.m)
    )
    solution = solve_unit_equation(unit) if unit is not None else None
    exponent = solution[1] if solution else None
    details.relation_exponent = exponent
    report.check(
        'relation unit is an odd power of epsilon',
        unit is not None and unit.norm() == 1 and exponent is not None
        and exponent % 2 == 1,
        f'exponent {exponent}'
    )
    if exponent is not None and exponent % 2 == 1:
        details.unit_alpha = relation.alpha * \
            report.epsilon ** (-((exponent - 1) // 2))


def _check_quartic(report):
    m = report.m
    for rep in report.reps:
        poly = min_poly(m, rep)
        report.check(
            f'minimal polynomial of ({rep.a}, {rep.b}) irreducible',
            is_irreducible(poly),
            str(poly)
        )
        report.check(
            f'discriminant of ({rep.a}, {rep.b}) is m^3 times a square',
            disc_check(poly, m)
        )
        report.check(
            f'generators of ({rep.a}, {rep.b}) give the same field',
            same_field_check(m, rep)
        )
    report.check(
        'representations give distinct quartic fields',
        distinct_extensions_check(m, report.reps)
    )


def classify(m, strictness='both', quartic=False, timings=False):
    """
    Classify the ideals a_j of the representations of m and the products b_e
    of ramified primes, and check the branch of the classification selected
    by the norm of the fundamental unit
    :param m: type int: Valid field parameter
    :param strictness: type str: narrow, wide, or both
    :param quartic: type bool: Also check the quartic field generators
    :param timings: type bool: Record the elapsed time
    :return: Report
    """
    start = time.perf_counter()
    f = validated_factorization(m)
    theorem_mode, modes = recorded_strictness(strictness)
    epsilon, unit_norm = fundamental_unit(m)
    report = Report(
        m=m,
        primes=f.primes,
        epsilon=epsilon,
        unit_norm=unit_norm,
        reps=enumerate_reps(f),
        theorem_strictness=theorem_mode
    )
    vectors = _vectors(f.t)
    ideals = _record_classes(report, report.reps, vectors, modes)
    report.two_torsion = two_torsion_classes(m, theorem_mode)
    report.ambiguous = ambiguous_classes(m, theorem_mode)
    report.check(
        'two-torsion has 2^(t-1) classes',
        len(report.two_torsion) == 2 ** (f.t - 1),
        f'{len(report.two_torsion)} classes'
    )
    report.check(
        'ambiguous classes lie in the two-torsion',
        set(report.ambiguous) <= set(report.two_torsion)
    )
    if f.t == 1:
        report.check('prime m has a unit of norm -1', unit_norm == -1)
    relation = find_ramified_relation(m)
    report.check(
        'ramified relation exists exactly when epsilon has norm +1',
        (relation is not None) == (unit_norm == 1)
    )
    if unit_norm == -1:
        report.branch = 'a'
        _check_branch_a(report, ideals, relation)
    else:
        report.branch = 'b'
        _check_branch_b(report, ideals, relation)
    if quartic:
        _check_quartic(report)
    if timings:
        report.elapsed = time.perf_counter() - start
    logging.debug(
        'm = %s: branch %s, %s checks, %s failed',
        m, report.branch, len(report.checks), len(report.failures)
    )
    return report


@dataclass
class ScanFilters:
    """
    Restrict a scan to numbers of primes in t_values (all when empty) and to
    fundamental units of norm unit_norm (both signs when None)
    """
    t_values: Tuple[int, ...] = ()
    unit_norm: Optional[int] = None


@dataclass
class ScanSummary:
    """
    Aggregate counts over the reports of a scan
    """
    m_min: int
    m_max: int
    reports: int = 0
    branch_a: int = 0
    branch_b: int = 0
    failed_reports: int = 0
    failed_checks: int = 0
    errors: int = 0
    failing_m: List[int] = field(default_factory=list)

    def add(self, report):
        self.reports += 1
        if report.branch == 'a':
            self.branch_a += 1
        elif report.branch == 'b':
            self.branch_b += 1
        if report.error is not None:
            self.errors += 1
        if not report.passed:
            self.failed_reports += 1
            self.failed_checks += len(report.failures)
            self.failing_m.append(report.m)

    @property
    def passed(self):
        return self.failed_reports == 0


def valid_m_in_range(m_min, m_max, filters=None):
    """
    :return: list of the valid field parameters in [m_min, m_max] in
        ascending order, restricted by the number of primes filter
    """
    filters = filters or ScanFilters()
    found = []
    for m in range(max(m_min, 5), m_max + 1):
        if m % 4 != 1:
            continue
        f = factor(m)
        if not is_valid_m(f):
            continue
        if filters.t_values and f.t not in filters.t_values:
            continue
        found.append(m)
    return found


def _scan_one(task):
    """
    Classify one m inside a worker. Errors are turned into reports so that
    the stream continues
    :return: Report, or None when the unit norm filter excludes m
    """
    m, strictness, unit_norm, quartic, timings = task
    try:
        if unit_norm is not None and fundamental_unit(m)[1] != unit_norm:
            return None
        return classify(
            m, strictness=strictness, quartic=quartic, timings=timings
        )
    except (InvalidInputError, InconsistencyError) as exc:
        logging.error('m = %s could not be classified: %s', m, exc)
        return Report(m=m, error=f'{type(exc).__name__}: {exc}')


def scan(m_min, m_max, filters=None, strictness='both', jobs=1, seed=0,
         quartic=False, timings=False):
    """
    Classify every valid m in [m_min, m_max], yielding reports in ascending
    order of m
    :param m_min: type int: Lower bound
    :param m_max: type int: Upper bound
    :param filters: type ScanFilters
    :param strictness: type str: narrow, wide, or both
    :param jobs: type int: Number of worker processes
    :param seed: type int: Seed installed in every worker
    :param quartic: type bool: Also check the quartic field generators
    :param timings: type bool: Record elapsed times
    :return: generator of Report
    """
    if m_min > m_max:
        raise InvalidInputError(
            f'The lower bound {m_min} exceeds the upper bound {m_max}'
        )
    filters = filters or ScanFilters()
    tasks = [
        (m, strictness, filters.unit_norm, quartic, timings)
        for m in valid_m_in_range(m_min, m_max, filters)
    ]
    logging.info(
        'Scanning %s values of m in [%s, %s] with %s job(s)',
        len(tasks), m_min, m_max, jobs
    )
    if jobs == 1:
        set_seed(seed)
        results = map(_scan_one, tasks)
        for report in results:
            if report is not None:
                yield report
        return
    with ProcessPoolExecutor(
            max_workers=jobs, initializer=set_seed, initargs=(seed,)
    ) as executor:
        for report in executor.map(_scan_one, tasks, chunksize=16):
            if report is not None:
                yield report
