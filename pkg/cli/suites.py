# cli/suites.py

import logging
import random
from typing import NamedTuple

from qscalar.exceptions import DomainError
from rootsystem.models import legal_moves, reduced_words, weights_of_height
from uqfull.models import (
    UqElement, braid_T, braid_T_inv, braid_relation_failures, defining_relations,
    equals_zero_generic_verma, verify_commutator_in_k_block, verify_rest_of_triangular,
)
from pbw.models import (
    lusztig_data_of_weight, root_vectors, verify_compspan, verify_convex_support,
    verify_is_a_basis, verify_lattice_move, verify_root_vector_recursion,
)
from canonical.models import (
    ORIENTATIONS, canonical_basis, positivity_spot_check, verify_minimal_elements,
    verify_unit_triangularity, verify_word_independence,
)
from crystal.models import (
    HighestWeight, crystal_graph, descent_report, freudenthal_multiplicities, kostant_counts,
    partial_inverse_problems, verify_kashiwara_agreement, worked_instance_report,
)
from .signals import property_checked

logger = logging.getLogger(__name__)

SUITES = {}


def suite(name):
    def register(func):
        SUITES[name] = func
        return func
    return register


class CheckResult(NamedTuple):
    suite: str
    name: str
    passed: bool
    detail: str


def _joined(detail):
    return detail if isinstance(detail, str) else '; '.join(str(x) for x in detail)


class SuiteRun:
    """Collects check results; informational notes never count as failures."""

    def __init__(self, config):
        self.config = config
        self.rng = random.Random(config.seed)
        self.results = []
        self.notes = []
        self.current = None

    def check(self, name, passed, detail=''):
        passed = bool(passed)
        detail = _joined(detail)
        self.results.append(CheckResult(self.current, name, passed, detail))
        property_checked.send(sender=self.__class__, suite=self.current, name=name, passed=passed, detail=detail)

    def note(self, name, detail):
        detail = _joined(detail)
        self.notes.append({'suite': self.current, 'name': name, 'detail': detail})
        logger.info("[%s] %s: %s", self.current, name, detail)

    def weights(self, top=None, low=0):
        top = self.config.sweep_height if top is None else top
        for h in range(low, top + 1):
            yield from weights_of_height(self.config.diagram, h)

    @property
    def failed(self):
        return [r for r in self.results if not r.passed]


def run_suites(config, name):
    if name == 'all':
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise DomainError(f"Unknown suite '{name}', expected one of {sorted(SUITES) + ['all']}.")
    run = SuiteRun(config)
    for current in names:
        run.current = current
        logger.info("Running suite %s on %s.", current, config.word)
        SUITES[current](run)
    return run


# ----------------------------------
# 1. The Full Algebra
# ----------------------------------

@suite('relations')
def relations_suite(run):
    for name, relation in defining_relations(run.config.diagram).items():
        run.check(name, equals_zero_generic_verma(relation))


@suite('braid-relations')
def braid_relations_suite(run):
    diagram = run.config.diagram
    for i in diagram.nodes:
        for j in diagram.nodes:
            if i < j:
                failures = braid_relation_failures(diagram, i, j)
                run.check(f'T{i}, T{j}', not failures, failures)
        for k in diagram.nodes:
            for gen in (UqElement.F(diagram, k), UqElement.E(diagram, k)):
                run.check(f'T{i} T{i}^-1 on {gen}', braid_T(i, braid_T_inv(i, gen)).equals(gen))


# ----------------------------------
# 2. Root Vectors and PBW Bases
# ----------------------------------

@suite('root-vectors')
def root_vectors_suite(run):
    word = run.config.word
    table = root_vectors(word)
    failures = verify_root_vector_recursion(word)
    run.check('recursion under braid moves', not failures, failures)
    for k, beta in enumerate(word.betas):
        run.check(f'weight of vector {k + 1}', table[k].weight() == beta.coords)
    n = len(word)
    for j in range(n):
        for k in range(j + 1, n):
            outside = verify_convex_support(word, j, k)
            run.check(f'convex support {j + 1},{k + 1}', not outside, outside)
    for j, beta in enumerate(word.betas):
        i = beta.simple_index()
        if i is None:
            continue
        for k in range(j + 1, n):
            run.check(f'E{i} commutator with vector {k + 1}', verify_commutator_in_k_block(i, table[k]))
    for k in range(n):
        for j in range(k + 1, n + 1):
            run.check(f'vector {k + 1} under inverse prefix {j}',
                      verify_rest_of_triangular(word.letters[:j], table[k]))


@suite('is-a-basis')
def is_a_basis_suite(run):
    for nu in run.weights():
        run.check(f'basis of weight {nu}', verify_is_a_basis(run.config.word, nu))


@suite('lattice')
def lattice_suite(run):
    word = run.config.word
    for move in legal_moves(word):
        for nu in run.weights(low=1):
            report = verify_lattice_move(word, move, nu)
            run.check(f'move {move} at {nu}', report.passed, report.problems)
        for beta in word.betas:
            failures = verify_compspan(word, move, beta.coords)
            run.check(f'span without F_{beta.label()} under {move}', not failures, failures)


# ----------------------------------
# 3. Canonical Basis
# ----------------------------------

@suite('thm-ut')
def unit_triangularity_suite(run):
    word = run.config.word
    for orientation in ORIENTATIONS:
        decisive = orientation == run.config.orientation
        for nu in run.weights():
            failures = verify_unit_triangularity(word, nu, orientation)
            detail = [f'{d}: {problems}' for d, problems in failures.items()]
            if decisive:
                run.check(f'unit triangular at {nu} ({orientation})', not failures, detail)
                run.check(f'minimal elements at {nu}', verify_minimal_elements(word, nu, orientation))
            elif failures:
                run.note(f'unit triangular at {nu} ({orientation})', f'{len(failures)} data fail: {detail}')


@suite('canonical')
def canonical_suite(run):
    word = run.config.word
    for nu in run.weights():
        basis = canonical_basis(word, nu)
        run.check(f'bar invariance at {nu}', all(b.is_bar_invariant() for b in basis))
        run.check(f'congruence mod q at {nu}', all(b.reduces_to_monomial() for b in basis))
        reordered = canonical_basis(word, nu, tie_break=lambda d: tuple(-x for x in d.a))
        run.check(f'uniqueness at {nu}',
                  {b.data: b.coords for b in reordered} == {b.data: b.coords for b in basis})


@suite('word-independence')
def word_independence_suite(run):
    word = run.config.word
    for other in reduced_words(run.config.diagram):
        if other == word:
            continue
        for nu in run.weights(low=1):
            report = verify_word_independence(word, other, nu)
            run.check(f'{other} at {nu}', report.passed, report.unmatched + report.transport_mismatches)


@suite('positivity')
def positivity_suite(run):
    """Records notes only: non-positive coefficients never fail the run."""
    weights = list(run.weights(top=max(1, run.config.sweep_height // 2), low=1))
    pairs = [(a, b) for a in weights for b in weights]
    run.rng.shuffle(pairs)
    for nu1, nu2 in pairs[:6]:
        issues = positivity_spot_check(run.config.word, nu1, nu2)
        if issues:
            run.note(f'products {nu1} x {nu2}', [f'{len(issues)} coefficients outside N[q, q^-1]'] + issues)
        else:
            run.note(f'products {nu1} x {nu2}', 'all coefficients in N[q, q^-1]')


# ----------------------------------
# 4. Crystal and Descent
# ----------------------------------

@suite('crystal')
def crystal_suite(run):
    word = run.config.word
    top = run.config.sweep_height
    graph = crystal_graph(word, top)
    run.check(f'vertices per depth to {top}', graph.counts_per_depth() == kostant_counts(word.diagram, top),
              f'{graph.counts_per_depth()}')
    for nu in run.weights(top=top - 1):
        problems = partial_inverse_problems(word, nu)
        run.check(f'partial inverse at {nu}', not problems, problems)
        for d in lusztig_data_of_weight(word, nu):
            for i in word.diagram.nodes:
                report = verify_kashiwara_agreement(i, d)
                run.check(f'f{i} on {d} mod q', report.passed, report.problems)
    worked = worked_instance_report()
    run.check('worked A3 instance', worked['first_maps_to_second'], str(worked['candidates']))


def _descent_weights(diagram):
    candidates = []
    for i in diagram.nodes:
        candidates.append(tuple(1 if j == i else 0 for j in diagram.nodes))
        candidates.append(tuple(2 if j == i else 0 for j in diagram.nodes))
    if diagram.rank > 1:
        candidates.append(tuple(1 if j in (1, diagram.rank) else 0 for j in diagram.nodes))
    return [HighestWeight(diagram, c) for c in candidates]


@suite('descent')
def descent_suite(run):
    for lam in _descent_weights(run.config.diagram):
        depth = max(sum(nu) for nu in freudenthal_multiplicities(lam)) + 1
        if depth > run.config.sweep_height:
            run.note(f'V_{lam}', f'skipped: needs height {depth}')
            continue
        report = descent_report(lam, run.config.word)
        run.check(f'descent to V_{lam}', report.passed,
                  f'{report.total} survivors, dimension {report.dimension}; {report.mechanism_problems}')
