# crystal/models.py

import logging
from collections import deque
from typing import NamedTuple

from qscalar.conf import quantum_setting
from qscalar.exceptions import DomainError, InternalError
from rootsystem.models import (
    DynkinDiagram, ReducedWord, first_letter_words, kostant_partition, last_letter_words,
    weights_of_height,
)
from pbw.models import LusztigData, lusztig_data_of_weight, pbw_expand, pbw_monomial, transport
from canonical.models import canonical_basis
from uqminus.models import (
    UMinusElement, check_height, is_zero, kashiwara_ftilde, multiply, weight_space,
)

logger = logging.getLogger(__name__)


def reference_word(diagram):
    """The configured reference word of a diagram, or the first-letter word of node 1."""
    if isinstance(diagram, str):
        diagram = DynkinDiagram.of(diagram)
    text = quantum_setting('REFERENCE_WORDS').get(diagram.cartan_type)
    if text is None:
        return first_letter_words(diagram, diagram.nodes[0])
    return ReducedWord.parse(diagram, text).require_full()


# ----------------------------------
# 1. Crystal Operators on Lusztig Data
# ----------------------------------

def _step_first_exponent(i, d, step):
    """
    Moves d to a word starting with i, adds step to the first exponent and moves back.
    Returns None when the first exponent would become negative.
    """
    d.diagram.validate_node(i)
    if d.word.letters[0] == i:
        start = d
    else:
        start = transport(d, first_letter_words(d.diagram, i))
    a = list(start.a)
    a[0] += step
    if a[0] < 0:
        return None
    return transport(LusztigData(start.word, a), d.word)


def crystal_f(i, d):
    target = tuple(c + (1 if j == i else 0) for j, c in zip(d.diagram.nodes, d.weight()))
    check_height(d.diagram, target)
    return _step_first_exponent(i, d, 1)


def crystal_e(i, d):
    """Partial inverse of crystal_f: None when no datum maps to d."""
    check_height(d.diagram, d.weight())
    return _step_first_exponent(i, d, -1)


class AgreementReport:

    def __init__(self, i, data, image):
        self.i = i
        self.data = data
        self.image = image
        self.problems = []

    @property
    def passed(self):
        return not self.problems


def verify_kashiwara_agreement(i, d):
    """F~_i(F^d) - F^{f_i d} must have PBW coordinates that vanish at q = 0."""
    image = crystal_f(i, d)
    report = AgreementReport(i, d, image)
    difference = kashiwara_ftilde(i, pbw_monomial(d)) - pbw_monomial(image)
    for e, c in pbw_expand(difference, d.word).items():
        if not c.regular_at_zero():
            report.problems.append(f"coefficient {c} at {e} has a pole at q = 0")
        elif c.value_at_zero() != 0:
            report.problems.append(f"coefficient {c} at {e} is {c.value_at_zero()} at q = 0")
    if report.problems:
        logger.warning("f_%s disagrees with Kashiwara's operator on %s: %s", i, d, report.problems)
    return report


def partial_inverse_problems(word, nu):
    """Checks e_i(f_i d) = d and injectivity of f_i on the data of weight nu."""
    problems = []
    data = lusztig_data_of_weight(word, nu)
    for i in word.diagram.nodes:
        images = {}
        for d in data:
            image = crystal_f(i, d)
            back = crystal_e(i, image)
            if back != d:
                problems.append(f"e_{i}(f_{i}({d})) = {back}")
            if image in images:
                problems.append(f"f_{i} sends {images[image]} and {d} to {image}")
            images[image] = d
    return problems


# ----------------------------------
# 2. The Crystal Graph
# ----------------------------------

class CrystalVertex(NamedTuple):
    data: LusztigData
    depth: int


class CrystalGraph:
    """Vertices in breadth-first order; edges (source, i, target) labelled by the node i."""

    def __init__(self, word, depth):
        self.word = word
        self.depth = depth
        self.vertices = []
        self.edges = []
        self._index = {}

    def add_vertex(self, d, depth):
        if d not in self._index:
            self._index[d] = len(self.vertices)
            self.vertices.append(CrystalVertex(d, depth))
        return self._index[d]

    def index_of(self, d):
        return self._index[d]

    def counts_per_depth(self):
        counts = [0] * (self.depth + 1)
        for vertex in self.vertices:
            counts[vertex.depth] += 1
        return counts

    def to_dot(self):
        lines = [f'digraph crystal_{self.word.diagram.cartan_type} {{']
        lines.append(f'  // word {self.word}, depth {self.depth}')
        for k, vertex in enumerate(self.vertices):
            lines.append(f'  v{k} [label="{vertex.data}", depth={vertex.depth}];')
        for source, i, target in self.edges:
            lines.append(f'  v{source} -> v{target} [label="{i}"];')
        lines.append('}')
        return '\n'.join(lines) + '\n'


def crystal_graph(word, depth):
    """Breadth-first closure of the zero datum under every crystal_f, down to the given depth."""
    word.require_full()
    bound = quantum_setting('HEIGHT_BOUND')
    if depth < 0 or depth > bound:
        raise DomainError(f"Depth {depth} must lie between 0 and the height bound {bound}.")
    graph = CrystalGraph(word, depth)
    root = LusztigData(word, (0,) * len(word))
    graph.add_vertex(root, 0)
    queue = deque([CrystalVertex(root, 0)])
    while queue:
        vertex = queue.popleft()
        if vertex.depth == depth:
            continue
        source = graph.index_of(vertex.data)
        for i in word.diagram.nodes:
            image = crystal_f(i, vertex.data)
            known = image in graph._index
            target = graph.add_vertex(image, vertex.depth + 1)
            graph.edges.append((source, i, target))
            if not known:
                queue.append(CrystalVertex(image, vertex.depth + 1))
    logger.info("Crystal graph of %s to depth %d: %d vertices, %d edges.",
                word, depth, len(graph.vertices), len(graph.edges))
    return graph


def kostant_counts(diagram, depth):
    """Expected vertex count per depth: Kostant numbers summed over each height."""
    return [sum(kostant_partition(diagram, nu) for nu in weights_of_height(diagram, h))
            for h in range(depth + 1)]


# ----------------------------------
# 3. Descent to Irreducible Modules
# ----------------------------------

class HighestWeight:
    """lambda = sum c_i omega_i with every c_i >= 0."""

    def __init__(self, diagram, c):
        c = tuple(int(x) for x in c)
        if len(c) != diagram.rank or any(x < 0 for x in c):
            raise DomainError(
                f"A dominant weight of {diagram.cartan_type} needs {diagram.rank} nonnegative coefficients, got {c}."
            )
        self.diagram = diagram
        self.c = c

    @classmethod
    def parse(cls, diagram, text):
        try:
            return cls(diagram, [int(part) for part in str(text).split(',')])
        except ValueError:
            raise DomainError(f"'{text}' is not a comma-separated list of integers.")

    def pairing(self, nu):
        """(lambda, nu) for nu in root coordinates."""
        return sum(c * x for c, x in zip(self.c, nu))

    def __eq__(self, other):
        return isinstance(other, HighestWeight) and (self.diagram, self.c) == (other.diagram, other.c)

    def __hash__(self):
        return hash((self.diagram, self.c))

    def __str__(self):
        terms = [f'{c}w{i}' if c != 1 else f'w{i}' for i, c in zip(self.diagram.nodes, self.c) if c]
        return ' + '.join(terms) or '0'


def _in_left_ideal(x, i, n):
    """True when the homogeneous x lies in U^- F_i^n."""
    diagram = x.diagram
    nu = x.weight()
    if nu[i - 1] < n:
        return False
    mu = tuple(c - (n if j == i else 0) for j, c in zip(diagram.nodes, nu))
    power = UMinusElement.word(diagram, (i,) * n)
    spanning = [multiply(y, power) for y in weight_space(diagram, mu).basis()]
    return weight_space(diagram, nu).solve(spanning, x) is not None


def ideal_membership(b, lam):
    """Whether b lies in I_lambda, the sum of the left ideals U^- F_i^(c_i + 1)."""
    x = b.element
    if is_zero(x):
        return True
    diagram = x.diagram
    nu = x.weight()
    spanning = []
    for i, c in zip(diagram.nodes, lam.c):
        if nu[i - 1] <= c:
            continue
        mu = tuple(v - (c + 1 if j == i else 0) for j, v in zip(diagram.nodes, nu))
        power = UMinusElement.word(diagram, (i,) * (c + 1))
        spanning.extend(multiply(y, power) for y in weight_space(diagram, mu).basis())
    if not spanning:
        return False
    return weight_space(diagram, nu).solve(spanning, x) is not None


def weyl_dimension(lam):
    """Product over positive roots beta of (lambda + rho, beta) / (rho, beta)."""
    numerator, denominator = 1, 1
    for beta in lam.diagram.positive_roots:
        numerator *= lam.pairing(beta.coords) + beta.height
        denominator *= beta.height
    dimension, rest = divmod(numerator, denominator)
    if rest:
        raise InternalError(f"Weyl's formula gave a non-integer dimension for {lam}.")
    return dimension


def freudenthal_multiplicities(lam):
    """
    {nu: multiplicity of lambda - nu in V_lambda} by Freudenthal's recursion, one height
    at a time until a height carries no weight.
    """
    diagram = lam.diagram
    roots = [beta.coords for beta in diagram.positive_roots]
    multiplicities = {diagram.zero_weight(): 1}
    h = 0
    while True:
        h += 1
        level = {}
        for nu in weights_of_height(diagram, h):
            gap = 2 * lam.pairing(nu) + 2 * sum(nu) - diagram.pairing(nu, nu)
            total = 0
            for beta in roots:
                k = 1
                while True:
                    lower = tuple(a - k * b for a, b in zip(nu, beta))
                    if any(x < 0 for x in lower):
                        break
                    m = multiplicities.get(lower)
                    if m:
                        total += (lam.pairing(beta) - diagram.pairing(nu, beta) + 2 * k) * m
                    k += 1
            total *= 2
            if not gap:
                if total:
                    raise InternalError(f"Freudenthal's recursion is singular at {nu} for {lam}.")
                continue
            m, rest = divmod(total, gap)
            if rest:
                raise InternalError(f"Freudenthal's recursion gave a non-integer multiplicity at {nu} for {lam}.")
            if m:
                level[nu] = m
        if not level:
            return multiplicities
        multiplicities.update(level)


def adapted_spanning_problems(diagram, i, n, nu):
    """
    On a word ending in sigma(i) the last root is alpha_i; the canonical elements of
    weight nu lying in U^- F_i^n must be exactly those with last exponent >= n, and
    they must be as many as the dimension of U^- F_i^n in that weight.
    """
    word = last_letter_words(diagram, i)
    problems = []
    members = 0
    for b in canonical_basis(word, nu):
        inside = _in_left_ideal(b.element, i, n)
        if inside != (b.data.a[-1] >= n):
            problems.append(f"b{b.data} on {word}: membership in U^-F_{i}^{n} is {inside}")
        members += inside
    rest = tuple(c - (n if j == i else 0) for j, c in zip(diagram.nodes, nu))
    expected = kostant_partition(diagram, rest) if min(rest) >= 0 else 0
    if members != expected:
        problems.append(f"{members} canonical elements of weight {nu} lie in U^-F_{i}^{n}, expected {expected}")
    return problems


class DescentRow(NamedTuple):
    nu: tuple
    survivors: int
    multiplicity: int


class DescentReport:

    def __init__(self, lam, word):
        self.lam = lam
        self.word = word
        self.dimension = weyl_dimension(lam)
        self.rows = []
        self.mechanism_problems = []

    @property
    def total(self):
        return sum(row.survivors for row in self.rows)

    @property
    def passed(self):
        return (self.total == self.dimension and not self.mechanism_problems
                and all(row.survivors == row.multiplicity for row in self.rows))

    @property
    def nonzero_rows(self):
        return [row for row in self.rows if row.survivors or row.multiplicity]

    def csv_rows(self):
        rows = [['weight', 'survivors', 'multiplicity']]
        for row in self.nonzero_rows:
            rows.append([','.join(str(x) for x in row.nu), row.survivors, row.multiplicity])
        return rows


def descent_report(lam, word=None):
    """
    Counts the canonical elements outside I_lambda per weight and compares them with
    Freudenthal's multiplicities and Weyl's dimension. Weights one height past the
    lowest weight are included so that stray survivors show up.
    """
    word = word or reference_word(lam.diagram)
    multiplicities = freudenthal_multiplicities(lam)
    depth = max(sum(nu) for nu in multiplicities) + 1
    bound = quantum_setting('HEIGHT_BOUND')
    if depth > bound:
        raise DomainError(f"V_{lam} needs weights of height {depth}, above the bound {bound}.")
    report = DescentReport(lam, word)
    for h in range(depth + 1):
        for nu in weights_of_height(lam.diagram, h):
            survivors = sum(1 for b in canonical_basis(word, nu) if not ideal_membership(b, lam))
            report.rows.append(DescentRow(nu, survivors, multiplicities.get(nu, 0)))
            for i, c in zip(lam.diagram.nodes, lam.c):
                if nu[i - 1] > c:
                    report.mechanism_problems.extend(adapted_spanning_problems(lam.diagram, i, c + 1, nu))
    logger.info("Descent to V_%s: %d survivors, dimension %d.", lam, report.total, report.dimension)
    return report


# ----------------------------------
# 4. The Worked A3 Instance
# ----------------------------------

WORKED_WORD = (1, 2, 3, 1, 2, 1)
WORKED_NODE = 3
WORKED_READINGS = (
    ('first', (2, 3, 1, 3, 3, 2)),
    ('second', (2, 3, 1, 2, 4, 2)),
)


def worked_instance_report():
    """
    Recomputes f_3 on both readings of the worked A3 instance. The combinatorial
    operator alone is used: these data sit far above any height where the algebraic
    side can be checked.
    """
    word = ReducedWord(DynkinDiagram.of('A3'), WORKED_WORD)
    images = {}
    candidates = []
    for name, a in WORKED_READINGS:
        d = LusztigData(word, a)
        image = _step_first_exponent(WORKED_NODE, d, 1)
        images[name] = image.a
        candidates.append({
            'reading': name,
            'input': list(d.a),
            'output': list(image.a),
            'changed_positions': [k + 1 for k in range(len(a)) if a[k] != image.a[k]],
        })
    first, second = (a for _, a in WORKED_READINGS)
    return {
        'word': list(WORKED_WORD),
        'i': WORKED_NODE,
        'candidates': candidates,
        'first_maps_to_second': images['first'] == second,
        'second_maps_to_first': images['second'] == first,
    }
