# pbw/models.py

import logging
from functools import lru_cache

from exactla.models import QMatrix, inverse, rank
from qscalar.conf import quantum_setting
from qscalar.exceptions import DomainError, InternalError
from qscalar.models import ONE, Q, RAT_ZERO, RatFunc, quantum_factorial
from rootsystem.models import (
    THREE_TERM, TWO_TERM, BraidMove, apply_braid_move, legal_moves, matsumoto_path,
)
from uqfull.models import UqElement, braid_T, equals_zero_generic_verma
from uqminus.models import UMinusElement, is_zero, multiply, weight_space

logger = logging.getLogger(__name__)


# ----------------------------------
# 1. Lusztig Data
# ----------------------------------

class LusztigData:
    """Exponents (a_1, ..., a_N) of a PBW monomial for a full reduced word."""

    __slots__ = ('word', 'a')

    def __init__(self, word, a):
        a = tuple(int(x) for x in a)
        if len(a) != len(word):
            raise DomainError(f"Lusztig data {a} has {len(a)} entries for a word of length {len(word)}.")
        if any(x < 0 for x in a):
            raise DomainError(f"Lusztig data {a} has a negative entry.")
        self.word = word
        self.a = a

    @property
    def diagram(self):
        return self.word.diagram

    def weight(self):
        total = [0] * self.diagram.rank
        for exp, beta in zip(self.a, self.word.betas):
            if exp:
                for idx, c in enumerate(beta.coords):
                    total[idx] += exp * c
        return tuple(total)

    def support(self):
        return [k for k, exp in enumerate(self.a) if exp]

    def __eq__(self, other):
        if not isinstance(other, LusztigData):
            return NotImplemented
        return self.word == other.word and self.a == other.a

    def __lt__(self, other):
        return self.a < other.a

    def __hash__(self):
        return hash((self.word, self.a))

    def __str__(self):
        return '(' + ','.join(str(x) for x in self.a) + ')'

    def __repr__(self):
        return f'LusztigData({self.word}; {self})'


@lru_cache(maxsize=None)
def _data_of_weight(word, nu):
    betas = [beta.coords for beta in word.betas]
    found = []

    def extend(k, rest, prefix):
        if k == len(betas):
            if not any(rest):
                found.append(tuple(prefix))
            return
        beta = betas[k]
        n = 0
        remaining = rest
        while all(x >= 0 for x in remaining):
            prefix.append(n)
            extend(k + 1, remaining, prefix)
            prefix.pop()
            n += 1
            remaining = tuple(x - c for x, c in zip(remaining, beta))

    extend(0, nu, [])
    return tuple(LusztigData(word, a) for a in sorted(found, reverse=True))


def lusztig_data_of_weight(word, nu):
    """All Lusztig data on word with weight nu, lexicographically descending."""
    word.require_full()
    return list(_data_of_weight(word, word.diagram.validate_weight(nu)))


# ----------------------------------
# 2. Root Vectors
# ----------------------------------

@lru_cache(maxsize=None)
def _suffix_root_vector(diagram, letters):
    """
    T_{l_1} ... T_{l_(r-1)} F_{l_r}. Each intermediate is the root vector of a shorter
    reduced word, so it lies in U_q^- and only its pure-F block is carried forward.
    """
    if len(letters) == 1:
        return UMinusElement.generator(diagram, letters[0])
    inner = UqElement.from_uminus(_suffix_root_vector(diagram, letters[1:]))
    image = braid_T(letters[0], inner)
    vector = image.pure_f()
    if quantum_setting('VERIFY_ROOT_VECTORS'):
        if not equals_zero_generic_verma(image - UqElement.from_uminus(vector)):
            raise InternalError(f"T-composite for {letters} in {diagram} leaves U_q^-.")
    return vector


class RootVectorTable:
    """Root vectors F_{beta_1}, ..., F_{beta_N} of a full reduced word, by position."""

    def __init__(self, word, vectors):
        self.word = word
        self.vectors = list(vectors)

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, k):
        return self.vectors[k]

    def for_root(self, root):
        k = self.word.position_of(root)
        if k is None:
            raise DomainError(f"{root} is not a root of {self.word}.")
        return self.vectors[k]


def _check_local_recursion(word, vectors):
    """
    Sanity pass on one word while the table is built: simple roots carry F_i and each
    three-term window satisfies the q-commutator recursion. The independent check that
    compares root vectors across braid moves is verify_root_vector_recursion.
    """
    diagram = word.diagram
    for k, beta in enumerate(word.betas):
        i = beta.simple_index()
        if i is not None and not is_zero(vectors[k] - UMinusElement.generator(diagram, i)):
            raise InternalError(f"Root vector {k + 1} of {word} is not F_{i}.")
    for k in range(len(word) - 2):
        if word[k] == word[k + 2] and diagram.adjacent(word[k], word[k + 1]):
            left, middle, right = vectors[k], vectors[k + 1], vectors[k + 2]
            if not is_zero(middle - (right * left - (left * right).scale(Q))):
                raise InternalError(f"Root vector {k + 2} of {word} breaks the three-term recursion.")


@lru_cache(maxsize=None)
def _root_vectors(word):
    vectors = [_suffix_root_vector(word.diagram, word.letters[:k + 1]) for k in range(len(word))]
    if quantum_setting('VERIFY_ROOT_VECTORS'):
        _check_local_recursion(word, vectors)
    logger.debug("Root vectors of %s: %s", word, [str(v) for v in vectors])
    return vectors


def root_vectors(word):
    word.require_full()
    return RootVectorTable(word, _root_vectors(word))


# ----------------------------------
# 3. PBW Monomials and Expansion
# ----------------------------------

@lru_cache(maxsize=None)
def _pbw_monomial(word, a):
    vectors = _root_vectors(word)
    result = UMinusElement.one(word.diagram)
    for vector, exp in zip(vectors, a):
        if not exp:
            continue
        power = UMinusElement.one(word.diagram)
        for _ in range(exp):
            power = multiply(power, vector)
        result = multiply(result, power.scale(RatFunc(ONE, quantum_factorial(exp))))
    return result


def pbw_monomial(d):
    """F_{beta_1}^(a_1) ... F_{beta_N}^(a_N), each divided power taken as x^n / [n]!."""
    d.word.require_full()
    return _pbw_monomial(d.word, d.a)


@lru_cache(maxsize=None)
def _expansion_system(word, nu):
    data = _data_of_weight(word, nu)
    space = weight_space(word.diagram, nu)
    if len(data) != len(space.dual_words):
        raise InternalError(
            f"{len(data)} Lusztig data of weight {nu} on {word} against dimension {len(space.dual_words)}."
        )
    if not data:
        return data, space, None
    columns = [space.coordinates(_pbw_monomial(word, d.a)) for d in data]
    try:
        solver = inverse(QMatrix.from_columns(columns, len(space.dual_words)))
    except DomainError:
        raise InternalError(f"PBW monomials of weight {nu} on {word} are linearly dependent.")
    return data, space, solver


def pbw_expand(x, word):
    """The coordinates of x in B_word, as {LusztigData: RatFunc} with zero entries left out."""
    word.require_full()
    result = {}
    for nu, part in x.components().items():
        data, space, solver = _expansion_system(word, nu)
        if solver is None:
            continue
        for d, value in zip(data, solver.apply(space.coordinates(part))):
            if value:
                result[d] = value
    return result


def pbw_element(word, coords):
    """sum c_d F^d over a {LusztigData: scalar} map."""
    result = UMinusElement.zero(word.diagram)
    for d, c in coords.items():
        result = result + pbw_monomial(d).scale(c)
    return result


# ----------------------------------
# 4. Piecewise-Linear Bijections
# ----------------------------------

def pl_bijection(move, d):
    """
    Lusztig data of the same monomial mod q on the word obtained by the move. Two-term
    moves swap exponents; three-term moves use the tropical formulas below.
    """
    move = BraidMove(*move)
    target = apply_braid_move(d.word, move)
    a = list(d.a)
    k = move.position
    if move.kind == TWO_TERM:
        a[k], a[k + 1] = a[k + 1], a[k]
    else:
        x, y, z = a[k:k + 3]
        a[k:k + 3] = [max(y, y + z - x), min(x, z), max(y, y + x - z)]
    moved = LusztigData(target, a)
    if moved.weight() != d.weight():
        raise InternalError(f"Move {move} sent {d} of weight {d.weight()} to weight {moved.weight()}.")
    return moved


def transport(d, target):
    """Composes pl_bijection along the Matsumoto path from d.word to target."""
    for move in matsumoto_path(d.word, target):
        d = pl_bijection(move, d)
    return d


def _change_of_basis(source, target, nu):
    """{(d_source, d_target): coeff} expressing each B_source monomial in B_target."""
    entries = {}
    for d in _data_of_weight(source, nu):
        for e, c in pbw_expand(pbw_monomial(d), target).items():
            entries[(d, e)] = c
    return entries


class LatticeReport:

    def __init__(self, word, move, nu):
        self.word = word
        self.move = BraidMove(*move)
        self.nu = nu
        self.in_lattice = True
        self.permutation_ok = True
        self.problems = []

    @property
    def passed(self):
        return self.in_lattice and self.permutation_ok

    def fail(self, kind, message):
        setattr(self, kind, False)
        self.problems.append(message)


def verify_lattice_move(word, move, nu):
    """
    Expands B_w' in B_w and back for the word w' obtained by the move: every coefficient
    must lie in Z[q], and mod q each monomial must reduce to the one given by pl_bijection.
    """
    word.require_full()
    nu = word.diagram.validate_weight(nu)
    report = LatticeReport(word, move, nu)
    other = apply_braid_move(word, report.move)
    for source, target in ((other, word), (word, other)):
        entries = _change_of_basis(source, target, nu)
        for (d, e), c in entries.items():
            if not (c.is_laurent() and c.num.is_polynomial()):
                report.fail('in_lattice', f"{d} on {source} has coefficient {c} at {e} on {target}.")
        for d in _data_of_weight(source, nu):
            expected = pl_bijection(report.move, d)
            for e in _data_of_weight(target, nu):
                c = entries.get((d, e), RAT_ZERO)
                if not c.regular_at_zero():
                    continue
                value = c.value_at_zero()
                if value != (1 if e == expected else 0):
                    report.fail('permutation_ok',
                                f"{d} on {source} reduces to {value} times {e} mod q; expected {expected}.")
    logger.debug("Lattice check %s at %s on %s: %s", report.move, nu, word, report.passed)
    return report


# ----------------------------------
# 5. Structural Checks
# ----------------------------------

def verify_root_vector_recursion(word):
    """
    Failures of the root-vector identities under every legal braid move of word: the
    vectors of both words are built independently by the T-composite and compared root
    by root, with the middle root of a three-term move given by the q-commutator.
    """
    table = root_vectors(word)
    failures = []
    for move in legal_moves(word):
        other = root_vectors(apply_braid_move(word, move))
        k = move.position
        skip = set()
        if move.kind == THREE_TERM:
            left, middle, right = table[k], table[k + 1], table[k + 2]
            if not is_zero(middle - (right * left - (left * right).scale(Q))):
                failures.append(f"{word}: three-term recursion fails at {k}")
            skip.add(word.betas[k + 1])
        for beta, vector in zip(word.betas, table.vectors):
            if beta in skip:
                continue
            if not is_zero(vector - other.for_root(beta)):
                failures.append(f"{word}: root vector for {beta} changes under {move}")
    for k, beta in enumerate(word.betas):
        i = beta.simple_index()
        if i is not None and not is_zero(table[k] - UMinusElement.generator(word.diagram, i)):
            failures.append(f"{word}: root vector {k} for simple {beta} is not F_{i}")
    return failures


def verify_convex_support(word, j, k):
    """
    Data in the PBW expansion of F_{beta_k} F_{beta_j} (j < k) whose support leaves
    positions j..k; empty when convexity holds.
    """
    if not j < k:
        raise DomainError(f"Convexity needs j < k, got {j} and {k}.")
    table = root_vectors(word)
    product = multiply(table[k], table[j])
    return [d for d in pbw_expand(product, word) if any(p < j or p > k for p in d.support())]


def verify_compspan(word, move, nu):
    """
    For every root beta whose vector survives the move and nu = n beta, the span of the
    monomials other than F_beta^(n) agrees on both words. Returns the failing roots.
    """
    word.require_full()
    move = BraidMove(*move)
    other = apply_braid_move(word, move)
    nu = word.diagram.validate_weight(nu)
    space = weight_space(word.diagram, nu)
    fixed = [beta for p, beta in enumerate(word.betas)
             if not (move.kind == THREE_TERM and p == move.position + 1)]
    failures = []
    for beta in fixed:
        n = _multiple_of(nu, beta.coords)
        if not n:
            continue
        columns = []
        for w in (word, other):
            excluded = LusztigData(w, [n if b == beta else 0 for b in w.betas])
            columns.extend(space.coordinates(pbw_monomial(d))
                           for d in _data_of_weight(w, nu) if d != excluded)
        if not columns:
            continue
        combined = rank(QMatrix.from_columns(columns, len(space.dual_words)))
        if combined != space.dimension - 1:
            failures.append(beta)
    return failures


def _multiple_of(nu, coords):
    """n with nu = n * coords, or 0."""
    ratios = {a // c for a, c in zip(nu, coords) if c}
    if len(ratios) != 1:
        return 0
    n = ratios.pop()
    return n if n > 0 and all(a == n * c for a, c in zip(nu, coords)) else 0


def verify_is_a_basis(word, nu):
    """The PBW monomials of weight nu are as many as Kostant's count and independent."""
    word.require_full()
    nu = word.diagram.validate_weight(nu)
    data = _data_of_weight(word, nu)
    space = weight_space(word.diagram, nu)
    if len(data) != space.dimension:
        return False
    if not data:
        return True
    columns = [space.coordinates(pbw_monomial(d)) for d in data]
    return rank(QMatrix.from_columns(columns, len(space.dual_words))) == space.dimension
