# uqminus/models.py

import logging
from functools import lru_cache

from exactla.models import QMatrix, independent_columns, kernel_basis, rank_profile_at, solve
from qscalar.conf import quantum_setting
from qscalar.exceptions import DomainError, InternalError
from qscalar.models import (
    ONE, Q_MINUS_QINV, RAT_ONE, RAT_ZERO, ZERO, RatFunc, quantum_factorial,
)
from rootsystem.models import kostant_partition

logger = logging.getLogger(__name__)

# Specialisation point used to pick dual words quickly; exact elimination is the fallback.
SPECIALIZATION_POINT = 3


# ----------------------------------
# 1. Words
# ----------------------------------

def word_weight(diagram, word):
    """Root coordinates of the (negated) weight of F_word."""
    counts = [0] * diagram.rank
    for i in word:
        counts[i - 1] += 1
    return tuple(counts)


def format_word(word, letter='F'):
    return ''.join(f'{letter}{i}' for i in word) or '1'


@lru_cache(maxsize=None)
def words_of_weight(diagram, nu):
    """Every word of weight nu, in lexicographic order."""
    counts = list(nu)
    total = sum(counts)
    words = []
    prefix = []

    def extend():
        if len(prefix) == total:
            words.append(tuple(prefix))
            return
        for idx, c in enumerate(counts):
            if c:
                counts[idx] -= 1
                prefix.append(idx + 1)
                extend()
                prefix.pop()
                counts[idx] += 1

    extend()
    return tuple(words)


def check_height(diagram, nu):
    bound = quantum_setting('HEIGHT_BOUND')
    if sum(nu) > bound:
        raise DomainError(f"Weight {tuple(nu)} has height {sum(nu)} above the bound {bound}.")


# ----------------------------------
# 2. Elements of U_q^-
# ----------------------------------

def _format_coeff(coeff):
    if coeff.is_laurent():
        poly = coeff.num
        if poly.is_one():
            return ''
        if poly == -1:
            return '-'
        if poly.is_monomial():
            return str(poly)
        return f'({poly})'
    return f'({coeff})'


class UMinusElement:
    """
    A finite combination sum c_w F_w of words in the generators F_i, with RatFunc
    coefficients. Equality (==) compares the stored term maps; two elements are
    equal in U_q^- exactly when is_zero(x - y), which is what equals() checks.
    """

    __slots__ = ('diagram', 'terms')

    def __init__(self, diagram, terms=None):
        self.diagram = diagram
        clean = {}
        for word, coeff in (terms or {}).items():
            coeff = RatFunc.coerce(coeff)
            if coeff:
                clean[tuple(word)] = coeff
        self.terms = clean

    @classmethod
    def _trusted(cls, diagram, terms):
        obj = cls.__new__(cls)
        obj.diagram = diagram
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, diagram):
        return cls._trusted(diagram, {(): RAT_ONE})

    @classmethod
    def zero(cls, diagram):
        return cls._trusted(diagram, {})

    @classmethod
    def generator(cls, diagram, i):
        diagram.validate_node(i)
        return cls._trusted(diagram, {(i,): RAT_ONE})

    @classmethod
    def word(cls, diagram, letters, coeff=1):
        letters = tuple(diagram.validate_node(i) for i in letters)
        return cls(diagram, {letters: coeff})

    # --- Inspection ---

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def components(self):
        """Homogeneous components keyed by weight."""
        parts = {}
        for word, coeff in self.terms.items():
            parts.setdefault(word_weight(self.diagram, word), {})[word] = coeff
        return {nu: UMinusElement._trusted(self.diagram, terms) for nu, terms in parts.items()}

    def weight(self):
        """The weight of a homogeneous element (the zero element has weight 0)."""
        weights = {word_weight(self.diagram, word) for word in self.terms}
        if len(weights) > 1:
            raise DomainError(f"{self} is not homogeneous.")
        return weights.pop() if weights else self.diagram.zero_weight()

    # --- Arithmetic ---

    def _combine(self, other, sign):
        if not isinstance(other, UMinusElement):
            return NotImplemented
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            total = terms.get(word, RAT_ZERO) + (coeff if sign > 0 else -coeff)
            if total:
                terms[word] = total
            else:
                terms.pop(word, None)
        return UMinusElement._trusted(self.diagram, terms)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return UMinusElement._trusted(self.diagram, {w: -c for w, c in self.terms.items()})

    def scale(self, scalar):
        scalar = RatFunc.coerce(scalar)
        if not scalar:
            return UMinusElement.zero(self.diagram)
        return UMinusElement._trusted(self.diagram, {w: c * scalar for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UMinusElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def bar(self):
        return bar(self)

    def equals(self, other):
        return is_zero(self - other)

    def __eq__(self, other):
        if not isinstance(other, UMinusElement):
            return NotImplemented
        return self.diagram == other.diagram and self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return '0'
        text = ''
        for word, coeff in sorted(self.terms.items(), reverse=True):
            prefix = _format_coeff(coeff)
            body = format_word(word)
            if word == () and prefix in ('', '-'):
                term = prefix + '1'
            elif word == ():
                term = prefix
            else:
                term = prefix + body
            if not text:
                text = term
            elif term.startswith('-'):
                text += ' - ' + term[1:]
            else:
                text += ' + ' + term
        return text

    def __repr__(self):
        return f'UMinusElement({self})'


def multiply(x, y):
    """Concatenation product, bilinear over Q(q)."""
    terms = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            word = u + v
            total = terms.get(word, RAT_ZERO) + cu * cv
            if total:
                terms[word] = total
            else:
                terms.pop(word, None)
    return UMinusElement._trusted(x.diagram, terms)


def divided_power(diagram, i, n):
    """F_i^(n) = F_i^n / [n]!."""
    if n < 0:
        raise DomainError(f"Divided powers need n >= 0, got {n}.")
    diagram.validate_node(i)
    return UMinusElement._trusted(diagram, {(i,) * n: RatFunc(ONE, quantum_factorial(n))})


def bar(x):
    """Coefficient-wise q -> q^-1; every word is bar-fixed."""
    return UMinusElement._trusted(x.diagram, {w: c.bar() for w, c in x.terms.items()})


# ----------------------------------
# 3. The Operators e'_i
# ----------------------------------

def _tail_exponent(diagram, i, tail):
    return sum(diagram.cartan_entry(i, j) for j in tail)


def eprime(i, x):
    """
    The K_i^-1 component P of E_i X = P K_i^-1 + Q K_i + X E_i. On a word,
    e'_i(F_u) = sum over positions k with u_k = i of
    -q^(alpha_i, wt of the letters after k) / (q - q^-1) F_(u without k).
    """
    diagram = x.diagram
    diagram.validate_node(i)
    unit = RatFunc(-1, Q_MINUS_QINV)
    terms = {}
    for word, coeff in x.terms.items():
        for k, letter in enumerate(word):
            if letter != i:
                continue
            rest = word[:k] + word[k + 1:]
            exp = _tail_exponent(diagram, i, word[k + 1:])
            value = coeff * unit * RatFunc._trusted(ONE.shift(exp))
            total = terms.get(rest, RAT_ZERO) + value
            if total:
                terms[rest] = total
            else:
                terms.pop(rest, None)
    return UMinusElement._trusted(diagram, terms)


@lru_cache(maxsize=None)
def _word_pairing(diagram, u):
    """
    Integer form of the iterated e' coordinates of one word: for w = (j_1..j_h) the value
    is (-(q - q^-1))^h e'_{j_1} ... e'_{j_h}(F_u). The innermost operator removes j_h.
    """
    if not u:
        return {(): ONE}
    result = {}
    for k, i in enumerate(u):
        exp = _tail_exponent(diagram, i, u[k + 1:])
        for w, value in _word_pairing(diagram, u[:k] + u[k + 1:]).items():
            key = w + (i,)
            result[key] = result.get(key, ZERO) + value.shift(exp)
    return {w: v for w, v in result.items() if v}


def _scaled_coordinates(x):
    """sum_u c_u * _word_pairing(u), over all words that occur."""
    coords = {}
    for u, coeff in x.terms.items():
        for w, value in _word_pairing(x.diagram, u).items():
            coords[w] = coords.get(w, RAT_ZERO) + coeff * value
    return coords


def is_zero(x):
    """
    True iff x = 0 in U_q^-: on each homogeneous component of height h every
    composite e'_{j_1} ... e'_{j_h} vanishes.
    """
    for nu, part in x.components().items():
        check_height(x.diagram, nu)
        if any(v for v in _scaled_coordinates(part).values()):
            return False
    return True


def phi_coordinates(x):
    """Map from every word w of the weight of x to e'_{j_1} ... e'_{j_h}(x)."""
    nu = x.weight()
    check_height(x.diagram, nu)
    scaled = _scaled_coordinates(x)
    h = sum(nu)
    factor = RatFunc(ONE, (-Q_MINUS_QINV) ** h) if h else RAT_ONE
    return {w: scaled.get(w, RAT_ZERO) * factor for w in words_of_weight(x.diagram, nu)}


# ----------------------------------
# 4. Weight Spaces
# ----------------------------------

class WeightSpace:
    """
    U_q^- in weight -nu: its words, a basis of words, and a set of dual words on
    which the e' coordinates are injective. The dimension is checked against
    Kostant's partition function when VALIDATE_DIMENSIONS is on.
    """

    def __init__(self, diagram, nu):
        nu = diagram.validate_weight(nu)
        check_height(diagram, nu)
        self.diagram = diagram
        self.nu = nu
        self.words = words_of_weight(diagram, nu)
        self.dimension = kostant_partition(diagram, nu)
        self.basis_words, self.dual_words = self._select()
        logger.debug("Weight space %s of %s: %d words, dimension %d.",
                     nu, diagram, len(self.words), self.dimension)

    def _pairing_matrix(self):
        rows = []
        for u in self.words:
            values = _word_pairing(self.diagram, u)
            rows.append([values.get(w, ZERO) for w in self.words])
        return QMatrix(rows, cols=len(self.words))

    def _select(self):
        if not self.words:
            return (), ()
        matrix = self._pairing_matrix()
        try:
            rows, cols = rank_profile_at(matrix, SPECIALIZATION_POINT)
        except DomainError:
            rows, cols = [], []
        if len(cols) != self.dimension:
            cols = independent_columns(matrix)
            rows = independent_columns(matrix.transpose())
        if len(cols) != self.dimension and quantum_setting('VALIDATE_DIMENSIONS'):
            raise InternalError(
                f"Weight {self.nu} of {self.diagram}: pairing rank {len(cols)} "
                f"differs from Kostant's count {self.dimension}."
            )
        return tuple(self.words[r] for r in rows), tuple(self.words[c] for c in cols)

    def coordinates(self, x):
        """Integer-form e' coordinates of x on the dual words."""
        scaled = _scaled_coordinates(x)
        for w in scaled:
            if len(w) != sum(self.nu) or word_weight(self.diagram, w) != self.nu:
                raise DomainError(f"{x} does not lie in weight {self.nu}.")
        return [scaled.get(w, RAT_ZERO) for w in self.dual_words]

    def basis(self):
        return [UMinusElement._trusted(self.diagram, {w: RAT_ONE}) for w in self.basis_words]

    def element(self, vector):
        """The element sum v_b F_b over the basis words."""
        terms = {}
        for word, value in zip(self.basis_words, vector):
            if value:
                terms[word] = RatFunc.coerce(value)
        return UMinusElement._trusted(self.diagram, terms)

    def solve(self, elements, x):
        """Coefficients c with sum c_k elements[k] = x, or None when x is not in their span."""
        columns = [self.coordinates(e) for e in elements]
        if not columns:
            return [] if is_zero(x) else None
        matrix = QMatrix.from_columns(columns, len(self.dual_words))
        return solve(matrix, self.coordinates(x))


@lru_cache(maxsize=None)
def _weight_space(diagram, nu):
    return WeightSpace(diagram, nu)


def weight_space(diagram, nu):
    nu = diagram.validate_weight(nu)
    check_height(diagram, nu)
    return _weight_space(diagram, nu)


# ----------------------------------
# 5. Kashiwara Decomposition and Operators
# ----------------------------------

def kernel_basis_eprime(diagram, i, nu):
    """A basis of ker e'_i in weight -nu, as elements over the basis words of nu."""
    diagram.validate_node(i)
    space = weight_space(diagram, nu)
    if not space.nu[i - 1]:
        return space.basis()
    lower = weight_space(diagram, tuple(c - (1 if j == i else 0) for j, c in zip(diagram.nodes, space.nu)))
    rows = [w + (i,) for w in lower.dual_words]
    matrix_rows = []
    for w in rows:
        matrix_rows.append([_word_pairing(diagram, b).get(w, ZERO) for b in space.basis_words])
    if not matrix_rows:
        return space.basis()
    vectors = kernel_basis(QMatrix(matrix_rows, cols=len(space.basis_words)))
    return [space.element(v) for v in vectors]


def kashiwara_decompose(i, x):
    """
    The unique pairs (n, Y_n) with x = sum_n F_i^(n) Y_n and e'_i(Y_n) = 0, for
    homogeneous x. Components with Y_n = 0 are omitted.
    """
    diagram = x.diagram
    if not x:
        return []
    nu = x.weight()
    space = weight_space(diagram, nu)
    spans = []
    for n in range(nu[i - 1] + 1):
        mu = tuple(c - (n if j == i else 0) for j, c in zip(diagram.nodes, nu))
        kernel = kernel_basis_eprime(diagram, i, mu)
        spans.append((n, kernel))
    candidates = []
    owners = []
    for n, kernel in spans:
        power = divided_power(diagram, i, n)
        for y in kernel:
            candidates.append(multiply(power, y))
            owners.append((n, y))
    if len(candidates) != space.dimension:
        raise InternalError(
            f"Kernel decomposition in weight {nu} has {len(candidates)} pieces for dimension {space.dimension}."
        )
    coeffs = space.solve(candidates, x)
    if coeffs is None:
        raise InternalError(f"{x} is not spanned by its F_{i}-string decomposition.")
    components = {}
    for (n, y), c in zip(owners, coeffs):
        if c:
            components[n] = components.get(n, UMinusElement.zero(diagram)) + y.scale(c)
    return sorted((n, y) for n, y in components.items() if y)


def kashiwara_ftilde(i, x):
    """F~_i(F_i^(n) Y) = F_i^(n+1) Y, extended linearly over homogeneous components."""
    result = UMinusElement.zero(x.diagram)
    for part in x.components().values():
        for n, y in kashiwara_decompose(i, part):
            result = result + multiply(divided_power(x.diagram, i, n + 1), y)
    return result


def kashiwara_etilde(i, x):
    """E~_i(F_i^(n) Y) = F_i^(n-1) Y for n >= 1 and 0 for n = 0."""
    result = UMinusElement.zero(x.diagram)
    for part in x.components().values():
        for n, y in kashiwara_decompose(i, part):
            if n:
                result = result + multiply(divided_power(x.diagram, i, n - 1), y)
    return result
