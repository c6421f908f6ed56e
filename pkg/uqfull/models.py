# uqfull/models.py

import logging
from functools import lru_cache
from itertools import product
from typing import NamedTuple

from exactla.models import QMatrix, solve
from qscalar.conf import quantum_setting
from qscalar.exceptions import DomainError, InternalError
from qscalar.models import ONE, Q_MINUS_QINV, RAT_ONE, RAT_ZERO, RatFunc, q_power
from uqminus.models import UMinusElement, format_word, is_zero, weight_space, word_weight

logger = logging.getLogger(__name__)

F_SIDE = 'F'
E_SIDE = 'E'

# Largest F-length plus E-length tried when solving for T_i^-1 of a generator.
INVERSE_ANSATZ_LENGTH = 2


class TriTerm(NamedTuple):
    """coeff * F_fword * K^kvec * E_eword."""
    fword: tuple
    kvec: tuple
    eword: tuple
    coeff: RatFunc

    def weight(self, diagram):
        """Root coordinates of the weight |E| - |F|; K has weight zero."""
        f = word_weight(diagram, self.fword)
        e = word_weight(diagram, self.eword)
        return tuple(b - a for a, b in zip(f, e))


def _add_vectors(*vectors):
    return tuple(sum(parts) for parts in zip(*vectors))


def _accumulate(terms, key, value):
    total = terms.get(key, RAT_ZERO) + value
    if total:
        terms[key] = total
    else:
        terms.pop(key, None)


# ----------------------------------
# 1. Elements in Triangular Normal Form
# ----------------------------------

class UqElement:
    """
    A combination of normal-form monomials F_a K^k E_b with RatFunc coefficients,
    keyed by (a, k, b). Words inside each block are not reduced further, so two
    elements may be equal in U_q without == agreeing; equals() decides equality
    on the generic Verma module.
    """

    __slots__ = ('diagram', 'terms')

    def __init__(self, diagram, terms=None):
        self.diagram = diagram
        clean = {}
        for (fword, kvec, eword), coeff in (terms or {}).items():
            key = (tuple(fword), tuple(kvec), tuple(eword))
            if len(key[1]) != diagram.rank:
                raise DomainError(f"K exponent vector {key[1]} does not match the rank of {diagram}.")
            _accumulate(clean, key, RatFunc.coerce(coeff))
        self.terms = clean

    @classmethod
    def _trusted(cls, diagram, terms):
        obj = cls.__new__(cls)
        obj.diagram = diagram
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, diagram):
        return cls._trusted(diagram, {})

    @classmethod
    def one(cls, diagram):
        return cls._trusted(diagram, {((), diagram.zero_weight(), ()): RAT_ONE})

    @classmethod
    def monomial(cls, diagram, fword=(), kvec=None, eword=(), coeff=1):
        fword = tuple(diagram.validate_node(i) for i in fword)
        eword = tuple(diagram.validate_node(i) for i in eword)
        kvec = diagram.zero_weight() if kvec is None else tuple(kvec)
        return cls(diagram, {(fword, kvec, eword): coeff})

    @classmethod
    def F(cls, diagram, i):
        return cls.monomial(diagram, fword=(i,))

    @classmethod
    def E(cls, diagram, i):
        return cls.monomial(diagram, eword=(i,))

    @classmethod
    def K(cls, diagram, i, exp=1):
        diagram.validate_node(i)
        return cls.monomial(diagram, kvec=tuple(exp if j == i else 0 for j in diagram.nodes))

    @classmethod
    def from_uminus(cls, x):
        zero = x.diagram.zero_weight()
        return cls._trusted(x.diagram, {(word, zero, ()): coeff for word, coeff in x.terms.items()})

    # --- Inspection ---

    def __bool__(self):
        return bool(self.terms)

    def tri_terms(self):
        return [TriTerm(f, k, e, c) for (f, k, e), c in sorted(self.terms.items())]

    def support(self):
        """Nodes occurring in some F- or E-word."""
        letters = set()
        for fword, _, eword in self.terms:
            letters.update(fword)
            letters.update(eword)
        return letters

    def weight(self):
        weights = {TriTerm(f, k, e, c).weight(self.diagram) for (f, k, e), c in self.terms.items()}
        if len(weights) > 1:
            raise DomainError(f"{self} is not homogeneous.")
        return weights.pop() if weights else self.diagram.zero_weight()

    def pure_f(self):
        """The U_q^- block (K^0, no E) as a UMinusElement."""
        zero = self.diagram.zero_weight()
        return UMinusElement._trusted(self.diagram, {
            f: c for (f, k, e), c in self.terms.items() if k == zero and not e
        })

    # --- Arithmetic ---

    def _combine(self, other, sign):
        if not isinstance(other, UqElement):
            return NotImplemented
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            _accumulate(terms, key, coeff if sign > 0 else -coeff)
        return UqElement._trusted(self.diagram, terms)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return UqElement._trusted(self.diagram, {key: -c for key, c in self.terms.items()})

    def scale(self, scalar):
        scalar = RatFunc.coerce(scalar)
        if not scalar:
            return UqElement.zero(self.diagram)
        return UqElement._trusted(self.diagram, {key: c * scalar for key, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UqElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def bar(self):
        return bar(self)

    def equals(self, other):
        return equals_zero_generic_verma(self - other)

    def __eq__(self, other):
        if not isinstance(other, UqElement):
            return NotImplemented
        return self.diagram == other.diagram and self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for fword, kvec, eword, coeff in self.tri_terms():
            body = ''.join(
                [format_word(fword) if fword else '']
                + [f'K{i}' if e == 1 else f'K{i}^{e}' for i, e in zip(self.diagram.nodes, kvec) if e]
                + [format_word(eword, 'E') if eword else '']
            ) or '1'
            parts.append(body if coeff == RAT_ONE else f'({coeff}){body}')
        return ' + '.join(parts)

    def __repr__(self):
        return f'UqElement({self})'


# ----------------------------------
# 2. Straightening
# ----------------------------------

@lru_cache(maxsize=None)
def _straighten(diagram, eword, fword):
    """
    E_eword F_fword as {(x, m, y): coeff} meaning sum coeff F_x K^m E_y. The last
    E letter is moved across the F-word first, and each F_i it meets with the same
    index leaves a (K_i - K_i^-1)/(q - q^-1) correction.
    """
    if not eword or not fword:
        return {(fword, diagram.zero_weight(), eword): RAT_ONE}
    i = eword[-1]
    rest = eword[:-1]
    result = {}
    for (x, m, y), coeff in _straighten(diagram, rest, fword).items():
        _accumulate(result, (x, m, y + (i,)), coeff)
    unit = RatFunc(ONE, Q_MINUS_QINV)
    for k, letter in enumerate(fword):
        if letter != i:
            continue
        tail = sum(diagram.cartan_entry(i, j) for j in fword[k + 1:])
        shorter = fword[:k] + fword[k + 1:]
        for (x, m, y), coeff in _straighten(diagram, rest, shorter).items():
            # E_y K_i^s = q^(-s (alpha_i, |y|)) K_i^s E_y
            past_e = diagram.pairing_with_simple(i, word_weight(diagram, y))
            raised = tuple(v + 1 if j == i else v for j, v in zip(diagram.nodes, m))
            lowered = tuple(v - 1 if j == i else v for j, v in zip(diagram.nodes, m))
            _accumulate(result, (x, raised, y), coeff * unit * q_power(-tail - past_e))
            _accumulate(result, (x, lowered, y), -(coeff * unit * q_power(tail + past_e)))
    return result


def multiply(x, y):
    """Product of two elements, straightened back to F K E normal form."""
    diagram = x.diagram
    terms = {}
    for (a, k, b), cx in x.terms.items():
        for (c, l, d), cy in y.terms.items():
            coeff = cx * cy
            for (f, m, e), cs in _straighten(diagram, b, c).items():
                # K^k F_f = q^(-(k, |f|)) F_f K^k and E_e K^l = q^(-(l, |e|)) K^l E_e
                exp = (-diagram.pairing(k, word_weight(diagram, f))
                       - diagram.pairing(l, word_weight(diagram, e)))
                _accumulate(terms, (a + f, _add_vectors(k, m, l), e + d), coeff * cs * q_power(exp))
    return UqElement._trusted(diagram, terms)


def bar(x):
    """q -> q^-1 on coefficients, K_i -> K_i^-1; F and E words are fixed."""
    return UqElement._trusted(x.diagram, {
        (f, tuple(-v for v in k), e): c.bar() for (f, k, e), c in x.terms.items()
    })


def project(x, kvec, eweight):
    """The terms of x whose K part is kvec and whose E-word has weight eweight."""
    kvec = tuple(kvec)
    eweight = tuple(eweight)
    return UqElement._trusted(x.diagram, {
        (f, k, e): c for (f, k, e), c in x.terms.items()
        if k == kvec and word_weight(x.diagram, e) == eweight
    })


def nonnegative_part(x):
    """The terms of x with an empty F-word, i.e. its U^0 U^+ block."""
    return UqElement._trusted(x.diagram, {key: c for key, c in x.terms.items() if not key[0]})


# ----------------------------------
# 3. The Generic Verma Module
# ----------------------------------

def act_on_verma(x, word):
    """
    x applied to F_word v, where K_i v = z_i v for free parameters z_i and E_i v = 0.
    Returned as {z exponent vector: UMinusElement} for the vectors F_* v.
    """
    diagram = x.diagram
    word = tuple(word)
    groups = {}
    for (a, k, b), coeff in x.terms.items():
        for (f, m, e), cs in _straighten(diagram, b, word).items():
            if e:
                continue
            exp = -diagram.pairing(k, word_weight(diagram, f))
            _accumulate(groups.setdefault(_add_vectors(k, m), {}), a + f, coeff * cs * q_power(exp))
    return {z: UMinusElement._trusted(diagram, terms) for z, terms in groups.items() if terms}


def _verma_words(letters, height):
    for n in range(height + 1):
        yield from product(letters, repeat=n)


def _verma_height(x, height):
    bound = quantum_setting('VERMA_HEIGHT') if height is None else height
    longest = max((len(e) for _, _, e in x.terms), default=0)
    return max(bound, longest)


def equals_zero_generic_verma(x, height=None):
    """
    True when x kills F_u v for every word u over its support of length at most
    max(height, longest E-word of x). height defaults to VERMA_HEIGHT.
    """
    if not x:
        return True
    letters = sorted(x.support())
    for word in _verma_words(letters, _verma_height(x, height)):
        for part in act_on_verma(x, word).values():
            if not is_zero(part):
                return False
    return True


def verma_profile(x, words):
    """Integer-form e' coordinates of x acting on each F_u v, keyed by (u, z, dual word)."""
    profile = {}
    for u in words:
        for z, part in act_on_verma(x, u).items():
            for nu, component in part.components().items():
                space = weight_space(x.diagram, nu)
                for w, value in zip(space.dual_words, space.coordinates(component)):
                    if value:
                        profile[(tuple(u), z, w)] = value
    return profile


# ----------------------------------
# 4. Braid Group Operators
# ----------------------------------

@lru_cache(maxsize=None)
def generator_images(diagram, i):
    """T_i on each F_j and E_j, as {('F', j): ..., ('E', j): ...}."""
    diagram.validate_node(i)
    images = {}
    Fi, Ei = UqElement.F(diagram, i), UqElement.E(diagram, i)
    for j in diagram.nodes:
        Fj, Ej = UqElement.F(diagram, j), UqElement.E(diagram, j)
        if j == i:
            images[(F_SIDE, j)] = -(UqElement.K(diagram, i, -1) * Ei)
            images[(E_SIDE, j)] = -(Fi * UqElement.K(diagram, i))
        elif diagram.adjacent(i, j):
            images[(F_SIDE, j)] = Fj * Fi - (Fi * Fj).scale(q_power(1))
            images[(E_SIDE, j)] = Ei * Ej - (Ej * Ei).scale(q_power(-1))
        else:
            images[(F_SIDE, j)] = Fj
            images[(E_SIDE, j)] = Ej
    return images


def _ansatz(diagram, i, generator):
    """Normal-form monomials over the nodes of i and the generator with the reflected weight."""
    target = diagram.reflect(i, generator.weight())
    letters = sorted({i} | generator.support())
    monomials = []
    for exps in product((-1, 0, 1), repeat=len(letters)):
        kvec = tuple(exps[letters.index(j)] if j in letters else 0 for j in diagram.nodes)
        for flen in range(INVERSE_ANSATZ_LENGTH + 1):
            for elen in range(INVERSE_ANSATZ_LENGTH + 1 - flen):
                for fword in product(letters, repeat=flen):
                    for eword in product(letters, repeat=elen):
                        term = TriTerm(fword, kvec, eword, RAT_ONE)
                        if term.weight(diagram) == target:
                            monomials.append(UqElement.monomial(diagram, fword, kvec, eword))
    return monomials, letters


def _solve_preimage(diagram, i, generator):
    candidates, letters = _ansatz(diagram, i, generator)
    height = INVERSE_ANSATZ_LENGTH + 1
    words = list(_verma_words(letters, height))
    images = [verma_profile(braid_T(i, m), words) for m in candidates]
    target = verma_profile(generator, words)
    keys = sorted(set(target).union(*images), key=repr)
    matrix = QMatrix([[image.get(key, RAT_ZERO) for image in images] for key in keys], cols=len(candidates))
    coeffs = solve(matrix, [target.get(key, RAT_ZERO) for key in keys]) if keys else None
    if coeffs is None:
        raise InternalError(f"No preimage of {generator} under T_{i} among {len(candidates)} candidates.")
    preimage = UqElement.zero(diagram)
    for m, c in zip(candidates, coeffs):
        if c:
            preimage = preimage + m.scale(c)
    if not equals_zero_generic_verma(braid_T(i, preimage) - generator, height):
        raise InternalError(f"Derived T_{i}^-1({generator}) = {preimage} fails the inverse check.")
    return preimage


@lru_cache(maxsize=None)
def derive_inverse_table(diagram, i):
    """T_i^-1 on each F_j and E_j, solved once from T_i and then frozen."""
    diagram.validate_node(i)
    table = {}
    for j in diagram.nodes:
        table[(F_SIDE, j)] = _solve_preimage(diagram, i, UqElement.F(diagram, j))
        table[(E_SIDE, j)] = _solve_preimage(diagram, i, UqElement.E(diagram, j))
    logger.debug("Derived T_%s^-1 table for %s: %s", i, diagram,
                 {f'{side}{j}': str(value) for (side, j), value in table.items()})
    return table


@lru_cache(maxsize=None)
def _word_image(diagram, i, inverse, side, word):
    if not word:
        return UqElement.one(diagram)
    table = derive_inverse_table(diagram, i) if inverse else generator_images(diagram, i)
    return multiply(_word_image(diagram, i, inverse, side, word[:-1]), table[(side, word[-1])])


def _apply_braid(i, x, inverse):
    diagram = x.diagram
    diagram.validate_node(i)
    result = UqElement.zero(diagram)
    for (f, k, e), coeff in x.terms.items():
        # T_i and T_i^-1 both act on K exponents by the reflection s_i.
        middle = UqElement.monomial(diagram, kvec=diagram.reflect(i, k))
        image = _word_image(diagram, i, inverse, F_SIDE, f) * middle * _word_image(diagram, i, inverse, E_SIDE, e)
        result = result + image.scale(coeff)
    return result


def braid_T(i, x):
    return _apply_braid(i, x, inverse=False)


def braid_T_inv(i, x):
    return _apply_braid(i, x, inverse=True)


def braid_word(letters, x, inverse=False):
    """
    T_{l_1} ... T_{l_r}(x), the rightmost operator applied first. With inverse=True
    this is T_{l_r}^-1 ... T_{l_1}^-1(x), so T_{l_1}^-1 is applied first.
    """
    for i in (letters if inverse else reversed(letters)):
        x = _apply_braid(i, x, inverse)
    return x


# ----------------------------------
# 5. Relations
# ----------------------------------

def defining_relations(diagram):
    """Named elements that must vanish in U_q, one per defining relation."""
    relations = {}
    quantum_two = RatFunc.coerce(ONE.shift(1) + ONE.shift(-1))
    for i in diagram.nodes:
        Fi, Ei = UqElement.F(diagram, i), UqElement.E(diagram, i)
        Ki, Ki_inv = UqElement.K(diagram, i), UqElement.K(diagram, i, -1)
        relations[f'K{i}K{i}^-1'] = Ki * Ki_inv - UqElement.one(diagram)
        for j in diagram.nodes:
            Fj, Ej = UqElement.F(diagram, j), UqElement.E(diagram, j)
            a = diagram.cartan_entry(i, j)
            relations[f'K{i}F{j}'] = Ki * Fj - (Fj * Ki).scale(q_power(-a))
            relations[f'K{i}E{j}'] = Ki * Ej - (Ej * Ki).scale(q_power(a))
            if i == j:
                relations[f'E{i}F{i}'] = Ei * Fi - Fi * Ei - (Ki - Ki_inv).scale(RatFunc(ONE, Q_MINUS_QINV))
            else:
                relations[f'E{i}F{j}'] = Ei * Fj - Fj * Ei
            if i < j and not diagram.adjacent(i, j):
                relations[f'F{i}F{j}'] = Fi * Fj - Fj * Fi
                relations[f'E{i}E{j}'] = Ei * Ej - Ej * Ei
            elif diagram.adjacent(i, j):
                relations[f'serre F{i}F{j}'] = (
                    Fi * Fi * Fj + Fj * Fi * Fi - (Fi * Fj * Fi).scale(quantum_two)
                )
                relations[f'serre E{i}E{j}'] = (
                    Ei * Ei * Ej + Ej * Ei * Ei - (Ei * Ej * Ei).scale(quantum_two)
                )
    return relations


def braid_relation_failures(diagram, i, j):
    """Generators on which the braid relation between T_i and T_j fails."""
    if diagram.adjacent(i, j):
        left, right = (i, j, i), (j, i, j)
    else:
        left, right = (i, j), (j, i)
    failures = []
    for k in diagram.nodes:
        for gen in (UqElement.F(diagram, k), UqElement.E(diagram, k)):
            if not equals_zero_generic_verma(braid_word(left, gen) - braid_word(right, gen)):
                failures.append(str(gen))
    return failures


def weight_of(x):
    return x.weight()


# ----------------------------------
# 6. Block Checks
# ----------------------------------

def verify_commutator_in_k_block(i, y):
    """
    For y in U_q^-, checks that E_i y - y E_i lies in U_q^- K_i: everything outside
    the block (K_i, no E) must vanish.
    """
    diagram = y.diagram
    lifted = UqElement.from_uminus(y)
    Ei = UqElement.E(diagram, i)
    commutator = Ei * lifted - lifted * Ei
    outside = commutator - project(commutator, diagram.unit(i), diagram.zero_weight())
    return equals_zero_generic_verma(outside)


def verify_rest_of_triangular(letters, y):
    """T_{l_r}^-1 ... T_{l_1}^-1 (y) has no terms with a nonempty F-word, i.e. lies in U^0 U^+."""
    image = braid_word(letters, UqElement.from_uminus(y), inverse=True)
    return equals_zero_generic_verma(image - nonnegative_part(image))
