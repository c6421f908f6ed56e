# rootsystem/models.py

import logging
import re
from collections import deque
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import NamedTuple

from qscalar.conf import quantum_setting
from qscalar.exceptions import DomainError, InternalError

logger = logging.getLogger(__name__)

TWO_TERM = 'two-term'
THREE_TERM = 'three-term'


# ----------------------------------
# 1. Dynkin Diagrams
# ----------------------------------

def _edges(family, n):
    """Bourbaki labelling of the simply-laced diagrams."""
    if family == 'A':
        return {(i, i + 1) for i in range(1, n)}
    if family == 'D':
        return {(i, i + 1) for i in range(1, n - 1)} | {(n - 2, n)}
    # E6, E7, E8: chain 1-3-4-5-...-n with node 2 attached to 4
    return {(1, 3), (2, 4)} | {(i, i + 1) for i in range(3, n)}


class DynkinDiagram:
    """
    A simply-laced Dynkin diagram of type A_n (n >= 1), D_n (n >= 4) or E6/E7/E8.
    Nodes are labelled 1..n. Use DynkinDiagram.of(type) to share cached data.
    """

    TYPE_PATTERN = re.compile(r'^([ADE])(\d+)$')

    def __init__(self, cartan_type):
        match = self.TYPE_PATTERN.match(str(cartan_type).strip().upper())
        if not match:
            raise DomainError(f"'{cartan_type}' is not an ADE type string such as A3, D4 or E6.")
        family, n = match.group(1), int(match.group(2))
        if (family == 'A' and n < 1) or (family == 'D' and n < 4) or (family == 'E' and n not in (6, 7, 8)):
            raise DomainError(f"There is no Dynkin diagram of type {family}{n}.")
        self.family = family
        self.rank = n
        self.cartan_type = f'{family}{n}'
        self.nodes = tuple(range(1, n + 1))
        self._adjacent = {i: set() for i in self.nodes}
        for i, j in _edges(family, n):
            self._adjacent[i].add(j)
            self._adjacent[j].add(i)

    @classmethod
    @lru_cache(maxsize=None)
    def of(cls, cartan_type):
        return cls(cartan_type)

    # --- Nodes and the Cartan matrix ---

    def adjacent(self, i, j):
        return j in self._adjacent[i]

    def neighbours(self, i):
        return sorted(self._adjacent[i])

    def validate_node(self, i):
        if i not in self._adjacent:
            raise DomainError(f"{i} is not a node of {self.cartan_type}.")
        return i

    def cartan_entry(self, i, j):
        if i == j:
            return 2
        return -1 if self.adjacent(i, j) else 0

    @cached_property
    def cartan_matrix(self):
        return tuple(tuple(self.cartan_entry(i, j) for j in self.nodes) for i in self.nodes)

    def pairing(self, u, v):
        """Symmetric bilinear form (u, v) on root-coordinate vectors."""
        total = 0
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if vb:
                    total += ua * self.cartan_matrix[a][b] * vb
        return total

    def pairing_with_simple(self, i, v):
        """(alpha_i, v)."""
        row = self.cartan_matrix[i - 1]
        return sum(row[b] * vb for b, vb in enumerate(v) if vb)

    def unit(self, i):
        return tuple(1 if j == i else 0 for j in self.nodes)

    def zero_weight(self):
        return (0,) * self.rank

    def validate_weight(self, nu):
        nu = tuple(int(x) for x in nu)
        if len(nu) != self.rank or any(x < 0 for x in nu):
            raise DomainError(
                f"A weight of {self.cartan_type} is a vector of {self.rank} nonnegative integers, got {nu}."
            )
        return nu

    # --- Roots ---

    @cached_property
    def positive_roots(self):
        """Closure of the simple roots under simple reflections, sorted by height."""
        seen = {self.unit(i) for i in self.nodes}
        frontier = list(seen)
        while frontier:
            new = []
            for coords in frontier:
                for i in self.nodes:
                    image = self.reflect(i, coords)
                    if all(c >= 0 for c in image) and image not in seen:
                        seen.add(image)
                        new.append(image)
            frontier = new
        return tuple(Root(c) for c in sorted(seen, key=lambda c: (sum(c), tuple(-x for x in c))))

    @cached_property
    def all_roots(self):
        """Positive roots followed by their negatives; indices of the Weyl permutations."""
        return self.positive_roots + tuple(-r for r in self.positive_roots)

    @cached_property
    def root_index(self):
        return {root.coords: k for k, root in enumerate(self.all_roots)}

    @property
    def num_positive_roots(self):
        return len(self.positive_roots)

    def reflect(self, i, coords):
        c = self.pairing_with_simple(i, coords)
        return tuple(x - c if j == i else x for j, x in zip(self.nodes, coords))

    @lru_cache(maxsize=None)
    def reflection_permutation(self, i):
        return tuple(self.root_index[self.reflect(i, root.coords)] for root in self.all_roots)

    def require_full_rank(self):
        """Operations on full reduced words of w0 are refused above MAX_FULL_RANK."""
        limit = quantum_setting('MAX_FULL_RANK')
        if self.rank > limit:
            raise DomainError(
                f"{self.cartan_type} exceeds the configured rank limit {limit} for words of w0."
            )

    def __eq__(self, other):
        return isinstance(other, DynkinDiagram) and other.cartan_type == self.cartan_type

    def __hash__(self):
        return hash(self.cartan_type)

    def __str__(self):
        return self.cartan_type

    def __repr__(self):
        return f'DynkinDiagram({self.cartan_type!r})'


class Root:
    """A root as an integer vector in the simple-root basis."""

    __slots__ = ('coords',)

    def __init__(self, coords):
        self.coords = tuple(coords)

    @property
    def height(self):
        return sum(self.coords)

    def is_positive(self):
        return all(c >= 0 for c in self.coords)

    def is_simple(self):
        return self.height == 1 and self.is_positive()

    def simple_index(self):
        """The node i with self = alpha_i, or None."""
        if not self.is_simple():
            return None
        return self.coords.index(1) + 1

    def __neg__(self):
        return Root(-c for c in self.coords)

    def __eq__(self, other):
        if isinstance(other, Root):
            return self.coords == other.coords
        if isinstance(other, tuple):
            return self.coords == other
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def label(self):
        """Subscript used in root-vector names: 12 for alpha_1 + alpha_2."""
        parts = []
        for node, c in enumerate(self.coords, start=1):
            if c == 1:
                parts.append(str(node))
            elif c:
                parts.append(f'{node}^{c}')
        return ''.join(parts)

    def __str__(self):
        terms = []
        for node, c in enumerate(self.coords, start=1):
            if c:
                terms.append(f'a{node}' if abs(c) == 1 else f'{abs(c)}a{node}')
                if c < 0:
                    terms[-1] = '-' + terms[-1]
        return '+'.join(terms).replace('+-', '-') or '0'

    def __repr__(self):
        return f'Root({self.coords})'


# ----------------------------------
# 2. Weyl Group Elements and Reduced Words
# ----------------------------------

class WeylElement:
    """A Weyl group element as the permutation it induces on the root set."""

    __slots__ = ('diagram', 'perm')

    def __init__(self, diagram, perm=None):
        self.diagram = diagram
        self.perm = perm if perm is not None else tuple(range(len(diagram.all_roots)))

    @classmethod
    def from_word(cls, diagram, letters):
        element = cls(diagram)
        for i in letters:
            element = element.times_simple(i)
        return element

    def times_simple(self, i):
        """self * s_i."""
        s = self.diagram.reflection_permutation(i)
        return WeylElement(self.diagram, tuple(self.perm[s[k]] for k in range(len(s))))

    def apply(self, coords):
        coords = coords.coords if isinstance(coords, Root) else tuple(coords)
        return self.diagram.all_roots[self.perm[self.diagram.root_index[coords]]]

    @property
    def length(self):
        """Number of positive roots sent to negative roots."""
        n = self.diagram.num_positive_roots
        return sum(1 for k in range(n) if self.perm[k] >= n)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.diagram == other.diagram and self.perm == other.perm

    def __hash__(self):
        return hash((self.diagram, self.perm))


class ReducedWord:
    """
    A reduced expression s_{i_1} ... s_{i_h}. Construction validates the letters and
    reducedness (every beta_k positive), so a ReducedWord is always reduced.
    """

    __slots__ = ('diagram', 'letters', 'betas', '_element')

    def __init__(self, diagram, letters):
        if isinstance(diagram, str):
            diagram = DynkinDiagram.of(diagram)
        self.diagram = diagram
        self.letters = tuple(diagram.validate_node(int(i)) for i in letters)
        self.betas = _beta_roots(diagram, self.letters)
        self._element = None

    @classmethod
    def parse(cls, diagram, text):
        """Reads a comma-separated node list such as '1,2,1'."""
        text = str(text).strip()
        if not text:
            return cls(diagram, ())
        try:
            letters = [int(part) for part in text.split(',')]
        except ValueError:
            raise DomainError(f"'{text}' is not a comma-separated list of nodes.")
        return cls(diagram, letters)

    @property
    def element(self):
        if self._element is None:
            self._element = WeylElement.from_word(self.diagram, self.letters)
        return self._element

    def is_full(self):
        return len(self.letters) == self.diagram.num_positive_roots

    def require_full(self):
        if not self.is_full():
            raise DomainError(f"{self} is not a reduced word of the longest element of {self.diagram}.")
        self.diagram.require_full_rank()
        return self

    def position_of(self, root):
        """Index k with beta_k = root, or None."""
        for k, beta in enumerate(self.betas):
            if beta == root:
                return k
        return None

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, k):
        return self.letters[k]

    def __eq__(self, other):
        return (isinstance(other, ReducedWord) and self.diagram == other.diagram
                and self.letters == other.letters)

    def __lt__(self, other):
        return self.letters < other.letters

    def __hash__(self):
        return hash((self.diagram, self.letters))

    def __str__(self):
        return ','.join(str(i) for i in self.letters)

    def __repr__(self):
        return f'ReducedWord({self.diagram.cartan_type}, {self})'


def _beta_roots(diagram, letters):
    element = WeylElement(diagram)
    betas = []
    for k, i in enumerate(letters):
        beta = element.apply(diagram.unit(i))
        if not beta.is_positive():
            raise DomainError(
                f"{','.join(map(str, letters))} is not reduced in {diagram}: letter {k + 1} lowers the length."
            )
        betas.append(beta)
        element = element.times_simple(i)
    return tuple(betas)


def beta_sequence(word):
    """(beta_1, ..., beta_h) with beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}."""
    return list(word.betas)


def is_reduced(diagram, letters):
    try:
        ReducedWord(diagram, letters)
    except DomainError:
        return False
    return True


# ----------------------------------
# 3. Braid Moves
# ----------------------------------

class BraidMove(NamedTuple):
    """A braid move at 0-based position `position` of kind TWO_TERM or THREE_TERM."""
    position: int
    kind: str

    def __str__(self):
        return f'{self.kind}@{self.position}'


def _is_legal(diagram, letters, move):
    k = move.position
    if move.kind == TWO_TERM:
        return (0 <= k and k + 1 < len(letters) and letters[k] != letters[k + 1]
                and not diagram.adjacent(letters[k], letters[k + 1]))
    if move.kind == THREE_TERM:
        return (0 <= k and k + 2 < len(letters) and letters[k] == letters[k + 2]
                and diagram.adjacent(letters[k], letters[k + 1]))
    return False


def _moved_letters(letters, move):
    k = move.position
    letters = list(letters)
    if move.kind == TWO_TERM:
        letters[k], letters[k + 1] = letters[k + 1], letters[k]
    else:
        i, j = letters[k], letters[k + 1]
        letters[k:k + 3] = [j, i, j]
    return letters


def legal_moves(word):
    """Every legal move on the word, lowest position first."""
    moves = []
    for k in range(len(word)):
        for kind in (TWO_TERM, THREE_TERM):
            move = BraidMove(k, kind)
            if _is_legal(word.diagram, word.letters, move):
                moves.append(move)
    return moves


def apply_braid_move(word, move):
    move = BraidMove(*move)
    if not _is_legal(word.diagram, word.letters, move):
        raise DomainError(f"Braid move {move} is not legal on {word}.")
    return ReducedWord(word.diagram, _moved_letters(word.letters, move))


def _bring_letter(diagram, letters, start, t, moves):
    """
    Rewrites letters[start:] in place so it begins with t, where t is a left descent
    of the element it represents. The suffix is first made to begin with the rest of
    the longest alternating word of s = letters[start] and t, then one move finishes.
    """
    s = letters[start]
    if s == t:
        return
    if diagram.adjacent(s, t):
        alternating, kind = (s, t, s), THREE_TERM
    else:
        alternating, kind = (s, t), TWO_TERM
    for offset in range(1, len(alternating)):
        _bring_letter(diagram, letters, start + offset, alternating[offset], moves)
    move = BraidMove(start, kind)
    if not _is_legal(diagram, letters, move):
        raise InternalError(f"Alignment produced an illegal move {move} on {letters}.")
    letters[:] = _moved_letters(letters, move)
    moves.append(move)


def matsumoto_path(w1, w2):
    """
    A sequence of braid moves turning w1 into w2, built by aligning first letters
    and recursing on the suffix. Replaying the moves lands exactly on w2.
    """
    if w1.diagram != w2.diagram or len(w1) != len(w2) or w1.element != w2.element:
        raise DomainError(f"{w1} and {w2} are not reduced words of the same Weyl group element.")
    letters = list(w1.letters)
    moves = []
    for k, t in enumerate(w2.letters):
        _bring_letter(w1.diagram, letters, k, t, moves)
    if tuple(letters) != w2.letters:
        raise InternalError(f"Matsumoto alignment ended at {letters} instead of {w2}.")
    return moves


def replay(word, moves):
    for move in moves:
        word = apply_braid_move(word, move)
    return word


def reduced_words(diagram, limit=50000):
    """All reduced words of w0, by breadth-first search over braid moves."""
    start = first_letter_words(diagram, diagram.nodes[0])
    seen = {start.letters}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        for move in legal_moves(word):
            letters = tuple(_moved_letters(word.letters, move))
            if letters not in seen:
                seen.add(letters)
                if len(seen) > limit:
                    raise DomainError(f"{diagram} has more than {limit} reduced words of w0.")
                queue.append(ReducedWord(diagram, letters))
    return sorted(ReducedWord(diagram, letters) for letters in seen)


def braid_graph_path(w1, w2):
    """A shortest move sequence from w1 to w2 in the braid graph (exhaustive search)."""
    if w1.element != w2.element:
        raise DomainError(f"{w1} and {w2} are not reduced words of the same Weyl group element.")
    parents = {w1.letters: None}
    queue = deque([w1])
    while queue:
        word = queue.popleft()
        if word.letters == w2.letters:
            break
        for move in legal_moves(word):
            letters = tuple(_moved_letters(word.letters, move))
            if letters not in parents:
                parents[letters] = (word.letters, move)
                queue.append(ReducedWord(word.diagram, letters))
    path = []
    letters = w2.letters
    while parents[letters] is not None:
        letters, move = parents[letters]
        path.append(move)
    return list(reversed(path))


# ----------------------------------
# 4. Longest Element Data
# ----------------------------------

@lru_cache(maxsize=None)
def _first_letter_letters(diagram, i):
    element = WeylElement(diagram).times_simple(i)
    letters = [i]
    while len(letters) < diagram.num_positive_roots:
        for j in diagram.nodes:
            longer = element.times_simple(j)
            if longer.length > element.length:
                letters.append(j)
                element = longer
                break
        else:
            raise InternalError(f"Greedy descent stalled at {letters} in {diagram}.")
    return tuple(letters)


def first_letter_words(diagram, i):
    """A reduced word of w0 beginning with i: append the lowest letter that lengthens."""
    diagram.validate_node(i)
    diagram.require_full_rank()
    return ReducedWord(diagram, _first_letter_letters(diagram, i))


def last_letter_words(diagram, i):
    """A reduced word of w0 ending with sigma(i), so that its last root is alpha_i."""
    word = first_letter_words(diagram, i)
    return ReducedWord(diagram, word.letters[1:] + (sigma(diagram)[i],))


def longest_element(diagram):
    return WeylElement.from_word(diagram, _first_letter_letters(diagram, diagram.nodes[0]))


@lru_cache(maxsize=None)
def _sigma(diagram):
    w0 = longest_element(diagram)
    images = {}
    for i in diagram.nodes:
        image = -w0.apply(diagram.unit(i))
        j = image.simple_index()
        if j is None:
            raise InternalError(f"-w0 does not permute the simple roots of {diagram}.")
        images[i] = j
    return images


def sigma(diagram):
    """The diagram involution with -w0 alpha_i = alpha_sigma(i)."""
    return dict(_sigma(diagram))


@lru_cache(maxsize=None)
def _partitions(diagram, nu, start):
    if not any(nu):
        return 1
    total = 0
    roots = diagram.positive_roots
    for k in range(start, len(roots)):
        rest = tuple(a - b for a, b in zip(nu, roots[k].coords))
        if all(x >= 0 for x in rest):
            total += _partitions(diagram, rest, k)
    return total


def kostant_partition(diagram, nu):
    """Number of multisets of positive roots summing to nu."""
    return _partitions(diagram, diagram.validate_weight(nu), 0)


def height(nu):
    return sum(nu)


def weights_of_height(diagram, h):
    """All nonnegative root-coordinate vectors of height h, lexicographically descending."""
    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest
    return list(compositions(h, diagram.rank))


# ----------------------------------
# 5. Convexity
# ----------------------------------

def convexity_violations(word, max_coeff=1):
    """
    Searches sums a_j beta_j + ... + a_k beta_k (a_j, a_k > 0, inner a_m >= 0, all
    at most max_coeff) that are a positive multiple n beta_l of some root in the word,
    and returns those where l does not lie strictly between j and k.
    """
    diagram = word.diagram
    positions = {beta.coords: k for k, beta in enumerate(word.betas)}
    violations = []
    for j in range(len(word)):
        for k in range(j + 1, len(word)):
            span = word.betas[j:k + 1]
            for coeffs in product(range(max_coeff + 1), repeat=k - j + 1):
                if not coeffs[0] or not coeffs[-1]:
                    continue
                total = [0] * diagram.rank
                for c, beta in zip(coeffs, span):
                    if c:
                        for a, x in enumerate(beta.coords):
                            total[a] += c * x
                n = 0
                for x in total:
                    n = gcd(n, x)
                ell = positions.get(tuple(x // n for x in total))
                if ell is not None and not j < ell < k:
                    violations.append({'j': j, 'k': k, 'coeffs': coeffs, 'multiple': n, 'position': ell})
    return violations
