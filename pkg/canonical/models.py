# canonical/models.py

import logging
from functools import lru_cache

from qscalar.conf import quantum_setting
from qscalar.exceptions import DomainError, InternalError
from qscalar.models import RAT_ONE, RAT_ZERO, RatFunc, split_antisymmetric
from pbw.models import (
    lusztig_data_of_weight, pbw_element, pbw_expand, pbw_monomial, transport,
)
from uqminus.models import bar, check_height, is_zero

logger = logging.getLogger(__name__)

DESCENDING = 'descending'
ASCENDING = 'ascending'
ORIENTATIONS = (DESCENDING, ASCENDING)


# ----------------------------------
# 1. The Partial Order
# ----------------------------------

def _orientation(orientation):
    orientation = orientation or quantum_setting('SECOND_ORDER_ORIENTATION')
    if orientation not in ORIENTATIONS:
        raise DomainError(f"Unknown orientation '{orientation}', expected one of {ORIENTATIONS}.")
    return orientation


def precedes(a, b, orientation=None):
    """
    a < b: same weight, a_k > b_k at the first entry from the left where they differ,
    and at the first entry from the right a_k > b_k (descending) or a_k < b_k (ascending).
    """
    orientation = _orientation(orientation)
    if a.word != b.word or a.a == b.a or a.weight() != b.weight():
        return False
    left = next(k for k in range(len(a.a)) if a.a[k] != b.a[k])
    right = next(k for k in reversed(range(len(a.a))) if a.a[k] != b.a[k])
    if not a.a[left] > b.a[left]:
        return False
    if orientation == DESCENDING:
        return a.a[right] > b.a[right]
    return a.a[right] < b.a[right]


class PrecOrder:
    """The order on the Lusztig data of one weight for one word."""

    def __init__(self, word, nu, orientation=None):
        self.word = word
        self.nu = word.diagram.validate_weight(nu)
        self.orientation = _orientation(orientation)
        self.data = lusztig_data_of_weight(word, self.nu)

    def precedes(self, a, b):
        return precedes(a, b, self.orientation)

    def below(self, b):
        return [a for a in self.data if self.precedes(a, b)]

    def minimal(self):
        return [b for b in self.data if not self.below(b)]

    def maximal(self):
        return [a for a in self.data if not any(self.precedes(a, b) for b in self.data)]

    def linear_extension(self, tie_break=None):
        """
        Kahn's algorithm: repeatedly take the ready datum (all predecessors placed) that
        is smallest under tie_break, by default its exponent tuple.
        """
        key = tie_break or (lambda d: d.a)
        waiting = {d: set(self.below(d)) for d in self.data}
        placed = []
        while waiting:
            ready = [d for d, before in waiting.items() if not before]
            if not ready:
                raise InternalError(f"The order on weight {self.nu} of {self.word} has a cycle.")
            chosen = min(ready, key=key)
            placed.append(chosen)
            del waiting[chosen]
            for before in waiting.values():
                before.discard(chosen)
        return placed


def verify_minimal_elements(word, nu, orientation=None):
    """Minimal data are exactly those supported on positions of simple roots."""
    order = PrecOrder(word, nu, orientation)
    simple = {k for k, beta in enumerate(word.betas) if beta.is_simple()}
    expected = {d for d in order.data if set(d.support()) <= simple}
    return set(order.minimal()) == expected


# ----------------------------------
# 2. Bar Involution in PBW Coordinates
# ----------------------------------

def triangularity_problems(d, coords, orientation=None):
    """Ways in which coords fail to be d plus Laurent terms strictly below d."""
    problems = []
    if coords.get(d) != RAT_ONE:
        problems.append(f"coefficient of {d} is {coords.get(d, RAT_ZERO)}, not 1")
    for other, c in coords.items():
        if not c.is_laurent():
            problems.append(f"coefficient {c} at {other} is not a Laurent polynomial")
        if other != d and not precedes(other, d, orientation):
            problems.append(f"{other} with coefficient {c} is not below {d}")
    return problems


def bar_in_pbw(d, orientation=None):
    """PBW coordinates of bar(F^d); checked to be unit-triangular with Laurent entries."""
    check_height(d.diagram, d.weight())
    coords = pbw_expand(bar(pbw_monomial(d)), d.word)
    problems = triangularity_problems(d, coords, orientation)
    if problems:
        raise InternalError(f"bar(F^{d}) on {d.word} is not unit-triangular: {'; '.join(problems)}")
    return coords


def verify_unit_triangularity(word, nu, orientation=None):
    """{data: problems} over every datum of weight nu, without raising."""
    failures = {}
    for d in lusztig_data_of_weight(word, nu):
        coords = pbw_expand(bar(pbw_monomial(d)), word)
        problems = triangularity_problems(d, coords, orientation)
        if problems:
            failures[d] = problems
    return failures


# ----------------------------------
# 3. Canonical Basis
# ----------------------------------

class CanonicalElement:
    """b^a for one Lusztig datum: its PBW coordinates and the element of U_q^- they give."""

    def __init__(self, word, data, coords):
        self.word = word
        self.data = data
        self.coords = coords
        self.element = pbw_element(word, coords)

    def is_bar_invariant(self):
        return is_zero(bar(self.element) - self.element)

    def reduces_to_monomial(self):
        """All coordinates other than the leading 1 lie in qZ[q]."""
        for d, c in self.coords.items():
            if d == self.data:
                continue
            if not c.is_laurent() or c.num.min_exp < 1:
                return False
        return self.coords.get(self.data) == RAT_ONE

    def __str__(self):
        return f'b{self.data}'

    def __repr__(self):
        return f'CanonicalElement({self.word}; {self.data})'


def _peel(remainder, built, order_of_built):
    """Writes remainder (PBW coordinates) over the built canonical elements, largest first."""
    remainder = dict(remainder)
    over = {}
    for d in reversed(order_of_built):
        r = remainder.get(d)
        if not r:
            continue
        over[d] = r
        for e, c in built[d].coords.items():
            total = remainder.get(e, RAT_ZERO) - r * c
            if total:
                remainder[e] = total
            else:
                remainder.pop(e, None)
    return over, remainder


def _build(word, nu, orientation, tie_break=None):
    order = PrecOrder(word, nu, orientation)
    extension = order.linear_extension(tie_break)
    built = {}
    for d in extension:
        correction = dict(bar_in_pbw(d, order.orientation))
        del correction[d]
        over, leftover = _peel(correction, built, list(built))
        if leftover:
            raise InternalError(f"bar(F^{d}) on {word} is not spanned by earlier canonical elements.")
        coords = {d: RAT_ONE}
        for e, r in over.items():
            if r.bar() != -r:
                raise InternalError(f"Correction {r} at {e} for {d} on {word} is not bar-antisymmetric.")
            c = RatFunc.coerce(split_antisymmetric(r.as_laurent()).shift(1))
            for g, value in built[e].coords.items():
                total = coords.get(g, RAT_ZERO) + c * value
                if total:
                    coords[g] = total
                else:
                    coords.pop(g, None)
        built[d] = CanonicalElement(word, d, coords)
    logger.debug("Canonical basis of weight %s on %s: %d elements.", nu, word, len(built))
    return [built[d] for d in extension]


@lru_cache(maxsize=None)
def _canonical_basis(word, nu, orientation):
    return tuple(_build(word, nu, orientation))


def canonical_basis(word, nu, tie_break=None, orientation=None):
    """
    The canonical basis of weight nu indexed by Lusztig data on word, built along a
    linear extension of the order so that each b^a only needs the b^a' below it.
    """
    word.require_full()
    nu = word.diagram.validate_weight(nu)
    check_height(word.diagram, nu)
    orientation = _orientation(orientation)
    if tie_break is not None:
        return _build(word, nu, orientation, tie_break)
    return list(_canonical_basis(word, nu, orientation))


def canonical_element(d, orientation=None):
    for b in canonical_basis(d.word, d.weight(), orientation=orientation):
        if b.data == d:
            return b
    raise InternalError(f"No canonical element for {d} on {d.word}.")


def canonical_change_of_basis(x, word):
    """Coordinates of x in the canonical basis of word, as {LusztigData: RatFunc}."""
    word.require_full()
    result = {}
    for nu, part in x.components().items():
        basis = canonical_basis(word, nu)
        built = {b.data: b for b in basis}
        over, leftover = _peel(pbw_expand(part, word), built, [b.data for b in basis])
        if leftover:
            raise InternalError(f"{part} is not spanned by the canonical basis of weight {nu}.")
        result.update(over)
    return result


# ----------------------------------
# 4. Word Independence and Positivity
# ----------------------------------

class IndependenceReport:

    def __init__(self, first, second, nu):
        self.first = first
        self.second = second
        self.nu = nu
        self.unmatched = []
        self.transport_mismatches = []

    @property
    def sets_equal(self):
        return not self.unmatched

    @property
    def matching_is_transport(self):
        return not self.transport_mismatches

    @property
    def passed(self):
        return self.sets_equal and self.matching_is_transport


def verify_word_independence(first, second, nu):
    """Both words give the same set of elements, matched on indices by transport."""
    report = IndependenceReport(first, second, tuple(nu))
    left = canonical_basis(first, nu)
    right = canonical_basis(second, nu)
    remaining = list(right)
    for b in left:
        match = next((c for c in remaining if is_zero(b.element - c.element)), None)
        if match is None:
            report.unmatched.append(b.data)
            continue
        remaining.remove(match)
        moved = transport(b.data, second)
        if moved != match.data:
            report.transport_mismatches.append(f"{b.data} matched {match.data}, transport gives {moved}")
    report.unmatched.extend(c.data for c in remaining)
    logger.debug("Word independence %s vs %s at %s: %s", first, second, nu, report.passed)
    return report


def positivity_spot_check(word, nu1, nu2):
    """
    Canonical coordinates of every product b b' for b of weight nu1 and b' of weight
    nu2; entries that are not Laurent with nonnegative coefficients are logged and
    returned, never raised.
    """
    issues = []
    for b in canonical_basis(word, nu1):
        for c in canonical_basis(word, nu2):
            product = b.element * c.element
            for d, value in canonical_change_of_basis(product, word).items():
                if not (value.is_laurent() and value.num.has_nonnegative_coefficients()):
                    message = f"{b} * {c} has coefficient {value} at b{d}"
                    logger.warning("Positivity: %s on %s", message, word)
                    issues.append(message)
    return issues


def canonical_elements_of(word, nu, elements):
    """Indices of the given elements in the canonical basis, or None where one is not a member."""
    basis = canonical_basis(word, nu)
    found = []
    for x in elements:
        found.append(next((b.data for b in basis if is_zero(b.element - x)), None))
    return found
