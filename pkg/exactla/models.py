# exactla/models.py

import logging

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from qscalar.exceptions import DomainError
from qscalar.models import ONE, RAT_ONE, RAT_ZERO, ZERO, RatFunc

logger = logging.getLogger(__name__)


# ----------------------------------
# 1. Matrix Container
# ----------------------------------

class QMatrix:
    """
    Dense matrix over Q(q). Entries are RatFunc values, coerced on construction.
    Rows are stored as tuples, so a QMatrix is immutable once built.
    """

    def __init__(self, rows, cols=None):
        rows = [tuple(RatFunc.coerce(entry) for entry in row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise DomainError(f"Row of length {len(row)} in a matrix with {cols} columns.")
        self.rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = cols

    @classmethod
    def from_columns(cls, columns, nrows):
        for col in columns:
            if len(col) != nrows:
                raise DomainError(f"Column of length {len(col)} in a matrix with {nrows} rows.")
        return cls([[col[i] for col in columns] for i in range(nrows)], cols=len(columns))

    @classmethod
    def identity(cls, n):
        return cls([[RAT_ONE if i == j else RAT_ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zero(cls, nrows, ncols):
        return cls([[RAT_ZERO] * ncols for _ in range(nrows)], cols=ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def column(self, j):
        return [row[j] for row in self.rows]

    def transpose(self):
        return QMatrix([self.column(j) for j in range(self.ncols)], cols=self.nrows)

    def apply(self, vector):
        """Matrix-vector product."""
        if len(vector) != self.ncols:
            raise DomainError(f"Vector of length {len(vector)} against {self.ncols} columns.")
        vector = [RatFunc.coerce(v) for v in vector]
        result = []
        for row in self.rows:
            total = RAT_ZERO
            for entry, v in zip(row, vector):
                if entry and v:
                    total = total + entry * v
            result.append(total)
        return result

    def specialize(self, value):
        """Evaluates every entry at q = value, returning a DomainMatrix over QQ."""
        data = []
        for row in self.rows:
            values = []
            for entry in row:
                x = entry.value_at(value)
                values.append(QQ(x.numerator, x.denominator))
            data.append(values)
        return DomainMatrix(data, self.shape, QQ)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self):
        return f'QMatrix({self.nrows}x{self.ncols})'


# ----------------------------------
# 2. Elimination
# ----------------------------------

def _clear_denominators(row):
    """Scales a RatFunc row to Laurent polynomials by the product of its distinct denominators."""
    scale = ONE
    seen = set()
    for entry in row:
        if not entry.den.is_one() and entry.den not in seen:
            seen.add(entry.den)
            scale = scale * entry.den
    return [(entry * scale).as_laurent() for entry in row]


def _bareiss(rows, ncols):
    """
    Fraction-free row echelon form over Z[q, q^-1]. Every division by the previous
    pivot is exact; DomainError from exquo means it was not and the caller falls back.
    """
    rows = [list(row) for row in rows]
    pivots = []
    prev = ONE
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        top = rows[r]
        pivot = top[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            lead = row[c]
            for j in range(c + 1, ncols):
                entry = pivot * row[j]
                if lead and top[j]:
                    entry = entry - lead * top[j]
                row[j] = entry if prev.is_one() else entry.exquo(prev)
            row[c] = ZERO
        prev = pivot
        pivots.append(c)
        r += 1
    return [[RatFunc.coerce(entry) for entry in row] for row in rows], pivots


def _field_echelon(rows, ncols):
    rows = [list(row) for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        top = rows[r]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            if not row[c]:
                continue
            factor = row[c] / top[c]
            for j in range(c + 1, ncols):
                if top[j]:
                    row[j] = row[j] - factor * top[j]
            row[c] = RAT_ZERO
        pivots.append(c)
        r += 1
    return rows, pivots


def _echelon(rows, ncols):
    """Row echelon form (entries RatFunc) and the pivot columns, first nonzero pivot per column."""
    try:
        return _bareiss([_clear_denominators(row) for row in rows], ncols)
    except DomainError:
        logger.debug("Fraction-free elimination hit an inexact division; using field elimination.")
        return _field_echelon(rows, ncols)


def _back_substitute(rows, pivots, ncols, rhs, fixed=None):
    x = [RAT_ZERO] * ncols
    for col, value in (fixed or {}).items():
        x[col] = RatFunc.coerce(value)
    for r in reversed(range(len(pivots))):
        c = pivots[r]
        row = rows[r]
        total = rhs[r]
        for j in range(c + 1, ncols):
            if row[j] and x[j]:
                total = total - row[j] * x[j]
        x[c] = total / row[c]
    return x


# ----------------------------------
# 3. Public Operations
# ----------------------------------

def solve(M, b):
    """
    Some x with M x = b, or None when the system is inconsistent. Free variables
    are set to zero, so a unique solution is returned exactly.
    """
    if len(b) != M.nrows:
        raise DomainError(f"Right-hand side of length {len(b)} for a matrix with {M.nrows} rows.")
    augmented = [list(row) + [RatFunc.coerce(v)] for row, v in zip(M.rows, b)]
    rows, pivots = _echelon(augmented, M.ncols + 1)
    if M.ncols in pivots:
        return None
    rhs = [rows[r][M.ncols] for r in range(len(pivots))]
    return _back_substitute(rows, pivots, M.ncols, rhs)


def rank(M):
    return len(_echelon(M.rows, M.ncols)[1])


def independent_columns(M):
    """Pivot columns of the echelon form: a maximal independent set of columns."""
    return list(_echelon(M.rows, M.ncols)[1])


def kernel_basis(M):
    """One kernel vector per free column, with a 1 in that column and 0 in the other free ones."""
    rows, pivots = _echelon(M.rows, M.ncols)
    free = [c for c in range(M.ncols) if c not in pivots]
    zeros = [RAT_ZERO] * len(pivots)
    basis = []
    for f in free:
        fixed = {c: (RAT_ONE if c == f else RAT_ZERO) for c in free}
        basis.append(_back_substitute(rows, pivots, M.ncols, zeros, fixed))
    return basis


def inverse(M):
    """Inverse of a square matrix; DomainError when it is singular."""
    n = M.nrows
    if M.ncols != n:
        raise DomainError(f"Only square matrices are invertible, got {M.nrows}x{M.ncols}.")
    augmented = [list(row) + [RAT_ONE if i == j else RAT_ZERO for j in range(n)]
                 for i, row in enumerate(M.rows)]
    rows, pivots = _echelon(augmented, 2 * n)
    if pivots != list(range(n)):
        raise DomainError("Matrix is singular.")
    columns = []
    for k in range(n):
        rhs = [rows[r][n + k] for r in range(n)]
        columns.append(_back_substitute([row[:n] for row in rows], pivots, n, rhs))
    return QMatrix.from_columns(columns, n)


def rank_profile_at(M, value):
    """
    Pivot rows and pivot columns of M specialised at q = value. The selected square
    submatrix is nonsingular at that point, hence nonsingular over Q(q). Raises
    DomainError when some entry has a pole there.
    """
    if not M.nrows or not M.ncols:
        return [], []
    special = M.specialize(value)
    _, col_pivots = special.rref()
    _, row_pivots = special.transpose().rref()
    return list(row_pivots), list(col_pivots)
