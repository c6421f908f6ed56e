# qscalar/models.py

from fractions import Fraction
from functools import lru_cache

from sympy.polys.densearith import dup_div
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_inner_gcd

from .exceptions import DomainError


# ----------------------------------
# 1. Laurent Polynomials
# ----------------------------------

class LaurentPoly:
    """
    Integer Laurent polynomial in q, stored sparsely as {exponent: coefficient}.
    Zero coefficients are never stored, so two polynomials are equal exactly when
    their coefficient maps are equal. Instances are immutable.
    """

    __slots__ = ('_coeffs', '_hash')

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for exp, coeff in coeffs.items():
                value = int(coeff)
                if value != coeff:
                    raise DomainError(f"Coefficient {coeff} of q^{exp} is not an integer.")
                if value:
                    clean[int(exp)] = value
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _trusted(cls, coeffs):
        """Wraps a dict that is already pruned of zeros (internal fast path)."""
        obj = cls.__new__(cls)
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls({0: value})
        raise TypeError(f"Cannot interpret {value!r} as a Laurent polynomial.")

    # --- Inspection ---

    @property
    def coeffs(self):
        return dict(self._coeffs)

    def items(self):
        """(exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._coeffs.items())

    def coefficient(self, exp):
        return self._coeffs.get(exp, 0)

    def is_zero(self):
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def is_one(self):
        return self._coeffs == {0: 1}

    def is_monomial(self):
        return len(self._coeffs) == 1

    def is_unit(self):
        """True for the units of Z[q, q^-1], i.e. +-q^k."""
        return self.is_monomial() and abs(next(iter(self._coeffs.values()))) == 1

    def is_polynomial(self):
        """True when no negative exponent occurs (an element of Z[q])."""
        return all(exp >= 0 for exp in self._coeffs)

    @property
    def min_exp(self):
        if not self._coeffs:
            raise DomainError("The zero polynomial has no lowest exponent.")
        return min(self._coeffs)

    @property
    def max_exp(self):
        if not self._coeffs:
            raise DomainError("The zero polynomial has no highest exponent.")
        return max(self._coeffs)

    def has_nonnegative_coefficients(self):
        return all(coeff > 0 for coeff in self._coeffs.values())

    # --- Structural operations ---

    def shift(self, k):
        """Multiplication by q^k."""
        if not k:
            return self
        return LaurentPoly._trusted({exp + k: c for exp, c in self._coeffs.items()})

    def bar(self):
        """Substitutes q -> q^-1."""
        return LaurentPoly._trusted({-exp: c for exp, c in self._coeffs.items()})

    def value_at(self, x):
        x = Fraction(x)
        return sum((Fraction(c) * x ** exp for exp, c in self._coeffs.items()), Fraction(0))

    # --- Arithmetic ---

    def __neg__(self):
        return LaurentPoly._trusted({exp: -c for exp, c in self._coeffs.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._coeffs:
            return self
        if not self._coeffs:
            return other
        result = dict(self._coeffs)
        for exp, c in other._coeffs.items():
            total = result.get(exp, 0) + c
            if total:
                result[exp] = total
            else:
                result.pop(exp, None)
        return LaurentPoly._trusted(result)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, int):
            return LaurentPoly.coerce(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._trusted({exp: c * other for exp, c in self._coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return ZERO
        result = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                exp = e1 + e2
                result[exp] = result.get(exp, 0) + c1 * c2
        return LaurentPoly._trusted({exp: c for exp, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_unit():
                raise DomainError(f"Only units of Z[q, q^-1] have negative powers, not {self}.")
            (exp, coeff), = self._coeffs.items()
            return LaurentPoly({exp * n: 1 if n % 2 == 0 else coeff})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        return RatFunc(self) / other

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / RatFunc(self)

    def exquo(self, other):
        """Exact division in Z[q, q^-1]; raises DomainError when the quotient is not Laurent."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise DomainError("Division by the zero polynomial.")
        if self.is_zero():
            return ZERO
        low_a, low_b = self.min_exp, other.min_exp
        quotient, remainder = dup_div(self.shift(-low_a).to_dense(), other.shift(-low_b).to_dense(), ZZ)
        if remainder:
            raise DomainError(f"{other} does not divide {self} in Z[q, q^-1].")
        return LaurentPoly.from_dense(quotient, low_a - low_b)

    # --- Dense conversion (sympy's dup representation: highest degree first) ---

    def to_dense(self):
        if not self._coeffs:
            return []
        if self.min_exp < 0:
            raise DomainError(f"{self} has negative exponents; shift it before densifying.")
        top = self.max_exp
        return [ZZ(self._coeffs.get(exp, 0)) for exp in range(top, -1, -1)]

    @classmethod
    def from_dense(cls, dense, shift=0):
        top = len(dense) - 1
        return cls({top - k + shift: int(c) for k, c in enumerate(dense) if c})

    # --- Comparison and display ---

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if isinstance(other, LaurentPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __str__(self):
        if not self._coeffs:
            return '0'
        text = ''
        for exp, coeff in sorted(self._coeffs.items(), reverse=True):
            term = _format_term(exp, coeff)
            if not text:
                text = term
            elif term.startswith('-'):
                text += ' - ' + term[1:]
            else:
                text += ' + ' + term
        return text

    def __repr__(self):
        return f'LaurentPoly({self})'


def _format_term(exp, coeff):
    if exp == 0:
        return str(coeff)
    mono = 'q' if exp == 1 else f'q^{exp}'
    if coeff == 1:
        return mono
    if coeff == -1:
        return '-' + mono
    return f'{coeff}{mono}'


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
Q = LaurentPoly({1: 1})


# ----------------------------------
# 2. Rational Functions
# ----------------------------------

def _reduce(num, den):
    """
    Canonical form: the denominator is a polynomial with nonzero constant term and
    positive leading coefficient, coprime to the numerator; unit denominators become 1.
    """
    if den.is_zero():
        raise DomainError("Denominator of a rational function must be nonzero.")
    if num.is_zero():
        return ZERO, ONE
    if den.is_unit():
        (exp, coeff), = den._coeffs.items()
        return num.shift(-exp) * coeff, ONE
    low_den = den.min_exp
    num, den = num.shift(-low_den), den.shift(-low_den)
    low_num = num.min_exp
    _, cff, cfg = dup_inner_gcd(num.shift(-low_num).to_dense(), den.to_dense(), ZZ)
    num = LaurentPoly.from_dense(cff, low_num)
    den = LaurentPoly.from_dense(cfg)
    if den.coefficient(den.max_exp) < 0:
        num, den = -num, -den
    return num, den


class RatFunc:
    """
    Element of Q(q) as a reduced quotient of Laurent polynomials. The canonical
    form makes equality structural; a RatFunc is Laurent exactly when its
    denominator is 1.
    """

    __slots__ = ('num', 'den', '_hash')

    def __init__(self, num, den=None):
        num = LaurentPoly.coerce(num)
        den = ONE if den is None else LaurentPoly.coerce(den)
        self.num, self.den = _reduce(num, den)
        self._hash = None

    @classmethod
    def _trusted(cls, num, den=ONE):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value):
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (LaurentPoly, int)):
            return cls._trusted(LaurentPoly.coerce(value))
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        raise TypeError(f"Cannot interpret {value!r} as a rational function.")

    # --- Inspection ---

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        return self.den.is_one()

    def as_laurent(self):
        if not self.is_laurent():
            raise DomainError(f"{self} is not a Laurent polynomial.")
        return self.num

    def bar(self):
        if self.is_laurent():
            return RatFunc._trusted(self.num.bar())
        return RatFunc(self.num.bar(), self.den.bar())

    def regular_at_zero(self):
        # The canonical denominator has nonzero constant term.
        return self.num.is_zero() or self.num.min_exp >= 0

    def value_at_zero(self):
        if not self.regular_at_zero():
            raise DomainError(f"{self} has a pole at q = 0.")
        return Fraction(self.num.coefficient(0), self.den.coefficient(0))

    def value_at(self, x):
        den = self.den.value_at(x)
        if den == 0:
            raise DomainError(f"{self} has a pole at q = {x}.")
        return self.num.value_at(x) / den

    # --- Arithmetic ---

    def __neg__(self):
        return RatFunc._trusted(-self.num, self.den)

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFunc._trusted(self.num + other.num)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RAT_ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc._trusted(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DomainError("Division by the zero rational function.")
        if other.num.is_unit() and other.den.is_one():
            (exp, coeff), = other.num._coeffs.items()
            return RatFunc._trusted(self.num.shift(-exp) * coeff, self.den)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if n < 0:
            return RAT_ONE / (self ** -n)
        return RatFunc._trusted(self.num ** n, self.den ** n)

    # --- Comparison and display ---

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num._coeffs) > 1:
            num = f'({num})'
        return f'{num}/({self.den})'

    def __repr__(self):
        return f'RatFunc({self})'


def _as_ratfunc(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (LaurentPoly, int, Fraction)):
        return RatFunc.coerce(value)
    return NotImplemented


RAT_ZERO = RatFunc._trusted(ZERO)
RAT_ONE = RatFunc._trusted(ONE)


# ----------------------------------
# 3. Quantum Numbers and Scalar Operations
# ----------------------------------

def quantum_integer(n):
    """[n] = q^(n-1) + q^(n-3) + ... + q^(-n+1)."""
    if n < 1:
        raise DomainError(f"Quantum integers are defined for n >= 1, got {n}.")
    return LaurentPoly._trusted({n - 1 - 2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def quantum_factorial(n):
    """[n]! = [n][n-1]...[2], with [0]! = [1]! = 1."""
    if n < 0:
        raise DomainError(f"Quantum factorials are defined for n >= 0, got {n}.")
    result = ONE
    for k in range(2, n + 1):
        result = result * quantum_integer(k)
    return result


def q_power(exp):
    return LaurentPoly._trusted({exp: 1})


# q - q^-1, the denominator of the Cartan correction terms.
Q_MINUS_QINV = LaurentPoly({1: 1, -1: -1})


def bar_scalar(f):
    """The bar involution q -> q^-1 on LaurentPoly or RatFunc."""
    return f.bar()


def regular_at_zero(f):
    return RatFunc.coerce(f).regular_at_zero()


def value_at_zero(f):
    return RatFunc.coerce(f).value_at_zero()


def split_antisymmetric(p):
    """
    For p with bar(p) = -p, returns the polynomial f (nonnegative exponents) such
    that p = q f(q) - q^-1 f(q^-1). The coefficient of q^n in f is that of q^(n+1) in p.
    """
    p = RatFunc.coerce(p).as_laurent() if not isinstance(p, LaurentPoly) else p
    if p.bar() != -p:
        raise DomainError(f"{p} is not bar-antisymmetric.")
    return LaurentPoly({exp - 1: c for exp, c in p._coeffs.items() if exp >= 1})
