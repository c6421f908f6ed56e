# qscalar/serializers.py

from rest_framework import serializers

from .models import LaurentPoly, RatFunc


# ----------------------------------
# 1. Scalar Fields
# ----------------------------------

class LaurentPolyField(serializers.Field):
    """
    LaurentPoly <-> {"exp": "coeff", ...}. Exponents are decimal integer keys,
    coefficients decimal strings so arbitrary precision survives any JSON parser.
    """
    default_error_messages = {
        'invalid': 'Expected an object mapping integer exponents to integer strings.',
    }

    def to_representation(self, value):
        value = LaurentPoly.coerce(value)
        return {str(exp): str(coeff) for exp, coeff in value.items()}

    def to_internal_value(self, data):
        if not isinstance(data, dict):
            self.fail('invalid')
        try:
            return LaurentPoly({int(exp): int(coeff) for exp, coeff in data.items()})
        except (TypeError, ValueError):
            self.fail('invalid')


class RatFuncField(serializers.Field):
    """RatFunc <-> {"num": LaurentPoly-JSON, "den": LaurentPoly-JSON}."""
    default_error_messages = {
        'invalid': 'Expected an object with "num" and "den" Laurent polynomials.',
        'zero_denominator': 'The denominator must be nonzero.',
    }

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        self._poly = LaurentPolyField()

    def to_representation(self, value):
        value = RatFunc.coerce(value)
        return {
            'num': self._poly.to_representation(value.num),
            'den': self._poly.to_representation(value.den),
        }

    def to_internal_value(self, data):
        if not isinstance(data, dict) or 'num' not in data:
            self.fail('invalid')
        num = self._poly.to_internal_value(data['num'])
        den = self._poly.to_internal_value(data.get('den', {'0': '1'}))
        if den.is_zero():
            self.fail('zero_denominator')
        return RatFunc(num, den)

