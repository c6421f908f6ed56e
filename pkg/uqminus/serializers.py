# uqminus/serializers.py

from rest_framework import serializers

from qscalar.exceptions import DomainError
from qscalar.serializers import RatFuncField
from .models import UMinusElement


class TermSerializer(serializers.Serializer):
    word = serializers.ListField(child=serializers.IntegerField(min_value=1))
    coeff = RatFuncField()


class UMinusElementField(serializers.Field):
    """
    UMinusElement <-> [{"word": [...], "coeff": {...}}, ...] in word order.
    Reading needs the diagram in the serializer context.
    """

    def to_representation(self, value):
        return [TermSerializer({'word': list(word), 'coeff': coeff}).data for word, coeff in value.items()]

    def to_internal_value(self, data):
        diagram = self.context.get('diagram')
        if diagram is None:
            raise serializers.ValidationError('No diagram in context to read the element against.')
        terms = TermSerializer(data=data, many=True)
        terms.is_valid(raise_exception=True)
        try:
            result = UMinusElement.zero(diagram)
            for term in terms.validated_data:
                result = result + UMinusElement.word(diagram, term['word'], term['coeff'])
        except DomainError as exc:
            raise serializers.ValidationError(exc.messages)
        return result


class WeightSpaceSerializer(serializers.Serializer):
    nu = serializers.ListField(child=serializers.IntegerField())
    dimension = serializers.IntegerField()
    word_count = serializers.SerializerMethodField()
    basis_words = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    dual_words = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))

    def get_word_count(self, obj):
        return len(obj.words)
