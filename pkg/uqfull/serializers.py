# uqfull/serializers.py

from rest_framework import serializers

from qscalar.exceptions import DomainError
from qscalar.serializers import RatFuncField
from .models import UqElement


class TriTermSerializer(serializers.Serializer):
    fword = serializers.ListField(child=serializers.IntegerField(min_value=1))
    kvec = serializers.ListField(child=serializers.IntegerField())
    eword = serializers.ListField(child=serializers.IntegerField(min_value=1))
    coeff = RatFuncField()


class UqElementField(serializers.Field):
    """UqElement <-> list of TriTerm records; reading needs 'diagram' in the context."""

    def to_representation(self, value):
        return [TriTermSerializer(term._asdict()).data for term in value.tri_terms()]

    def to_internal_value(self, data):
        diagram = self.context.get('diagram')
        if diagram is None:
            raise serializers.ValidationError('No diagram in context to read the element against.')
        terms = TriTermSerializer(data=data, many=True)
        terms.is_valid(raise_exception=True)
        try:
            result = UqElement.zero(diagram)
            for term in terms.validated_data:
                result = result + UqElement.monomial(
                    diagram, term['fword'], term['kvec'], term['eword'], term['coeff'],
                )
        except DomainError as exc:
            raise serializers.ValidationError(exc.messages)
        return result
