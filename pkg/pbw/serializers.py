# pbw/serializers.py

from rest_framework import serializers

from qscalar.exceptions import DomainError
from qscalar.serializers import RatFuncField
from rootsystem.models import ReducedWord
from .models import LusztigData


class LusztigDataSerializer(serializers.Serializer):
    """{"word": [...], "a": [...]}; reading needs 'diagram' in the context."""
    word = serializers.ListField(child=serializers.IntegerField(min_value=1))
    a = serializers.ListField(child=serializers.IntegerField(min_value=0))

    def to_representation(self, instance):
        return {'word': list(instance.word.letters), 'a': list(instance.a)}

    def validate(self, attrs):
        diagram = self.context.get('diagram')
        if diagram is None:
            raise serializers.ValidationError('No diagram in context to read the data against.')
        try:
            word = ReducedWord(diagram, attrs['word']).require_full()
            attrs['data'] = LusztigData(word, attrs['a'])
        except DomainError as exc:
            raise serializers.ValidationError(exc.messages)
        return attrs

    def create(self, validated_data):
        return validated_data['data']


class ExpansionEntrySerializer(serializers.Serializer):
    data = LusztigDataSerializer()
    coeff = RatFuncField()


def expansion_rows(coords):
    """A {LusztigData: scalar} map as JSON rows, highest data first."""
    return [ExpansionEntrySerializer({'data': d, 'coeff': c}).data
            for d, c in sorted(coords.items(), key=lambda item: item[0].a, reverse=True)]
