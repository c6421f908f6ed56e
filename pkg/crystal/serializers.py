# crystal/serializers.py

from rest_framework import serializers

from qscalar.exceptions import DomainError
from rootsystem.serializers import ReducedWordField
from .models import HighestWeight


class HighestWeightField(serializers.Field):
    """HighestWeight <-> list of fundamental-weight coefficients; reading needs 'diagram' in the context."""

    def to_representation(self, value):
        return list(value.c)

    def to_internal_value(self, data):
        diagram = self.context.get('diagram')
        if diagram is None:
            raise serializers.ValidationError('No diagram in context to read the weight against.')
        try:
            if isinstance(data, str):
                return HighestWeight.parse(diagram, data)
            return HighestWeight(diagram, data)
        except (DomainError, TypeError) as exc:
            raise serializers.ValidationError(str(exc))


class CrystalGraphSerializer(serializers.Serializer):
    """{"word", "depth", "nodes": [{"id", "a", "depth"}], "links": [{"source", "target", "operator"}]}."""

    def to_representation(self, instance):
        return {
            'word': list(instance.word.letters),
            'depth': instance.depth,
            'counts': instance.counts_per_depth(),
            'nodes': [
                {'id': k, 'a': list(vertex.data.a), 'depth': vertex.depth}
                for k, vertex in enumerate(instance.vertices)
            ],
            'links': [
                {'source': source, 'target': target, 'operator': f'f_{i}'}
                for source, i, target in instance.edges
            ],
        }


class DescentRowSerializer(serializers.Serializer):
    nu = serializers.ListField(child=serializers.IntegerField())
    survivors = serializers.IntegerField()
    multiplicity = serializers.IntegerField()


class DescentReportSerializer(serializers.Serializer):
    highest_weight = HighestWeightField(source='lam')
    word = ReducedWordField()
    dimension = serializers.IntegerField()
    total = serializers.IntegerField()
    passed = serializers.BooleanField()
    rows = DescentRowSerializer(source='nonzero_rows', many=True)
    mechanism_problems = serializers.ListField(child=serializers.CharField())
