# rootsystem/serializers.py

from rest_framework import serializers

from qscalar.exceptions import DomainError
from .models import TWO_TERM, THREE_TERM, BraidMove, DynkinDiagram, ReducedWord, sigma


class RootField(serializers.Field):
    """Root -> list of simple-root coefficients."""

    def to_representation(self, value):
        return list(value.coords)

    def to_internal_value(self, data):
        if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
            raise serializers.ValidationError('A root is a list of integers.')
        return tuple(data)


class ReducedWordField(serializers.Field):
    """
    ReducedWord <-> list of nodes. Parsing needs the diagram, taken from the
    serializer context key 'diagram'.
    """

    def to_representation(self, value):
        return list(value.letters)

    def to_internal_value(self, data):
        diagram = self.context.get('diagram')
        if diagram is None:
            raise serializers.ValidationError('No diagram in context to read the word against.')
        try:
            if isinstance(data, str):
                return ReducedWord.parse(diagram, data)
            return ReducedWord(diagram, data)
        except (DomainError, TypeError, ValueError) as exc:
            raise serializers.ValidationError(str(exc))


class BraidMoveSerializer(serializers.Serializer):
    position = serializers.IntegerField(min_value=0)
    kind = serializers.ChoiceField(choices=[TWO_TERM, THREE_TERM])

    def create(self, validated_data):
        return BraidMove(validated_data['position'], validated_data['kind'])


class RootRowSerializer(serializers.Serializer):
    """One line of a beta-sequence listing."""
    position = serializers.IntegerField()
    letter = serializers.IntegerField()
    root = RootField()
    label = serializers.CharField()


class DiagramSerializer(serializers.Serializer):
    cartan_type = serializers.CharField()
    rank = serializers.IntegerField(read_only=True)
    num_positive_roots = serializers.IntegerField(read_only=True)
    sigma = serializers.SerializerMethodField()

    def get_sigma(self, obj):
        return {str(i): j for i, j in sigma(obj).items()}

    def validate_cartan_type(self, value):
        try:
            return DynkinDiagram.of(value).cartan_type
        except DomainError as exc:
            raise serializers.ValidationError(exc.messages)
