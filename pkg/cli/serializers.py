# cli/serializers.py

from rest_framework import serializers

from rootsystem.serializers import ReducedWordField


class CheckResultSerializer(serializers.Serializer):
    suite = serializers.CharField()
    name = serializers.CharField()
    passed = serializers.BooleanField()
    detail = serializers.CharField(allow_blank=True)


class SuiteNoteSerializer(serializers.Serializer):
    suite = serializers.CharField()
    name = serializers.CharField()
    detail = serializers.CharField()


class SuiteRunSerializer(serializers.Serializer):
    """The verify report: run settings, counts, every check result and the informational notes."""
    type = serializers.CharField(source='config.diagram.cartan_type')
    word = ReducedWordField(source='config.word')
    sweep_height = serializers.IntegerField(source='config.sweep_height')
    seed = serializers.IntegerField(source='config.seed')
    checked = serializers.SerializerMethodField()
    passed = serializers.SerializerMethodField()
    failed = serializers.SerializerMethodField()
    results = CheckResultSerializer(many=True)
    notes = SuiteNoteSerializer(many=True)

    def get_checked(self, obj):
        return len(obj.results)

    def get_passed(self, obj):
        return len(obj.results) - len(obj.failed)

    def get_failed(self, obj):
        return len(obj.failed)
