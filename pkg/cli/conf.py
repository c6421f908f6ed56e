# cli/conf.py

from typing import NamedTuple

from django.conf import settings
from rest_framework import serializers

from qscalar.conf import DEFAULTS, quantum_setting
from qscalar.exceptions import DomainError
from rootsystem.models import DynkinDiagram, ReducedWord
from canonical.models import ORIENTATIONS
from crystal.models import reference_word

OUTPUT_FORMATS = ('json', 'csv', 'dot', 'text')

# Keys a config file may set, as spelled on the command line.
FILE_KEYS = {
    'type': 'cartan_type',
    'word': 'word',
    'max-height': 'max_height',
    'format': 'output_format',
    'seed': 'seed',
    'orientation': 'orientation',
    'verify-root-vectors': 'verify_root_vectors',
    'validate-dimensions': 'validate_dimensions',
}


class RunConfig(NamedTuple):
    diagram: DynkinDiagram
    word: ReducedWord
    height_bound: int
    sweep_height: int
    output_format: str
    seed: int
    orientation: str
    verify_root_vectors: bool
    validate_dimensions: bool

    def quantum_settings(self):
        """The QUANTUM settings dict this run computes under."""
        merged = dict(DEFAULTS)
        merged.update(getattr(settings, 'QUANTUM', {}))
        merged.update({
            'HEIGHT_BOUND': self.height_bound,
            'SEED': self.seed,
            'SECOND_ORDER_ORIENTATION': self.orientation,
            'VERIFY_ROOT_VECTORS': self.verify_root_vectors,
            'VALIDATE_DIMENSIONS': self.validate_dimensions,
        })
        return merged


def read_config_file(path):
    """
    Parses a plain-text file of key=value lines. Blank lines and lines starting
    with # are skipped; keys use the command-line spelling (max-height, format, ...).
    """
    values = {}
    try:
        with open(path, encoding='utf-8') as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise DomainError(f"Cannot read config file {path}: {exc}")
    for number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        key, sep, value = line.partition('=')
        key = key.strip().lower().replace('_', '-')
        if not sep or key not in FILE_KEYS:
            raise DomainError(f"{path}:{number}: expected one of {sorted(FILE_KEYS)} as key=value, got '{line}'.")
        values[FILE_KEYS[key]] = value.strip()
    return values


class RunConfigSerializer(serializers.Serializer):
    """Validates the merged file and flag values into a RunConfig."""
    cartan_type = serializers.CharField(default='A3')
    word = serializers.CharField(required=False, allow_blank=True)
    max_height = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    output_format = serializers.ChoiceField(choices=OUTPUT_FORMATS, required=False)
    seed = serializers.IntegerField(required=False)
    orientation = serializers.ChoiceField(choices=ORIENTATIONS, required=False)
    verify_root_vectors = serializers.BooleanField(required=False)
    validate_dimensions = serializers.BooleanField(required=False)

    def validate(self, attrs):
        try:
            diagram = DynkinDiagram.of(attrs['cartan_type'])
            diagram.require_full_rank()
            if attrs.get('word'):
                word = ReducedWord.parse(diagram, attrs['word']).require_full()
            else:
                word = reference_word(diagram)
        except DomainError as exc:
            raise serializers.ValidationError({'word': exc.messages})
        attrs['diagram'] = diagram
        attrs['word'] = word
        return attrs

    def create(self, validated_data):
        max_height = validated_data.get('max_height')
        if max_height is None:
            height_bound = quantum_setting('HEIGHT_BOUND')
            sweep_height = min(quantum_setting('SWEEP_HEIGHT'), height_bound)
        else:
            height_bound = sweep_height = max_height
        return RunConfig(
            diagram=validated_data['diagram'],
            word=validated_data['word'],
            height_bound=height_bound,
            sweep_height=sweep_height,
            output_format=validated_data.get('output_format', quantum_setting('OUTPUT_FORMAT')),
            seed=validated_data.get('seed', quantum_setting('SEED')),
            orientation=validated_data.get('orientation', quantum_setting('SECOND_ORDER_ORIENTATION')),
            verify_root_vectors=validated_data.get('verify_root_vectors', quantum_setting('VERIFY_ROOT_VECTORS')),
            validate_dimensions=validated_data.get('validate_dimensions', quantum_setting('VALIDATE_DIMENSIONS')),
        )


def load_run_config(options):
    """File values first, then every flag that was given. Raises DomainError when invalid."""
    values = {}
    if options.get('config'):
        values.update(read_config_file(options['config']))
    for key in FILE_KEYS.values():
        if options.get(key) is not None:
            values[key] = options[key]
    serializer = RunConfigSerializer(data=values)
    if not serializer.is_valid():
        messages = [f"{field}: {' '.join(str(e) for e in errors)}" for field, errors in serializer.errors.items()]
        raise DomainError(messages)
    return serializer.save()
