# canonical/serializers.py

from rest_framework import serializers

from pbw.serializers import LusztigDataSerializer
from uqminus.serializers import UMinusElementField


class CanonicalElementSerializer(serializers.Serializer):
    """One canonical element: its datum, PBW coordinates as Laurent strings and word form."""
    data = LusztigDataSerializer()
    coords = serializers.SerializerMethodField()
    element = UMinusElementField()
    text = serializers.SerializerMethodField()

    def get_coords(self, obj):
        return [
            {'a': list(d.a), 'coeff': str(c)}
            for d, c in sorted(obj.coords.items(), key=lambda item: item[0].a, reverse=True)
        ]

    def get_text(self, obj):
        return str(obj.element)


def table_rows(basis):
    """Plain-text rows: datum, PBW coordinates, word form."""
    rows = []
    for b in basis:
        coords = ' + '.join(f'({c})F{d}' for d, c in sorted(b.coords.items(), key=lambda item: item[0].a, reverse=True))
        rows.append([str(b.data), coords, str(b.element)])
    return rows
