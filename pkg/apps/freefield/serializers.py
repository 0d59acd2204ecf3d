"""
Sérialiseurs pour l'application freefield.

Forme JSON d'une algèbre :
{generators: [{name, parity, weight2x, z2sign}], pairing: [[...]]}.
"""

from rest_framework import serializers

from apps.core.serializers import RationalField, SchemaSerializer

from .exceptions import DuplicateGenerator, InvalidPairing
from .models import PARITY_CHOICES, Z2_CHOICES, GeneratorSpec


class GeneratorSpecSerializer(serializers.Serializer):
    """Sérialiseur d'un générateur."""

    name = serializers.CharField(max_length=32)
    parity = serializers.ChoiceField(choices=PARITY_CHOICES)
    weight2x = serializers.IntegerField(source='weight2', min_value=1)
    z2sign = serializers.ChoiceField(choices=Z2_CHOICES)

    def create(self, validated_data):
        return GeneratorSpec(**validated_data)


class FreeFieldSpecSerializer(SchemaSerializer):
    """Sérialiseur complet d'une algèbre de champs libres."""

    label = serializers.CharField(required=False, allow_blank=True, default='')
    generators = GeneratorSpecSerializer(many=True)
    pairing = serializers.ListField(child=serializers.ListField(child=RationalField()))

    def validate(self, attrs):
        """Vérifie la taille de l'appariement et sa loi de signe."""
        size = len(attrs['generators'])
        if len(attrs['pairing']) != size or any(len(row) != size for row in attrs['pairing']):
            raise serializers.ValidationError(
                "La matrice d'appariement doit être carrée et de la taille de la liste des générateurs."
            )
        try:
            self._build(attrs)
        except (InvalidPairing, DuplicateGenerator) as e:
            raise serializers.ValidationError({'pairing': e.message})
        return attrs

    @staticmethod
    def _build(attrs):
        from .services import make_spec

        generators = [GeneratorSpec(**data) for data in attrs['generators']]
        return make_spec(generators, attrs['pairing'], attrs.get('label', ''))

    def create(self, validated_data):
        return self._build(validated_data)


class EmbeddingMapSerializer(SchemaSerializer):
    """Plongement : algèbres source et cible et images des générateurs."""

    source = FreeFieldSpecSerializer()
    target = FreeFieldSpecSerializer()
    images = serializers.SerializerMethodField()

    def get_images(self, obj):
        from apps.fock.serializers import FieldElementSerializer

        return {name: FieldElementSerializer(image).data for name, image in sorted(obj.images.items())}
