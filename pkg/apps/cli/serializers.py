"""
Sérialiseurs des documents émis par la commande ``vaw``.

Les rapports des autres applications sont repris tels quels ; ce module
ajoute les enveloppes propres à la ligne de commande.
"""

from fractions import Fraction

from rest_framework import serializers

from apps.core.serializers import RationalField, SchemaSerializer, format_fraction
from apps.curves.services import LOCI
from apps.fock.serializers import FieldElementSerializer
from apps.orbifold.models import SECTOR_CHOICES
from apps.relations.serializers import RelationReportSerializer
from apps.series.serializers import IntSeriesSerializer


class OpeResultSerializer(SchemaSerializer):
    """Valeur d'une expression : forme canonique, poids présents et termes."""

    algebra = serializers.CharField()
    expression = serializers.CharField()
    sector = serializers.ChoiceField(choices=SECTOR_CHOICES)
    weights = serializers.SerializerMethodField()
    terms = serializers.SerializerMethodField()

    def get_weights(self, obj):
        return [format_fraction(Fraction(weight2, 2)) for weight2 in sorted(obj['element'].weights2())]

    def get_terms(self, obj):
        return FieldElementSerializer(obj['element']).data['terms']


class DecoupleBatchSerializer(SchemaSerializer):
    algebra = serializers.CharField()
    generators = serializers.CharField()
    reports = RelationReportSerializer(many=True)


class HilbertSerializer(IntSeriesSerializer):
    """Série de dimensions d'un secteur ; algèbre et secteur viennent du contexte."""

    algebra = serializers.SerializerMethodField()
    sector = serializers.SerializerMethodField()

    def get_algebra(self, obj):
        return self.context['algebra']

    def get_sector(self, obj):
        return self.context['sector']


class CurvesRequestSerializer(serializers.Serializer):
    """Validation des options de la sous-commande ``curves``."""

    n = serializers.IntegerField(min_value=0)
    m = serializers.IntegerField(min_value=0)
    psi = RationalField(required=False, allow_null=True)
    locus = serializers.CharField(required=False, allow_null=True)

    def validate_locus(self, value):
        if value and value not in LOCI:
            raise serializers.ValidationError(f"Lieu inconnu : {value} (connus : {', '.join(sorted(LOCI))})")
        return value


class SuiteItemSerializer(serializers.Serializer):
    name = serializers.CharField()
    passed = serializers.BooleanField()
    seconds = serializers.FloatField()


class SuiteSerializer(SchemaSerializer):
    results = SuiteItemSerializer(many=True)
    passed = serializers.BooleanField()


class ErrorSerializer(SchemaSerializer):
    error = serializers.CharField()
    message = serializers.CharField()
    details = serializers.DictField(required=False)
