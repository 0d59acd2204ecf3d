"""
Sérialiseurs pour l'application relations.

Les combinaisons de mots sont écrites dans la grammaire des expressions
(NO(a, b), D^k, U(i,j,a,b)) avec des coefficients "p/q".
"""

from rest_framework import serializers

from apps.core.serializers import RationalField, SchemaSerializer, format_fraction
from apps.fock.serializers import FieldElementSerializer
from apps.orbifold.models import SECTOR_CHOICES

from .models import STATUS_CHOICES


class WeightBasisSerializer(SchemaSerializer):
    weight = RationalField()
    sector = serializers.ChoiceField(choices=SECTOR_CHOICES)
    size = serializers.SerializerMethodField()
    monomials = serializers.SerializerMethodField()

    def get_size(self, obj):
        return len(obj)

    def get_monomials(self, obj):
        return obj.labels()


class WordTermSerializer(serializers.Serializer):
    coeff = RationalField(source='coefficient')
    word = serializers.CharField(source='expression')
    degree = serializers.IntegerField()


class RelationReportSerializer(SchemaSerializer):
    """Rapport de découplage : statut, combinaison, résidu et certificat."""

    status = serializers.ChoiceField(choices=STATUS_CHOICES)
    target = serializers.SerializerMethodField()
    generators = serializers.SerializerMethodField()
    combination = WordTermSerializer(many=True)
    residual = serializers.SerializerMethodField()
    certificate = serializers.DictField(allow_null=True)

    def get_target(self, obj):
        return FieldElementSerializer(obj.target).data['terms']

    def get_generators(self, obj):
        return obj.generators.label or obj.generators.kind

    def get_residual(self, obj):
        return FieldElementSerializer(obj.residual).data['terms']


class TypeProfileSerializer(SchemaSerializer):
    type = serializers.SerializerMethodField()
    counts = serializers.SerializerMethodField()

    def get_type(self, obj):
        return str(obj)

    def get_counts(self, obj):
        return [{'weight': format_fraction(weight), 'count': obj.counts[weight]}
                for weight in obj.weights()]


class WeakClosureSerializer(SchemaSerializer):
    """Dimensions obtenues et attendues par poids."""

    generators = serializers.SerializerMethodField()
    weight_bound = serializers.IntegerField()
    depth = serializers.IntegerField()
    rounds = serializers.IntegerField()
    saturated = serializers.BooleanField()
    stable = serializers.BooleanField()
    dimensions = serializers.SerializerMethodField()

    def get_generators(self, obj):
        return [entry.label for entry in obj.generators]

    def get_dimensions(self, obj):
        return [
            {'weight': format_fraction(weight), 'obtained': obtained, 'invariant': expected}
            for weight, (obtained, expected) in sorted(obj.dimensions.items())
        ]


class IdentityReportSerializer(SchemaSerializer):
    name = serializers.CharField()
    params = serializers.DictField(child=serializers.IntegerField())
    holds = serializers.BooleanField()
    labels = serializers.ListField(child=serializers.CharField())
    computed = serializers.SerializerMethodField()
    displayed = serializers.ListField(child=RationalField())
    erratum = serializers.CharField(allow_blank=True)
    lhs = serializers.SerializerMethodField()
    rhs = serializers.SerializerMethodField()

    def get_computed(self, obj):
        if obj.computed is None:
            return None
        return [format_fraction(value) for value in obj.computed]

    def get_lhs(self, obj):
        return FieldElementSerializer(obj.lhs).data['terms']

    def get_rhs(self, obj):
        return FieldElementSerializer(obj.rhs).data['terms']
