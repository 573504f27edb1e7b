from __future__ import unicode_literals

import logging

from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from informative_selection.conf import Settings
from informative_selection.designs import models as designs
from informative_selection.superpop import models as superpop
from .models import ExperimentConfig


logger = logging.getLogger(__name__)

CONDITION_GROUPS = ('A0', 'A1', 'A2', 'A3', 'A4')


def _build(factory, **kwargs):
    try:
        return factory(**kwargs)
    except DjangoValidationError as error:
        raise serializers.ValidationError(error.messages)


class SuperpopModelSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=superpop.SuperpopModel.Kinds.CHOICES)
    a = serializers.FloatField(required=False)
    b = serializers.FloatField(required=False)
    rate = serializers.FloatField(required=False)
    knots = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        required=False)

    def validate(self, attrs):
        kind = attrs['kind']
        Kinds = superpop.SuperpopModel.Kinds
        if kind == Kinds.PIECEWISE_LINEAR:
            if 'knots' not in attrs:
                raise serializers.ValidationError({'knots': 'Piecewise linear density needs knots.'})
            attrs['instance'] = _build(superpop.PiecewiseLinearDensity, knots=attrs['knots'])
        elif kind == Kinds.UNIFORM:
            attrs['instance'] = _build(superpop.Uniform, a=attrs.get('a', 0.0), b=attrs.get('b', 1.0))
        else:
            attrs['instance'] = _build(superpop.TruncatedExponential, rate=attrs.get('rate', 1.0),
                                       a=attrs.get('a', 0.0), b=attrs.get('b', 1.0))
        return attrs

    def create(self, validated_data):
        return validated_data['instance']


class DesignSerializer(serializers.Serializer):
    variant = serializers.ChoiceField(choices=designs.Design.Variants.CHOICES)
    n = serializers.IntegerField(required=False, min_value=0)
    fraction = serializers.FloatField(required=False)
    p = serializers.FloatField(required=False)
    pi = serializers.ListField(child=serializers.FloatField(), required=False)
    permuted = serializers.BooleanField(required=False, default=True)
    n_star = serializers.FloatField(required=False)
    z_model = SuperpopModelSerializer(required=False)
    a = serializers.FloatField(required=False)
    b = serializers.FloatField(required=False)
    tau = serializers.FloatField(required=False)
    tau_offset = serializers.FloatField(required=False, default=0.0)
    mode = serializers.ChoiceField(choices=designs.CutOff.Modes.CHOICES, default=designs.CutOff.Modes.CUTOFF)
    stratum_fractions = serializers.ListField(child=serializers.FloatField(), required=False)
    sampling_fractions = serializers.ListField(child=serializers.FloatField(), required=False)

    REQUIRED = {
        designs.Design.Variants.BERNOULLI: ('p',),
        designs.Design.Variants.POISSON_FIXED_PI: ('pi',),
        designs.Design.Variants.POISSON_PROPORTIONAL_Z: ('z_model',),
        designs.Design.Variants.POISSON_PATHOLOGICAL: ('a', 'b'),
        designs.Design.Variants.LENGTH_BIASED: ('tau',),
        designs.Design.Variants.CLUSTER_SPLIT: ('tau',),
        designs.Design.Variants.CUTOFF: ('tau',),
        designs.Design.Variants.ENDOGENOUS_STRATA: ('stratum_fractions', 'sampling_fractions'),
    }

    def validate(self, attrs):
        Variants = designs.Design.Variants
        variant = attrs['variant']
        missing = [name for name in self.REQUIRED.get(variant, ()) if name not in attrs]
        if missing:
            raise serializers.ValidationError(
                dict((name, 'This field is required for %s.' % variant) for name in missing))

        size = {'n': attrs.get('n'), 'fraction': attrs.get('fraction')}
        if variant == Variants.SRSWOR:
            design = _build(designs.SimpleRandomSampling, **size)
        elif variant == Variants.BERNOULLI:
            design = _build(designs.Bernoulli, p=attrs['p'])
        elif variant == Variants.POISSON_FIXED_PI:
            design = _build(designs.PoissonFixedPi, pi=attrs['pi'], permuted=attrs['permuted'])
        elif variant == Variants.POISSON_PROPORTIONAL_Z:
            z_model = SuperpopModelSerializer().create(attrs['z_model'])
            design = _build(designs.PoissonProportionalZ, z_model=z_model,
                            n_star=attrs.get('n_star'), fraction=attrs.get('fraction'))
        elif variant == Variants.POISSON_PATHOLOGICAL:
            design = _build(designs.PoissonPathological, a=attrs['a'], b=attrs['b'])
        elif variant == Variants.LENGTH_BIASED:
            design = _build(designs.LengthBiasedPoisson, tau=attrs['tau'], tau_offset=attrs['tau_offset'])
        elif variant == Variants.CLUSTER_SPLIT:
            design = _build(designs.ClusterSplit, tau=attrs['tau'])
        elif variant == Variants.CUTOFF:
            design = _build(designs.CutOff, tau=attrs['tau'], mode=attrs['mode'], **size)
        elif variant == Variants.PPS_WITH_REPLACEMENT:
            design = _build(designs.PpsWithReplacement, **size)
        else:
            design = _build(designs.EndogenousStrata, stratum_fractions=attrs['stratum_fractions'],
                            sampling_fractions=attrs['sampling_fractions'])
        attrs['instance'] = design
        return attrs

    def create(self, validated_data):
        return validated_data['instance']


class ExperimentSerializer(serializers.Serializer):
    model = SuperpopModelSerializer()
    design = DesignSerializer()
    n_grid = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=1)
    replicates = serializers.IntegerField(min_value=1, default=100)
    seed = serializers.IntegerField(min_value=0, max_value=2 ** 64 - 1, default=0)
    quantile_interval = serializers.ListField(
        child=serializers.FloatField(), min_length=2, max_length=2, default=[0.1, 0.9])
    quantile_grid = serializers.IntegerField(min_value=2, required=False)
    mode = serializers.ChoiceField(choices=ExperimentConfig.Modes.CHOICES, default=ExperimentConfig.Modes.CONVERGE)
    output = serializers.CharField(required=False)
    target = serializers.ChoiceField(choices=ExperimentConfig.Targets.CHOICES,
                                     default=ExperimentConfig.Targets.LIMIT)
    settings = serializers.DictField(required=False)
    conditions = serializers.ListField(child=serializers.ChoiceField(choices=CONDITION_GROUPS), required=False)
    y_pairs = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2), required=False)
    alpha_grid = serializers.ListField(child=serializers.FloatField(), required=False)
    pair_draws = serializers.IntegerField(min_value=1, default=10)
    population_size = serializers.IntegerField(min_value=1, required=False)
    x = serializers.FloatField(min_value=0.0, max_value=1.0, default=0.5)
    normalized = serializers.BooleanField(default=True)

    def validate_n_grid(self, value):
        if any(b <= a for a, b in zip(value, value[1:])):
            raise serializers.ValidationError('N-grid must be strictly increasing.')
        return value

    def validate_quantile_interval(self, value):
        lower, upper = value
        if not 0 < lower <= upper < 1:
            raise serializers.ValidationError('Quantile interval must lie inside (0, 1).')
        return value

    def validate_settings(self, value):
        unknown = sorted(set(value) - set(Settings.INFORMATIVE_SELECTION))
        if unknown:
            raise serializers.ValidationError('Unknown settings: %s.' % ', '.join(unknown))
        return value

    def create(self, validated_data):
        data = dict(validated_data)
        data['model'] = self.fields['model'].create(data['model'])
        data['design'] = self.fields['design'].create(data['design'])
        return ExperimentConfig(**data)


class InclusionEstimatesSerializer(serializers.Serializer):
    m_hat = serializers.FloatField(allow_null=True)
    v_hat = serializers.FloatField(allow_null=True)
    mprime_12 = serializers.FloatField(allow_null=True)
    mprime_21 = serializers.FloatField(allow_null=True)
    c_hat = serializers.FloatField(allow_null=True)
    d_hat = serializers.FloatField(allow_null=True)
    se_m = serializers.FloatField(allow_null=True)
    se_v = serializers.FloatField(allow_null=True)
    se_mprime_12 = serializers.FloatField(allow_null=True)
    se_mprime_21 = serializers.FloatField(allow_null=True)
    se_c = serializers.FloatField(allow_null=True)
    se_d = serializers.FloatField(allow_null=True)
    reps = serializers.IntegerField()


class ConditionEntrySerializer(serializers.Serializer):
    condition = serializers.CharField()
    sizes = serializers.ListField(child=serializers.IntegerField())
    estimates = serializers.ListField(child=serializers.FloatField())
    standard_errors = serializers.ListField(child=serializers.FloatField())
    slope = serializers.FloatField(allow_null=True)
    r_squared = serializers.FloatField(allow_null=True)
    verdict = serializers.CharField()
    details = serializers.DictField()
    inclusion = InclusionEstimatesSerializer(many=True)


class ConditionReportSerializer(serializers.Serializer):
    design = serializers.SerializerMethodField()
    model = serializers.SerializerMethodField()
    verdict = serializers.CharField()
    entries = ConditionEntrySerializer(many=True)

    def get_design(self, report):
        return report.design.to_dict()

    def get_model(self, report):
        return report.model.to_dict()


class ConvergenceAggregateSerializer(serializers.Serializer):
    N = serializers.IntegerField()
    replicates = serializers.IntegerField()
    mean_sup = serializers.FloatField()
    se_sup = serializers.FloatField()
    mean_sup_sq = serializers.FloatField()
    se_sup_sq = serializers.FloatField()
    mean_quantile_sup = serializers.FloatField(allow_null=True)
    se_quantile_sup = serializers.FloatField(allow_null=True)
    empty_fraction = serializers.FloatField()
    mean_n = serializers.FloatField()
    var_n = serializers.FloatField()
    empty_bound = serializers.FloatField(allow_null=True)
    clamped = serializers.IntegerField()


class ConvergenceReportSerializer(serializers.Serializer):
    design = serializers.SerializerMethodField()
    model = serializers.SerializerMethodField()
    target = serializers.SerializerMethodField()
    seed = serializers.SerializerMethodField()
    aggregates = ConvergenceAggregateSerializer(many=True)
    slope = serializers.FloatField(allow_null=True)
    r_squared = serializers.FloatField(allow_null=True)

    def get_design(self, report):
        return report.config.design.to_dict()

    def get_model(self, report):
        return report.config.model.to_dict()

    def get_target(self, report):
        return report.config.target

    def get_seed(self, report):
        return report.config.seed
