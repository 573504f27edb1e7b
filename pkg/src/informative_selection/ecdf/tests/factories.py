import factory

from .. import models


class StepCdfFactory(factory.Factory):
    class Meta(object):
        model = models.StepCdf

    jump_points = (1.0, 3.0)
    values = (0.5, 1.0)
