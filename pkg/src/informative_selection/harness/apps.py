from __future__ import unicode_literals

from django.apps import AppConfig


class HarnessConfig(AppConfig):
    name = 'informative_selection.harness'
    label = 'informative_selection_harness'
    verbose_name = 'Informative selection experiments'
