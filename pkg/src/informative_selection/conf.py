from __future__ import unicode_literals

import contextlib

import django
from django.conf import settings


class Settings:
    INFORMATIVE_SELECTION = {
        'QUADRATURE_TOLERANCE': 1e-9,
        'SE_MULTIPLIER': 4,
        'DECAY_SLOPE_THRESHOLD': -0.5,
        'VANISHING_THRESHOLD': 0.02,
        'STABILITY_TOLERANCE': 0.05,
        'QUANTILE_GRID': 512,
        'ENUMERATION_LIMIT': 2 ** 20,
        'COUPLING_MAX_N': 20,
        'WORKERS': 1,
    }


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'informative_selection': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}


def setup(**overrides):
    """
    Configure Django for standalone use by the command line interface and the harness tests
    """
    if settings.configured:
        return

    selection_settings = dict(Settings.INFORMATIVE_SELECTION)
    selection_settings.update(overrides)
    settings.configure(
        INSTALLED_APPS=['informative_selection.harness'],
        INFORMATIVE_SELECTION=selection_settings,
        LOGGING=LOGGING,
        DATABASES={},
        USE_I18N=False,
        USE_TZ=True,
    )
    django.setup()


def get_setting(name):
    selection_settings = {}
    if settings.configured:
        selection_settings = getattr(settings, 'INFORMATIVE_SELECTION', {})
    try:
        return selection_settings[name]
    except KeyError:
        return Settings.INFORMATIVE_SELECTION[name]


@contextlib.contextmanager
def override(values):
    """
    Temporarily replace selection settings, e.g. with the "settings" object of an experiment config
    """
    if not values or not settings.configured:
        yield
        return

    previous = getattr(settings, 'INFORMATIVE_SELECTION', {})
    merged = dict(previous)
    merged.update(values)
    settings.INFORMATIVE_SELECTION = merged
    try:
        yield
    finally:
        settings.INFORMATIVE_SELECTION = previous
