from __future__ import unicode_literals

import io
import json
import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from informative_selection import conf
from informative_selection.exceptions import SelectionError
from .serializers import ExperimentSerializer
from .utils import write_text


CONFIG_ERROR = 2
RUNTIME_ERROR = 3


class ExperimentCommand(BaseCommand):
    """ Loads an experiment config, applies command line overrides and runs ``run`` """
    mode = None

    def add_arguments(self, parser):
        parser.add_argument('--config', dest='config', help='Path to the JSON experiment config')
        parser.add_argument('--out', dest='out', help='Output path, overrides "output" of the config')
        parser.add_argument('--seed', dest='seed', type=int, help='Seed, overrides "seed" of the config')
        parser.add_argument('--quiet', dest='quiet', action='store_true', default=False,
                            help='Log warnings and errors only')

    def load_config(self, options):
        if not options.get('config'):
            raise CommandError('the following arguments are required: --config\n%s'
                               % self.create_parser('informative-selection', self.mode).format_usage(),
                               returncode=CONFIG_ERROR)
        try:
            with io.open(options['config'], encoding='utf-8') as stream:
                data = json.load(stream)
        except (IOError, ValueError) as error:
            raise CommandError('Cannot read config %s: %s' % (options['config'], error), returncode=CONFIG_ERROR)
        if not isinstance(data, dict):
            raise CommandError('Config %s must hold a JSON object' % options['config'], returncode=CONFIG_ERROR)

        data['mode'] = self.mode
        if options.get('out'):
            data['output'] = options['out']
        if options.get('seed') is not None:
            data['seed'] = options['seed']

        serializer = ExperimentSerializer(data=data)
        if not serializer.is_valid():
            raise CommandError('Invalid config %s: %s' % (options['config'], json.dumps(serializer.errors)),
                               returncode=CONFIG_ERROR)
        return serializer.save()

    def handle(self, *args, **options):
        if options.get('quiet'):
            logging.getLogger('informative_selection').setLevel(logging.WARNING)
        config = self.load_config(options)
        with conf.override(config.settings):
            try:
                self.run(config)
            except ValidationError as error:
                raise CommandError('; '.join(error.messages), returncode=CONFIG_ERROR)
            except ValueError as error:
                # grids and levels the serializer cannot judge without knowing the design
                raise CommandError('Invalid config %s: %s' % (options['config'], error), returncode=CONFIG_ERROR)
            except SelectionError as error:
                raise CommandError('%s: %s' % (error.__class__.__name__, error), returncode=RUNTIME_ERROR)

    def run(self, config):
        raise NotImplementedError

    def write_csv(self, config, content):
        """ CSV goes to the configured output, or to stdout when there is none """
        if config.output:
            write_text(config.output, content)
        else:
            self.stdout.write(content, ending='')
