from __future__ import unicode_literals

from informative_selection.harness.commands import ExperimentCommand
from informative_selection.harness.utils import run_enumerate, support_csv


class Command(ExperimentCommand):
    help = 'Enumerates the exact selection law for one population and writes it as CSV'
    mode = 'enumerate'

    def run(self, config):
        self.write_csv(config, support_csv(run_enumerate(config)))
