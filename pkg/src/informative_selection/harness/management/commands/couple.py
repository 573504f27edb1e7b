from __future__ import unicode_literals

import io

from informative_selection.harness.commands import ExperimentCommand
from informative_selection.harness.utils import render_json, run_couple, summary_path, write_bytes


class Command(ExperimentCommand):
    help = 'Builds the coupling partition of an enumerable design and its h trajectory'
    mode = 'couple'

    def run(self, config):
        partition, trajectory = run_couple(config)
        stream = io.StringIO()
        partition.to_csv(stream)
        self.write_csv(config, stream.getvalue())

        summary = render_json({
            'x': config.x,
            'normalized': config.normalized,
            'trajectory': [{'N': N, 'h': h_value} for N, h_value in trajectory],
        })
        if config.output:
            write_bytes(summary_path(config.output), summary)
        else:
            self.stderr.write(summary.decode('utf-8'), ending='')
