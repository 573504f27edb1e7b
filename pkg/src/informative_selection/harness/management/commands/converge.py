from __future__ import unicode_literals

import io

from informative_selection.harness.commands import ExperimentCommand
from informative_selection.harness.serializers import ConvergenceReportSerializer
from informative_selection.harness.utils import render_json, run_convergence, summary_path, write_bytes


class Command(ExperimentCommand):
    help = 'Runs a convergence experiment and writes per-replicate distances as CSV'
    mode = 'converge'

    def run(self, config):
        report = run_convergence(config)
        stream = io.StringIO()
        report.to_csv(stream)
        self.write_csv(config, stream.getvalue())

        summary = render_json(ConvergenceReportSerializer(report).data)
        if config.output:
            write_bytes(summary_path(config.output), summary)
        slope = 'n/a' if report.slope is None else '%.4f' % report.slope
        self.stderr.write('Decay slope of mean sup^2: %s' % slope)
