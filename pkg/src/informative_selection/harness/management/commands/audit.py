from __future__ import unicode_literals

from informative_selection.harness.commands import ExperimentCommand
from informative_selection.harness.serializers import ConditionReportSerializer
from informative_selection.harness.utils import render_json, run_audit, write_bytes


def format_value(value):
    return '-' if value is None else '%.6g' % value


class Command(ExperimentCommand):
    help = 'Checks the sufficient conditions for the configured design and prints a verdict table'
    mode = 'audit'

    def run(self, config):
        report = run_audit(config)
        self.stdout.write('%-6s %-13s %10s %12s %12s' % ('id', 'verdict', 'slope', 'final', 'final_se'))
        for entry in report:
            self.stdout.write('%-6s %-13s %10s %12s %12s' % (
                entry.condition, entry.verdict, format_value(entry.slope),
                format_value(entry.estimates[-1]), format_value(entry.standard_errors[-1])))
        self.stdout.write('overall: %s' % report.verdict)

        if config.output:
            write_bytes(config.output, render_json(ConditionReportSerializer(report).data))
