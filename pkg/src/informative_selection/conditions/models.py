from __future__ import unicode_literals

from django.core.exceptions import ValidationError


class ConditionEntry(object):
    """
    Estimates of one assumption along an N-grid together with its verdict.
    ``inclusion`` keeps the pairwise inclusion estimates behind the entry, at the largest N only.
    """

    class Verdicts(object):
        PASS = 'pass'
        FAIL = 'fail'
        INCONCLUSIVE = 'inconclusive'

        CHOICES = ((PASS, 'Pass'), (FAIL, 'Fail'), (INCONCLUSIVE, 'Inconclusive'))

    IDS = ('A0.1', 'A0.2', 'A1.1', 'A1.2', 'A1.3', 'A1.5', 'A2.1', 'A2.2', 'A2.3',
           'A3.2', 'A3.3', 'A3.4', 'A3.5', 'A4')

    def __init__(self, condition, sizes, estimates, standard_errors, verdict,
                 slope=None, r_squared=None, details=None, inclusion=None):
        self.condition = condition
        self.sizes = [int(size) for size in sizes]
        self.estimates = [float(value) for value in estimates]
        self.standard_errors = [float(value) for value in standard_errors]
        self.verdict = verdict
        self.slope = slope
        self.r_squared = r_squared
        self.details = details or {}
        self.inclusion = list(inclusion or ())
        self.clean()

    def __repr__(self):
        return '<ConditionEntry %s: %s>' % (self.condition, self.verdict)

    def clean(self):
        if self.condition not in self.IDS:
            raise ValidationError('Unknown assumption %s' % self.condition)
        if not len(self.sizes) == len(self.estimates) == len(self.standard_errors):
            raise ValidationError('Every population size needs an estimate and a standard error')
        if self.verdict not in dict(self.Verdicts.CHOICES):
            raise ValidationError('Unknown verdict %s' % self.verdict)

    @property
    def passed(self):
        return self.verdict == self.Verdicts.PASS


class ConditionReport(object):
    """ Verdicts of an audit, at most one entry per assumption, in the order they were checked """

    def __init__(self, design, model, entries=()):
        self.design = design
        self.model = model
        self.entries = []
        for entry in entries:
            self.add(entry)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, condition):
        for entry in self.entries:
            if entry.condition == condition:
                return entry
        raise KeyError(condition)

    def __contains__(self, condition):
        return any(entry.condition == condition for entry in self.entries)

    def add(self, entry):
        if entry.condition in self:
            raise ValidationError('Assumption %s is already in the report' % entry.condition)
        self.entries.append(entry)

    def extend(self, entries):
        for entry in entries:
            self.add(entry)

    @property
    def verdict(self):
        verdicts = [entry.verdict for entry in self.entries]
        if ConditionEntry.Verdicts.FAIL in verdicts:
            return ConditionEntry.Verdicts.FAIL
        if ConditionEntry.Verdicts.INCONCLUSIVE in verdicts:
            return ConditionEntry.Verdicts.INCONCLUSIVE
        return ConditionEntry.Verdicts.PASS
