class SelectionError(Exception):
    """ Base class for failures of a simulation run """


class InfeasibleEnumeration(SelectionError):
    pass


class UnsupportedDesign(SelectionError):
    pass


class NoLimitError(SelectionError):
    """ Design has no limit weight, so conditions A0-A2 do not hold """


class EmptySampleError(SelectionError):
    pass


class FlatRegionError(SelectionError):
    """ Limit c.d.f. is flat at the requested level, quantile is not unique """
