"""Exception types raised across the toolkit."""


class GDrazinError(Exception):
    pass


class DivisionByZeroError(GDrazinError, ZeroDivisionError):
    pass


class FloatingOverflowError(GDrazinError, ArithmeticError):
    pass


class BackendMismatchError(GDrazinError, TypeError):
    pass


class DimensionMismatchError(GDrazinError, ValueError):
    pass


class SingularMatrixError(GDrazinError, ArithmeticError):
    pass


class NoGroupInverseError(GDrazinError, ArithmeticError):
    pass


class ParseError(GDrazinError, ValueError):
    pass


class HypothesisViolatedError(GDrazinError):
    """A route was asked to run on an input that fails its condition set.

    The offending :class:`~gdrazin.hypotheses.HypothesisReport` is kept on
    ``report``.
    """

    def __init__(self, report):
        self.report = report
        bad = [lab for lab, ok in zip(report.labels, report.satisfied_flags) if not ok]
        super().__init__(f"{report.id} violated: {', '.join(bad)}")


class InfeasibleConfigurationError(GDrazinError, ValueError):
    pass


class CannotIsolateError(GDrazinError):
    pass
