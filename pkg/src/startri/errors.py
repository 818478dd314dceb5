"""Exception hierarchy shared by all startri modules."""


class StartriError(Exception):
    """Base class for all package errors."""


class PoleError(StartriError, ArithmeticError):
    """An argument sits on (or within tolerance of) a pole."""


class DomainError(StartriError, ValueError):
    """Input lies outside the region where a representation is valid."""


class BalancingError(DomainError):
    """A fugacity set violates its declared balancing condition."""


class NoConvergence(StartriError, RuntimeError):
    """Refinement budget exhausted before the tolerance was met."""


class TailTooFat(NoConvergence):
    """Integrand does not decay enough at the truncation cutoff."""


class ConfigError(StartriError, ValueError):
    """Invalid campaign configuration.

    Parameters
    ----------
    message : str
        Description of the problem.
    field : str, optional
        Dotted path of the offending field.
    line : int, optional
        1-based line number in the configuration file.
    """

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
