"""
Exceptions raised by kphi_utilities. Each class carries the exit code the command-line front end reports.
"""


class KphiError(Exception):
    """Base class for every error raised by the package."""
    exit_code = 4


class UsageError(KphiError):
    exit_code = 1


class InputError(KphiError):
    """Unreadable or malformed input files."""
    exit_code = 2


class ComplexFormatError(InputError):
    pass


class CnfParseError(InputError):
    pass


class PreconditionError(KphiError, ValueError):
    """Arguments that violate an operation's precondition."""
    exit_code = 3


class GlueError(PreconditionError):
    pass


class DegenerateConfigurationError(PreconditionError):
    """A point configuration is not in general position for the test being run."""
    pass


class NotDisjointError(PreconditionError):
    pass


class NotACycleError(PreconditionError):
    pass


class InvariantError(KphiError):
    """An internal invariant failed; signals a construction bug."""
    exit_code = 4


class BoundaryError(InvariantError):
    pass


class FixedCellError(InvariantError):
    pass
