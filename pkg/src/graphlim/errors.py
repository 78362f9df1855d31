"""Exception types, grouped by the exit code the CLI maps them to."""


class GraphLimError(Exception):
    """Base class for all package errors."""


class ParseError(GraphLimError):
    """A graph file (or other input document) could not be ingested."""


class ValidationError(GraphLimError):
    """Inputs are readable but violate a structural precondition."""


class VerificationError(GraphLimError):
    """A machine-checked identity failed; indicates a bug, never a data state."""
