"""Exception hierarchy shared across the library."""


class CausalKitError(Exception):
    """Base class for all library errors."""

    code = "error"


class MissingColumnError(CausalKitError):
    """A configured column does not exist in the input table."""

    code = "missing_column"


class EmptyTableError(CausalKitError):
    """The input table has no data rows."""

    code = "empty_table"


class UnparsableNumericError(CausalKitError):
    """A cell in a numeric-binned column could not be parsed as a number."""

    code = "unparsable_numeric"


class UnknownColumnError(CausalKitError):
    """A referenced column is not part of the dataset."""

    code = "unknown_column"


class ParentCapExceededError(CausalKitError):
    """A parent set exceeds the configured cap."""

    code = "parent_cap_exceeded"


class EdgeAbsentError(CausalKitError):
    """An operation referenced an edge that is not in the graph."""

    code = "edge_absent"


class UnknownNodeError(CausalKitError):
    """A referenced node is not part of the graph."""

    code = "unknown_node"


class CycleError(CausalKitError):
    """The graph contains a directed cycle."""

    code = "cycle"


class TooFewColumnsError(CausalKitError):
    """Discovery needs at least two columns."""

    code = "too_few_columns"


class InvalidAssignmentError(CausalKitError):
    """An intervention or attribution referenced an invalid column/value pair."""

    code = "invalid_assignment"
