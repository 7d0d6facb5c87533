"""Exception hierarchy.

Every exception carries a short machine-readable ``code`` that the command
line front end copies into its JSON error object.
"""


class SgflowError(Exception):
    code = "error"


class InvalidGroupError(SgflowError, ValueError):
    code = "invalid_group"


class GroupMismatchError(SgflowError, TypeError):
    code = "group_mismatch"


class GraphParseError(SgflowError, ValueError):
    code = "parse_error"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvalidGraphError(SgflowError, ValueError):
    code = "invalid_graph"


class DisconnectedGraphError(InvalidGraphError):
    code = "disconnected_graph"


class BalancedGraphError(InvalidGraphError):
    code = "balanced_graph"


class NotAFlowError(SgflowError, ValueError):
    code = "not_a_flow"


class InconsistencyError(SgflowError, RuntimeError):
    """An internal identity that must hold did not."""

    code = "internal_inconsistency"


class BudgetExceededError(SgflowError, RuntimeError):
    code = "budget_exceeded"

    def __init__(self, what, needed, budget):
        super().__init__(f"{what}: {needed} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget
