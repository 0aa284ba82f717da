"""Exception types shared across the planning toolkit."""

from typing import Optional


class PlanningInputError(ValueError):
    """Base class for rejected inputs. Scripts map it to exit code 2."""


class InvalidInputError(PlanningInputError):
    """Malformed argument: dimension mismatch, bad parameter, violated precondition.

    Attributes:
        clause: Name of the violated hypothesis, when the check has named clauses
    """

    def __init__(self, message: str, clause: Optional[str] = None):
        super().__init__(message)
        self.clause = clause


class InfeasibleSamplingError(PlanningInputError):
    """Rejection sampling ran out of candidates before collecting n free samples."""


class GoalBlockedError(PlanningInputError):
    """No free state could be placed inside the goal region."""


class ProblemValidationError(PlanningInputError):
    """A problem or campaign file failed validation.

    Attributes:
        field_path: Path of the offending field, e.g. ``obstacles[3]``
    """

    def __init__(self, field_path: str, message: str):
        super().__init__(f"{field_path}: {message}")
        self.field_path = field_path
