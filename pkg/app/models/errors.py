# ABOUTME: Error types and the JSON error response model
# ABOUTME: Validation failures map to exit code 2, computation failures to exit code 3

from pydantic import BaseModel


class ErrorResponse(BaseModel):
    """Standard error response format."""
    code: str
    message: str
    details: dict | None = None


class VolumeEngineError(Exception):
    """Base class for every error raised by the engine."""
    code = "ERROR"
    exit_code = 1

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_response(self) -> ErrorResponse:
        return ErrorResponse(code=self.code, message=self.message, details=self.details)


class InvalidInputError(VolumeEngineError, ValueError):
    """A precondition or input validation failed."""
    code = "INVALID_PARAMETER"
    exit_code = 2


class ComputationError(VolumeEngineError, RuntimeError):
    """A well-posed computation could not be completed."""
    code = "COMPUTATION_FAILED"
    exit_code = 3


class SelectionError(ComputationError):
    """Root selection stayed ambiguous after the refinement cap."""
    code = "SELECTION_FAILED"


class SearchExhaustedError(ComputationError):
    """The primitive element search ran out of candidates."""
    code = "SEARCH_EXHAUSTED"


class ConvergenceError(ComputationError):
    """A numeric oracle did not reach its threshold."""
    code = "NOT_CONVERGED"
