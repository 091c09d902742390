"""Error codes and the analysis error class."""

from enum import Enum
from typing import Any

from pydantic import BaseModel, Field


class ErrorCode(str, Enum):
    """Analysis error codes."""

    VALIDATION_ERROR = "VALIDATION_ERROR"
    DUPLICATE_FREQUENCY = "DUPLICATE_FREQUENCY"
    FREQUENCY_TOO_SMALL = "FREQUENCY_TOO_SMALL"
    NONPOSITIVE_WEIGHT = "NONPOSITIVE_WEIGHT"
    WEIGHTS_SUM = "WEIGHTS_SUM"
    DOMAIN_ERROR = "DOMAIN_ERROR"
    TRUNCATION_ERROR = "TRUNCATION_ERROR"
    NOT_INVERTIBLE = "NOT_INVERTIBLE"
    HALF_PLANE_VIOLATION = "HALF_PLANE_VIOLATION"
    NOT_A_CIRCUIT = "NOT_A_CIRCUIT"
    NO_RELATION = "NO_RELATION"
    DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
    DIMENSION_TOO_LARGE = "DIMENSION_TOO_LARGE"
    NON_HERMITIAN = "NON_HERMITIAN"
    DUPLICATE_POINTS = "DUPLICATE_POINTS"
    USAGE_ERROR = "USAGE_ERROR"
    INTERNAL_ERROR = "INTERNAL_ERROR"


EXIT_VALIDATION = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 64
EXIT_INTERNAL = 1

ERROR_EXIT_CODES: dict[ErrorCode, int] = {
    ErrorCode.VALIDATION_ERROR: EXIT_VALIDATION,
    ErrorCode.DUPLICATE_FREQUENCY: EXIT_VALIDATION,
    ErrorCode.FREQUENCY_TOO_SMALL: EXIT_VALIDATION,
    ErrorCode.NONPOSITIVE_WEIGHT: EXIT_VALIDATION,
    ErrorCode.WEIGHTS_SUM: EXIT_VALIDATION,
    ErrorCode.DOMAIN_ERROR: EXIT_DOMAIN,
    ErrorCode.TRUNCATION_ERROR: EXIT_DOMAIN,
    ErrorCode.NOT_INVERTIBLE: EXIT_DOMAIN,
    ErrorCode.HALF_PLANE_VIOLATION: EXIT_DOMAIN,
    ErrorCode.NOT_A_CIRCUIT: EXIT_DOMAIN,
    ErrorCode.NO_RELATION: EXIT_DOMAIN,
    ErrorCode.DIMENSION_MISMATCH: EXIT_DOMAIN,
    ErrorCode.DIMENSION_TOO_LARGE: EXIT_DOMAIN,
    ErrorCode.NON_HERMITIAN: EXIT_DOMAIN,
    ErrorCode.DUPLICATE_POINTS: EXIT_DOMAIN,
    ErrorCode.USAGE_ERROR: EXIT_USAGE,
    ErrorCode.INTERNAL_ERROR: EXIT_INTERNAL,
}


class ErrorDetail(BaseModel):
    """Error detail structure."""

    code: ErrorCode = Field(..., description="Error code")
    message: str = Field(..., description="Human-readable error message")
    violated_clause: str | None = Field(
        None, description="Kernel spec clause that failed validation"
    )
    details: dict[str, Any] | None = Field(None, description="Additional error details")


class ErrorResponse(BaseModel):
    """Error document wrapper."""

    error: ErrorDetail = Field(..., description="Error details")


class CNPError(Exception):
    """Error raised by every analysis operation."""

    def __init__(
        self,
        code: ErrorCode,
        message: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.code = code
        self.message = message
        self.details = details
        super().__init__(message)

    @property
    def exit_code(self) -> int:
        """Get the process exit code for this error."""
        return ERROR_EXIT_CODES.get(self.code, EXIT_INTERNAL)

    @property
    def violated_clause(self) -> str | None:
        """Get the violated spec clause, if any."""
        if self.details is None:
            return None
        clause = self.details.get("violated_clause")
        return str(clause) if clause is not None else None

    def to_response(self) -> ErrorResponse:
        """Convert to an error document."""
        return ErrorResponse(
            error=ErrorDetail(
                code=self.code,
                message=self.message,
                violated_clause=self.violated_clause,
                details=self.details,
            )
        )
