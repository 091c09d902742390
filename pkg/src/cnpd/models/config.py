"""Configuration models."""

from pydantic import BaseModel, Field


class PrecisionConfig(BaseModel):
    """Floating-point precision settings."""

    bits: int = Field(default=128, ge=53, description="Binary working precision")
    output_digits: int = Field(
        default=30, ge=1, description="Significant digits printed for floats"
    )


class ToleranceConfig(BaseModel):
    """Default tolerances of the numeric operations."""

    rho: float = Field(default=1e-30, gt=0, description="Root tolerance for rho")
    membership: float = Field(
        default=1e-10, gt=0, description="Numeric variety membership tolerance"
    )
    invert_point: float = Field(
        default=1e-10, gt=0, description="Residual tolerance for point inversion"
    )
    psd: float = Field(default=1e-8, gt=0, description="Eigenvalue tolerance")
    hermitian: float = Field(
        default=1e-14, gt=0, description="Allowed Hermitian defect of a Gram matrix"
    )
    rank: float = Field(
        default=1e-10, gt=0, description="Relative singular value cutoff"
    )


class CircuitConfig(BaseModel):
    """Circuit enumeration limits."""

    max_dimension: int = Field(
        default=20, ge=1, description="Largest tuple length accepted for enumeration"
    )


class VarietyConfig(BaseModel):
    """Variety settings."""

    branch_search: int = Field(
        default=32, ge=0, description="Logarithm branches scanned by invert_point"
    )


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: str = Field(
        default="warning", description="Log level: debug, info, warning, error"
    )
    format: str = Field(default="json", description="Log format: json, text")


class AnalysisConfig(BaseModel):
    """Root configuration."""

    precision: PrecisionConfig = PrecisionConfig()
    tolerances: ToleranceConfig = ToleranceConfig()
    circuits: CircuitConfig = CircuitConfig()
    variety: VarietyConfig = VarietyConfig()
    logging: LoggingConfig = LoggingConfig()
