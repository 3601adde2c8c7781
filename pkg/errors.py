"""
Engine Errors
Structured exceptions raised by the computation modules and mapped to exit codes by the CLI.
"""

from typing import Any, Dict, Optional

# Exit-code contract
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARAMETER_ERROR = 2


class SlopeEngineError(Exception):
    """Base error carrying a stable error code and the CLI exit code"""

    error_code = "ENGINE_ERROR"
    exit_code = EXIT_PARAMETER_ERROR

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        return {"error_code": self.error_code, "message": self.message, "details": self.details}


# Parameter and domain errors
class ParameterRange(SlopeEngineError):
    error_code = "PARAMETER_RANGE"


class NonzeroRho(SlopeEngineError):
    error_code = "NONZERO_RHO"


class DimensionCondition(SlopeEngineError):
    error_code = "DIMENSION_CONDITION"


class DegenerateDenominator(SlopeEngineError):
    error_code = "DEGENERATE_DENOMINATOR"


class ZeroDenominator(SlopeEngineError):
    error_code = "ZERO_DENOMINATOR"


class NonIntegral(SlopeEngineError):
    error_code = "NON_INTEGRAL"


class NonIntegralD(NonIntegral):
    error_code = "NON_INTEGRAL_D"


class NonIntegralN(NonIntegral):
    error_code = "NON_INTEGRAL_N"


# Algebraic structure errors
class NonSquare(SlopeEngineError):
    error_code = "NON_SQUARE"


class SingularSystem(SlopeEngineError):
    error_code = "SINGULAR_SYSTEM"


class PartTooLarge(SlopeEngineError):
    error_code = "PART_TOO_LARGE"


class AmbientMismatch(SlopeEngineError):
    error_code = "AMBIENT_MISMATCH"


class DegreeMismatch(SlopeEngineError):
    error_code = "DEGREE_MISMATCH"


# Moduli space errors
class SpaceMismatch(SlopeEngineError):
    error_code = "SPACE_MISMATCH"


class UnknownCurve(SlopeEngineError):
    error_code = "UNKNOWN_CURVE"


class UnknownCoefficient(SlopeEngineError):
    error_code = "UNKNOWN_COEFFICIENT"


class NonpositiveLambda(SlopeEngineError):
    error_code = "NONPOSITIVE_LAMBDA"


class ZeroB0(SlopeEngineError):
    error_code = "ZERO_B0"
