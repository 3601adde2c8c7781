"""
Pydantic Models - Output records, verification reports and exact-number serialization
"""

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from errors import ParameterRange


# Exact number helpers
def format_exact(value: Union[int, Fraction]) -> str:
    """Decimal-free "p/q" string, denominator always present"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_exact(text: str) -> Fraction:
    """Inverse of format_exact; also accepts a bare integer"""
    try:
        numerator, _, denominator = text.strip().partition("/")
        return Fraction(int(numerator), int(denominator) if denominator else 1)
    except (ValueError, ZeroDivisionError) as e:
        raise ParameterRange(f"not an exact rational: {text!r}") from e


def render_float(value: Union[int, Fraction], digits: int = 12) -> float:
    """Round to `digits` significant digits, half-even"""
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        return float(Decimal(value.numerator) / Decimal(value.denominator))


# Coefficient status
class CoefficientStatus(str, Enum):
    EXACT = "exact"
    LOWER_BOUND_ONLY = "lower_bound_only"
    UNKNOWN = "unknown"


# Output Models
class ValueRecord(BaseModel):
    name: str
    exact: Optional[str] = None  # "p/q"
    approx: Optional[float] = None
    status: CoefficientStatus = CoefficientStatus.EXACT
    bound: Optional[str] = None

    @field_validator("exact", "bound")
    @classmethod
    def _check_exact(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            try:
                parse_exact(value)
            except ParameterRange as e:
                raise ValueError(e.message) from e
        return value

    @classmethod
    def of(
        cls,
        name: str,
        value: Optional[Union[int, Fraction]],
        status: CoefficientStatus = CoefficientStatus.EXACT,
        bound: Optional[Union[int, Fraction]] = None,
        digits: int = 12,
    ) -> "ValueRecord":
        return cls(
            name=name,
            exact=None if value is None else format_exact(value),
            approx=None if value is None else render_float(value, digits),
            status=status,
            bound=None if bound is None else format_exact(bound),
        )

    def fraction(self) -> Optional[Fraction]:
        return None if self.exact is None else parse_exact(self.exact)


class OutputRecord(BaseModel):
    """One parameter point of a family"""
    family: str
    parameters: Dict[str, int]
    values: List[ValueRecord] = Field(default_factory=list)
    flags: Dict[str, bool] = Field(default_factory=dict)
    error: Optional[str] = None

    def value(self, name: str) -> Optional[ValueRecord]:
        return next((v for v in self.values if v.name == name), None)


class TableEnvelope(BaseModel):
    version: str
    family: str
    records: List[OutputRecord]


# Verification Models
CheckStatus = Literal["pass", "fail", "inconclusive", "informational"]


class CheckResult(BaseModel):
    suite: str
    name: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    status: CheckStatus
    mandatory: bool = True
    detail: Optional[str] = None


class VerificationReport(BaseModel):
    version: str
    suite: str
    grid: str
    checks: List[CheckResult]
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    informational: int = 0

    @classmethod
    def build(cls, version: str, suite: str, grid: str, checks: List[CheckResult]) -> "VerificationReport":
        # mandatory checks split into pass/fail/inconclusive; everything else is informational
        mandatory = [c for c in checks if c.mandatory and c.status != "informational"]
        return cls(
            version=version,
            suite=suite,
            grid=grid,
            checks=checks,
            passed=sum(1 for c in mandatory if c.status == "pass"),
            failed=sum(1 for c in mandatory if c.status == "fail"),
            inconclusive=sum(1 for c in mandatory if c.status == "inconclusive"),
            informational=len(checks) - len(mandatory),
        )

    @property
    def ok(self) -> bool:
        return self.failed == 0


# Error Models
class ErrorResponse(BaseModel):
    success: bool = False
    message: str
    error_code: str
    details: Dict[str, Any] = Field(default_factory=dict)
