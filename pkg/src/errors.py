"""
Exception hierarchy for FolnerLab.

Every error carries the process exit code the CLI maps it to:
2 refusal, 3 budget exhausted, 4 input error.
"""

from typing import Any, Optional


class FolnerLabError(Exception):
    """Base class for all FolnerLab errors."""

    exit_code = 1


class InputError(FolnerLabError, ValueError):
    """Invalid input: malformed values, wrong levels, unsupported fields."""

    exit_code = 4


class LevelMismatch(InputError):
    """Operands live in different field levels."""


class NotInTower(InputError):
    """A degree is not a level of the field tower."""


class NonDividingDegree(InputError):
    """Source degree does not divide the target degree."""


class DeterminantNotOne(InputError):
    """Matrix entries do not have determinant 1."""


class IdentityInput(InputError):
    """Operation is undefined on the identity element."""


class NotInJordanForm(InputError):
    """Matrix is neither diagonal nor the standard unipotent."""


class ExtensionUnavailable(InputError):
    """The quadratic extension needed for eigenvalues is not available."""


class UnsupportedField(InputError):
    """Operation restricted to a different kind of field."""


class FieldTooSmall(InputError):
    """Field has fewer nonzero elements than requested."""

    def __init__(self, message: str, suggested_degree: Optional[int] = None):
        super().__init__(message)
        self.suggested_degree = suggested_degree


class ProjectionMismatch(InputError):
    """Product generators do not project into the certified set."""


class EmptyT(InputError):
    """Følner defect requested for an empty set."""


class GroupSpecError(InputError):
    """Group, family or element spec string could not be parsed."""


class ConfigError(InputError):
    """Configuration file or override is invalid."""


class FormulaSyntaxError(InputError):
    """First-order formula text could not be parsed."""

    def __init__(self, message: str, line: int, column: int, expected: str = ""):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
        self.expected = expected


class DivisionByZero(FolnerLabError, ZeroDivisionError):
    """Inverse of the zero scalar."""

    exit_code = 4


class BudgetExceeded(FolnerLabError):
    """Work estimate exceeds the configured budget."""

    exit_code = 3

    def __init__(
        self,
        message: str,
        estimate: Optional[int] = None,
        budget: Optional[int] = None,
        best_so_far: Any = None,
    ):
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget
        self.best_so_far = best_so_far


class TooLarge(BudgetExceeded):
    """Formula expansion exceeds the node cap."""


class CertificateRefused(FolnerLabError):
    """Measured defect is not strictly below epsilon."""

    exit_code = 2

    def __init__(self, message: str, defect: Any = None, epsilon: Any = None):
        super().__init__(message)
        self.defect = defect
        self.epsilon = epsilon
