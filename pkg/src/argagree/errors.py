"""Exception hierarchy shared across the package.

Every error carries a short machine-readable ``code`` so CLI output and
tests can match on it without parsing prose.
"""

from __future__ import annotations


class ArgagreeError(Exception):
    """Base class for all library errors."""

    code = "error"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class DomainError(ArgagreeError):
    """An input violates a documented precondition (unknown argument, bad index, ...)."""

    code = "domain"


class ValidationError(ArgagreeError):
    """A framework or scenario fails a structural invariant."""

    code = "validation"


class ResourceLimitError(ArgagreeError):
    """An enumeration or search exceeds its configured cap."""

    code = "resource-limit"

    def __init__(self, message: str, cap: int):
        super().__init__(message, code="resource-limit")
        self.cap = cap


class GenerationError(ArgagreeError):
    """Synthetic generation exhausted its retry budget; carries the seed."""

    code = "generation"

    def __init__(self, message: str, seed: int):
        super().__init__(f"{message} (seed={seed})", code="generation")
        self.seed = seed


class EnforcementInfeasibleError(ArgagreeError):
    """No conflict-free superset exists for an extension that must be covered."""

    code = "enforcement-infeasible"


class ParseError(ArgagreeError):
    """Scenario text is malformed; carries 1-based line and column."""

    code = "parse"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}", code="parse")
        self.line = line
        self.column = column
