"""
Exception hierarchy for teamlib.

Library code raises these; only the CLI turns them into exit codes.
"""


class TeamLogicError(Exception):
    """Base class for every error raised by teamlib."""

    pass


class ConfigError(TeamLogicError):
    """Raised when teamcheck.yaml is missing required structure or invalid."""

    pass


class ParseError(TeamLogicError):
    """Raised when formula text does not conform to the grammar."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class FormulaError(TeamLogicError):
    """Raised when a formula is outside the dialect an operation accepts."""

    pass


class ModelError(TeamLogicError):
    """Raised for malformed models, teams, or model documents."""

    pass


class BudgetExceeded(TeamLogicError):
    """Raised when a search visits more states than the configured budget."""

    pass


class UnsupportedSemantics(TeamLogicError):
    """Raised when anything other than lax team semantics is requested."""

    pass


class StrategyError(TeamLogicError):
    """Raised when a strategy is not total or assigns teams outside the model."""

    pass


class RemovalError(TeamLogicError):
    """Raised when the element-removal construction's precondition fails."""

    pass


class WitnessError(TeamLogicError):
    """Raised when a lower-bound witness fails its construction-time checks."""

    pass
