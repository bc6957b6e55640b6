class ContractViolation(ValueError):
    """A caller broke an operation's precondition."""


class KonectParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class OracleGuardError(ValueError):
    """Graph too large for exhaustive enumeration."""
