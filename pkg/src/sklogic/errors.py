"""Exception hierarchy shared across the package."""


class SklError(Exception):
    """Base class for all errors raised by sklogic."""


class ReadError(SklError):
    """Malformed surface syntax. Carries a 1-based source position."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)


class LoadError(SklError):
    """Program compilation failed: unknown relation, arity clash, unsafe
    clause, bad constraint, and similar load-time conditions."""


class VerifierError(SklError):
    """A verifier expression could not be evaluated (unbound variable,
    integer/symbol type clash, symbol outside the program universe)."""


class EngineError(SklError):
    """Runtime resolution failure that is a diagnostic, not a normal miss."""


class DepthLimitError(EngineError):
    """Resolution exceeded the configured proof-depth bound."""

    def __init__(self, relation, bound):
        self.relation = relation
        self.bound = bound
        super().__init__(
            f"proof depth bound {bound} exceeded while resolving '{relation}' "
            "(likely non-terminating recursion)"
        )


class NonGroundError(EngineError):
    """A relation call succeeded with unbound parameters, which the safety
    check should have prevented."""

    def __init__(self, relation):
        self.relation = relation
        super().__init__(
            f"relation '{relation}' succeeded with non-ground arguments; "
            "its clauses are not safe"
        )


class GroundingError(SklError):
    """The grounder hit its atom cap or an unsupported (non-atomic) body."""
