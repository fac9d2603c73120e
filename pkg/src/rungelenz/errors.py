"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class FactorialLimitError(DomainError):
    """A factorial beyond the configured table limit was requested."""

    def __init__(self, needed: int, limit: int):
        self.needed = needed
        self.limit = limit
        super().__init__(
            f"factorial table limit exceeded: need {needed}!, table was built "
            f"with limit {limit} (set RUNGELENZ_FACTORIAL_LIMIT >= {needed} "
            f"or construct a larger FactorialTable)"
        )


class ReggeInadmissibleError(DomainError):
    """The Regge transform of the given arguments is not a valid symbol."""


class ExactParseError(ValueError):
    """A string does not conform to the exact-value grammar."""


class InternalConsistencyError(RuntimeError):
    """Two routes that must agree exactly disagreed; indicates a bug."""
