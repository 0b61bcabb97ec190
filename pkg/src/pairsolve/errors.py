"""Exception types shared across the solvers."""


class PreconditionError(ValueError):
    """The input does not satisfy the hypothesis of the requested operation."""


class InsufficientTargets(PreconditionError):
    """Not enough lifting targets to resolve every multiplicity at a vertex."""

    def __init__(self, vertex: int, needed: int, available: int):
        super().__init__(
            f"vertex {vertex}: {needed} lifts needed but only {available} targets"
        )
        self.vertex = vertex
        self.deficit = needed - available


class InternalError(AssertionError):
    """A step whose success is guaranteed by the underlying proof failed.

    Carries a reproducible dump of the working instance so the failure can be
    replayed outside the solver.
    """

    def __init__(self, message: str, dump: str | None = None):
        super().__init__(message if dump is None else f"{message}\n--- dump ---\n{dump}")
        self.dump = dump
