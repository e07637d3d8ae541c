"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Malformed arguments: unknown elements, bad parameters, size mismatches."""


class InvalidGraphError(InvalidInputError):
    """Graph violates the DAG contract (cycle, self-loop, duplicate edge)."""


class SizeGuardError(RuntimeError):
    """An exhaustive or exact computation would exceed its configured guard."""
