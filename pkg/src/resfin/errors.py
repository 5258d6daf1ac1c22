"""Exception types shared across the toolkit.

The command line maps these to exit codes: InputError to 1, ResourceError
to 2 (a cap or budget was hit, the answer is inconclusive rather than
wrong), InternalError to 3 (an invariant that must hold was violated).
"""


class InputError(ValueError):
    """Caller handed us something malformed or out of contract."""


class ResourceError(RuntimeError):
    """An explicit cap, budget, or size limit was exceeded."""


class InternalError(AssertionError):
    """An invariant the implementation guarantees failed to hold."""
