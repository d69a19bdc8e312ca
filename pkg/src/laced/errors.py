class InvariantError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad user input."""
