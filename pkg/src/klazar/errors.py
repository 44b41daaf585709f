class GuardError(RuntimeError):
    """A computation was refused because it exceeds a resource guard.

    Guards are soft: every guarded function takes a parameter to raise the
    limit.
    """
