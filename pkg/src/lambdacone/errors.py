"""Exception types shared across the package."""


class WorkspaceError(ValueError):
    """Mixing values from different variable workspaces, or unknown variables."""


class TruncationError(RuntimeError):
    """A coefficient was requested outside the window where a series is known."""
