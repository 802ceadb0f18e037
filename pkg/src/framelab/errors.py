"""Exception types shared across the package."""


class FramelabError(Exception):
    """Base class for framelab-specific failures."""


class EnumerationCapExceeded(FramelabError):
    """Raised when an exhaustive subset certification would exceed the cap.

    The retrieval certificates are exact only because they visit every index
    subset; past the cap we refuse outright instead of silently sampling.
    """
