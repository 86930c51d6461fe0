"""Exception types shared across the package."""


class DataError(Exception):
    """An input file or table cannot be used as a dataset."""


class ExperimentError(Exception):
    """An experiment cannot proceed (e.g. split retries exhausted)."""


class UsageError(Exception):
    """Malformed command-line or config-file input."""
