"""Error types the CLI maps to exit codes."""


class ConfigError(ValueError):
    """Invalid configuration or parameter value (CLI exit code 2)."""


class DataError(ValueError):
    """Invalid, inconsistent, or unreadable input data (CLI exit code 3)."""
