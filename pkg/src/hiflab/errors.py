"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
anything else -> 4.
"""


class HiflabError(Exception):
    """Base class for all package errors."""


class ConfigError(HiflabError):
    """Invalid configuration, malformed scenario, or bad CLI usage."""


class SpecError(ConfigError):
    """A scenario specification that cannot be realized."""


class DataError(HiflabError):
    """Rejected input data: non-finite samples, short windows, empty tables."""
