"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input (bad lengths, ranges, formats)."""


class ResourceError(RuntimeError):
    """A requested allocation exceeds the configured table-size cap."""
