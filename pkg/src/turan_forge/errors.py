"""Error taxonomy shared by the whole package.

The CLI maps outcomes to exit statuses: 0 verified find, 1 input error,
2 integrity error, 3 honest not-found.  Resource errors (a configured cap
would be exceeded) are reported as input-scale problems, exit 1.
"""


class InputError(ValueError):
    """Caller handed us something invalid (bad parameter, bad file, ...)."""


class ResourceError(RuntimeError):
    """A configured cap (enumeration size, memory) would be exceeded."""


class IntegrityError(RuntimeError):
    """An internal guarantee failed; indicates a bug or a false input claim."""


EXIT_FOUND = 0
EXIT_INPUT = 1
EXIT_INTEGRITY = 2
EXIT_NOT_FOUND = 3
