"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes: ParseError -> 2,
ParameterError -> 3, RandomizedFailureError and VerificationError -> 4.
"""


class BoxlabError(Exception):
    """Base class for all boxlab errors."""


class ParseError(BoxlabError):
    """Malformed input file (bad header, bad pair line, poset cycle, ...)."""


class ParameterError(BoxlabError):
    """Arguments violate a stated precondition (degree caps, thresholds, sizes)."""


class StructuralError(BoxlabError):
    """Objects are internally inconsistent (mismatched vertex sets, bad bijection)."""


class RandomizedFailureError(BoxlabError):
    """A randomized construction exhausted its retry cap."""

    def __init__(self, message: str, attempts: int):
        super().__init__(f"{message} (after {attempts} attempts)")
        self.attempts = attempts


class VerificationError(BoxlabError):
    """A built object failed its own verifier; carries the report when available."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
