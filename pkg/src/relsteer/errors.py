"""Exception types raised by relsteer."""


class RelsteerError(Exception):
    """Base class for all library errors."""


class NotHermitian(RelsteerError):
    pass


class NotPositive(RelsteerError):
    """A constructed density matrix has an eigenvalue below -1e-10."""


class InvalidState(RelsteerError):
    """Wrong shape, non-finite entries or trace different from one."""


class DegenerateFilter(RelsteerError):
    """The filtering operation annihilated the state (success probability ~ 0)."""


class DomainError(RelsteerError, ValueError):
    """A parameter lies outside its allowed range."""


class NegativeProbability(RelsteerError):
    pass


class ParseError(RelsteerError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class UnknownPreset(RelsteerError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown preset"
