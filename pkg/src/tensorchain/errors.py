"""Exception hierarchy shared by the library and the command line."""


class TensorChainError(Exception):
    """Base class for every error raised by this package."""


class NetworkError(TensorChainError, ValueError):
    """A network violates one of its structural invariants."""


class ParseError(NetworkError):
    """Malformed network text; ``line`` is 1-based, or None when not tied to a line."""

    def __init__(self, message, line=None):
        self.line = line
        self.reason = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(TensorChainError, ValueError):
    """Operands that do not live over the same network."""


class ChainError(TensorChainError, ValueError):
    """An invalid tensor chain or 2-chain."""


class CapExceeded(TensorChainError, ValueError):
    """An exhaustive computation was asked to run beyond its size cap."""


class InvalidKey(TensorChainError, ValueError):
    """A tensor set that does not determine a nonempty delta-class."""


class WordError(TensorChainError, ValueError):
    """A generator word that cannot be parsed against a directed network."""


class KindError(NetworkError):
    """An operation applied to the wrong kind of network (general vs directed)."""
