"""Exception types shared across the library."""


class SchoenbergLabError(Exception):
    """Base class for all library errors."""


class DomainError(SchoenbergLabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateInputError(SchoenbergLabError, ValueError):
    """Input is structurally too small (empty range, fewer than 2 points, ...)."""


class GenerationError(SchoenbergLabError, RuntimeError):
    """A point-set generator could not satisfy its constraints."""


class UnsupportedSymbolError(SchoenbergLabError, TypeError):
    """The operation requires symbol structure (e.g. an accessible measure) that is absent."""


class DivergenceError(SchoenbergLabError, ArithmeticError):
    """A quadrature or series diagnostic detected behaviour it cannot certify
    (e.g. an oscillatory, non absolutely integrable tail)."""


class SizeCapError(SchoenbergLabError, ValueError):
    """A dense computation was requested above the configured size cap."""
