"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class PoleError(ArithmeticError):
    """Evaluation hit a pole (including an uncancelled pole of a deformation limit)."""


class ConvergenceError(ArithmeticError):
    """A truncated sum shows no geometric decay."""


class DataError(ValueError):
    """Malformed or out-of-bounds input data (Hecke tables, place sets)."""
