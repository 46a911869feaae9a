"""Exception types shared across the package."""


class DegenerateInputError(ValueError):
    """Raised when an operation is handed inputs it cannot make sense of (e.g. gcd(0, 0))."""


class NotInvertibleError(ValueError):
    def __init__(self, value: int, modulus: int, gcd: int):
        super().__init__(f"{value} is not invertible mod {modulus} (gcd = {gcd})")
        self.value = value
        self.modulus = modulus
        self.gcd = gcd


class NotAUnitError(NotInvertibleError):
    pass


class DomainError(ValueError):
    """Argument lies outside the region where a p-adic series converges."""


class PreconditionError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """Something that is mathematically impossible happened. Treat as a bug."""
