"""Exception types shared across the toolkit."""


class PreconditionError(ValueError):
    """An argument violates a documented domain restriction."""


class GammaPoleError(PreconditionError):
    """Gamma evaluated at a nonpositive integer."""

    def __init__(self, z):
        self.z = z
        super().__init__(f"gamma pole at z = {z}")


class MultiplierEvaluationError(ArithmeticError):
    """A radial symbol produced a non-finite value at some frequency."""


class InstabilityError(RuntimeError):
    """A time-stepping run blew up (norm growth past the documented guard)."""
