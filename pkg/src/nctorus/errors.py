"""Exception hierarchy shared by every module."""


class InputError(ValueError):
    """Malformed or out-of-domain user input."""


class DimensionError(InputError):
    """Lattice points or elements with mismatched torus dimension."""


class ContextMismatchError(InputError):
    """Elements built over different (theta, hbar) algebra contexts were mixed."""


class WindowTooLargeError(RuntimeError):
    """A truncation window exceeds the configured basis-size cap."""


class ConvergenceError(ArithmeticError):
    """Power iteration hit its iteration cap.

    ``estimate`` holds the best (still certified lower-bound) value reached.
    """

    def __init__(self, message, estimate, iterations):
        super().__init__(message)
        self.estimate = estimate
        self.iterations = iterations
