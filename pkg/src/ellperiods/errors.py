"""Exceptions shared across the package.

``NonInvertible`` is the important one: whenever an inversion modulo n
fails on a nonzero residue, the gcd it carries is a proper factor of n.
"""


class NonInvertible(ArithmeticError):
    """Raised when a residue has no inverse modulo ``modulus``.

    ``factor`` is ``gcd(value, modulus)``; it equals ``modulus`` only when
    the value was zero.
    """

    def __init__(self, factor, modulus):
        self.factor = factor
        self.modulus = modulus
        super().__init__(f"gcd {factor} with modulus {modulus}")

    @property
    def is_witness(self):
        return 1 < self.factor < self.modulus


class NoSquareRoot(ArithmeticError):
    pass


class NoSolution(ArithmeticError):
    pass


class NotInvertible(ArithmeticError):
    """A convolution vector whose gcd with X^d - 1 is not constant."""


class PoleError(ValueError):
    """Evaluation of a function at one of its poles."""


class ParameterFailure(RuntimeError):
    """A randomized construction step exhausted its budget."""


class RetryA(ParameterFailure):
    pass


class RetryM(ParameterFailure):
    pass
