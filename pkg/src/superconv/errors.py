"""Exception types raised by the library.

Errors split into two families: ``InputError`` for malformed or
incompatible inputs, and ``ComputationError`` for well-formed inputs on
which a requested computation cannot be carried out.  The CLI maps the
first family to exit code 2 and the second to exit code 1.
"""


class SuperconvError(Exception):
    pass


class InputError(SuperconvError):
    pass


class ComputationError(SuperconvError):
    pass


class ShapeMismatch(InputError, ValueError):
    pass


class NotSquare(InputError, ValueError):
    pass


class DimMismatch(InputError, ValueError):
    pass


class UnsupportedP(InputError, ValueError):
    pass


class ParseError(InputError):
    pass


class SchemaError(InputError):
    """Raised when a channel file is valid JSON but has the wrong layout.

    ``path`` names the offending field, e.g. ``data[0][1]``.
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class NotHermitian(ComputationError, ValueError):
    pass


class NoConvergence(ComputationError):
    pass


class NotCP(ComputationError):
    pass


class NotUnitary(ComputationError, ValueError):
    pass


class NotDiagonalizable(ComputationError):
    pass


class DegenerateDenominator(ComputationError):
    pass


class NonHermitianChoi(ComputationError):
    pass


class NoRealEigenvalue(ComputationError):
    pass
