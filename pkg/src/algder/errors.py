"""Exception hierarchy shared by every module of the package."""


class AlgderError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    kind = "domain-error"


class VariableSetError(AlgderError, ValueError):
    kind = "variable-set"


class UnknownVariableError(AlgderError, KeyError):
    kind = "unknown-variable"

    def __str__(self):
        return Exception.__str__(self)


class MissingImageError(AlgderError, KeyError):
    kind = "missing-image"

    def __str__(self):
        return Exception.__str__(self)


class NonSquareMatrixError(AlgderError, ValueError):
    kind = "non-square"


class UnsupportedScalarError(AlgderError, TypeError):
    """A formal-weight eigenvalue reached an operation that needs a rational."""

    kind = "unsupported-scalar"


class CapExceeded(AlgderError):
    """Krylov iteration hit a resource cap before the space closed."""

    kind = "cap-exceeded"

    def __init__(self, cap, limit, message=None):
        self.cap = cap
        self.limit = limit
        super().__init__(message or f"{cap} cap {limit} exceeded before the Krylov space closed")


class NotAlgebraicUpToCaps(CapExceeded):
    kind = "not-algebraic-up-to-caps"


class NonRationalSpectrum(AlgderError):
    """The minimal polynomial has a factor without rational roots."""

    kind = "non-rational-spectrum"

    def __init__(self, residual, roots=None):
        self.residual = residual
        self.roots = dict(roots or {})
        super().__init__(f"characteristic polynomial does not split over Q; residual factor {residual}")


class NotInvariantError(AlgderError):
    kind = "not-invariant"

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"polynomial is not invariant under group element {witness.to_lists()}")


class GroupTooLargeError(AlgderError):
    kind = "group-too-large"

    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"group closure exceeds enumeration cap {cap}")


class NonInvertibleGeneratorError(AlgderError, ValueError):
    kind = "non-invertible-generator"


class ParseError(AlgderError, ValueError):
    """Expression or spec-file syntax error; ``position`` is a 0-based column."""

    kind = "parse-error"

    def __init__(self, message, position=None, text=None):
        self.message = message
        self.position = position
        self.text = text
        where = f" at column {position}" if position is not None else ""
        super().__init__(f"{message}{where}")
