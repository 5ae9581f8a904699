from typing import Optional


class Error(Exception):
    """Base exception"""

    reason = "error"


class InputError(Error):
    """Malformed or invalid input data"""

    reason = "invalid-input"


class DomainError(Error):
    """Well formed input on which the requested operation is undefined"""

    reason = "domain-error"


class InternalError(Error):
    """Should never happen, a guaranteed postcondition did not hold"""

    reason = "internal-error"


class ParseError(InputError):
    reason = "parse-error"


class DimensionMismatch(InputError):
    reason = "dimension-mismatch"


class DimensionTooLarge(InputError):
    reason = "dimension-too-large"


class WrongDimension(InputError):
    reason = "wrong-dimension"


class NotABasis(InputError):
    reason = "not-a-basis"


class DegenerateForm(InputError):
    """Gram matrix is not symmetric, has a nonzero diagonal or is singular"""

    reason = "degenerate-form"


class InvalidTsd(InputError):
    reason = "invalid-tsd"


class InvalidEmbeddingData(InputError):
    reason = "invalid-embedding"


class InvalidDiffeoData(InputError):
    reason = "invalid-diffeo"


class GenusMismatch(InputError):
    reason = "genus-mismatch"


class OrientationMismatch(InputError):
    reason = "orientation-mismatch"


class ComponentCountMismatch(InputError):
    reason = "component-count-mismatch"


class SingularMatrix(DomainError):
    reason = "singular-matrix"


class NotOrthogonal(DomainError):
    reason = "not-orthogonal"


class NotTotallySingular(DomainError):
    reason = "not-totally-singular"


class FormMismatch(DomainError):
    reason = "form-mismatch"


class NoTsd(DomainError):
    """The form has no totally singular decomposition"""

    reason = "no-tsd"


class NotRegularlyHomotopic(DomainError):
    """Q is only defined within one regular homotopy class"""

    reason = "not-regularly-homotopic"

    def __init__(self, message: str, index: Optional[int] = None) -> None:
        super().__init__(message)
        self.index = index
