from qinv.exceptions import (
    DomainError,
    Error,
    InputError,
    InternalError,
    NotRegularlyHomotopic,
)
from qinv.gf2 import BitMatrix, BitVector, Subspace
from qinv.invariant import (
    DiffeoData,
    EmbeddingData,
    form_of,
    q_diffeo,
    q_system,
    quadruple_invariant,
    standard_embedding,
    SystemEmbeddingData,
)
from qinv.quadform import QuadraticForm, standard_form
from qinv.tsd import GoodBasis, psi, psi_hat, Tsd


__all__ = [
    "BitMatrix",
    "BitVector",
    "DiffeoData",
    "DomainError",
    "EmbeddingData",
    "Error",
    "form_of",
    "GoodBasis",
    "InputError",
    "InternalError",
    "NotRegularlyHomotopic",
    "psi",
    "psi_hat",
    "q_diffeo",
    "q_system",
    "quadruple_invariant",
    "QuadraticForm",
    "standard_embedding",
    "standard_form",
    "Subspace",
    "SystemEmbeddingData",
    "Tsd",
]
