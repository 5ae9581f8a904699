"""
Non-degenerate quadratic forms over Z/2.

A form is stored relative to one fixed reference basis: ``gram`` holds the
polar form B on basis pairs and ``diag`` the values of g on the basis
vectors. Nothing in this module re-coordinates a form implicitly.
"""
import functools
from typing import List, Tuple

import numpy as np
from qinv import exceptions
from qinv.gf2 import _parity, BitMatrix, BitVector, rank, Subspace


class QuadraticForm:

    """g with g(x + y) = g(x) + g(y) + B(x, y), B given by ``gram``"""

    __slots__ = ("dim", "gram", "diag", "_upper")

    def __init__(self, gram: BitMatrix, diag: BitVector) -> None:
        if not gram.is_square or gram.rows != diag.dim:
            raise exceptions.DimensionMismatch(
                f"Gram matrix {gram.rows}x{gram.cols} with diagonal of "
                f"dimension {diag.dim}"
            )
        bits = gram.bits()
        if not np.array_equal(bits, bits.T):
            raise exceptions.DegenerateForm("Gram matrix is not symmetric")
        if bits.diagonal().any():
            raise exceptions.DegenerateForm("Gram matrix has a nonzero diagonal")
        if rank(gram) != gram.rows:
            raise exceptions.DegenerateForm("Polar form is degenerate")
        self.dim = gram.rows
        self.gram = gram
        self.diag = diag
        # strictly upper triangular half of the gram matrix, for evaluation
        self._upper = BitMatrix.from_bits(np.triu(bits, k=1), cols=self.dim)

    @property
    def genus(self) -> int:
        return self.dim // 2

    def with_diag(self, diag: BitVector) -> "QuadraticForm":
        """The form with this polar form and values ``diag`` on the basis."""
        if diag.dim != self.dim:
            raise exceptions.DimensionMismatch(
                f"Diagonal of dimension {diag.dim} for a form of dimension {self.dim}"
            )
        form = QuadraticForm.__new__(QuadraticForm)
        form.dim = self.dim
        form.gram = self.gram
        form.diag = diag
        form._upper = self._upper
        return form

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return self.gram == other.gram and self.diag == other.diag

    def __hash__(self) -> int:
        return hash((self.gram, self.diag))

    def __repr__(self) -> str:
        return (
            f"QuadraticForm(dim={self.dim}, gram={self.gram.to_strings()!r}, "
            f"diag={self.diag.to_string()!r})"
        )


@functools.lru_cache(maxsize=None)
def standard_form(n: int) -> QuadraticForm:
    """
    The form sum x_i y_i in the basis a_1..a_n, b_1..b_n, where
    B(a_i, b_j) = delta_ij and every other basis pairing vanishes.
    """
    if n < 0:
        raise exceptions.WrongDimension(f"Negative genus {n}")
    bits = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    bits[:n, n:] = np.eye(n, dtype=np.uint8)
    bits[n:, :n] = np.eye(n, dtype=np.uint8)
    return QuadraticForm(
        BitMatrix.from_bits(bits, cols=2 * n), BitVector.zeros(2 * n)
    )


def _check_vector(form: QuadraticForm, v: BitVector) -> None:
    if v.dim != form.dim:
        raise exceptions.DimensionMismatch(
            f"Vector of dimension {v.dim} for a form of dimension {form.dim}"
        )


def _evaluate_rows(form: QuadraticForm, rows: BitMatrix) -> np.ndarray:
    """g applied to every row of ``rows``"""
    linear = _parity(rows.words & form.diag.words)
    cross = _parity(rows.words & (rows @ form._upper.transpose()).words)
    return linear ^ cross


def _pairings(form: QuadraticForm, left: BitMatrix, right: BitMatrix) -> BitMatrix:
    """Matrix of B(left_i, right_j)"""
    return left @ form.gram @ right.transpose()


def evaluate(form: QuadraticForm, v: BitVector) -> int:
    _check_vector(form, v)
    return int(_evaluate_rows(form, BitMatrix.from_rows([v]))[0])


def bilinear(form: QuadraticForm, x: BitVector, y: BitVector) -> int:
    _check_vector(form, x)
    _check_vector(form, y)
    return x.dot(form.gram @ y)


def is_totally_singular(form: QuadraticForm, u: Subspace) -> bool:
    if u.ambient_dim != form.dim:
        raise exceptions.DimensionMismatch(
            f"Subspace of (Z/2)^{u.ambient_dim} for a form of dimension {form.dim}"
        )
    if u.dim == 0:
        return True
    if _evaluate_rows(form, u.basis).any():
        return False
    # g vanishes on a basis and B on every basis pair, hence g vanishes on U
    return not _pairings(form, u.basis, u.basis).words.any()


def is_orthogonal(form: QuadraticForm, m: BitMatrix) -> bool:
    if not m.is_square or m.rows != form.dim:
        raise exceptions.DimensionMismatch(
            f"{m.rows}x{m.cols} matrix for a form of dimension {form.dim}"
        )
    if rank(m) != form.dim:
        return False
    images = m.transpose()
    if not np.array_equal(_evaluate_rows(form, images), form.diag.bits()):
        return False
    return _pairings(form, images, images) == form.gram


def block_positions(n0: int, n1: int) -> Tuple[List[int], List[int]]:
    """
    Coordinate injections for an orthogonal sum of forms of genus n0 and n1.

    The sum keeps the a-then-b layout: a-coordinates of the first summand,
    a-coordinates of the second, then the b-coordinates in the same order.
    """
    first = list(range(n0)) + [n0 + n1 + i for i in range(n0)]
    second = [n0 + i for i in range(n1)] + [2 * n0 + n1 + i for i in range(n1)]
    return first, second


def orthogonal_sum(f0: QuadraticForm, f1: QuadraticForm) -> QuadraticForm:
    n0, n1 = f0.genus, f1.genus
    dim = f0.dim + f1.dim
    first, second = block_positions(n0, n1)
    gram = np.zeros((dim, dim), dtype=np.uint8)
    gram[np.ix_(first, first)] = f0.gram.bits()
    gram[np.ix_(second, second)] = f1.gram.bits()
    diag = np.zeros(dim, dtype=np.uint8)
    diag[first] = f0.diag.bits()
    diag[second] = f1.diag.bits()
    return QuadraticForm(BitMatrix.from_bits(gram, cols=dim), BitVector.from_bits(diag))


def symplectic_basis(form: QuadraticForm) -> List[Tuple[BitVector, BitVector]]:
    """
    Pairs (e_i, f_i) with B(e_i, f_j) = delta_ij and B(e_i, e_j) = B(f_i, f_j) = 0.
    """
    remaining = [BitVector.unit(form.dim, i) for i in range(form.dim)]
    pairs: List[Tuple[BitVector, BitVector]] = []
    while remaining:
        e = remaining.pop(0)
        partner = next(
            (k for k, w in enumerate(remaining) if bilinear(form, e, w)), None
        )
        if partner is None:
            # cannot happen for a non-degenerate polar form
            raise exceptions.InternalError("No hyperbolic partner found")
        f = remaining.pop(partner)
        projected = []
        for w in remaining:
            w = w + (e if bilinear(form, w, f) else BitVector.zeros(form.dim))
            w = w + (f if bilinear(form, w, e) else BitVector.zeros(form.dim))
            projected.append(w)
        remaining = projected
        pairs.append((e, f))
    return pairs


def admits_tsd(form: QuadraticForm) -> bool:
    """A TSD exists iff g(e)g(f) summed over a symplectic basis vanishes."""
    total = 0
    for e, f in symplectic_basis(form):
        total ^= evaluate(form, e) & evaluate(form, f)
    return total == 0
