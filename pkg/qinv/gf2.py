"""
Linear algebra over the two element field.

Vectors and matrix rows are packed little-endian into ``uint64`` words:
coordinate ``j`` lives in word ``j // 64`` at bit ``j % 64``. Every value is
immutable once built, so they can be shared freely between threads.
"""
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from qinv import const, exceptions

WORD = np.uint64
_FOLDS = tuple(WORD(shift) for shift in (32, 16, 8, 4, 2, 1))


def n_words(n: int) -> int:
    return (n + const.WORD_BITS - 1) // const.WORD_BITS


def _check_dim(n: int) -> None:
    if n < 0:
        raise exceptions.DimensionMismatch(f"Negative dimension {n}")
    if n > const.MAX_AMBIENT_DIM:
        raise exceptions.DimensionTooLarge(
            f"Dimension {n} exceeds the configured cap {const.MAX_AMBIENT_DIM}"
        )


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack a ``(..., n)`` array of 0/1 values into ``(..., n_words(n))`` words."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    n = bits.shape[-1]
    width = n_words(n) * const.WORD_BITS
    if width == 0:
        return np.zeros(bits.shape[:-1] + (0,), dtype=WORD)
    padded = np.zeros(bits.shape[:-1] + (width,), dtype=np.uint8)
    padded[..., :n] = bits
    packed = np.ascontiguousarray(np.packbits(padded, axis=-1, bitorder="little"))
    return packed.view("<u8").astype(WORD)


def _unpack(words: np.ndarray, n: int) -> np.ndarray:
    words = np.asarray(words, dtype=WORD)
    if n == 0 or words.shape[-1] == 0:
        return np.zeros(words.shape[:-1] + (n,), dtype=np.uint8)
    raw = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(raw, axis=-1, bitorder="little")[..., :n]


def _parity(words: np.ndarray) -> np.ndarray:
    """Parity of the popcount along the last axis."""
    acc = np.bitwise_xor.reduce(np.asarray(words, dtype=WORD), axis=-1)
    acc = np.asarray(acc, dtype=WORD)
    for shift in _FOLDS:
        acc = acc ^ (acc >> shift)
    return (acc & WORD(1)).astype(np.uint8)


def _tail_mask(n: int) -> Optional[np.uint64]:
    rem = n % const.WORD_BITS
    if rem == 0:
        return None
    return WORD((1 << rem) - 1)


def _frozen(words: np.ndarray, n: int) -> np.ndarray:
    words = np.array(words, dtype=WORD, copy=True)
    mask = _tail_mask(n)
    if mask is not None and words.shape[-1]:
        words[..., -1] &= mask
    words.setflags(write=False)
    return words


class BitVector:

    """An element of (Z/2)^dim"""

    __slots__ = ("dim", "words")

    def __init__(self, dim: int, words: np.ndarray) -> None:
        _check_dim(dim)
        words = np.asarray(words, dtype=WORD)
        if words.shape != (n_words(dim),):
            raise exceptions.DimensionMismatch(
                f"Expected {n_words(dim)} words for dimension {dim}, "
                f"got shape {words.shape}"
            )
        self.dim = dim
        self.words = _frozen(words, dim)

    @classmethod
    def zeros(cls, dim: int) -> "BitVector":
        return cls(dim, np.zeros(n_words(dim), dtype=WORD))

    @classmethod
    def unit(cls, dim: int, index: int) -> "BitVector":
        if not 0 <= index < dim:
            raise exceptions.DimensionMismatch(
                f"Coordinate {index} outside dimension {dim}"
            )
        bits = np.zeros(dim, dtype=np.uint8)
        bits[index] = 1
        return cls.from_bits(bits)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        array = np.asarray(bits, dtype=np.uint8).reshape(-1)
        return cls(array.shape[0], _pack(array))

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        if any(ch not in "01" for ch in text):
            raise exceptions.ParseError(f"Not a bit string: {text!r}")
        return cls.from_bits([int(ch) for ch in text])

    def bits(self) -> np.ndarray:
        return _unpack(self.words, self.dim)

    def to_string(self) -> str:
        return "".join(str(bit) for bit in self.bits())

    def dot(self, other: "BitVector") -> int:
        """Standard dot product, not the polar form of any quadratic form."""
        self._check_same_dim(other)
        return int(_parity(self.words & other.words))

    def _check_same_dim(self, other: "BitVector") -> None:
        if self.dim != other.dim:
            raise exceptions.DimensionMismatch(
                f"Vectors of dimension {self.dim} and {other.dim}"
            )

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.dim:
            raise IndexError(index)
        word, bit = divmod(index, const.WORD_BITS)
        return int((self.words[word] >> WORD(bit)) & WORD(1))

    def __add__(self, other: "BitVector") -> "BitVector":
        self._check_same_dim(other)
        return BitVector(self.dim, self.words ^ other.words)

    __sub__ = __add__

    def __bool__(self) -> bool:
        return bool(self.words.any())

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.dim == other.dim and self.words.tobytes() == other.words.tobytes()

    def __hash__(self) -> int:
        return hash((self.dim, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector({self.to_string()!r})"


class BitMatrix:

    """A rows x cols matrix over GF(2), row-major and word packed"""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray) -> None:
        _check_dim(rows)
        _check_dim(cols)
        words = np.asarray(words, dtype=WORD)
        if words.shape != (rows, n_words(cols)):
            raise exceptions.DimensionMismatch(
                f"Expected word array of shape {(rows, n_words(cols))}, "
                f"got {words.shape}"
            )
        self.rows = rows
        self.cols = cols
        self.words = _frozen(words, cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, n_words(cols)), dtype=WORD))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_bits(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_bits(cls, bits: np.ndarray, cols: Optional[int] = None) -> "BitMatrix":
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2:
            if bits.size == 0 and cols is not None:
                bits = bits.reshape(0, cols)
            else:
                raise exceptions.DimensionMismatch(
                    f"Expected a 2-dimensional bit array, got {bits.ndim} dimensions"
                )
        return cls(bits.shape[0], bits.shape[1], _pack(bits))

    @classmethod
    def from_strings(
        cls, rows: Sequence[str], cols: Optional[int] = None
    ) -> "BitMatrix":
        if not rows:
            return cls.zeros(0, cols or 0)
        widths = {len(row) for row in rows}
        if len(widths) != 1 or (cols is not None and widths != {cols}):
            raise exceptions.ParseError(f"Ragged or mis-sized matrix rows: {rows!r}")
        return cls.from_rows([BitVector.from_string(row) for row in rows])

    @classmethod
    def from_rows(
        cls, vectors: Sequence[BitVector], cols: Optional[int] = None
    ) -> "BitMatrix":
        if not vectors:
            if cols is None:
                raise exceptions.DimensionMismatch("Empty row list without a width")
            return cls.zeros(0, cols)
        width = vectors[0].dim
        if any(v.dim != width for v in vectors) or (cols is not None and width != cols):
            raise exceptions.DimensionMismatch("Rows of differing dimension")
        return cls(len(vectors), width, np.stack([v.words for v in vectors]))

    @classmethod
    def from_columns(
        cls, vectors: Sequence[BitVector], rows: Optional[int] = None
    ) -> "BitMatrix":
        return cls.from_rows(vectors, rows).transpose()

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def bits(self) -> np.ndarray:
        return _unpack(self.words, self.cols)

    def row(self, index: int) -> BitVector:
        return BitVector(self.cols, self.words[index])

    def row_vectors(self) -> List[BitVector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_bits(self.bits().T.copy(), cols=self.rows)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise exceptions.DimensionMismatch(
                f"Cannot stack {self.cols} and {other.cols} columns"
            )
        return BitMatrix(
            self.rows + other.rows, self.cols, np.vstack([self.words, other.words])
        )

    def to_strings(self) -> List[str]:
        return ["".join(str(bit) for bit in row) for row in self.bits()]

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise exceptions.DimensionMismatch("Matrix shapes differ")
        return BitMatrix(self.rows, self.cols, self.words ^ other.words)

    __sub__ = __add__

    def __matmul__(self, other):  # type: ignore
        if isinstance(other, BitVector):
            if other.dim != self.cols:
                raise exceptions.DimensionMismatch(
                    f"{self.rows}x{self.cols} matrix applied to a "
                    f"vector of dimension {other.dim}"
                )
            if self.rows == 0:
                return BitVector.zeros(0)
            return BitVector.from_bits(_parity(self.words & other.words))
        if isinstance(other, BitMatrix):
            if other.rows != self.cols:
                raise exceptions.DimensionMismatch(
                    f"Cannot multiply {self.rows}x{self.cols} by "
                    f"{other.rows}x{other.cols}"
                )
            # entries are sums of at most MAX_AMBIENT_DIM ones, exact in float32
            counts = self.bits().astype(np.float32) @ other.bits().astype(np.float32)
            parity = (counts.astype(np.int64) & 1).astype(np.uint8)
            return BitMatrix.from_bits(parity, cols=other.cols)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.words.tobytes() == other.words.tobytes()
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.to_strings()!r})"


def _eliminate(
    words: np.ndarray, pivot_cols: int, reduced: bool = True
) -> Tuple[np.ndarray, List[int]]:
    """
    Gaussian elimination on packed rows.

    The pivot is always the lowest column index with a set bit among the
    remaining rows, taking the topmost such row. Only the first
    ``pivot_cols`` columns are searched for pivots; trailing columns (an
    augmented block) are carried along.
    """
    a = np.array(words, dtype=WORD, copy=True)
    nrows = a.shape[0]
    pivots: List[int] = []
    r = 0
    for c in range(pivot_cols):
        if r == nrows:
            break
        w, b = divmod(c, const.WORD_BITS)
        bit = WORD(1) << WORD(b)
        hits = np.flatnonzero(a[r:, w] & bit)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        targets = (a[:, w] & bit) != 0
        if reduced:
            targets[r] = False
        else:
            targets[: r + 1] = False
        a[targets] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: BitMatrix) -> Tuple[BitMatrix, int]:
    """Reduced row-echelon form; zero rows are left at the bottom."""
    reduced, pivots = _eliminate(m.words, m.cols)
    return BitMatrix(m.rows, m.cols, reduced), len(pivots)


def rank(m: BitMatrix) -> int:
    _, pivots = _eliminate(m.words, m.cols, reduced=False)
    return len(pivots)


def invert(m: BitMatrix) -> BitMatrix:
    if not m.is_square:
        raise exceptions.DimensionMismatch(
            f"Only square matrices are invertible, got {m.rows}x{m.cols}"
        )
    n = m.rows
    augmented = _pack(np.hstack([m.bits(), np.eye(n, dtype=np.uint8)]))
    reduced, pivots = _eliminate(augmented, n)
    if len(pivots) < n:
        raise exceptions.SingularMatrix(f"Matrix has rank {len(pivots)} < {n}")
    return BitMatrix.from_bits(_unpack(reduced, 2 * n)[:, n:], cols=n)


class Subspace:

    """
    A subspace of (Z/2)^ambient_dim.

    The basis is the nonzero part of the reduced row-echelon form of any
    spanning set, so two subspaces are equal as sets exactly when their
    stored bases are identical. Build instances with :meth:`span` or
    :meth:`from_vectors`, never from a trusted basis.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, basis: BitMatrix, pivots: Sequence[int]) -> None:
        self.ambient_dim = basis.cols
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, spanning: BitMatrix) -> "Subspace":
        reduced, pivots = _eliminate(spanning.words, spanning.cols)
        r = len(pivots)
        return cls(BitMatrix(r, spanning.cols, reduced[:r]), pivots)

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[BitVector]) -> "Subspace":
        return cls.span(BitMatrix.from_rows(list(vectors), ambient_dim))

    @classmethod
    def from_strings(cls, ambient_dim: int, rows: Sequence[str]) -> "Subspace":
        return cls.span(BitMatrix.from_strings(rows, ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls.span(BitMatrix.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(BitMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> List[BitVector]:
        return self.basis.row_vectors()

    def combination(self, coeffs: np.ndarray) -> BitVector:
        mask = np.asarray(coeffs, dtype=bool)
        words = self.basis.words
        if mask.any():
            acc = np.bitwise_xor.reduce(words[mask], axis=0)
        else:
            acc = np.zeros(n_words(self.ambient_dim), dtype=WORD)
        return BitVector(self.ambient_dim, acc)

    def embed(self, positions: Sequence[int], ambient_dim: int) -> "Subspace":
        """Image under the coordinate injection sending coordinate i to positions[i]."""
        if len(positions) != self.ambient_dim:
            raise exceptions.DimensionMismatch(
                f"{len(positions)} positions for ambient dimension {self.ambient_dim}"
            )
        bits = np.zeros((self.dim, ambient_dim), dtype=np.uint8)
        bits[:, list(positions)] = self.basis.bits()
        return Subspace.span(BitMatrix.from_bits(bits, cols=ambient_dim))

    def to_strings(self) -> List[str]:
        return self.basis.to_strings()

    def __contains__(self, v: object) -> bool:
        if not isinstance(v, BitVector):
            return False
        return contains(self, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"Subspace({self.ambient_dim}, {self.to_strings()!r})"


def _check_ambient(u: Subspace, v: BitVector) -> None:
    if u.ambient_dim != v.dim:
        raise exceptions.DimensionMismatch(
            f"Vector of dimension {v.dim} against subspace of {u.ambient_dim}"
        )


def _check_same_ambient(u: Subspace, w: Subspace) -> None:
    if u.ambient_dim != w.ambient_dim:
        raise exceptions.DimensionMismatch(
            f"Subspaces of (Z/2)^{u.ambient_dim} and (Z/2)^{w.ambient_dim}"
        )


def kernel(m: BitMatrix) -> Subspace:
    """{v : m v = 0}"""
    reduced, pivots = _eliminate(m.words, m.cols)
    pivot_bits = _unpack(reduced[: len(pivots)], m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = np.zeros((len(free), m.cols), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        if pivots:
            basis[k, pivots] = pivot_bits[:, f]
    return Subspace.span(BitMatrix.from_bits(basis, cols=m.cols))


def annihilator(u: Subspace) -> Subspace:
    """{y : y . u = 0 for every u in U} under the standard dot product."""
    return kernel(u.basis)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    _check_same_ambient(u, w)
    return Subspace.span(u.basis.stack(w.basis))


def intersect(u: Subspace, w: Subspace) -> Subspace:
    _check_same_ambient(u, w)
    # ann(ann U + ann W) = U n W
    return annihilator(subspace_sum(annihilator(u), annihilator(w)))


def contains(u: Subspace, v: BitVector) -> bool:
    _check_ambient(u, v)
    if not u.pivots:
        return not v
    return u.combination(v.bits()[list(u.pivots)]) == v


def preimage(m: BitMatrix, u: Subspace) -> Subspace:
    """{v : m v in U}"""
    if m.rows != u.ambient_dim:
        raise exceptions.DimensionMismatch(
            f"{m.rows}x{m.cols} map into a subspace of (Z/2)^{u.ambient_dim}"
        )
    # m v lies in U iff every row of a basis of ann(U) kills m v
    return kernel(annihilator(u).basis @ m)


def image(m: BitMatrix, u: Subspace) -> Subspace:
    if m.cols != u.ambient_dim:
        raise exceptions.DimensionMismatch(
            f"{m.rows}x{m.cols} map applied to a subspace of (Z/2)^{u.ambient_dim}"
        )
    if u.dim == 0:
        return Subspace.zero(m.rows)
    return Subspace.span((m @ u.basis.transpose()).transpose())
