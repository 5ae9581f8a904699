"""
Totally singular decompositions (TSDs), good bases and the character psi.

For a TSD (A, B) of a formed space V, an (A, B)-good basis is a basis
a_1..a_n of A and b_1..b_n of B with B(a_i, b_j) = delta_ij. Any two good
bases are related by an orthogonal map, and psi(T) = rank(T - I) mod 2 of that
map depends only on the two TSDs. That value is psi_hat.
"""
import logging
from typing import List, Optional, Sequence, Tuple

from qinv import exceptions
from qinv.gf2 import (
    BitMatrix,
    BitVector,
    contains,
    invert,
    rank,
    Subspace,
)
from qinv.quadform import (
    _pairings,
    admits_tsd,
    bilinear,
    block_positions,
    evaluate,
    is_orthogonal,
    is_totally_singular,
    orthogonal_sum,
    QuadraticForm,
    standard_form,
    symplectic_basis,
)

logger = logging.getLogger(__name__)


class Tsd:

    """A validated decomposition V = A + B into totally singular halves"""

    __slots__ = ("form", "a", "b")

    def __init__(self, form: QuadraticForm, a: Subspace, b: Subspace) -> None:
        if a.ambient_dim != form.dim or b.ambient_dim != form.dim:
            raise exceptions.DimensionMismatch(
                f"Subspaces of (Z/2)^{a.ambient_dim} and (Z/2)^{b.ambient_dim} "
                f"for a form of dimension {form.dim}"
            )
        if a.dim != form.genus or b.dim != form.genus:
            raise exceptions.InvalidTsd(
                f"Both halves must have dimension {form.genus}, "
                f"got {a.dim} and {b.dim}"
            )
        # halves of dimension n meet in 0 exactly when they span V
        if rank(a.basis.stack(b.basis)) != form.dim:
            raise exceptions.InvalidTsd("The halves intersect nontrivially")
        if not is_totally_singular(form, a):
            raise exceptions.NotTotallySingular("First half is not totally singular")
        if not is_totally_singular(form, b):
            raise exceptions.NotTotallySingular("Second half is not totally singular")
        self.form = form
        self.a = a
        self.b = b

    @classmethod
    def _trusted(cls, form: QuadraticForm, a: Subspace, b: Subspace) -> "Tsd":
        """A TSD whose halves the caller has already validated."""
        t = cls.__new__(cls)
        t.form = form
        t.a = a
        t.b = b
        return t

    @property
    def genus(self) -> int:
        return self.form.genus

    def swapped(self) -> "Tsd":
        return Tsd._trusted(self.form, self.b, self.a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tsd):
            return NotImplemented
        return (self.form, self.a, self.b) == (other.form, other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.form, self.a, self.b))

    def __repr__(self) -> str:
        return f"Tsd(A={self.a.to_strings()!r}, B={self.b.to_strings()!r})"


class GoodBasis:

    """a_1..a_n spanning A and b_1..b_n spanning B with B(a_i, b_j) = delta_ij"""

    __slots__ = ("tsd", "a_vecs", "b_vecs")

    def __init__(
        self, tsd: Tsd, a_vecs: Sequence[BitVector], b_vecs: Sequence[BitVector]
    ) -> None:
        self.tsd = tsd
        self.a_vecs = tuple(a_vecs)
        self.b_vecs = tuple(b_vecs)

    def matrix(self) -> BitMatrix:
        """Columns a_1..a_n, b_1..b_n in reference coordinates."""
        return BitMatrix.from_columns(
            list(self.a_vecs + self.b_vecs), rows=self.tsd.form.dim
        )

    def __repr__(self) -> str:
        return (
            f"GoodBasis(a={[v.to_string() for v in self.a_vecs]!r}, "
            f"b={[v.to_string() for v in self.b_vecs]!r})"
        )


def _check_same_form(f1: QuadraticForm, f2: QuadraticForm) -> None:
    if f1 != f2:
        raise exceptions.FormMismatch("Objects live on different quadratic forms")


def standard_tsd(n: int) -> Tsd:
    form = standard_form(n)
    dim = 2 * n
    a = Subspace.from_vectors(dim, [BitVector.unit(dim, i) for i in range(n)])
    b = Subspace.from_vectors(dim, [BitVector.unit(dim, n + i) for i in range(n)])
    return Tsd(form, a, b)


def complete_to_tsd(form: QuadraticForm, a: Subspace) -> Tsd:
    """
    Find B with (A, B) a TSD by hyperbolic completion.

    Each generator a_1 of A gets a partner y with B(a_1, y) = 1 inside the
    complement of the pairs built so far; y is replaced by y + a_1 when
    g(y) = 1, which makes the partner singular. The remaining generators are
    then projected off the new pair.
    """
    if not is_totally_singular(form, a):
        raise exceptions.NotTotallySingular("Subspace is not totally singular")
    if a.dim != form.genus:
        raise exceptions.WrongDimension(
            f"Subspace has dimension {a.dim}, expected {form.genus}"
        )
    zero = BitVector.zeros(form.dim)
    units = [BitVector.unit(form.dim, i) for i in range(form.dim)]
    remaining = a.vectors()
    pairs: List[Tuple[BitVector, BitVector]] = []
    while remaining:
        a1 = remaining.pop(0)
        # a non-degenerate polar form pairs a1 nontrivially with some unit vector
        y = next(u for u in units if bilinear(form, a1, u))
        for ak, bk in pairs:
            y = y + (ak if bilinear(form, y, bk) else zero)
            y = y + (bk if bilinear(form, y, ak) else zero)
        b1 = y + a1 if evaluate(form, y) else y
        remaining = [r + (a1 if bilinear(form, r, b1) else zero) for r in remaining]
        pairs.append((a1, b1))
    b = Subspace.from_vectors(form.dim, [bk for _, bk in pairs])
    logger.debug("Completed a genus %d TSD", form.genus)
    return Tsd(form, a, b)


def find_tsd(form: QuadraticForm) -> Tsd:
    """Some TSD of ``form``; raises NoTsd when none exists."""
    if not admits_tsd(form):
        raise exceptions.NoTsd("The form admits no totally singular decomposition")
    singular: List[BitVector] = []
    pending: Optional[Tuple[BitVector, BitVector]] = None
    for e, f in symplectic_basis(form):
        if not evaluate(form, e):
            singular.append(e)
        elif not evaluate(form, f):
            singular.append(f)
        elif pending is None:
            pending = (e, f)
        else:
            # two anisotropic planes together contain a totally singular plane
            e0, f0 = pending
            singular.extend([e0 + e, f0 + f])
            pending = None
    return complete_to_tsd(form, Subspace.from_vectors(form.dim, singular))


def good_basis(t: Tsd, a_basis: Optional[Sequence[BitVector]] = None) -> GoodBasis:
    """
    The basis of B dual to ``a_basis`` (default: the echelon basis of A).

    With c_1..c_n any basis of B and M_ij = B(a_i, c_j), the dual vectors are
    b_j = sum_k (M^-1)_kj c_k.
    """
    n = t.genus
    if a_basis is None:
        a_vecs = t.a.vectors()
    else:
        a_vecs = list(a_basis)
        if len(a_vecs) != n or any(v.dim != t.form.dim for v in a_vecs):
            raise exceptions.NotABasis(
                f"Expected {n} vectors of dimension {t.form.dim}"
            )
        if any(not contains(t.a, v) for v in a_vecs):
            raise exceptions.NotABasis("A supplied vector lies outside A")
        if n and rank(BitMatrix.from_rows(a_vecs)) != n:
            raise exceptions.NotABasis("Supplied vectors are linearly dependent")
    if n == 0:
        return GoodBasis(t, [], [])
    a_rows = BitMatrix.from_rows(a_vecs)
    c_rows = t.b.basis
    pairing = _pairings(t.form, a_rows, c_rows)
    b_rows = invert(pairing).transpose() @ c_rows
    if _pairings(t.form, a_rows, b_rows) != BitMatrix.identity(n):
        raise exceptions.InternalError("Dual basis does not pair to the identity")
    return GoodBasis(t, a_vecs, b_rows.row_vectors())


def transport(g1: GoodBasis, g2: GoodBasis) -> BitMatrix:
    """The map a_i -> a'_i, b_i -> b'_i in reference coordinates."""
    _check_same_form(g1.tsd.form, g2.tsd.form)
    form = g1.tsd.form
    t = g2.matrix() @ invert(g1.matrix())
    if not is_orthogonal(form, t):
        raise exceptions.InternalError(
            "Transport between good bases is not orthogonal"
        )
    return t


def _rank_parity(t: BitMatrix) -> int:
    return rank(t + BitMatrix.identity(t.rows)) % 2


def psi(form: QuadraticForm, t: BitMatrix) -> int:
    """rank(T - I) mod 2 for T orthogonal"""
    if not is_orthogonal(form, t):
        raise exceptions.NotOrthogonal("Map does not preserve the quadratic form")
    return _rank_parity(t)


def psi_hat(t1: Tsd, t2: Tsd) -> int:
    _check_same_form(t1.form, t2.form)
    # transport already checks the map is orthogonal
    return _rank_parity(transport(good_basis(t1), good_basis(t2)))


def psi_hat_recipe(t1: Tsd, t2: Tsd) -> int:
    """
    psi_hat without building the transport: the dimension mod 2 of the span
    of the differences a'_i - a_i, b'_i - b_i between two good bases.
    """
    _check_same_form(t1.form, t2.form)
    if t1.genus == 0:
        return 0
    g1, g2 = good_basis(t1), good_basis(t2)
    first = BitMatrix.from_rows(list(g1.a_vecs + g1.b_vecs))
    second = BitMatrix.from_rows(list(g2.a_vecs + g2.b_vecs))
    return rank(first + second) % 2


def equivalent(t1: Tsd, t2: Tsd) -> bool:
    return psi_hat(t1, t2) == 0


def direct_sum(t1: Tsd, t2: Tsd) -> Tsd:
    """
    The TSD (A_1 + A_2, B_1 + B_2) of the orthogonal sum of the two forms,
    in the a-then-b coordinate layout of :func:`qinv.quadform.block_positions`.
    """
    form = orthogonal_sum(t1.form, t2.form)
    first, second = block_positions(t1.genus, t2.genus)
    a = t1.a.embed(first, form.dim).basis.stack(t2.a.embed(second, form.dim).basis)
    b = t1.b.embed(first, form.dim).basis.stack(t2.b.embed(second, form.dim).basis)
    return Tsd(form, Subspace.span(a), Subspace.span(b))


def in_good_basis(t: BitMatrix, gb: GoodBasis) -> BitMatrix:
    """Matrix of ``t`` with respect to the good basis a_1..a_n, b_1..b_n."""
    p = gb.matrix()
    return invert(p) @ t @ p
