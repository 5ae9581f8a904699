"""
Embedding data and the quadruple point invariant Q.

An embedding e of a closed orientable genus n surface is represented by its
homological fingerprint in H_1(F, Z/2) = (Z/2)^{2n}, written in the
reference basis a_1..a_n, b_1..b_n whose intersection form is the polar form
of :func:`qinv.quadform.standard_form`:

- ``a0``: kernel of the map into the compact complementary region,
- ``a1``: kernel of the map into the non-compact region,
- ``orientation``: +1 or -1, the orientation induced from the compact side
  relative to the fixed reference orientation of F.
"""
import logging
from typing import Sequence

from qinv import exceptions
from qinv.gf2 import _parity, BitMatrix, BitVector, invert, preimage, Subspace
from qinv.quadform import (
    block_positions,
    is_totally_singular,
    QuadraticForm,
    standard_form,
)
from qinv.tsd import psi, psi_hat, Tsd

logger = logging.getLogger(__name__)


def orientation_bit(orientation: int) -> int:
    return 0 if orientation == 1 else 1


def _intersection_form(n: int) -> BitMatrix:
    return standard_form(n).gram


class EmbeddingData:

    """(A^0(e), A^1(e), o(e)) of an embedding of a genus ``genus`` surface"""

    __slots__ = ("genus", "a0", "a1", "orientation")

    def __init__(
        self, genus: int, a0: Subspace, a1: Subspace, orientation: int = 1
    ) -> None:
        if genus < 0:
            raise exceptions.InvalidEmbeddingData(f"Negative genus {genus}")
        if orientation not in (1, -1):
            raise exceptions.InvalidEmbeddingData(
                f"Orientation must be +1 or -1, got {orientation!r}"
            )
        dim = 2 * genus
        if a0.ambient_dim != dim or a1.ambient_dim != dim:
            raise exceptions.InvalidEmbeddingData(
                f"Kernels must live in (Z/2)^{dim}, got {a0.ambient_dim} "
                f"and {a1.ambient_dim}"
            )
        if a0.dim != genus or a1.dim != genus:
            raise exceptions.InvalidEmbeddingData(
                f"Kernels must have dimension {genus}, got {a0.dim} and {a1.dim}"
            )
        if Subspace.span(a0.basis.stack(a1.basis)).dim != dim:
            raise exceptions.InvalidEmbeddingData("Kernels do not span H_1")
        # each kernel is isotropic for the intersection form
        gram = _intersection_form(genus)
        for kernel in (a0, a1):
            pairing = kernel.basis @ gram @ kernel.basis.transpose()
            if pairing.words.any():
                raise exceptions.InvalidEmbeddingData(
                    "Kernel is not isotropic for the intersection form"
                )
        self.genus = genus
        self.a0 = a0
        self.a1 = a1
        self.orientation = orientation

    @property
    def orientation_bit(self) -> int:
        return orientation_bit(self.orientation)

    def with_orientation(self, orientation: int) -> "EmbeddingData":
        return EmbeddingData(self.genus, self.a0, self.a1, orientation)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddingData):
            return NotImplemented
        return (self.genus, self.a0, self.a1, self.orientation) == (
            other.genus,
            other.a0,
            other.a1,
            other.orientation,
        )

    def __hash__(self) -> int:
        return hash((self.genus, self.a0, self.a1, self.orientation))

    def __repr__(self) -> str:
        sign = "+" if self.orientation == 1 else "-"
        return (
            f"EmbeddingData(genus={self.genus}, A0={self.a0.to_strings()!r}, "
            f"A1={self.a1.to_strings()!r}, orientation={sign!r})"
        )


class SystemEmbeddingData:

    """An embedding of a finite disjoint union of closed orientable surfaces"""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[EmbeddingData]) -> None:
        self.components = tuple(components)

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SystemEmbeddingData):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)


class DiffeoData:

    """
    A diffeomorphism h of F seen through h_* on H_1(F, Z/2) and eps(h).

    ``eps_h`` is 0 for orientation preserving and 1 for reversing maps; it is
    input data since every invertible matrix over Z/2 has determinant 1.
    """

    __slots__ = ("genus", "h_star", "eps_h")

    def __init__(self, genus: int, h_star: BitMatrix, eps_h: int = 0) -> None:
        if h_star.rows != 2 * genus or not h_star.is_square:
            raise exceptions.InvalidDiffeoData(
                f"Expected a {2 * genus}x{2 * genus} matrix, "
                f"got {h_star.rows}x{h_star.cols}"
            )
        if eps_h not in (0, 1):
            raise exceptions.InvalidDiffeoData(f"eps_h must be 0 or 1, got {eps_h!r}")
        invert(h_star)
        self.genus = genus
        self.h_star = h_star
        self.eps_h = eps_h

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffeoData):
            return NotImplemented
        return (self.genus, self.h_star, self.eps_h) == (
            other.genus,
            other.h_star,
            other.eps_h,
        )

    def __hash__(self) -> int:
        return hash((self.genus, self.h_star, self.eps_h))


def form_of(e: EmbeddingData) -> QuadraticForm:
    """
    g^e: the quadratic form with the intersection form as polar form that
    vanishes on both kernels. Writing v = v_0 + v_1 with v_k in A^k(e),
    g^e(v) = B(v_0, v_1).
    """
    n = e.genus
    dim = 2 * n
    gram = _intersection_form(n)
    if n == 0:
        return standard_form(0)
    columns = BitMatrix.from_columns(e.a0.vectors() + e.a1.vectors(), rows=dim)
    coords = invert(columns).bits()
    a0_cols = e.a0.basis.transpose()
    a1_cols = e.a1.basis.transpose()
    # column i of each product is the A^0 / A^1 part of the i-th unit vector
    part0 = (a0_cols @ BitMatrix.from_bits(coords[:n], cols=dim)).transpose()
    part1 = (a1_cols @ BitMatrix.from_bits(coords[n:], cols=dim)).transpose()
    diag = _parity(part0.words & (part1 @ gram).words)
    form = standard_form(n).with_diag(BitVector.from_bits(diag))
    if not (is_totally_singular(form, e.a0) and is_totally_singular(form, e.a1)):
        raise exceptions.InvalidEmbeddingData(
            "Kernels are not totally singular for the induced form"
        )
    return form


def standard_embedding(n: int) -> EmbeddingData:
    """Handles bound discs inside, their duals bound discs outside."""
    if n < 0:
        raise exceptions.InvalidEmbeddingData(f"Negative genus {n}")
    dim = 2 * n
    a0 = Subspace.from_vectors(dim, [BitVector.unit(dim, i) for i in range(n)])
    a1 = Subspace.from_vectors(dim, [BitVector.unit(dim, n + i) for i in range(n)])
    return EmbeddingData(n, a0, a1, 1)


def tsd_of(e: EmbeddingData) -> Tsd:
    # form_of has checked both kernels are totally singular for the form
    return Tsd._trusted(form_of(e), e.a0, e.a1)


def regularly_homotopic(e: EmbeddingData, e_prime: EmbeddingData) -> bool:
    if e.genus != e_prime.genus:
        return False
    return form_of(e) == form_of(e_prime)


def epsilon_hat(e: EmbeddingData, e_prime: EmbeddingData) -> int:
    return e.orientation_bit ^ e_prime.orientation_bit


def quadruple_invariant(e: EmbeddingData, e_prime: EmbeddingData) -> int:
    """Q(e, e') = psi_hat(A^0(e), A^1(e); A^0(e'), A^1(e')) + (n + 1) eps_hat(e, e')"""
    if e.genus != e_prime.genus:
        raise exceptions.NotRegularlyHomotopic(
            f"Genus {e.genus} and genus {e_prime.genus} surfaces"
        )
    form = form_of(e)
    if form != form_of(e_prime):
        raise exceptions.NotRegularlyHomotopic("Embeddings induce different forms")
    relative = psi_hat(
        Tsd._trusted(form, e.a0, e.a1), Tsd._trusted(form, e_prime.a0, e_prime.a1)
    )
    return relative ^ ((e.genus + 1) % 2 & epsilon_hat(e, e_prime))


def homologically_equivalent(e: EmbeddingData, f: EmbeddingData) -> bool:
    """Same regular homotopy class, equivalent TSDs and equal orientations."""
    if e.genus != f.genus or e.orientation != f.orientation:
        return False
    form = form_of(e)
    if form != form_of(f):
        return False
    return psi_hat(Tsd._trusted(form, e.a0, e.a1), Tsd._trusted(form, f.a0, f.a1)) == 0


def pullback_by_diffeo(e: EmbeddingData, h: DiffeoData) -> EmbeddingData:
    """Data of e o h: each kernel is replaced by its preimage under h_*."""
    if e.genus != h.genus:
        raise exceptions.GenusMismatch(
            f"Genus {h.genus} diffeomorphism for a genus {e.genus} embedding"
        )
    orientation = -e.orientation if h.eps_h else e.orientation
    return EmbeddingData(
        e.genus,
        preimage(h.h_star, e.a0),
        preimage(h.h_star, e.a1),
        orientation,
    )


def q_diffeo(h: DiffeoData, i: EmbeddingData) -> int:
    """Q(i, i o h) = psi(h_*) + (n + 1) eps(h)"""
    if i.genus != h.genus:
        raise exceptions.GenusMismatch(
            f"Genus {h.genus} diffeomorphism for a genus {i.genus} embedding"
        )
    return psi(form_of(i), h.h_star) ^ ((i.genus + 1) % 2 & h.eps_h)


def compose_split(e0: EmbeddingData, e1: EmbeddingData) -> EmbeddingData:
    """
    Data of the embedding obtained by joining e0 and e1 with a tube across a
    separating plane: the kernels are sums of the embedded component kernels.
    """
    if e0.orientation != e1.orientation:
        raise exceptions.OrientationMismatch(
            "Pieces of one embedded surface carry one orientation"
        )
    genus = e0.genus + e1.genus
    dim = 2 * genus
    first, second = block_positions(e0.genus, e1.genus)

    def glued(k0: Subspace, k1: Subspace) -> Subspace:
        stacked = k0.embed(first, dim).basis.stack(k1.embed(second, dim).basis)
        return Subspace.span(stacked)

    return EmbeddingData(
        genus, glued(e0.a0, e1.a0), glued(e0.a1, e1.a1), e0.orientation
    )


def q_system(s: SystemEmbeddingData, s_prime: SystemEmbeddingData) -> int:
    """Sum of Q over components matched by position."""
    if len(s) != len(s_prime):
        raise exceptions.ComponentCountMismatch(
            f"{len(s)} and {len(s_prime)} components"
        )
    total = 0
    for index, (e, e_prime) in enumerate(zip(s.components, s_prime.components)):
        try:
            total ^= quadruple_invariant(e, e_prime)
        except exceptions.NotRegularlyHomotopic as ex:
            raise exceptions.NotRegularlyHomotopic(
                f"Component {index}: {ex}", index=index
            ) from ex
    logger.debug("Q summed over %d components", len(s))
    return total
