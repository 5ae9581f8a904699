"""
Seeded random generators for property checks and benchmarks.

Every generator takes a ``numpy.random.Generator``; use :func:`default_rng`
to build one from an integer seed so runs are reproducible.
"""
import logging
from typing import List, Optional

import numpy as np
from qinv import const, exceptions
from qinv.gf2 import BitMatrix, BitVector, contains, kernel, rank, Subspace
from qinv.invariant import DiffeoData, EmbeddingData, form_of
from qinv.quadform import admits_tsd, evaluate, QuadraticForm, standard_form
from qinv.tsd import complete_to_tsd, good_basis, GoodBasis, transport, Tsd

logger = logging.getLogger(__name__)


def default_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(const.DEFAULT_SEED if seed is None else seed)


def random_vector(dim: int, rng: np.random.Generator) -> BitVector:
    return BitVector.from_bits(rng.integers(0, 2, dim, dtype=np.uint8))


def random_matrix(rows: int, cols: int, rng: np.random.Generator) -> BitMatrix:
    return BitMatrix.from_bits(
        rng.integers(0, 2, (rows, cols), dtype=np.uint8), cols=cols
    )


def random_invertible(n: int, rng: np.random.Generator) -> BitMatrix:
    # roughly 29% of square matrices over Z/2 are invertible
    while True:
        m = random_matrix(n, n, rng)
        if rank(m) == n:
            return m


def random_alternating(n: int, rng: np.random.Generator) -> BitMatrix:
    """Symmetric with zero diagonal."""
    upper = np.triu(rng.integers(0, 2, (n, n), dtype=np.uint8), k=1)
    return BitMatrix.from_bits(upper ^ upper.T, cols=n)


def random_form(genus: int, rng: np.random.Generator) -> QuadraticForm:
    """Standard polar form with random values on the basis, TSD guaranteed."""
    standard = standard_form(genus)
    while True:
        form = standard.with_diag(random_vector(2 * genus, rng))
        if admits_tsd(form):
            return form


def random_lagrangian(form: QuadraticForm, rng: np.random.Generator) -> Subspace:
    """
    A random totally singular subspace of dimension genus.

    Vectors are drawn one at a time from the polar complement of those
    already chosen; the quotient there is again a space admitting a TSD, so
    a singular vector outside the current span always exists.
    """
    if not admits_tsd(form):
        raise exceptions.NoTsd("The form admits no totally singular decomposition")
    chosen: List[BitVector] = []
    while len(chosen) < form.genus:
        if chosen:
            candidates = kernel(BitMatrix.from_rows(chosen) @ form.gram)
        else:
            candidates = Subspace.full(form.dim)
        span = Subspace.from_vectors(form.dim, chosen)
        while True:
            v = candidates.combination(rng.integers(0, 2, candidates.dim))
            if not evaluate(form, v) and not contains(span, v):
                chosen.append(v)
                break
    return Subspace.from_vectors(form.dim, chosen)


def random_complement(
    form: QuadraticForm, a: Subspace, rng: np.random.Generator
) -> Subspace:
    """
    A random B with (A, B) a TSD: the completion of A sheared by an
    alternating S, b'_j = b_j + sum_i S_ij a_i. Every complement is reached.
    """
    n = form.genus
    base = good_basis(complete_to_tsd(form, a))
    if n == 0:
        return Subspace.zero(form.dim)
    a_rows = BitMatrix.from_rows(list(base.a_vecs))
    b_rows = BitMatrix.from_rows(list(base.b_vecs))
    return Subspace.span(b_rows + random_alternating(n, rng) @ a_rows)


def random_tsd(form: QuadraticForm, rng: np.random.Generator) -> Tsd:
    a = random_lagrangian(form, rng)
    return Tsd(form, a, random_complement(form, a, rng))


def random_good_basis(t: Tsd, rng: np.random.Generator) -> GoodBasis:
    if t.genus == 0:
        return good_basis(t)
    a_rows = random_invertible(t.genus, rng) @ t.a.basis
    return good_basis(t, a_rows.row_vectors())


def random_orthogonal(
    form: QuadraticForm, rng: np.random.Generator, factors: Optional[int] = None
) -> BitMatrix:
    """Product of transports between random good bases of random TSDs."""
    if factors is None:
        factors = int(rng.integers(1, const.DEFAULT_ORTHOGONAL_FACTORS + 1))
    result = BitMatrix.identity(form.dim)
    for _ in range(factors):
        g1 = random_good_basis(random_tsd(form, rng), rng)
        g2 = random_good_basis(random_tsd(form, rng), rng)
        result = transport(g1, g2) @ result
    return result


def _orientation(rng: np.random.Generator, orientation: Optional[int]) -> int:
    if orientation is not None:
        return orientation
    return 1 if rng.integers(0, 2) == 0 else -1


def random_embedding(
    genus: int, rng: np.random.Generator, orientation: Optional[int] = None
) -> EmbeddingData:
    t = random_tsd(random_form(genus, rng), rng)
    return EmbeddingData(genus, t.a, t.b, _orientation(rng, orientation))


def random_homotopic(
    e: EmbeddingData, rng: np.random.Generator, orientation: Optional[int] = None
) -> EmbeddingData:
    """Random embedding data regularly homotopic to ``e``."""
    t = random_tsd(form_of(e), rng)
    return EmbeddingData(e.genus, t.a, t.b, _orientation(rng, orientation))


def random_diffeo(
    e: EmbeddingData, rng: np.random.Generator, eps_h: Optional[int] = None
) -> DiffeoData:
    """A diffeomorphism whose h_* preserves the form of ``e``."""
    h_star = random_orthogonal(form_of(e), rng)
    if eps_h is None:
        eps_h = int(rng.integers(0, 2))
    logger.debug("Sampled genus %d diffeomorphism data", e.genus)
    return DiffeoData(e.genus, h_star, eps_h)
