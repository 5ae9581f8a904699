"""
Brute-force referee for small formed spaces.

Maps are unpacked ``uint8`` arrays, a vector is an integer code (bit ``i``
of the code is coordinate ``i``) and a subspace is the frozenset of the codes
of all its elements. Nothing here goes through :mod:`qinv.gf2` elimination
or subspace canonicalization; library objects are only built afterwards, to
be checked against these results.
"""
import concurrent.futures
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, NamedTuple, Optional, Tuple

import numpy as np
from qinv import const, exceptions
from qinv.gf2 import BitMatrix, BitVector, Subspace
from qinv.quadform import is_orthogonal, QuadraticForm
from qinv.tsd import psi, psi_hat, psi_hat_recipe, Tsd

logger = logging.getLogger(__name__)

Elements = FrozenSet[int]


@dataclass(frozen=True)
class Violation:

    """A counterexample to one of the checked statements"""

    lemma: str
    witnesses: Tuple[str, ...] = ()

    def as_dict(self) -> Dict[str, Any]:
        return {"lemma": self.lemma, "witnesses": list(self.witnesses)}


@dataclass(frozen=True)
class EnumerationReport:
    dim: int
    gl_order: int
    group_order: int
    tsd_count: int
    class_count: int
    psi_kernel_index: int
    violations: Tuple[Violation, ...] = ()
    flags: Tuple[str, ...] = field(default=())

    def as_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "gl_order": self.gl_order,
            "group_order": self.group_order,
            "tsd_count": self.tsd_count,
            "class_count": self.class_count,
            "psi_kernel_index": self.psi_kernel_index,
            "violations": [v.as_dict() for v in self.violations],
            "flags": list(self.flags),
        }


class _Halves(NamedTuple):

    """A TSD as element sets, with the generator codes it was found from"""

    a: Elements
    b: Elements
    a_gens: Tuple[int, ...]
    b_gens: Tuple[int, ...]

    def describe(self) -> str:
        return f"A={sorted(self.a)} B={sorted(self.b)}"


def _naive_rank(bits: np.ndarray) -> int:
    a = np.array(bits, dtype=np.uint8, copy=True)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def naive_rank(m: BitMatrix) -> int:
    """Textbook row reduction, one unpacked byte per entry."""
    return _naive_rank(m.bits())


def _check_dim(form: QuadraticForm) -> None:
    if form.dim > const.ORACLE_MAX_DIM:
        raise exceptions.DimensionTooLarge(
            f"Enumeration is limited to dimension {const.ORACLE_MAX_DIM}, "
            f"got {form.dim}"
        )


def _vectors(dim: int) -> np.ndarray:
    """Row ``x`` is the vector with code ``x``."""
    codes = np.arange(1 << dim, dtype=np.int64)
    return (codes[:, None] >> np.arange(dim, dtype=np.int64)) & 1


def _codes(bits: np.ndarray) -> np.ndarray:
    weights = np.left_shift(1, np.arange(bits.shape[-1], dtype=np.int64))
    return bits.astype(np.int64) @ weights


def _decode(code: int, dim: int) -> np.ndarray:
    return (code >> np.arange(dim, dtype=np.int64)) & 1


def _span(rows: np.ndarray) -> Elements:
    coeffs = _vectors(rows.shape[0])
    return frozenset(int(c) for c in _codes(coeffs @ rows % 2))


def _images(t: np.ndarray) -> np.ndarray:
    """Code of T v for every code v."""
    return _codes(_vectors(t.shape[0]) @ t.T.astype(np.int64) % 2)


def _form_arrays(form: QuadraticForm) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    gram = form.gram.bits().astype(np.int64)
    return gram, np.triu(gram, k=1), form.diag.bits().astype(np.int64)


def _values(form: QuadraticForm, bits: np.ndarray) -> np.ndarray:
    """g of every row of ``bits``, from the diagonal and the strict upper gram."""
    _, upper, diag = _form_arrays(form)
    bits = bits.astype(np.int64)
    return (bits @ diag + np.einsum("ni,ij,nj->n", bits, upper, bits)) % 2


def _matrices(start: int, stop: int, dim: int) -> np.ndarray:
    """Matrices with index in [start, stop); bit k of the index is entry k row-major."""
    idx = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(dim * dim, dtype=np.int64)
    bits = (idx[:, None] >> shifts) & 1
    return bits.astype(np.int64).reshape(idx.shape[0], dim, dim)


def _scan_chunk(
    form: QuadraticForm, start: int, stop: int
) -> Tuple[List[np.ndarray], int]:
    mats = _matrices(start, stop, form.dim)
    det = np.rint(np.linalg.det(mats.astype(np.float64))).astype(np.int64) % 2
    invertible = mats[det == 1]
    gram, upper, diag = _form_arrays(form)
    # T^t G T = G
    polar = np.einsum("kji,jl,klm->kim", invertible, gram, invertible) % 2
    keeps_polar = (polar == gram).all(axis=(1, 2))
    # g(T e_i) = g(e_i) for every basis vector
    cols = invertible.transpose(0, 2, 1)
    values = (cols @ diag + np.einsum("kij,jl,kil->ki", cols, upper, cols)) % 2
    keeps_values = (values == diag).all(axis=1)
    hits = invertible[keeps_polar & keeps_values]
    return [h.astype(np.uint8) for h in hits], int(invertible.shape[0])


def _scan(form: QuadraticForm, workers: int = 1) -> Tuple[List[np.ndarray], int]:
    _check_dim(form)
    total = 1 << (form.dim * form.dim)
    chunk = const.ORACLE_CHUNK_SIZE
    ranges = [(start, min(start + chunk, total)) for start in range(0, total, chunk)]
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            # map keeps index order
            results = list(executor.map(lambda r: _scan_chunk(form, *r), ranges))
    else:
        results = [_scan_chunk(form, *r) for r in ranges]
    group = [bits for hits, _ in results for bits in hits]
    gl_order = sum(count for _, count in results)
    logger.debug(
        "Scanned %d matrices: %d invertible, %d orthogonal", total, gl_order, len(group)
    )
    return group, gl_order


def enumerate_orthogonal_group(
    form: QuadraticForm, workers: int = 1
) -> List[BitMatrix]:
    """Every orthogonal map of ``form``, in matrix index order."""
    group, _ = _scan(form, workers)
    return [BitMatrix.from_bits(t, cols=form.dim) for t in group]


def _subspaces(dim: int, k: int) -> List[Tuple[Elements, Tuple[int, ...]]]:
    """Every k-dimensional subspace, with k generator codes spanning it."""
    vectors = _vectors(dim)
    found: Dict[Elements, Tuple[int, ...]] = {}
    for gens in itertools.combinations(range(1, 1 << dim), k):
        elements = _span(vectors[list(gens)].reshape(k, dim))
        if len(elements) == 1 << k:
            found.setdefault(elements, gens)
    return list(found.items())


def _totally_singular(form: QuadraticForm, elements: Elements) -> bool:
    bits = _vectors(form.dim)[sorted(elements)]
    return not _values(form, bits).any()


def _decompositions(form: QuadraticForm) -> List[_Halves]:
    _check_dim(form)
    singular = [
        (elements, gens)
        for elements, gens in _subspaces(form.dim, form.genus)
        if _totally_singular(form, elements)
    ]
    # two halves of order 2^n meeting in 0 span all 2^2n vectors
    halves = [
        _Halves(a, b, a_gens, b_gens)
        for (a, a_gens), (b, b_gens) in itertools.product(singular, repeat=2)
        if a & b == {0}
    ]
    logger.debug(
        "%d maximal totally singular subspaces, %d TSDs", len(singular), len(halves)
    )
    return halves


def _library_tsd(form: QuadraticForm, h: _Halves) -> Tsd:
    def subspace(gens: Tuple[int, ...]) -> Subspace:
        return Subspace.from_vectors(
            form.dim, [BitVector.from_bits(_decode(c, form.dim)) for c in gens]
        )

    return Tsd(form, subspace(h.a_gens), subspace(h.b_gens))


def enumerate_tsds(form: QuadraticForm) -> List[Tsd]:
    """All ordered TSDs; empty when the form admits none."""
    return [_library_tsd(form, h) for h in _decompositions(form)]


def _psi(t: np.ndarray) -> int:
    return _naive_rank(t ^ np.eye(t.shape[0], dtype=np.uint8)) % 2


def _class_count(count: int, table: Dict[Tuple[int, int], int]) -> int:
    parent = list(range(count))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (i, j), value in table.items():
        if value == 0:
            parent[find(i)] = find(j)
    return len({find(i) for i in range(count)})


def verify_form_lemmas(form: QuadraticForm, workers: int = 1) -> EnumerationReport:
    """
    Enumerate the orthogonal group and all TSDs of ``form`` and check every
    statement the library relies on against them.
    """
    group, gl_order = _scan(form, workers)
    dim = form.dim
    violations: List[Violation] = []
    flags: List[str] = []

    def violated(lemma: str, *witnesses: Any) -> None:
        violations.append(Violation(lemma, tuple(repr(w) for w in witnesses)))

    index = {t.tobytes(): k for k, t in enumerate(group)}
    values = [_psi(t) for t in group]
    matrices = [BitMatrix.from_bits(t, cols=dim) for t in group]

    for m, value in zip(matrices, values):
        if not is_orthogonal(form, m):
            violated("is-orthogonal-agreement", m)
        elif psi(form, m) != value:
            violated("psi-referee", m)
    if dim <= 2:
        # exhaustive for tiny forms: no false positives either
        for bits in _matrices(0, 1 << (dim * dim), dim):
            t = bits.astype(np.uint8)
            m = BitMatrix.from_bits(t, cols=dim)
            if is_orthogonal(form, m) != (t.tobytes() in index):
                violated("is-orthogonal-agreement", m)

    stack = np.array(group, dtype=np.int64)
    identity = np.eye(dim, dtype=np.int64)
    for i, t1 in enumerate(group):
        products = (t1.astype(np.int64) @ stack % 2).astype(np.uint8)
        for j, product in enumerate(products):
            k = index.get(product.tobytes())
            if k is None:
                violated("closure", matrices[i], matrices[j])
            elif values[k] != values[i] ^ values[j]:
                violated("homomorphism", matrices[i], matrices[j])
        if not (products == identity).all(axis=(1, 2)).any():
            violated("closure", matrices[i])

    kernel_order = values.count(0)
    psi_kernel_index = len(group) // kernel_order if kernel_order else 0
    if dim > 0 and kernel_order == len(group):
        violated("psi-surjective")

    halves = _decompositions(form)
    table: Dict[Tuple[int, int], int] = {}
    if not halves:
        flags.append("no-tsds")
    else:
        tsds: List[Optional[Tsd]] = []
        for h in halves:
            try:
                tsds.append(_library_tsd(form, h))
            except exceptions.Error as ex:
                violated("tsd-rejected", h.describe(), ex)
                tsds.append(None)

        images = [_images(t) for t in group]
        summands = {h.a for h in halves} | {h.b for h in halves}
        moved = {
            (k, u): frozenset(int(images[k][x]) for x in u)
            for k in range(len(group))
            for u in summands
        }
        for h in halves:
            for k, value in enumerate(values):
                if value and all(images[k][x] == x for x in h.a):
                    violated("pointwise-fixer-psi", h.describe(), matrices[k])

        for i, h1 in enumerate(halves):
            for j, h2 in enumerate(halves):
                carried = {
                    values[k]
                    for k in range(len(group))
                    if moved[k, h1.a] == h2.a and moved[k, h1.b] == h2.b
                }
                if not carried:
                    violated("transitivity", h1.describe(), h2.describe())
                    continue
                if len(carried) != 1:
                    violated("well-defined", h1.describe(), h2.describe())
                    continue
                value = carried.pop()
                table[i, j] = value
                if i == j and value:
                    violated("stabilizer-psi", h1.describe())
                if (h1.a == h2.a or h1.b == h2.b) and value:
                    violated("shared-summand-equivalence", h1.describe(), h2.describe())
                t1, t2 = tsds[i], tsds[j]
                if t1 is None or t2 is None:
                    continue
                if psi_hat(t1, t2) != value:
                    violated("psi-hat-mismatch", t1, t2)
                if psi_hat_recipe(t1, t2) != value:
                    violated("recipe-mismatch", t1, t2)
        for i, j, k in itertools.product(range(len(halves)), repeat=3):
            if (i, j) in table and (j, k) in table and (i, k) in table:
                if table[i, k] != table[i, j] ^ table[j, k]:
                    violated(
                        "cocycle",
                        halves[i].describe(),
                        halves[j].describe(),
                        halves[k].describe(),
                    )

    report = EnumerationReport(
        dim=dim,
        gl_order=gl_order,
        group_order=len(group),
        tsd_count=len(halves),
        class_count=_class_count(len(halves), table),
        psi_kernel_index=psi_kernel_index,
        violations=tuple(violations),
        flags=tuple(flags),
    )
    logger.debug("Enumeration report: %s", report)
    return report
