import unittest

from hypothesis import given, settings, strategies as st
from qinv import exceptions
from qinv.gf2 import BitMatrix, BitVector, Subspace
from qinv.quadform import (
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
from qinv.sampling import default_rng, random_form, random_orthogonal, random_vector

SEEDS = st.integers(min_value=0, max_value=2**32 - 1)


def v(text):
    return BitVector.from_string(text)


def span(rows):
    return Subspace.from_strings(len(rows[0]), rows)


def anisotropic_plane():
    return QuadraticForm(BitMatrix.from_strings(["01", "10"]), v("11"))


class TestQuadraticForm(unittest.TestCase):
    def test_standard_form(self):
        """
        QUADFORM: Test standard forms of genus 0, 1 and 2
        """
        self.assertEqual(standard_form(0).dim, 0)
        f1 = standard_form(1)
        self.assertEqual(f1.gram.to_strings(), ["01", "10"])
        self.assertEqual(f1.diag.to_string(), "00")
        f2 = standard_form(2)
        self.assertEqual(f2.gram.to_strings(), ["0010", "0001", "1000", "0100"])
        self.assertEqual(f2.genus, 2)

    def test_negative_genus(self):
        """
        QUADFORM: Test negative genus is rejected
        """
        with self.assertRaises(exceptions.WrongDimension):
            standard_form(-1)

    def test_degenerate(self):
        """
        QUADFORM: Test invalid gram matrices are rejected
        """
        for rows in (["01", "00"], ["11", "10"], ["00", "00"]):
            with self.assertRaises(exceptions.DegenerateForm):
                QuadraticForm(BitMatrix.from_strings(rows), v("00"))
        with self.assertRaises(exceptions.DimensionMismatch):
            QuadraticForm(BitMatrix.from_strings(["01", "10"]), v("000"))

    def test_arf_obstructed_form_is_valid(self):
        """
        QUADFORM: Test forms without a TSD are still constructible
        """
        form = anisotropic_plane()
        values = [evaluate(form, x) for x in (v("10"), v("01"), v("11"))]
        self.assertEqual(values, [1, 1, 1])
        self.assertFalse(admits_tsd(form))

    def test_with_diag(self):
        """
        QUADFORM: Test replacing basis values keeps the polar form
        """
        form = standard_form(1).with_diag(v("11"))
        self.assertEqual(form, anisotropic_plane())
        self.assertEqual(evaluate(form, v("11")), 1)
        self.assertEqual(standard_form(1).diag, v("00"))
        with self.assertRaises(exceptions.DimensionMismatch):
            standard_form(1).with_diag(v("000"))

    def test_evaluate_examples(self):
        """
        QUADFORM: Test g on the standard genus 1 form
        """
        form = standard_form(1)
        self.assertEqual(evaluate(form, v("10")), 0)
        self.assertEqual(evaluate(form, v("11")), 1)
        self.assertEqual(evaluate(form, v("00")), 0)
        with self.assertRaises(exceptions.DimensionMismatch):
            evaluate(form, v("1"))

    def test_evaluate_sum_of_products(self):
        """
        QUADFORM: Test g(x, y) = sum x_i y_i in standard coordinates
        """
        form = standard_form(3)
        rng = default_rng(3)
        for _ in range(50):
            x = random_vector(6, rng)
            bits = x.bits()
            expected = int((bits[:3] & bits[3:]).sum() % 2)
            self.assertEqual(evaluate(form, x), expected)

    def test_bilinear_examples(self):
        """
        QUADFORM: Test polar form values on the standard genus 2 form
        """
        form = standard_form(2)
        self.assertEqual(bilinear(form, v("1001"), v("0010")), 1)
        self.assertEqual(bilinear(form, v("1000"), v("0001")), 0)

    @settings(deadline=None, max_examples=50)
    @given(SEEDS, st.integers(1, 12))
    def test_polar_identity(self, seed, genus):
        """
        QUADFORM: Test g(x + y) + g(x) + g(y) = B(x, y) and B(x, x) = 0
        """
        rng = default_rng(seed)
        form = random_form(genus, rng)
        x = random_vector(form.dim, rng)
        y = random_vector(form.dim, rng)
        self.assertEqual(
            evaluate(form, x + y) ^ evaluate(form, x) ^ evaluate(form, y),
            bilinear(form, x, y),
        )
        self.assertEqual(bilinear(form, x, x), 0)

    def test_totally_singular_examples(self):
        """
        QUADFORM: Test totally singular subspaces of standard forms
        """
        f1 = standard_form(1)
        f2 = standard_form(2)
        self.assertTrue(is_totally_singular(f2, span(["1000", "0100"])))
        self.assertTrue(is_totally_singular(f2, span(["0010", "0001"])))
        self.assertFalse(is_totally_singular(f1, Subspace.from_strings(2, ["11"])))
        self.assertTrue(is_totally_singular(f2, span(["1001", "0110"])))
        self.assertTrue(is_totally_singular(f1, Subspace.zero(2)))
        # singular basis vectors that pair nontrivially
        self.assertFalse(is_totally_singular(f1, Subspace.full(2)))

    def test_orthogonal_examples(self):
        """
        QUADFORM: Test identity and swap are orthogonal, a shear is not
        """
        form = standard_form(1)
        self.assertTrue(is_orthogonal(form, BitMatrix.identity(2)))
        self.assertTrue(is_orthogonal(form, BitMatrix.from_strings(["01", "10"])))
        self.assertFalse(is_orthogonal(form, BitMatrix.from_strings(["10", "11"])))
        self.assertFalse(is_orthogonal(form, BitMatrix.from_strings(["11", "11"])))
        with self.assertRaises(exceptions.DimensionMismatch):
            is_orthogonal(form, BitMatrix.identity(3))

    @settings(deadline=None, max_examples=25)
    @given(SEEDS, st.integers(1, 10))
    def test_orthogonal_preserves_g(self, seed, genus):
        """
        QUADFORM: Test accepted maps preserve g on random vectors
        """
        rng = default_rng(seed)
        form = random_form(genus, rng)
        t = random_orthogonal(form, rng)
        self.assertTrue(is_orthogonal(form, t))
        for _ in range(20):
            x = random_vector(form.dim, rng)
            self.assertEqual(evaluate(form, t @ x), evaluate(form, x))


class TestOrthogonalSum(unittest.TestCase):
    def test_block_positions(self):
        """
        QUADFORM: Test the a-then-b layout of an orthogonal sum
        """
        self.assertEqual(block_positions(1, 1), ([0, 2], [1, 3]))
        self.assertEqual(block_positions(2, 1), ([0, 1, 3, 4], [2, 5]))
        self.assertEqual(block_positions(0, 1), ([], [0, 1]))

    def test_standard_sum(self):
        """
        QUADFORM: Test standard(1) + standard(1) = standard(2)
        """
        one, three = standard_form(1), standard_form(3)
        self.assertEqual(orthogonal_sum(one, one), standard_form(2))
        self.assertEqual(orthogonal_sum(standard_form(0), three), three)

    def test_two_anisotropic_planes(self):
        """
        QUADFORM: Test two anisotropic planes together admit a TSD
        """
        plane = anisotropic_plane()
        self.assertFalse(admits_tsd(orthogonal_sum(plane, standard_form(1))))
        self.assertTrue(admits_tsd(orthogonal_sum(plane, plane)))

    @settings(deadline=None, max_examples=30)
    @given(SEEDS, st.integers(1, 10))
    def test_symplectic_basis(self, seed, genus):
        """
        QUADFORM: Test the hyperbolic pairs pair to the identity
        """
        form = random_form(genus, default_rng(seed))
        pairs = symplectic_basis(form)
        self.assertEqual(len(pairs), genus)
        for i, (e, f) in enumerate(pairs):
            for j, (e2, f2) in enumerate(pairs):
                self.assertEqual(bilinear(form, e, f2), int(i == j))
                self.assertEqual(bilinear(form, e, e2), 0)
                self.assertEqual(bilinear(form, f, f2), 0)
        self.assertTrue(admits_tsd(form))
