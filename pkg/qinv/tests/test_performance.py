import time
import unittest

from qinv.gf2 import rank
from qinv.invariant import quadruple_invariant
from qinv.sampling import default_rng, random_embedding, random_homotopic, random_matrix

REPEATS = 5


def best_of(fn, *args):
    timings = []
    for _ in range(REPEATS):
        start = time.perf_counter()
        fn(*args)
        timings.append(time.perf_counter() - start)
    return min(timings)


class TestPerformance(unittest.TestCase):
    def test_rank_1024(self):
        """
        PERF: Test rank of a random 1024x1024 matrix under 250 ms
        """
        m = random_matrix(1024, 1024, default_rng(1))
        self.assertLess(best_of(rank, m), 0.25)

    def test_q_genus_128(self):
        """
        PERF: Test Q at genus 128 under 100 ms
        """
        rng = default_rng(2)
        e = random_embedding(128, rng)
        f = random_homotopic(e, rng)
        self.assertLess(best_of(quadruple_invariant, e, f), 0.1)
