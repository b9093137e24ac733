import math
import random
from fractions import Fraction

import pytest

from wdreps import (DEFAULT_EPS, CertificationFailed, ModulusInterval, Poly,
                    QQ, root_moduli_certified, sqrt_bounds)


def assert_enclosure(intervals, true_moduli, eps):
    assert len(intervals) == len(true_moduli)
    for iv, true_sq in zip(intervals, sorted(true_moduli)):
        # true_sq is the square of the true modulus: compare exactly
        assert iv.lo * iv.lo <= true_sq <= iv.hi * iv.hi
        assert iv.width() <= eps


class TestSqrtBounds:
    def test_exact_square(self):
        lo, hi = sqrt_bounds(Fraction(4), Fraction(1, 10 ** 12))
        assert lo <= 2 <= hi and hi - lo <= Fraction(1, 10 ** 12)

    def test_zero(self):
        assert sqrt_bounds(Fraction(0), Fraction(1, 10)) == (0, 0)

    def test_irrational(self):
        lo, hi = sqrt_bounds(Fraction(2), Fraction(1, 10 ** 30))
        assert lo * lo <= 2 <= hi * hi


class TestExamples:
    def test_x2_minus_4(self):
        intervals = root_moduli_certified([-4, 0, 1], DEFAULT_EPS)
        assert_enclosure(intervals, [Fraction(4), Fraction(4)], DEFAULT_EPS)

    def test_x2_plus_1(self):
        intervals = root_moduli_certified([1, 0, 1], DEFAULT_EPS)
        assert_enclosure(intervals, [Fraction(1), Fraction(1)], DEFAULT_EPS)

    def test_complex_pair_sqrt5(self):
        # x^2 - 3x + 5: negative discriminant, root product 5, so both
        # complex roots have modulus sqrt(5)
        intervals = root_moduli_certified([5, -3, 1], DEFAULT_EPS)
        assert_enclosure(intervals, [Fraction(5), Fraction(5)], DEFAULT_EPS)

    def test_multiplicities_and_origin(self):
        # x^3 (x - 2)^2 (x^2 + x + 1)
        p = Poly(QQ, [0, 0, 0, 1]) * Poly(QQ, [-2, 1]) ** 2 * Poly(QQ, [1, 1, 1])
        intervals = root_moduli_certified(p, DEFAULT_EPS)
        truths = [Fraction(0)] * 3 + [Fraction(1)] * 2 + [Fraction(4)] * 2
        assert_enclosure(intervals, truths, DEFAULT_EPS)

    def test_errors(self):
        with pytest.raises(ValueError):
            root_moduli_certified([], DEFAULT_EPS)
        with pytest.raises(ValueError):
            root_moduli_certified([1, 1], Fraction(0))

    def test_unreachable_eps_fails_loudly(self):
        with pytest.raises(CertificationFailed):
            root_moduli_certified([-2, 0, 1], Fraction(1, 10 ** 6000))


class TestProperties:
    def test_known_rational_moduli(self):
        rng = random.Random(5)
        for _ in range(30):
            roots = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, 5))]
            p = Poly.one(QQ)
            for r in roots:
                p = p * Poly(QQ, [-r, 1])
            intervals = root_moduli_certified(p, DEFAULT_EPS)
            expected = sorted(r * r for r in roots)
            got_sq_sorted = sorted(zip([iv.lo for iv in intervals], intervals))
            for (_, iv), true_sq in zip(got_sq_sorted, expected):
                assert iv.lo * iv.lo <= true_sq <= iv.hi * iv.hi
                assert iv.width() <= DEFAULT_EPS

    def test_constant_term_product_consistency(self):
        # |p(0)/lead| = product of all root moduli, so the interval
        # product must bracket it
        rng = random.Random(6)
        for _ in range(20):
            n = rng.randint(1, 5)
            coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(n)] + [Fraction(1)]
            p = Poly(QQ, coeffs)
            intervals = root_moduli_certified(p, Fraction(1, 10 ** 12))
            target = abs(Fraction(p[0])) / abs(p.leading())
            lo = math.prod((iv.lo for iv in intervals), start=Fraction(1))
            hi = math.prod((iv.hi for iv in intervals), start=Fraction(1))
            assert lo <= target <= hi

    def test_half_power_membership(self):
        iv = root_moduli_certified([5, -3, 1], DEFAULT_EPS)[0]
        assert iv.contains_half_power(5, 1)
        assert iv.excludes_half_power(5, 0)
        assert iv.excludes_half_power(5, 2)

    def test_exact_interval_for_rational_roots(self):
        iv = root_moduli_certified([-3, 1], DEFAULT_EPS)[0]
        assert iv == ModulusInterval(Fraction(3), Fraction(3))
