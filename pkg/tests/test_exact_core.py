"""Polynomial ring laws, interval plumbing, and the certified summation kernel."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import partial_sum
from umbraldob.errors import NegativeTermError, NonConvergentError
from umbraldob.exact_core import CertifiedValue, Poly, certified_sum

fractions_st = st.fractions(min_value=-4, max_value=4, max_denominator=12)
polys = st.lists(fractions_st, max_size=13).map(Poly)


class TestPoly:
    def test_mul(self):
        assert Poly((1, 1)) * Poly((1, 1)) == Poly((1, 2, 1))

    def test_evaluate(self):
        assert Poly((1, 1, 1)).evaluate(Fraction(1)) == 3

    def test_sub_to_zero(self):
        p = Poly((Fraction(1, 3), 2, 5))
        assert p - p == Poly(())
        assert not (p - p)

    def test_trailing_zeros_trimmed(self):
        assert Poly((1, 2, 0, 0)).coeffs == (1, 2)
        assert Poly((0, 0)).coeffs == ()

    def test_degree_and_coefficient(self):
        p = Poly((3, 0, 1))
        assert p.degree == 2
        assert p.coefficient(1) == 0
        assert p.coefficient(7) == 0
        assert Poly(()).degree == -1

    def test_scalar_equality(self):
        assert Poly((5,)) == 5
        assert Poly(()) == 0
        assert Poly((0, 1)) != 5

    def test_var_mismatch_rejected(self):
        with pytest.raises(ValueError):
            Poly((1,), var="q") * Poly((1,), var="x")

    def test_shift(self):
        assert Poly((1, 2)).shift(2) == Poly((0, 0, 1, 2))
        assert Poly(()).shift(3) == Poly(())

    def test_pow(self):
        assert Poly((1, 1)) ** 3 == Poly((1, 3, 3, 1))
        assert Poly(()) ** 0 == Poly((1,))

    @given(polys, polys, polys)
    @settings(max_examples=120)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(polys, polys, fractions_st)
    @settings(max_examples=120)
    def test_evaluate_is_ring_homomorphism(self, a, b, r):
        assert (a + b).evaluate(r) == a.evaluate(r) + b.evaluate(r)
        assert (a * b).evaluate(r) == a.evaluate(r) * b.evaluate(r)

    @given(polys, polys)
    @settings(max_examples=80)
    def test_exact_div_inverts_mul(self, a, b):
        if not b:
            return
        assert (a * b).exact_div(b) == a

    def test_exact_div_rejects_remainder(self):
        with pytest.raises(ValueError):
            Poly((1, 1, 1)).exact_div(Poly((0, 1)))

    def test_nested_coefficients(self):
        inner = Poly((0, 1))  # q
        outer = Poly((inner, Poly((1,))), var="x")  # q + x
        sq = outer * outer
        assert sq.coeffs[0] == Poly((0, 0, 1))
        assert sq.coeffs[1] == Poly((0, 2))
        assert sq.coeffs[2] == Poly((1,))


class TestCertifiedValue:
    def test_order_enforced(self):
        with pytest.raises(ValueError):
            CertifiedValue(Fraction(2), Fraction(1))

    def test_contains_and_width(self):
        cv = CertifiedValue(Fraction(1, 3), Fraction(1, 2))
        assert cv.contains(Fraction(2, 5))
        assert not cv.contains(Fraction(2))
        assert cv.width == Fraction(1, 6)

    def test_interval_arithmetic(self):
        a = CertifiedValue(1, 2)
        b = CertifiedValue(Fraction(1, 2), 1)
        assert (a - b) == CertifiedValue(0, Fraction(3, 2))
        assert (a + b) == CertifiedValue(Fraction(3, 2), 3)
        assert a.div_by_positive(b) == CertifiedValue(1, 4)

    def test_div_with_negative_numerator(self):
        a = CertifiedValue(-2, 3)
        b = CertifiedValue(Fraction(1, 2), 2)
        out = a.div_by_positive(b)
        assert out.lo == -4 and out.hi == 6


class TestCertifiedSum:
    def test_exponential_series(self):
        got = certified_sum(lambda k: Fraction(1, factorial(k)), Fraction(1, 2))
        assert got.contains(partial_sum(lambda k: Fraction(1, factorial(k)), 51))

    def test_zero_series(self):
        got = certified_sum(lambda k: Fraction(0), Fraction(1, 2))
        assert (got.lo, got.hi) == (0, 0)

    def test_square_weighted_series(self):
        term = lambda k: Fraction(k * k, factorial(k))
        got = certified_sum(term, Fraction(1, 2))
        assert got.contains(partial_sum(term, 51))

    def test_leading_zeros_do_not_truncate_early(self):
        # the first 12 terms vanish; the certified interval must still
        # bracket the full series, not collapse onto [0, 0]
        term = lambda k: Fraction(1, factorial(k - 12)) if k >= 12 else Fraction(0)
        got = certified_sum(term, Fraction(1, 2))
        assert got.lo > 1
        assert got.contains(partial_sum(term, 60))

    def test_negative_term_rejected(self):
        with pytest.raises(NegativeTermError):
            certified_sum(lambda k: Fraction(-1) if k == 3 else Fraction(1, factorial(k)), Fraction(1, 2))

    def test_divergent_series_hits_cap(self):
        with pytest.raises(NonConvergentError):
            certified_sum(lambda k: Fraction(1), Fraction(1, 2), hard_cap=200)

    def test_threshold_validated(self):
        with pytest.raises(ValueError):
            certified_sum(lambda k: Fraction(0), Fraction(1))
        with pytest.raises(ValueError):
            certified_sum(lambda k: Fraction(0), Fraction(0))

    def test_env_cap_override(self, monkeypatch):
        monkeypatch.setenv("UMBRALDOB_SUM_CAP", "3")
        with pytest.raises(NonConvergentError):
            certified_sum(lambda k: Fraction(1), Fraction(1, 2))
        monkeypatch.setenv("UMBRALDOB_SUM_CAP", "0")
        with pytest.raises(ValueError):
            certified_sum(lambda k: Fraction(1, factorial(k)), Fraction(1, 2))

    @pytest.mark.parametrize(
        "term",
        [
            lambda k: Fraction(1, factorial(k)),
            lambda k: Fraction(k**3, factorial(k)),
            lambda k: Fraction(2) ** k / factorial(k),
            lambda k: Fraction(1, factorial(k - 5)) if k >= 5 else Fraction(0),
        ],
    )
    def test_ten_times_more_terms_stay_inside(self, term):
        got = certified_sum(term, Fraction(1, 2))
        # recover the truncation index from the exact lower endpoint
        acc, k = Fraction(0), 0
        while acc != got.lo:
            acc += term(k)
            k += 1
            assert k < 1000
        assert got.contains(partial_sum(term, 10 * k + 1))

    def test_tighter_threshold_narrows_interval(self):
        term = lambda k: Fraction(1, factorial(k))
        wide = certified_sum(term, Fraction(1, 2))
        tight = certified_sum(term, Fraction(1, 8))
        assert tight.width < wide.width
        assert wide.lo <= tight.lo and tight.hi <= wide.hi
