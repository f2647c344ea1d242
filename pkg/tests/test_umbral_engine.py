"""Psi-sequences, the Stirling towers, and the expansion diagnostic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import naive_bell, naive_stirling2
from umbraldob.errors import OutOfRangeError
from umbraldob.exact_core import Poly
from umbraldob.umbral_engine import (
    PsiSequence,
    bell_via_sum,
    carlitz_q_stirling,
    classical_stirling_table,
    gauss_factorial,
    gauss_number,
    psi_stirling_diagnostic,
    q_number_symbolic,
    stirling2,
)

CLASSICAL = PsiSequence.classical()
FIB = PsiSequence.fibonacci()
HALF = PsiSequence.gauss_q(Fraction(1, 2))

BUILTIN_SEQS = [
    CLASSICAL,
    FIB,
    HALF,
    PsiSequence.gauss_q(Fraction(1, 4)),
    PsiSequence.gauss_q(Fraction(3, 2)),
]


class TestPsiSequence:
    def test_values(self):
        assert CLASSICAL.value(5) == 5
        assert HALF.value(3) == Fraction(7, 4)
        assert FIB.value(6) == 8
        assert all(s.value(0) == 0 for s in BUILTIN_SEQS)

    def test_factorials(self):
        assert CLASSICAL.factorial(4) == 24
        assert FIB.factorial(5) == 30
        assert HALF.factorial(0) == 1
        assert HALF.factorial(2) == Fraction(3, 2)

    def test_falling(self):
        assert CLASSICAL.falling(5, 2) == 20
        assert FIB.falling(4, 2) == 6
        assert CLASSICAL.falling(2, 5) == 0

    @pytest.mark.parametrize("seq", BUILTIN_SEQS)
    def test_falling_zero_iff_overshoot(self, seq):
        for x in range(8):
            for k in range(10):
                val = seq.falling(x, k)
                assert (val == 0) == (k > x)

    def test_falling_agrees_with_factorial_ratio(self):
        for seq in BUILTIN_SEQS:
            for x in range(2, 9):
                for k in range(x + 1):
                    assert seq.falling(x, k) == seq.factorial(x) / seq.factorial(x - k)

    def test_custom_sequence(self):
        seq = PsiSequence.custom([0, 1, Fraction(3, 2), 2])
        assert seq.value(2) == Fraction(3, 2)
        assert seq.factorial(3) == 3
        with pytest.raises(OutOfRangeError):
            seq.value(4)

    def test_admissibility_rejected(self):
        with pytest.raises(ValueError):
            PsiSequence.custom([1, 2])
        with pytest.raises(ValueError):
            PsiSequence.custom([0, 0, 1])
        with pytest.raises(ValueError):
            PsiSequence.custom([])
        with pytest.raises(ValueError):
            PsiSequence.gauss_q(0)
        with pytest.raises(ValueError):
            PsiSequence.gauss_q(Fraction(-1, 2))

    def test_gauss_q_one_matches_classical(self):
        one = PsiSequence.gauss_q(1)
        assert [one.value(n) for n in range(10)] == [CLASSICAL.value(n) for n in range(10)]

    def test_numeric_helpers(self):
        assert gauss_number(3, Fraction(1, 2)) == Fraction(7, 4)
        assert gauss_factorial(3, 1) == 6
        assert gauss_number(0, Fraction(2)) == 0


class TestQBracketSymbolic:
    def test_examples(self):
        assert q_number_symbolic(3) == Poly((1, 1, 1))
        assert q_number_symbolic(0) == Poly(())
        assert q_number_symbolic(1) == Poly((1,))

    @given(st.integers(min_value=0, max_value=30), st.fractions(min_value=Fraction(1, 8), max_value=4, max_denominator=8))
    @settings(max_examples=60)
    def test_matches_numeric(self, n, q):
        assert q_number_symbolic(n).evaluate(q) == gauss_number(n, q)


class TestStirling2:
    def test_examples(self):
        assert stirling2(3, 2) == 3
        assert stirling2(4, 2) == 7
        assert stirling2(0, 0) == 1
        assert stirling2(5, 9) == 0

    def test_against_enumeration_oracle(self):
        for n in range(9):
            for k in range(n + 2):
                assert stirling2(n, k) == naive_stirling2(n, k)


class TestCarlitzTable:
    def test_frozen_entries(self):
        t = carlitz_q_stirling(6)
        assert t.entry(2, 2) == Poly((0, 1))
        assert t.entry(3, 2) == Poly((0, 2, 1))
        for n in range(1, 7):
            assert t.entry(n, 1) == Poly((1,))
            assert t.entry(n, 0) == Poly(())
        assert t.entry(0, 0) == Poly((1,))

    def test_entries_have_nonnegative_integer_coefficients(self):
        t = carlitz_q_stirling(9)
        for n in range(10):
            for k in range(n + 1):
                for c in t.entry(n, k).coeffs:
                    f = Fraction(c)
                    assert f.denominator == 1 and f >= 0

    def test_recursion(self):
        # entry(n+1, k) = q**(k-1) * entry(n, k-1) + [k]_q * entry(n, k)
        t = carlitz_q_stirling(11)
        for n in range(11):
            for k in range(1, n + 2):
                prev_left = t.entry(n, k - 1) if k - 1 <= n else Poly(())
                prev_right = t.entry(n, k) if k <= n else Poly(())
                expected = Poly.monomial(1, k - 1) * prev_left + q_number_symbolic(k) * prev_right
                assert t.entry(n + 1, k) == expected

    def test_q1_reduction(self):
        t = carlitz_q_stirling(12)
        for n in range(13):
            for k in range(n + 1):
                assert t.entry(n, k).evaluate(Fraction(1)) == stirling2(n, k)

    def test_row_out_of_range(self):
        t = carlitz_q_stirling(3)
        with pytest.raises(ValueError):
            t.entry(4, 0)
        with pytest.raises(ValueError):
            t.entry(2, 3)


class TestBellViaSum:
    def test_classical(self):
        t = classical_stirling_table(6)
        assert bell_via_sum(t, 5) == naive_bell(5) == 52
        assert bell_via_sum(t, 0) == 1

    def test_carlitz(self):
        t = carlitz_q_stirling(4)
        assert bell_via_sum(t, 3) == Poly((1, 2, 1, 1))

    def test_carlitz_reduces_to_bell_at_one(self):
        t = carlitz_q_stirling(9)
        for n in range(10):
            assert bell_via_sum(t, n).evaluate(Fraction(1)) == naive_bell(n)


class TestDiagnostic:
    def test_classical_expansion_extends(self):
        coeffs, residuals = psi_stirling_diagnostic(CLASSICAL, 4, 12)
        assert residuals == [0] * 8
        assert coeffs == [Fraction(stirling2(4, k)) for k in range(5)]

    def test_gauss_expansion_extends(self):
        coeffs, residuals = psi_stirling_diagnostic(HALF, 3, 10)
        assert all(r == 0 for r in residuals)
        # fitted coefficients are the Carlitz entries evaluated at q
        t = carlitz_q_stirling(3)
        assert coeffs == [t.entry(3, k).evaluate(Fraction(1, 2)) for k in range(4)]

    def test_fibonacci_witness(self):
        coeffs, residuals = psi_stirling_diagnostic(FIB, 2, 3)
        assert coeffs == [0, 1, 0]
        assert residuals == [2]

    def test_probe_limit_validated(self):
        with pytest.raises(ValueError):
            psi_stirling_diagnostic(CLASSICAL, 3, 3)
