from fractions import Fraction

import pytest

from haarmoments.combinatorics.partitions import Partition
from haarmoments.combinatorics.permutations import Permutation, all_permutations
from haarmoments.output.error_handler import ArgumentError
from haarmoments.verify.exact_identities import monomial_trace_moment
from haarmoments.verify.oracles import weingarten_from_gram
from haarmoments.weingarten.moments import closed_moment_tr2, closed_moment_tr4
from haarmoments.weingarten.weingarten_fn import (
    character_trace_moment, monomial_integral, trace_power_moment, weingarten_at,
    weingarten_fn, weingarten_table, weingarten_trace_moment
)


class TestWeingartenFunction:

    @pytest.mark.parametrize("d", range(1, 7))
    def test_k1(self, d):
        assert weingarten_fn(1, d)[Partition((1,))] == Fraction(1, d)

    @pytest.mark.parametrize("d", range(2, 7))
    def test_k2_closed_form(self, d):
        wg = weingarten_fn(2, d)
        assert wg[Partition((1, 1))] == Fraction(1, d * d - 1)
        assert wg[Partition((2,))] == Fraction(-1, d * (d * d - 1))

    def test_k2_at_d3(self):
        assert weingarten_fn(2, 3).to_json() == {"(1,1)": "1/8", "(2)": "-1/24"}

    def test_k3_at_d3(self):
        wg = weingarten_fn(3, 3)
        assert wg[Partition((1, 1, 1))] == Fraction(7, 120)
        assert wg[Partition((2, 1))] == Fraction(-1, 40)
        assert wg[Partition((3,))] == Fraction(1, 60)

    def test_pseudo_inverse_below_k(self):
        # only (2) survives at d = 1
        wg = weingarten_fn(2, 1)
        assert wg[Partition((1, 1))] == Fraction(1, 4)
        assert wg[Partition((2,))] == Fraction(1, 4)

    @pytest.mark.parametrize("k, d", [(1, 1), (2, 2), (2, 5), (3, 3), (3, 4), (4, 4)])
    def test_gram_inverse(self, k, d):
        table = weingarten_table(k, d)
        perms = list(all_permutations(k))
        for sigma in perms:
            for pi in perms:
                total = sum(
                    table[sigma * tau.inverse()] * d ** (tau * pi.inverse()).num_cycles()
                    for tau in perms
                )
                assert total == (1 if sigma == pi else 0)

    @pytest.mark.parametrize("k, d", [(1, 2), (2, 2), (2, 3), (3, 3)])
    def test_sympy_oracle(self, k, d):
        assert weingarten_from_gram(k, d) == weingarten_table(k, d)

    def test_class_function_values(self):
        pi = Permutation.from_cycles(3, [(1, 3)])
        assert weingarten_at(pi, 4) == weingarten_fn(3, 4)[Partition((2, 1))]

    def test_dimension_must_be_positive(self):
        with pytest.raises(ArgumentError):
            weingarten_fn(2, 0)


class TestMonomialIntegrals:

    def test_single_entry(self):
        assert monomial_integral((1,), (1,), (1,), (1,), 4) == Fraction(1, 4)

    def test_two_entries(self):
        assert monomial_integral((1, 2), (1, 2), (1, 2), (1, 2), 4) == Fraction(1, 15)

    def test_fourth_moment_of_an_entry(self):
        # E|U_11|^4 = 2/(d(d+1))
        assert monomial_integral((1, 1), (1, 1), (1, 1), (1, 1), 3) == Fraction(2, 12)

    def test_mismatched_multisets_vanish(self):
        assert monomial_integral((1, 2), (1, 1), (1, 1), (1, 1), 3) == 0

    def test_unbalanced_degrees_vanish(self):
        assert monomial_integral((1,), (1,), (1, 1), (1, 1), 3) == 0

    def test_index_range(self):
        with pytest.raises(ArgumentError):
            monomial_integral((1,), (4,), (1,), (4,), 3)

    def test_tuple_lengths(self):
        with pytest.raises(ArgumentError):
            monomial_integral((1, 2), (1,), (1, 2), (1, 2), 3)


class TestTraceMoments:

    @pytest.mark.parametrize("k", range(1, 6))
    @pytest.mark.parametrize("d", range(1, 6))
    def test_second_moment(self, k, d):
        gamma = Partition((k,))
        assert weingarten_trace_moment(gamma, gamma, d) == min(k, d) == closed_moment_tr2(k, d)
        assert character_trace_moment(gamma, gamma, d) == min(k, d)

    @pytest.mark.parametrize("k, d", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)])
    def test_second_moment_by_index_summation(self, k, d):
        assert monomial_trace_moment(k, d) == min(k, d)

    @pytest.mark.parametrize("k", range(1, 7))
    @pytest.mark.parametrize("d", range(2, 6))
    def test_fourth_moment(self, k, d):
        assert trace_power_moment(k, 2, d) == closed_moment_tr4(k, d)

    @pytest.mark.parametrize("k, d", [(1, 2), (1, 3), (2, 2), (2, 3), (2, 4)])
    def test_fourth_moment_by_weingarten_summation(self, k, d):
        gamma = Partition((k, k))
        assert weingarten_trace_moment(gamma, gamma, d) == closed_moment_tr4(k, d)

    def test_fourth_moment_examples(self):
        assert closed_moment_tr4(2, 3) == 7
        assert closed_moment_tr4(2, 4) == 8
        assert closed_moment_tr4(3, 2) == 6
        with pytest.raises(ArgumentError):
            closed_moment_tr4(1, 1)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_diaconis_moments(self, n):
        assert trace_power_moment(1, n, 4) == [1, 2, 6, 24][n - 1]

    def test_distinct_cycle_types_are_orthogonal(self):
        assert weingarten_trace_moment(Partition((2,)), Partition((1, 1)), 3) == 0
        assert character_trace_moment(Partition((2,)), Partition((1, 1)), 3) == 0
