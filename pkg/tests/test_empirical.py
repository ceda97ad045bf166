import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovmeasure.analysis import dimension_tau, support_box_dim, tau
from markovmeasure.chain import (bernoulli_chain, cantor_chain, non_maximal_3state,
                                 symmetric_chain, two_state_chain, uniform_rows_4state)
from markovmeasure.empirical import (box_count_dim, convergence_constant, distinguish,
                                     empirical_tau, entropy_enumerated, entropy_sequence,
                                     mixing_table, partition_sum, partition_sum_enumerated,
                                     quasi_bernoulli_enumerated, quasi_bernoulli_ratio,
                                     shift_invariance_deviation)
from markovmeasure.errors import NotStationaryStart
from markovmeasure.measure import support_count

from conftest import chains


class TestPartitionSum:
    @pytest.mark.parametrize("q", [-2.0, -1.0, 0.0, 0.5, 2.0, 3.0])
    def test_matches_enumeration(self, chain, q):
        for n in (1, 4, 7):
            assert partition_sum(chain, q, n) == pytest.approx(
                partition_sum_enumerated(chain, q, n), abs=1e-10)

    def test_q_one_is_zero(self, chain):
        assert partition_sum(chain, 1.0, 9) == 0.0
        assert abs(partition_sum_enumerated(chain, 1.0, 6)) <= 1e-12

    def test_q_zero_counts_support(self, chain):
        for n in (1, 5, 12):
            assert partition_sum(chain, 0.0, n) == pytest.approx(
                math.log(support_count(chain, n), chain.ell), abs=1e-10)

    def test_uniform_rows_by_hand(self):
        # words of length 2 from the uniform initial: m = 1/4 * 1/kappa(first)
        c = uniform_rows_4state()
        q = 2.0
        kappas = [3, 2, 2, 2]
        expected = sum(k * (0.25 / k) ** q for k in kappas)
        assert partition_sum(c, q, 2) == pytest.approx(math.log(expected, 4), abs=1e-13)

    @given(chains(), st.floats(-3, 3), st.integers(1, 6))
    @settings(max_examples=40, deadline=None)
    def test_random_matches_enumeration(self, chain, q, n):
        assert partition_sum(chain, q, n) == pytest.approx(
            partition_sum_enumerated(chain, q, n), abs=1e-9)


class TestEmpiricalTau:
    @pytest.mark.parametrize("q", [-3.0, 0.0, 2.0])
    def test_bernoulli_exact(self, q):
        c = bernoulli_chain([0.2, 0.3, 0.5])
        for n in (1, 5, 30):
            assert empirical_tau(c, q, n) == pytest.approx(tau(c, q), abs=1e-12)

    def test_nonmax_q0(self):
        c = non_maximal_3state()
        assert empirical_tau(c, 0.0, 12) == pytest.approx(tau(c, 0.0), abs=0.07)

    def test_convergence_constant_small_for_bernoulli(self):
        assert convergence_constant(bernoulli_chain([0.2, 0.8]), 2.0, 10) <= 1e-10

    def test_convergence_constant_stabilises(self, chain):
        for q in (-1.0, 0.0, 2.0):
            c50, c100 = convergence_constant(chain, q, 50), convergence_constant(chain, q, 100)
            if max(c50, c100) < 1e-9:
                continue
            assert c100 <= 2 * c50 and c50 <= 2 * c100
            assert abs(empirical_tau(chain, q, 100) - tau(chain, q)) <= max(c50, c100) / 100 + 1e-12


class TestEntropy:
    def test_matches_enumeration(self, chain):
        seq = entropy_sequence(chain, 7)
        for n in (1, 3, 7):
            assert seq[n - 1] == pytest.approx(entropy_enumerated(chain, n), abs=1e-12)

    def test_first_term_is_initial_entropy(self):
        c = two_state_chain(0.2, 0.4, initial=(0.3, 0.7))
        expected = -(0.3 * math.log2(0.3) + 0.7 * math.log2(0.7))
        assert entropy_sequence(c, 1)[0] == pytest.approx(expected, abs=1e-14)

    def test_four_state_limit(self):
        H = entropy_sequence(uniform_rows_4state(), 200)
        assert H[-1] == pytest.approx(0.58, abs=0.005)

    def test_limit_is_dimension(self, chain):
        H = entropy_sequence(chain, 400)
        assert H[-1] == pytest.approx(dimension_tau(chain), abs=0.01)

    def test_eventually_monotone_bernoulli_start(self):
        # non-stationary start: H_n approaches the dimension monotonically after a transient
        c = symmetric_chain(0.3, initial=(0.9, 0.1))
        H = np.array(entropy_sequence(c, 100))
        d = np.diff(H[10:])
        assert np.all(d >= -1e-15) or np.all(d <= 1e-15)

    @given(chains())
    @settings(max_examples=30, deadline=None)
    def test_random_matches_enumeration(self, chain):
        assert entropy_sequence(chain, 5)[-1] == pytest.approx(entropy_enumerated(chain, 5),
                                                                abs=1e-12)


class TestBoxCount:
    def test_cantor_exact(self):
        for n in (1, 5, 20):
            assert box_count_dim(cantor_chain(), n) == pytest.approx(math.log(2, 3), abs=1e-14)

    def test_full_support(self):
        assert box_count_dim(bernoulli_chain([0.2, 0.8]), 40) == pytest.approx(1.0, abs=1e-14)

    def test_nonmax(self):
        assert box_count_dim(non_maximal_3state(), 30) == pytest.approx(
            support_box_dim(non_maximal_3state()), abs=0.02)


class TestShiftInvariance:
    def test_stationary_start(self, chain):
        assert shift_invariance_deviation(chain.stationary_start(), 6) <= 1e-12

    def test_guard(self):
        with pytest.raises(NotStationaryStart):
            shift_invariance_deviation(two_state_chain(0.2, 0.4, initial=(0.5, 0.5)), 3)


class TestQuasiBernoulli:
    @pytest.mark.parametrize("c", [bernoulli_chain([0.2, 0.3, 0.5]), cantor_chain()],
                             ids=["bernoulli", "cantor"])
    def test_product_measures_are_exact(self, c):
        lo, hi = quasi_bernoulli_ratio(c, 5)
        assert lo == pytest.approx(1.0, abs=1e-12) and hi == pytest.approx(1.0, abs=1e-12)

    def test_nonmax_closed_form(self):
        c = non_maximal_3state().stationary_start()
        k, S = mixing_table(c.transition)
        assert k == 2
        lo, hi = quasi_bernoulli_ratio(c, 3)
        nu = c.initial
        assert lo == pytest.approx((S / nu[None, :]).min(), abs=1e-14)
        assert hi == pytest.approx((S / nu[None, :]).max(), abs=1e-14)
        elo, ehi = quasi_bernoulli_enumerated(c, 3)
        assert elo == pytest.approx(lo, abs=1e-12) and ehi == pytest.approx(hi, abs=1e-12)

    def test_two_state_enumerated(self):
        c = two_state_chain(0.2, 0.4).stationary_start()
        assert quasi_bernoulli_enumerated(c, 4) == pytest.approx(
            quasi_bernoulli_ratio(c, 4), abs=1e-12)

    def test_guard(self):
        with pytest.raises(NotStationaryStart):
            quasi_bernoulli_ratio(two_state_chain(0.2, 0.4, initial=(0.5, 0.5)), 3)


class TestDistinguish:
    def test_same_chain(self, chain):
        assert distinguish(chain, chain) is None

    def test_initial_differs(self):
        w = distinguish(symmetric_chain(0.3), symmetric_chain(0.3, initial=(0.4, 0.6)))
        assert w is not None and len(w) == 1

    def test_transition_differs(self):
        w = distinguish(symmetric_chain(0.3), symmetric_chain(0.4))
        assert w is not None and len(w) == 2

    def test_alphabet_mismatch(self):
        with pytest.raises(ValueError):
            distinguish(symmetric_chain(0.3), cantor_chain())
