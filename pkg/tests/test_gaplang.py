import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from wordentropy.errors import NumericalFailureError
from wordentropy.gaplang import (
    GapLanguage,
    beta,
    covering_length,
    enumerate_gap_words,
    gamma,
    qk_table,
    verify_beta_bounds,
    window_count,
    write_summary_csv,
    write_table_csv,
)

PHI = (1 + math.sqrt(5)) / 2


class TestCounts:
    def test_table_matches_automaton_oracle(self):
        for k in range(1, 6):
            table = qk_table(k, 20)
            assert table == [oracles.gap_count_dp(k, n) for n in range(21)]

    def test_oracle_matches_literal_filter(self):
        # the automaton oracle itself earns trust on tiny lengths
        for k in (1, 3):
            for n in range(9):
                assert oracles.gap_count_dp(k, n) == len(oracles.gap_words_by_filter(k, n))

    def test_enumeration_matches_table(self):
        for k in (1, 2, 4):
            for n in range(10):
                words = enumerate_gap_words(k, n)
                assert len(words) == qk_table(k, n)[n]
                texts = [w.to_digits() for w in words]
                assert texts == oracles.gap_words_by_filter(k, n)

    def test_order_one_is_fibonacci(self):
        table = qk_table(1, 30)
        assert all(table[n] == oracles.fibonacci(n + 2) for n in range(31))

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            qk_table(0, 5)
        with pytest.raises(ValueError):
            qk_table(2, -1)


class TestWindowForm:
    def test_closed_form_inside_window(self):
        for k in (1, 2, 7, 19):
            table = qk_table(k, 2 * k + 2)
            for r in range(k + 2):
                assert window_count(k, r) == table[k + r + 1]

    def test_window_edges(self):
        assert window_count(3, 0) == 5
        with pytest.raises(ValueError):
            window_count(3, 5)
        with pytest.raises(ValueError):
            window_count(3, -1)

    @given(st.integers(min_value=1, max_value=40), st.data())
    @settings(max_examples=40)
    def test_closed_form_random_orders(self, k, data):
        r = data.draw(st.integers(min_value=0, max_value=k + 1))
        assert window_count(k, r) == qk_table(k, k + r + 1)[k + r + 1]


class TestCovering:
    def test_small_golden(self):
        # order 2: lengths 1..2 list 2 + 3 blocks padded to m + 2 letters
        assert covering_length(2, 2) == 2 * 3 + 3 * 4

    def test_zero(self):
        assert covering_length(3, 0) == 0


class TestBeta:
    def test_order_one_is_golden_ratio(self):
        assert beta(1) == pytest.approx(PHI, abs=1e-12)

    def test_polynomial_residual(self):
        for k in (1, 2, 10, 50):
            b = beta(k)
            assert abs(b ** (k + 1) - b**k - 1) <= 1e-12
            assert 1 < b < 2

    def test_strictly_decreasing(self):
        values = [beta(k) for k in range(1, 30)]
        assert all(x > y for x, y in zip(values, values[1:]))

    def test_known_value(self):
        assert beta(2) == pytest.approx(1.4655712318767682, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            beta(0)
        with pytest.raises(ValueError):
            beta(3, tol=0)
        with pytest.raises(NumericalFailureError):
            beta(20, tol=1e-16)  # stricter than float bisection can land


class TestGamma:
    def test_order_one_value(self):
        assert gamma(1) == pytest.approx(0.5 * math.log(3), abs=1e-12)

    def test_order_two_value(self):
        assert gamma(2) == pytest.approx(math.log(4) / 3, abs=1e-12)

    def test_strictly_decreasing(self):
        values = [gamma(k) for k in range(1, 40)]
        assert all(x > y for x, y in zip(values, values[1:]))

    def test_sits_above_log_beta(self):
        for k in (1, 2, 5, 20, 50):
            assert math.log(beta(k)) <= gamma(k)

    def test_interior_argmax_for_large_orders(self):
        # beyond the first rows the peak moves off the window edge
        k = 50
        rates = [math.log(window_count(k, r)) / (k + r + 1) for r in range(k + 2)]
        assert rates.index(max(rates)) not in (0, k + 1)
        assert gamma(k) == max(rates)


class TestBounds:
    def test_no_failures_small_orders(self):
        for k in (1, 2, 7):
            report = verify_beta_bounds(k, 60)
            assert report.ok
            assert report.failures == ()
            assert report.beta == pytest.approx(beta(k))


class TestGapLanguage:
    def test_compute_bundles_consistent_values(self):
        lang = GapLanguage.compute(3, 12)
        assert list(lang.q_table) == qk_table(3, 12)
        assert lang.beta == pytest.approx(beta(3))
        assert lang.gamma == pytest.approx(gamma(3))
        assert lang.horizon == 12
        assert lang[5] == qk_table(3, 5)[5]

    def test_rejects_tampered_table(self):
        lang = GapLanguage.compute(2, 10)
        bad = list(lang.q_table)
        bad[7] += 1
        with pytest.raises(ValueError):
            GapLanguage(2, tuple(bad), lang.beta, lang.gamma)

    def test_table_csv(self):
        stream = io.StringIO()
        write_table_csv(GapLanguage.compute(1, 3), stream)
        assert stream.getvalue().splitlines() == [
            "k,n,q_k_n,log_q_over_n",
            "1,0,1,",
            "1,1,2,0.69314718056",
            "1,2,3,0.549306144334",
            "1,3,5,0.536479304145",
        ]

    def test_summary_csv(self):
        stream = io.StringIO()
        write_summary_csv(GapLanguage.compute(1, 3), stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == "k,beta_k,log_beta_k,gamma_k"
        assert lines[1].startswith("1,1.61803398875,0.48121182506,0.549306144334")
