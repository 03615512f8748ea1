import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from wordentropy.complexity import (
    ComplexityProfile,
    complexity_profile,
    entropy_upper,
    is_admissible,
    special_factors,
    write_profile_csv,
)
from wordentropy.words import Word, champernowne_covering_length, champernowne_word, sturmian_word


def test_fibonacci_word_has_minimal_counts():
    word = sturmian_word([1], 400)
    profile = complexity_profile(word, 20)
    assert profile.values == tuple(n + 1 for n in range(21))


def test_counts_match_oracle_on_mixed_word():
    word = Word.from_digits("0120012100120210")
    profile = complexity_profile(word, len(word))
    assert list(profile.values) == oracles.factor_counts(word.to_digits(), len(word))


def test_champernowne_saturates_the_full_shift():
    length = champernowne_covering_length(2, 3) + 3
    profile = complexity_profile(champernowne_word(2, length), 3)
    assert profile[3] == 8


@given(st.text(alphabet="012", min_size=1, max_size=120))
@settings(max_examples=60)
def test_backends_agree(text):
    word = Word.from_digits(text)
    n = min(len(word), 12)
    scan = complexity_profile(word, n, backend="scan")
    auto = complexity_profile(word, n, backend="automaton")
    assert scan.values == auto.values


def test_backend_choice_is_invisible_at_scale():
    word = sturmian_word([2, 1], 3000)
    a = complexity_profile(word, 40, backend="scan")
    b = complexity_profile(word, 40, backend="automaton")
    assert a.values == b.values


def test_max_len_validation():
    word = Word.from_digits("0101")
    with pytest.raises(ValueError):
        complexity_profile(word, 5)
    with pytest.raises(ValueError):
        complexity_profile(word, -1)
    with pytest.raises(ValueError):
        complexity_profile(word, 2, backend="quantum")


def test_profile_invariants_enforced():
    with pytest.raises(ValueError):
        ComplexityProfile(4, (2, 1))
    with pytest.raises(ValueError):
        ComplexityProfile(4, ())


def test_witness_horizon_is_quarter_length():
    assert complexity_profile(Word.from_digits("01" * 50), 3).witness_horizon == 25


def test_entropy_upper_picks_smallest_rate_then_smallest_n():
    word = Word.from_digits("0" * 32)
    estimate = entropy_upper(complexity_profile(word, 8))
    # constant word: every rate is zero, ties break to n = 1
    assert estimate.best_upper == 0.0
    assert estimate.best_n == 1
    assert len(estimate.per_n) == 8


def test_entropy_upper_on_full_shift_prefix():
    word = champernowne_word(2, champernowne_covering_length(2, 4) + 4)
    estimate = entropy_upper(complexity_profile(word, 4))
    assert estimate.best_upper == pytest.approx(math.log(2))
    assert estimate.best_n == 1  # log(2^n)/n ties at log 2, smallest n wins


def test_entropy_upper_needs_positive_horizon():
    with pytest.raises(ValueError):
        entropy_upper(complexity_profile(Word.from_digits("01"), 0))


def test_is_admissible_reports_first_violation():
    profile = complexity_profile(champernowne_word(2, 60), 5)
    ok, where = is_admissible(profile, lambda n: n + 1)
    assert not ok
    assert where == 2  # four factors of length 2 already
    assert is_admissible(profile, lambda n: 2.0**n) == (True, None)


def test_special_factors_of_sturmian_are_unique_per_length():
    word = sturmian_word([1, 2], 2000)
    for n in (1, 2, 5, 9):
        assert len(special_factors(word, n)) == 1


def test_special_factors_requires_room_for_extensions():
    with pytest.raises(ValueError):
        special_factors(Word.from_digits("01"), 2)


def test_csv_shape():
    stream = io.StringIO()
    write_profile_csv(complexity_profile(Word.from_digits("0100"), 2), stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "n,p_n,log_p_n_over_n"
    assert lines[1] == "0,1,"
    assert lines[2] == "1,2,0.69314718056"
