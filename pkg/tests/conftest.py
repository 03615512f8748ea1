"""Shared fixtures: one slope corpus, renormalized once per session."""
import pytest

from wordentropy.complexity import complexity_profile
from wordentropy.renorm import renormalize
from wordentropy.words import sturmian_word

# fifteen slopes, pinned; lists stay within length 8 and entries 1..4
CF_LISTS = (
    (1,),
    (2,),
    (3,),
    (4,),
    (1, 2),
    (2, 1),
    (3, 1),
    (1, 2, 3),
    (4, 3, 2, 1),
    (1, 1, 2, 2),
    (2, 1, 4, 1, 3),
    (1, 2, 1, 2, 1, 2),
    (3, 3, 3, 3, 3, 3, 3),
    (1, 4, 2, 3, 1, 4, 2, 3),
    (4, 4, 4, 4, 4, 4, 4, 4),
)

# covers renormalization up to order 40: 8 * 40 * 41 = 13120
CORPUS_LENGTH = 13200
K_MAX = 40


@pytest.fixture(scope="session")
def corpus_words():
    return {cf: sturmian_word(cf, CORPUS_LENGTH) for cf in CF_LISTS}


@pytest.fixture(scope="session")
def corpus_certificates(corpus_words):
    """Every (slope, order) certificate; renormalize must not refuse."""
    return {
        (cf, k): renormalize(word, k)
        for cf, word in corpus_words.items()
        for k in range(1, K_MAX + 1)
    }


@pytest.fixture(scope="session")
def long_profiles():
    """Factor counts to n = 150 on length-100000 prefixes, per slope."""
    return {
        cf: complexity_profile(sturmian_word(cf, 100_000), 150, backend="automaton")
        for cf in CF_LISTS
    }
