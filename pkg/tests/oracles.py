"""Reference implementations the tests trust instead of the package.

Everything here is written directly from the defining property, naive
on purpose, and shares no code with the package under test.  Tests
compare package output against these; the package never imports this
module.
"""
import itertools
from fractions import Fraction


def factor_counts(text: str, max_n: int) -> list[int]:
    """Distinct substrings of each length, by literal enumeration."""
    counts = [1]
    for n in range(1, max_n + 1):
        counts.append(len({text[i : i + n] for i in range(len(text) - n + 1)}))
    return counts


def has_gap_property(text: str, k: int) -> bool:
    """True when every two ones are separated by at least k zeros."""
    last = None
    for i, ch in enumerate(text):
        if ch == "1":
            if last is not None and i - last - 1 < k:
                return False
            last = i
    return True


def gap_words_by_filter(k: int, n: int) -> list[str]:
    """All length-n binary words with the gap property, lex order.
    Exponential; keep n small."""
    return [
        "".join(bits)
        for bits in itertools.product("01", repeat=n)
        if has_gap_property("".join(bits), k)
    ]


def gap_count_dp(k: int, n: int) -> int:
    """Count length-n gap words by a direct automaton walk.

    State is the number of zeros written since the last one (capped at
    k, where larger counts stop mattering), or -1 before any one.
    """
    states = {-1: 1}
    for _ in range(n):
        step: dict[int, int] = {}
        for state, ways in states.items():
            after_zero = -1 if state == -1 else min(state + 1, k)
            step[after_zero] = step.get(after_zero, 0) + ways
            if state == -1 or state >= k:
                step[0] = step.get(0, 0) + ways
        states = step
    return sum(states.values())


def fibonacci(n: int) -> int:
    """F_n with F_1 = F_2 = 1."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_substitution(length: int) -> str:
    """Prefix of the fixed point of 0 -> 01, 1 -> 0."""
    word = "0"
    while len(word) < length:
        word = "".join("01" if ch == "0" else "0" for ch in word)
    return word[:length]


def all_words_concatenation(base: int, length: int) -> str:
    """Every word over {0..base-1} in length-then-lex order, glued."""
    pieces: list[str] = []
    total = 0
    for n in itertools.count(1):
        for combo in itertools.product(range(base), repeat=n):
            pieces.append("".join(str(d) for d in combo))
            total += n
            if total >= length:
                return "".join(pieces)[:length]


def greedy_parse(text: str, a: str, bas: str) -> str | None:
    """Tokenize by first letter into blocks a / bas; None on mismatch.
    A final block cut off by the end of the text is allowed."""
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        block, name = (a, "A") if text[pos] == a[0] else (bas, "B")
        chunk = text[pos : pos + len(block)]
        if chunk == block:
            tokens.append(name)
            pos += len(block)
        elif block.startswith(chunk):
            break
        else:
            return None
    return "".join(tokens)


def search_decompositions(text: str, max_len: int, max_s: int) -> list[tuple]:
    """Every (measure, a, b, s) whose blocks {a, b a^s} tile the text
    from position zero, over all binary blocks with |b| <= |a| <= max_len
    and distinct first letters.  Sorted by measure."""
    found = []
    for la in range(1, max_len + 1):
        for a_bits in itertools.product("01", repeat=la):
            a = "".join(a_bits)
            for lb in range(1, la + 1):
                for b_bits in itertools.product("01", repeat=lb):
                    b = "".join(b_bits)
                    if a[0] == b[0]:
                        continue
                    for s in range(1, max_s + 1):
                        if greedy_parse(text, a, b + a * s) is not None:
                            found.append(((s + 1) * la + lb, a, b, s))
    return sorted(found)


def block_growth_ratio(gaps, cutoff: int, terms: int) -> Fraction:
    """Exact growth ratio c(terms)/c(terms-1) of the step-count
    recursion c(n) = sum_g c(n-g) + sum_{m >= cutoff} c(n-m), c(0) = 1.

    The ratio converges to the root of
    1 = sum_g x^-g + x^-cutoff / (1 - x^-1).
    """
    counts = [1]
    prefix = [1]
    for n in range(1, terms + 1):
        value = sum(counts[n - g] for g in gaps if n >= g)
        if n >= cutoff:
            value += prefix[n - cutoff]
        counts.append(value)
        prefix.append(prefix[-1] + value)
    if counts[terms - 1] == 0:
        raise ZeroDivisionError("recursion has not mixed yet; raise terms")
    return Fraction(counts[terms], counts[terms - 1])
