"""Factor complexity of finite words.

``complexity_profile`` counts distinct factors of each length.  Two
backends produce identical tables: a direct window scan, and a suffix
automaton that counts every length in one pass and is the right choice
once ``len(word) * max_len`` gets large.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .words import Word

__all__ = [
    "ComplexityProfile",
    "complexity_profile",
    "special_factors",
    "EntropyEstimate",
    "entropy_upper",
    "AdmissibilityResult",
    "is_admissible",
    "write_profile_csv",
]

# beyond this many window comparisons the automaton backend wins
_SCAN_WORK_LIMIT = 2_000_000


@dataclass(frozen=True)
class ComplexityProfile:
    """Distinct factor counts ``values[n]`` for ``0 <= n <= horizon``."""

    source_length: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values or self.values[0] != 1:
            raise ValueError("a profile starts with exactly one empty factor")
        if any(v < 1 for v in self.values):
            raise ValueError("factor counts within the horizon are positive")

    @property
    def horizon(self) -> int:
        return len(self.values) - 1

    @property
    def witness_horizon(self) -> int:
        """Largest factor length at which counts from a prefix of this
        size are treated as saturated (a quarter of the prefix)."""
        return self.source_length // 4

    def __getitem__(self, n: int) -> int:
        return self.values[n]


class _SuffixAutomaton:
    """Minimal automaton of all factors; standard online construction."""

    __slots__ = ("link", "length", "next", "last")

    def __init__(self) -> None:
        self.link = [-1]
        self.length = [0]
        self.next: list[dict[int, int]] = [{}]
        self.last = 0

    def extend(self, letter: int) -> None:
        cur = len(self.length)
        self.length.append(self.length[self.last] + 1)
        self.link.append(-1)
        self.next.append({})
        p = self.last
        while p != -1 and letter not in self.next[p]:
            self.next[p][letter] = cur
            p = self.link[p]
        if p == -1:
            self.link[cur] = 0
        else:
            q = self.next[p][letter]
            if self.length[p] + 1 == self.length[q]:
                self.link[cur] = q
            else:
                clone = len(self.length)
                self.length.append(self.length[p] + 1)
                self.link.append(self.link[q])
                self.next.append(dict(self.next[q]))
                while p != -1 and self.next[p].get(letter) == q:
                    self.next[p][letter] = clone
                    p = self.link[p]
                self.link[q] = clone
                self.link[cur] = clone
        self.last = cur


def _counts_by_automaton(data: bytes, max_len: int) -> list[int]:
    automaton = _SuffixAutomaton()
    for letter in data:
        automaton.extend(letter)
    # state v contributes one factor of every length in
    # (length[link[v]], length[v]]; accumulate as a difference array
    diff = [0] * (max_len + 2)
    for v in range(1, len(automaton.length)):
        lo = automaton.length[automaton.link[v]] + 1
        hi = min(automaton.length[v], max_len)
        if lo <= hi:
            diff[lo] += 1
            diff[hi + 1] -= 1
    counts = [1]
    running = 0
    for n in range(1, max_len + 1):
        running += diff[n]
        counts.append(running)
    return counts


def _counts_by_scan(data: bytes, max_len: int) -> list[int]:
    counts = [1]
    for n in range(1, max_len + 1):
        seen = {data[i : i + n] for i in range(len(data) - n + 1)}
        counts.append(len(seen))
    return counts


def complexity_profile(word: Word, max_len: int, backend: str = "auto") -> ComplexityProfile:
    """Count distinct factors of each length ``0..max_len``.

    ``max_len`` may not exceed the word length: longer factors do not
    exist and a count of zero would poison every downstream estimate.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if max_len > len(word):
        raise ValueError(
            f"max_len {max_len} exceeds the word length {len(word)}"
        )
    if backend == "auto":
        backend = "scan" if len(word) * max_len <= _SCAN_WORK_LIMIT else "automaton"
    if backend == "scan":
        counts = _counts_by_scan(word.letters, max_len)
    elif backend == "automaton":
        counts = _counts_by_automaton(word.letters, max_len)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return ComplexityProfile(len(word), tuple(counts))


def special_factors(word: Word, length: int) -> list[Word]:
    """Right-special factors of the given length: factors with at least
    two distinct one-letter extensions inside the word.  Sorted."""
    if not 0 <= length < len(word):
        raise ValueError("need length + 1 <= word length to observe extensions")
    data = word.letters
    extensions: dict[bytes, set[int]] = {}
    for i in range(len(data) - length):
        extensions.setdefault(data[i : i + length], set()).add(data[i + length])
    return [
        Word(word.alphabet, factor)
        for factor in sorted(extensions)
        if len(extensions[factor]) >= 2
    ]


class EntropyEstimate(NamedTuple):
    per_n: tuple[float, ...]  # (1/n) log values[n] for n = 1..horizon
    best_upper: float
    best_n: int


def entropy_upper(profile: ComplexityProfile) -> EntropyEstimate:
    """Per-length entropy rates and the best (smallest) one.

    Factor counts are submultiplicative, so each rate bounds the growth
    exponent of the sampled factor set from above; the bound is only
    meaningful for the source word at lengths the prefix saturates.
    """
    if profile.horizon < 1:
        raise ValueError("entropy estimate needs a horizon of at least 1")
    rates = tuple(
        math.log(profile.values[n]) / n for n in range(1, profile.horizon + 1)
    )
    best_n = min(range(1, profile.horizon + 1), key=lambda n: (rates[n - 1], n))
    return EntropyEstimate(rates, rates[best_n - 1], best_n)


class AdmissibilityResult(NamedTuple):
    ok: bool
    first_violation: int | None


def is_admissible(profile: ComplexityProfile, bound: Callable[[int], float]) -> AdmissibilityResult:
    """Check ``values[n] <= bound(n)`` over the whole profile."""
    for n in range(profile.horizon + 1):
        if profile.values[n] > bound(n):
            return AdmissibilityResult(False, n)
    return AdmissibilityResult(True, None)


def write_profile_csv(profile: ComplexityProfile, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["n", "p_n", "log_p_n_over_n"])
    for n in range(profile.horizon + 1):
        rate = f"{math.log(profile.values[n]) / n:.12g}" if n else ""
        writer.writerow([n, profile.values[n], rate])
