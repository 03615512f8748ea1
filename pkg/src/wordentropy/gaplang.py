"""The binary gap languages: words in which two ones are always
separated by at least k zeros.

Everything here is exact except the two real numbers attached to each
language: the Perron root ``beta`` governing count growth, and the peak
normalized log-count ``gamma``.  Counts use arbitrary-size integers, so
tables stay correct far past 64-bit range.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

from .errors import NumericalFailureError
from .words import BINARY, Word, iter_gap_blocks

__all__ = [
    "GapLanguage",
    "enumerate_gap_words",
    "qk_table",
    "window_count",
    "covering_length",
    "beta",
    "gamma",
    "verify_beta_bounds",
    "BetaBoundsReport",
    "write_table_csv",
    "write_summary_csv",
]


def enumerate_gap_words(k: int, n: int) -> list[Word]:
    """Exactly the length-n words of the order-k gap language, sorted."""
    return [Word(BINARY, block) for block in iter_gap_blocks(k, n)]


def qk_table(k: int, max_n: int) -> list[int]:
    """Counts q(0..max_n) of gap-language words of each length.

    Seeds q(n) = n+1 up to n = k+1, then q(n) = q(n-1) + q(n-k-1): a
    word either ends in 0, or ends in 1 forced to carry 0^k just before.
    """
    if k < 1:
        raise ValueError("separation k must be >= 1")
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    values = [n + 1 for n in range(min(k + 1, max_n) + 1)]
    for n in range(len(values), max_n + 1):
        values.append(values[n - 1] + values[n - k - 1])
    return values


def window_count(k: int, r: int) -> int:
    """Closed form q(k+r+1) = k + 2 + r(r+3)/2, valid for 0 <= r <= k+1."""
    if not 0 <= r <= k + 1:
        raise ValueError(f"closed form needs 0 <= r <= k+1, got r={r}")
    return k + 2 + r * (r + 3) // 2


def covering_length(k: int, factor_len: int) -> int:
    """Prefix length of ``gap_word(k, .)`` that contains every block of
    every length up to ``factor_len``: the listed levels plus glue."""
    table = qk_table(k, max(factor_len, 0))
    return sum(table[m] * (m + k) for m in range(1, factor_len + 1))


def beta(k: int, tol: float = 1e-12) -> float:
    """Largest real root of x^{k+1} - x^k - 1, always inside (1, 2).

    The polynomial is strictly increasing on [1, 2] (derivative
    x^{k-1}((k+1)x - k) > 0 there), so bisection with that bracket
    cannot miss the root.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")

    def poly(x: float) -> float:
        return x ** (k + 1) - x**k - 1

    lo, hi = 1.0, 2.0
    while True:
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break
        if poly(mid) < 0:
            lo = mid
        else:
            hi = mid
    root = hi
    if abs(poly(root)) > tol:
        raise NumericalFailureError(
            f"bisection residual {abs(poly(root)):.3e} exceeds tolerance {tol:.3e}"
        )
    return root


def gamma(k: int) -> float:
    """Peak of log q(n) / n over n.

    The peak sits at some n in [k+1, 2(k+1)], where the counts have the
    closed form of :func:`window_count`; evaluate all of that window and
    take the max (for large k the argmax is interior, so no shortcut).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return max(
        math.log(window_count(k, r)) / (k + r + 1) for r in range(k + 2)
    )


@dataclass(frozen=True)
class BetaBoundsReport:
    """Numeric check of the two root inequalities backing the window
    analysis: beta^{k+r} > r+1 and k+1+r(r+3)/2 < beta^{2(k+r)}."""

    k: int
    r_max: int
    beta: float
    failures: tuple[tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_beta_bounds(k: int, r_max: int, tol: float = 1e-12) -> BetaBoundsReport:
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    root = beta(k, tol)
    failures: list[tuple[int, str]] = []
    for r in range(r_max + 1):
        lhs = root ** (k + r)
        if not lhs > r + 1:
            failures.append((r, f"beta^{k + r} = {lhs:.6g} <= {r + 1}"))
        rhs = root ** (2 * (k + r))
        seed = k + 1 + r * (r + 3) / 2
        if not seed < rhs:
            failures.append((r, f"{seed:.6g} >= beta^{2 * (k + r)} = {rhs:.6g}"))
    return BetaBoundsReport(k, r_max, root, tuple(failures))


@dataclass(frozen=True)
class GapLanguage:
    """Bundle of the exact count table and the two growth exponents of
    one gap language."""

    k: int
    q_table: tuple[int, ...]
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        k = self.k
        if k < 1:
            raise ValueError("k must be >= 1")
        for n, value in enumerate(self.q_table):
            if n <= k + 1:
                if value != n + 1:
                    raise ValueError(f"q({n}) must be {n + 1}, got {value}")
            elif value != self.q_table[n - 1] + self.q_table[n - k - 1]:
                raise ValueError(f"q({n}) breaks the recurrence")
        if not 1.0 < self.beta < 2.0:
            raise ValueError("beta must lie in (1, 2)")
        residual = self.beta ** (k + 1) - self.beta**k - 1
        if abs(residual) > 1e-9:
            raise ValueError(f"beta residual {residual:.3e} too large")
        if math.log(self.beta) > self.gamma + 1e-12:
            raise ValueError("log beta cannot exceed gamma")

    @classmethod
    def compute(cls, k: int, horizon: int, tol: float = 1e-12) -> "GapLanguage":
        return cls(k, tuple(qk_table(k, horizon)), beta(k, tol), gamma(k))

    @property
    def horizon(self) -> int:
        return len(self.q_table) - 1

    def __getitem__(self, n: int) -> int:
        return self.q_table[n]


def write_table_csv(language: GapLanguage, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["k", "n", "q_k_n", "log_q_over_n"])
    for n, value in enumerate(language.q_table):
        rate = f"{math.log(value) / n:.12g}" if n else ""
        writer.writerow([language.k, n, value, rate])


def write_summary_csv(language: GapLanguage, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["k", "beta_k", "log_beta_k", "gamma_k"])
    writer.writerow(
        [
            language.k,
            f"{language.beta:.12g}",
            f"{math.log(language.beta):.12g}",
            f"{language.gamma:.12g}",
        ]
    )
