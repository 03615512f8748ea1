"""Bound functions and the two sides of the entropy ratio.

A bound function f caps factor counts; the words it admits form a set
whose entropy supremum is never computed directly.  Instead this module
produces certified lower bounds (explicit witness words, one of three
regimes keyed to the growth rate E0 of f) and the upper-bound machinery
(block census of a renormalization certificate, characteristic equation
for the census growth rate, and the sigma normalization).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from . import gaplang
from .complexity import complexity_profile, entropy_upper, is_admissible
from .errors import NumericalFailureError, InternalInvariantError, Refusal
from .renorm import MIN_LENGTH_FACTOR, Renormalization, renormalize
from .words import PrefixSource

__all__ = [
    "BoundFunction",
    "CStarReport",
    "check_cstar",
    "normalize_submultiplicative",
    "increasing_repair",
    "E0Estimate",
    "e0",
    "Witness",
    "lower_bound_witness",
    "entropy_upper_from_renorm",
    "GapCensus",
    "gap_census",
    "epsilon_window",
    "minimal_census_order",
    "CharacteristicModel",
    "solve_characteristic",
    "CorpusEntry",
    "RatioReport",
    "ratio_experiment",
]

_LOG2 = math.log(2.0)
_HALF_LOG3 = 0.5 * math.log(3.0)


@dataclass(frozen=True)
class BoundFunction:
    """Evaluable bound f with f(n) >= n+1.

    Three families: ``theta_k`` is max(n+1, theta^n) with
    theta = k^(1/k); ``envelope`` is max(n+1, exp(rate n)); ``tabulated``
    wraps explicit values up to a finite horizon.
    """

    family: str
    k: int | None = None
    rate: float | None = None  # exact growth exponent for closed forms
    table: tuple[float, ...] | None = None

    @classmethod
    def theta(cls, k: int) -> "BoundFunction":
        if k < 2:
            raise ValueError("theta family needs k >= 2")
        return cls("theta_k", k=k, rate=math.log(k) / k)

    @classmethod
    def envelope(cls, rate: float) -> "BoundFunction":
        if rate < 0:
            raise ValueError("envelope rate must be >= 0")
        return cls("envelope", rate=rate)

    @classmethod
    def tabulated(cls, values: Sequence[float]) -> "BoundFunction":
        table = tuple(float(v) for v in values)
        for n, v in enumerate(table):
            if v < n + 1:
                raise ValueError(
                    f"bound value {v} at n={n} is below n+1; admits no infinite word"
                )
        return cls("tabulated", table=table)

    @property
    def horizon(self) -> int | None:
        return None if self.table is None else len(self.table) - 1

    def __call__(self, n: int) -> float:
        if n < 0:
            raise ValueError("bound functions are defined on n >= 0")
        if self.family == "tabulated":
            if n >= len(self.table):
                raise ValueError(f"n={n} beyond tabulated horizon {self.horizon}")
            return self.table[n]
        return max(n + 1.0, math.exp(self.rate * n))

    def spec_string(self) -> str:
        if self.family == "theta_k":
            return f"theta:{self.k}"
        if self.family == "envelope":
            return f"envelope:{self.rate:.12g}"
        return f"tabulated:0..{self.horizon}"


@dataclass(frozen=True)
class CStarReport:
    """Exhaustive check of strict growth (i) and submultiplicativity (ii)."""

    max_n: int
    holds_i: bool
    violation_i: int | None
    holds_ii: bool
    violation_ii: tuple[int, int] | None

    @property
    def holds(self) -> bool:
        return self.holds_i and self.holds_ii


def check_cstar(f: BoundFunction | Callable[[int], float], max_n: int, rel_tol: float = 1e-12) -> CStarReport:
    """Test f(n+1) > f(n) >= n+1 and f(n+n') <= f(n) f(n') for all pairs
    with n+n' <= max_n.

    The submultiplicativity comparison allows ``rel_tol`` of relative
    slack so that closed forms which satisfy it with equality do not
    fail on floating-point rounding.
    """
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    values = [f(n) for n in range(max_n + 1)]
    holds_i, violation_i = True, None
    for n in range(max_n + 1):
        bad_floor = values[n] < n + 1
        bad_step = n < max_n and not values[n + 1] > values[n]
        if bad_floor or bad_step:
            holds_i, violation_i = False, n
            break
    holds_ii, violation_ii = True, None
    for n in range(max_n + 1):
        if not holds_ii:
            break
        for m in range(n, max_n - n + 1):
            if values[n + m] > values[n] * values[m] * (1 + rel_tol):
                holds_ii, violation_ii = False, (n, m)
                break
    return CStarReport(max_n, holds_i, violation_i, holds_ii, violation_ii)


def normalize_submultiplicative(f: BoundFunction | Callable[[int], float], max_n: int) -> list[int]:
    """Greatest integer submultiplicative minorant of f, left to right:
    out[n] = min(floor(f(n)), min over 0 < m < n of out[m] * out[n-m]).

    Any factor-count profile below f stays below the output: counts are
    themselves submultiplicative, so induction over n carries p(n) past
    every new min clause.
    """
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    out: list[int] = []
    for n in range(max_n + 1):
        v = f(n)
        if math.isinf(v):
            raise ValueError(f"bound overflows floats at n={n}; lower the horizon")
        if v < n + 1:
            raise ValueError(f"bound value {v} at n={n} is below n+1")
        # closed forms like exp(n log 2) sit a few ulps under their
        # integer value; nudge before flooring so they are not lost
        best = math.floor(v * (1 + 1e-12) + 1e-12)
        for m in range(1, n):
            best = min(best, out[m] * out[n - m])
        out.append(best)
    return out


def increasing_repair(table: Sequence[int]) -> BoundFunction:
    """Strictly increasing variant table[n] + 1 - 2^(-n) of an integer
    table.  Integer counts cannot land in the added fringe, so p <= new
    iff p <= old; strictness should be confirmed with check_cstar, since
    it only holds where the table itself never decreases."""
    return BoundFunction.tabulated(
        [value + 1.0 - 2.0**-n for n, value in enumerate(table)]
    )


class E0Estimate(NamedTuple):
    value: float
    exact: bool


def e0(f: BoundFunction, max_n: int | None = None) -> E0Estimate:
    """Limiting lower growth exponent of f.

    Closed-form families report their exact rate.  Tabulated bounds get
    the min of log f(n) / n over the back half of the horizon, flagged
    approximate.
    """
    if f.family in ("theta_k", "envelope"):
        return E0Estimate(f.rate, True)
    horizon = f.horizon if max_n is None else min(max_n, f.horizon)
    if horizon < 1:
        raise ValueError("need a horizon of at least 1")
    lo = max(1, horizon // 2)
    value = min(math.log(f(n)) / n for n in range(lo, horizon + 1))
    return E0Estimate(value, False)


@dataclass(frozen=True)
class Witness:
    """Explicit word whose entropy certifies a lower bound above half
    the growth exponent of the bound function it was chosen for."""

    regime: str  # "full_shift" | "fibonacci" | "gap"
    source: PrefixSource
    claimed_entropy: float
    e0: float
    m: int | None = None
    k0: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "regime": self.regime,
            "source": self.source.spec(),
            "claimed_entropy": self.claimed_entropy,
            "e0": self.e0,
            "m": self.m,
            "k0": self.k0,
        }


def _minimal_gap_order(target: float) -> int:
    """Smallest k >= 2 with gamma(k) <= target, assuming target < gamma(1)."""
    hi = 2
    while gaplang.gamma(hi) > target:
        hi *= 2
    lo = hi // 2  # gamma(lo) > target when lo >= 2; lo=1 handled by caller
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if gaplang.gamma(mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def lower_bound_witness(f: BoundFunction) -> Witness:
    """Pick the witness regime for f from its growth exponent E0.

    Fast growth (E0 >= log 2) gets a full-complexity word on
    m = floor(exp(E0)) letters; the middle band gets the order-1 gap
    word with entropy log((1+sqrt 5)/2); slow growth gets the gap word
    of the least order k0 whose gamma fits under E0.  In every regime
    the claimed entropy exceeds E0/2, which is verified numerically
    before returning.
    """
    estimate = e0(f)
    rate = estimate.value
    if rate <= 0:
        raise ValueError("degenerate bound: E0 <= 0 admits no positive-entropy witness")
    m = None
    k0 = None
    if rate >= _LOG2:
        if rate >= 2 * math.log(10):
            raise ValueError(
                "E0 too large: a ten-letter alphabet cannot witness above half of it"
            )
        # the digit text format caps alphabets at ten letters; a smaller
        # alphabet stays admissible and still clears E0/2 below the cap
        m = min(math.floor(math.exp(rate)), 10)
        regime = "full_shift"
        source = PrefixSource("champernowne", (m,))
        claimed = math.log(m)
    elif rate >= _HALF_LOG3:
        regime = "fibonacci"
        source = PrefixSource("gapword", (1,))
        claimed = math.log(gaplang.beta(1))
    else:
        regime = "gap"
        k0 = _minimal_gap_order(rate)
        source = PrefixSource("gapword", (k0,))
        claimed = math.log(gaplang.beta(k0))
    if not claimed > rate / 2:
        raise InternalInvariantError(
            f"witness claim {claimed:.6g} does not clear E0/2 = {rate / 2:.6g}"
        )
    return Witness(regime, source, claimed, rate, m=m, k0=k0)


def entropy_upper_from_renorm(certificate: Renormalization) -> float:
    """Entropy cap log(2)/|a| implied by a block decomposition: factors
    are determined by an |a|-letter offset plus a binary token choice
    roughly every |a| letters."""
    return _LOG2 / len(certificate.a)


def epsilon_window(k: int) -> tuple[float, float]:
    """Valid census epsilon range for order k: lower edge
    2 log log k / log k, upper edge 1/4."""
    if k < 2:
        raise ValueError("census window needs k >= 2")
    return 2 * math.log(math.log(k)) / math.log(k), 0.25


def minimal_census_order(epsilon: float) -> tuple[int | None, float]:
    """Smallest k whose census window admits this epsilon.

    Returns (k, log k); k is None when it overflows floats (the window
    shrinks so slowly that moderate epsilon already demands astronomical
    k, which is the honest headline of this machinery)."""
    if not 0 < epsilon <= 0.25:
        raise ValueError("epsilon must lie in (0, 1/4]")
    # solve 2 log t / t = epsilon for t = log k; decreasing for t > e
    lo = math.e
    hi = math.e
    while 2 * math.log(hi) / hi > epsilon:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break
        if 2 * math.log(mid) / mid > epsilon:
            lo = mid
        else:
            hi = mid
    log_k = hi
    if log_k < 700:
        return math.ceil(math.exp(log_k)), log_k
    return None, log_k


@dataclass(frozen=True)
class GapCensus:
    """Distinct block gaps of a certificate inside the window
    [(1-eps)k, 2k), bucketed by size."""

    k: int
    epsilon: float
    gaps: tuple[int, ...]  # distinct values, sorted
    bucket_counts: tuple[int, ...]  # index r = 0 .. ceil(1/eps)
    thresholds: tuple[int, ...]  # t_r = floor((1 + (r+2) eps) k)
    run_cap: int  # h = floor(eps k / |a|)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "epsilon": self.epsilon,
            "gaps": list(self.gaps),
            "bucket_counts": list(self.bucket_counts),
            "thresholds": list(self.thresholds),
            "run_cap": self.run_cap,
        }


def gap_census(
    certificate: Renormalization,
    k: int,
    epsilon: float,
    *,
    enforce_window: bool = True,
) -> GapCensus:
    """Collect the distinct gaps r_j = s_j |a| + |b| between consecutive
    b-markers of a certificate, windowed to [(1-eps)k, 2k).

    ``enforce_window=False`` drops the lower-edge requirement on epsilon
    (the honest regime needs enormous k); results are then heuristic.
    """
    if not 0 < epsilon <= 0.25:
        raise ValueError("epsilon must lie in (0, 1/4]")
    if k < 2:
        raise ValueError("census needs k >= 2")
    if enforce_window:
        lower = epsilon_window(k)[0]
        if epsilon < lower:
            k_min, log_k = minimal_census_order(epsilon)
            where = f"{k_min}" if k_min is not None else f"exp({log_k:.1f})"
            raise ValueError(
                f"epsilon {epsilon:.4g} below the window edge {lower:.4g} for k={k}; "
                f"needs k >= {where}, or pass enforce_window=False for a heuristic census"
            )
    tokens = certificate.tokens
    if not tokens:
        raise ValueError("certificate has an empty token stream")
    a_len = len(certificate.a)
    b_len = len(certificate.b)
    s = certificate.s
    raw: set[int] = set()
    run = 0
    seen_b = False
    for token in tokens:
        if token == "A":
            run += 1
        else:
            if seen_b:
                raw.add((s + run) * a_len + b_len)
            seen_b = True
            run = 0
    lo = math.ceil((1 - epsilon) * k)
    hi = 2 * k - 1
    gaps = tuple(sorted(g for g in raw if lo <= g <= hi))
    bucket_top = math.ceil(1 / epsilon)
    bucket_counts = tuple(
        sum(1 for g in gaps if (1 + (r - 1) * epsilon) * k <= g < (1 + r * epsilon) * k)
        for r in range(bucket_top + 1)
    )
    thresholds = tuple(
        math.floor((1 + (r + 2) * epsilon) * k) for r in range(bucket_top + 1)
    )
    return GapCensus(
        k=k,
        epsilon=epsilon,
        gaps=gaps,
        bucket_counts=bucket_counts,
        thresholds=thresholds,
        run_cap=math.floor(epsilon * k / a_len),
    )


@dataclass(frozen=True)
class CharacteristicModel:
    """Root of 1 = sum_j x^{-r_j} + x^{-cutoff}/(1 - x^{-1}): the growth
    rate of block sequences built from the census gaps plus a free tail
    of blocks at least ``cutoff`` long."""

    gaps: tuple[int, ...]
    cutoff: int
    lambda_hat: float
    sigma: float | None
    residual: float


def _characteristic_rhs(lam: float, gaps: tuple[int, ...], cutoff: int) -> float:
    tail = lam**-cutoff / (1 - 1 / lam)
    return sum(lam**-g for g in gaps) + tail


def solve_characteristic(
    gaps: Sequence[int], k: int, tol: float = 1e-9
) -> CharacteristicModel:
    """Solve the characteristic equation by bisection.

    The right-hand side decreases strictly from +inf (at 1+) to 0, so
    the root is unique; the bracket grows outward until it straddles 1.
    sigma is the rate in units of log(k)/k, undefined at k=1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    gap_set = tuple(sorted(set(int(g) for g in gaps)))
    if any(g < 1 for g in gap_set):
        raise ValueError("gaps must be positive")
    cutoff = 2 * k
    lo = 1 + 1e-9
    while _characteristic_rhs(lo, gap_set, cutoff) <= 1:
        lo = 1 + (lo - 1) / 4
    hi = 4.0
    while _characteristic_rhs(hi, gap_set, cutoff) >= 1:
        hi *= 2
    while True:
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break
        if _characteristic_rhs(mid, gap_set, cutoff) > 1:
            lo = mid
        else:
            hi = mid
    root = (lo + hi) / 2
    residual = abs(_characteristic_rhs(root, gap_set, cutoff) - 1)
    if residual > tol:
        raise NumericalFailureError(
            f"characteristic residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )
    sigma = k * math.log(root) / math.log(k) if k >= 2 else None
    return CharacteristicModel(gap_set, cutoff, root, sigma, residual)


@dataclass(frozen=True)
class CorpusEntry:
    """Per-word outcome inside a ratio experiment."""

    source: str
    admissible: bool
    first_violation: int | None = None
    refusal: str | None = None
    periodic_suspect: bool = False
    a: str | None = None
    b: str | None = None
    s: int | None = None
    skip: int | None = None
    measure: int | None = None
    best_upper: float | None = None
    block_bound: float | None = None
    gaps: tuple[int, ...] = ()
    lambda_hat: float | None = None
    sigma: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "source": self.source,
            "admissible": self.admissible,
            "first_violation": self.first_violation,
            "refusal": self.refusal,
            "periodic_suspect": self.periodic_suspect,
            "a": self.a,
            "b": self.b,
            "s": self.s,
            "skip": self.skip,
            "measure": self.measure,
            "best_upper": self.best_upper,
            "block_bound": self.block_bound,
            "gaps": list(self.gaps),
            "lambda_hat": self.lambda_hat,
            "sigma": self.sigma,
        }


@dataclass(frozen=True)
class RatioReport:
    k: int
    c: float
    epsilon: float
    e0: float
    window: tuple[float, float]
    window_satisfied: bool
    window_relaxed: bool
    cstar: CStarReport
    witnesses: tuple[Witness, ...]
    entries: tuple[CorpusEntry, ...]
    lambda_hat: float | None
    sigma: float | None
    sigma_target: float
    rho_interval: tuple[float, float]

    def to_json_dict(self) -> dict:
        return {
            "f_family": "theta_k",
            "k": self.k,
            "c": self.c,
            "epsilon": self.epsilon,
            "e0": self.e0,
            "epsilon_window": {
                "lower": self.window[0],
                "upper": self.window[1],
                "satisfied": self.window_satisfied,
                "relaxed": self.window_relaxed,
            },
            "cstar_holds": self.cstar.holds,
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "certificates": [entry.to_json_dict() for entry in self.entries],
            "lambda_hat": self.lambda_hat,
            "sigma": self.sigma,
            "sigma_target": self.sigma_target,
            "rho_interval": list(self.rho_interval),
        }


_DEFAULT_CF_LISTS = ((1,), (2,), (1, 2), (2, 1, 1), (1, 2, 3, 4))


def _default_corpus(k: int, witness: Witness, seed: int) -> list[PrefixSource]:
    corpus = [PrefixSource("sturmian", cf) for cf in _DEFAULT_CF_LISTS]
    if witness.k0 is not None:
        corpus.append(PrefixSource("gapword", (witness.k0,)))
        corpus.append(PrefixSource("gapword", (witness.k0 + 3,)))
    else:
        corpus.append(PrefixSource("gapword", (max(k, 2),)))
    rng = random.Random(seed)
    # two random slowly-rotating sturmian slopes keep the corpus honest
    for _ in range(2):
        cf = tuple(rng.randint(1, 4) for _ in range(rng.randint(2, 6)))
        corpus.append(PrefixSource("sturmian", cf))
    return corpus


def _census_only_entries(k: int, epsilon: float, tol: float) -> list[CorpusEntry]:
    lo = math.ceil((1 - epsilon) * k)
    hi = 2 * k - 1
    step = max(1, math.floor(epsilon * k))
    synthetic: list[tuple[str, tuple[int, ...]]] = [
        ("synthetic:empty", ()),
        ("synthetic:center", (k,)),
        ("synthetic:edges", (lo, hi)),
        ("synthetic:dense", tuple(range(lo, hi + 1, step))),
    ]
    entries = []
    for name, gaps in synthetic:
        model = solve_characteristic(gaps, k, tol)
        entries.append(
            CorpusEntry(
                source=name,
                admissible=True,
                gaps=model.gaps,
                lambda_hat=model.lambda_hat,
                sigma=model.sigma,
            )
        )
    return entries


def ratio_experiment(
    k: int,
    c: float,
    horizon: int = 200,
    *,
    census_only: bool = False,
    relax_epsilon_window: bool = False,
    corpus: Sequence[PrefixSource] | None = None,
    prefix_length: int | None = None,
    seed: int = 0,
    tol: float = 1e-9,
) -> RatioReport:
    """Exercise every piece of the upper-bound machinery on one bound
    function f = theta_k, honestly labeled.

    epsilon is (c - 1/2)/2.  Its admissible window has a lower edge
    2 log log k / log k which only astronomically large k clears; the
    experiment refuses such k unless ``relax_epsilon_window`` is set,
    naming the smallest admissible order.  ``census_only`` skips the
    word corpus (and its witness) and runs the characteristic machinery
    on synthetic gap sets instead.

    The reported rho interval is certified at desk scale: the witness
    claim divided by E0 from below, and 1 from above (admissible words
    never exceed E0).  The sigma column is the experiment's evidence,
    not a certified ratio bound.
    """
    if not c > 0.5:
        raise ValueError("c must exceed 1/2")
    epsilon = (c - 0.5) / 2
    if epsilon > 0.25:
        raise ValueError("c too large: epsilon = (c - 1/2)/2 must stay within 1/4")
    f = BoundFunction.theta(k)
    window = epsilon_window(k)
    window_satisfied = window[0] <= epsilon <= window[1]
    if not window_satisfied and not relax_epsilon_window:
        k_min, log_k = minimal_census_order(epsilon)
        where = f"{k_min}" if k_min is not None else f"exp({log_k:.1f})"
        raise ValueError(
            f"epsilon {epsilon:.4g} below window edge {window[0]:.4g} at k={k}; "
            f"smallest admissible k is {where} "
            f"(pass relax_epsilon_window=True for a labeled heuristic run)"
        )
    rate = f.rate
    cstar = check_cstar(f, min(horizon, 300))

    witnesses: tuple[Witness, ...]
    if census_only:
        witnesses = ()
        entries = _census_only_entries(k, epsilon, tol)
    else:
        witness = lower_bound_witness(f)
        witnesses = (witness,)
        sources = list(corpus) if corpus is not None else _default_corpus(k, witness, seed)
        length = prefix_length or max(MIN_LENGTH_FACTOR * k * (k + 1), 4000)
        profile_n = min(horizon, length // 4)
        entries = []
        for source in sources:
            word = source.prefix(length)
            profile = complexity_profile(word, profile_n)
            ok, violation = is_admissible(profile, f)
            if not ok:
                entries.append(
                    CorpusEntry(source.spec(), admissible=False, first_violation=violation)
                )
                continue
            best_upper = entropy_upper(profile).best_upper
            try:
                certificate = renormalize(word, k)
            except Refusal as refusal:
                entries.append(
                    CorpusEntry(
                        source.spec(),
                        admissible=True,
                        refusal=refusal.reason,
                        best_upper=best_upper,
                    )
                )
                continue
            census = gap_census(
                certificate, k, epsilon, enforce_window=not relax_epsilon_window
            )
            model = solve_characteristic(census.gaps, k, tol)
            entries.append(
                CorpusEntry(
                    source=source.spec(),
                    admissible=True,
                    periodic_suspect=certificate.periodic_suspect,
                    a=certificate.a.to_digits(),
                    b=certificate.b.to_digits(),
                    s=certificate.s,
                    skip=certificate.skip,
                    measure=certificate.measure,
                    best_upper=best_upper,
                    block_bound=entropy_upper_from_renorm(certificate),
                    gaps=census.gaps,
                    lambda_hat=model.lambda_hat,
                    sigma=model.sigma,
                )
            )

    rated = [e for e in entries if e.lambda_hat is not None]
    lambda_hat = max((e.lambda_hat for e in rated), default=None)
    sigma = max((e.sigma for e in rated if e.sigma is not None), default=None)
    rho_lower = witnesses[0].claimed_entropy / rate if witnesses else 0.0
    return RatioReport(
        k=k,
        c=c,
        epsilon=epsilon,
        e0=rate,
        window=window,
        window_satisfied=window_satisfied,
        window_relaxed=relax_epsilon_window and not window_satisfied,
        cstar=cstar,
        witnesses=witnesses,
        entries=tuple(entries),
        lambda_hat=lambda_hat,
        sigma=sigma,
        sigma_target=0.5 + 2 * epsilon,
        rho_interval=(rho_lower, 1.0),
    )
