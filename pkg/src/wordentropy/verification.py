"""Self-check suites behind the ``verify`` command.

Each suite re-derives a slice of the package's claims with independent
arithmetic (brute-force enumeration, exact big-integer recursions, a
growth-ratio dynamic program) and reports one pass/fail line per check.
These are runtime diagnostics; the test suite covers the same ground at
full depth.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import entropyratio, gaplang, renorm
from .complexity import complexity_profile, entropy_upper, is_admissible
from .errors import Refusal
from .words import gap_word, iter_gap_blocks, sturmian_word

__all__ = ["CheckResult", "SUITES", "run_suite", "run_suites"]

_SEED = 20260814


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _result(suite: str, name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(suite, name, bool(passed), detail)


# ---------------------------------------------------------------------------
# gaplang suite


def suite_gaplang(k_max: int = 6) -> list[CheckResult]:
    checks: list[CheckResult] = []
    suite = "gaplang"

    k_counts = min(k_max, 6)
    mismatches = 0
    for k in range(1, k_counts + 1):
        table = gaplang.qk_table(k, 18)
        for n in range(19):
            if table[n] != sum(1 for _ in iter_gap_blocks(k, n)):
                mismatches += 1
    checks.append(
        _result(
            suite,
            "counts-match-enumeration",
            mismatches == 0,
            f"k <= {k_counts}, n <= 18, {mismatches} mismatches",
        )
    )

    fib = [1, 1]
    while len(fib) < 64:
        fib.append(fib[-1] + fib[-2])
    table1 = gaplang.qk_table(1, 60)
    fib_ok = all(table1[n] == fib[n + 1] for n in range(61))
    checks.append(
        _result(suite, "order-1-is-fibonacci", fib_ok, "q_1(n) = F_{n+2}, n <= 60")
    )

    seed_bad = 0
    for k in range(1, min(k_max, 50) + 1):
        table = gaplang.qk_table(k, 2 * k + 2)
        for r in range(k + 2):
            if table[k + r + 1] != gaplang.window_count(k, r):
                seed_bad += 1
    checks.append(
        _result(
            suite,
            "window-closed-form",
            seed_bad == 0,
            f"k <= {min(k_max, 50)}, {seed_bad} mismatches",
        )
    )

    worst = 0.0
    for k in range(1, min(k_max, 50) + 1):
        b = gaplang.beta(k)
        worst = max(worst, abs(b ** (k + 1) - b**k - 1))
    golden = (1 + math.sqrt(5)) / 2
    beta_ok = worst <= 1e-12 and abs(gaplang.beta(1) - golden) <= 1e-12
    checks.append(
        _result(suite, "perron-roots", beta_ok, f"worst residual {worst:.2e}")
    )

    gammas = [gaplang.gamma(k) for k in range(1, min(k_max, 50) + 1)]
    gamma_ok = abs(gammas[0] - 0.5 * math.log(3)) <= 1e-12
    gamma_ok &= all(gammas[i] < gammas[i - 1] for i in range(1, len(gammas)))
    for k in range(2, len(gammas) + 1):
        gamma_ok &= math.log(gaplang.beta(k)) <= gammas[k - 1] + 1e-12
        gamma_ok &= gammas[k - 2] < 2 * math.log(gaplang.beta(k))
    checks.append(
        _result(
            suite,
            "gamma-table",
            gamma_ok,
            f"decreasing, log beta <= gamma, doubling margin, k <= {len(gammas)}",
        )
    )

    bounds_fail = 0
    for k in range(1, min(k_max, 50) + 1):
        report = gaplang.verify_beta_bounds(k, 100)
        bounds_fail += len(report.failures)
    checks.append(
        _result(
            suite,
            "root-inequalities",
            bounds_fail == 0,
            f"k <= {min(k_max, 50)}, r <= 100, {bounds_fail} failures",
        )
    )

    profile_bad = 0
    for k in range(1, min(k_max, 3) + 1):
        n_top = 10
        word = gap_word(k, gaplang.covering_length(k, n_top))
        profile = complexity_profile(word, n_top)
        table = gaplang.qk_table(k, n_top)
        profile_bad += sum(1 for n in range(n_top + 1) if profile[n] != table[n])
    checks.append(
        _result(
            suite,
            "gap-word-complexity",
            profile_bad == 0,
            f"p(n) = q_k(n) on covering prefixes, k <= {min(k_max, 3)}, n <= 10",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# renorm suite

_CF_LISTS = ((1,), (2,), (1, 2), (3, 1), (2, 1, 1), (1, 2, 3, 4))


def suite_renorm(k_max: int = 40) -> list[CheckResult]:
    checks: list[CheckResult] = []
    suite = "renorm"
    k_top = max(1, k_max)
    length = max(8 * k_top * (k_top + 1), 4000)

    invariant_bad = 0
    roundtrip_bad = 0
    both_seen = 0
    refusals = 0
    for cf in _CF_LISTS:
        word = sturmian_word(cf, length)
        for k in range(1, k_top + 1):
            try:
                cert = renorm.renormalize(word, k)
            except Refusal:
                refusals += 1
                continue
            ok = (
                cert.a[0] != cert.b[0]
                and len(cert.a) >= len(cert.b)
                and cert.measure > k
            )
            if not ok:
                invariant_bad += 1
            region = word[cert.skip :]
            if cert.decode() != region:
                roundtrip_bad += 1
            both_seen += sum(
                1
                for level in cert.levels
                if level.double_class is renorm.DoubleClass.BOTH
            )
    checks.append(
        _result(
            suite,
            "certificate-invariants",
            invariant_bad == 0 and refusals == 0,
            f"{len(_CF_LISTS)} words, k <= {k_top}, "
            f"{invariant_bad} invariant breaks, {refusals} refusals",
        )
    )
    checks.append(
        _result(
            suite,
            "decode-round-trip",
            roundtrip_bad == 0,
            f"{roundtrip_bad} mismatches",
        )
    )
    checks.append(
        _result(
            suite,
            "no-double-collision",
            both_seen == 0,
            f"{both_seen} levels classified as both",
        )
    )

    golden = sturmian_word((1,), length)
    try:
        cert4 = renorm.renormalize(golden, 4)
        golden_ok = (
            cert4.a.to_digits() == "10"
            and cert4.b.to_digits() == "0"
            and cert4.s == 1
        )
        detail = f"a={cert4.a.to_digits()} b={cert4.b.to_digits()} s={cert4.s}"
    except Refusal as exc:
        golden_ok, detail = False, f"refused: {exc}"
    checks.append(_result(suite, "golden-order-4", golden_ok, detail))

    bound_bad = 0
    sample = sturmian_word((2, 1, 1), 20000)
    for k in (6, 12):
        cert = renorm.renormalize(sample, k)
        best = entropy_upper(complexity_profile(sample, 120)).best_upper
        if best > entropyratio.entropy_upper_from_renorm(cert) + 0.05:
            bound_bad += 1
    checks.append(
        _result(
            suite,
            "entropy-bound-consistency",
            bound_bad == 0,
            "measured best upper within log 2/|a| + 0.05",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# ratio suite


def _growth_ratio(gaps: tuple[int, ...], k: int, terms: int = 1500) -> float:
    """Exact-integer growth of the block counting recursion; the ratio
    of consecutive terms converges to the characteristic root."""
    cutoff = 2 * k
    z = [0] * (terms + 2)
    prefix = [0] * (terms + 3)  # prefix[m] = sum of z[0..m-1]
    z[0] = 1
    prefix[1] = 1
    for m in range(1, terms + 2):
        total = sum(z[m - g] for g in gaps if m >= g)
        if m >= cutoff:
            total += prefix[m - cutoff + 1]
        z[m] = total
        prefix[m + 1] = prefix[m] + z[m]
    return float(Fraction(z[terms + 1], z[terms]))


def suite_ratio() -> list[CheckResult]:
    checks: list[CheckResult] = []
    suite = "ratio"

    regimes = {1.2: "full_shift", 0.6: "fibonacci", 0.3: "gap", 0.15: "gap"}
    witness_bad = []
    for rate, expected in regimes.items():
        f = entropyratio.BoundFunction.envelope(rate)
        witness = entropyratio.lower_bound_witness(f)
        word = witness.source.prefix(50000)
        profile = complexity_profile(word, 30)
        admissible, _ = is_admissible(profile, f)
        if witness.regime != expected or not admissible:
            witness_bad.append(rate)
        if not witness.claimed_entropy > rate / 2:
            witness_bad.append(rate)
    checks.append(
        _result(
            suite,
            "witness-regimes",
            not witness_bad,
            f"E0 sweep {sorted(regimes)}, failures at {witness_bad}",
        )
    )

    rng = random.Random(_SEED)
    worst_gap = 0.0
    for _ in range(8):
        k = rng.randint(2, 12)
        count = rng.randint(0, 5)
        gaps = tuple(sorted(rng.sample(range(1, 2 * k), min(count, 2 * k - 1))))
        model = entropyratio.solve_characteristic(gaps, k)
        worst_gap = max(worst_gap, abs(model.lambda_hat - _growth_ratio(model.gaps, k)))
    golden = (1 + math.sqrt(5)) / 2
    reduction = abs(
        entropyratio.solve_characteristic((), 1).lambda_hat - golden
    )
    checks.append(
        _result(
            suite,
            "characteristic-vs-recursion",
            worst_gap <= 1e-6 and reduction <= 1e-9,
            f"worst oracle gap {worst_gap:.2e}, golden reduction {reduction:.2e}",
        )
    )

    cstar_ok = True
    for k in (5, 20):
        report = entropyratio.check_cstar(entropyratio.BoundFunction.theta(k), 200)
        cstar_ok &= report.holds
    table = entropyratio.normalize_submultiplicative(
        entropyratio.BoundFunction.theta(20), 120
    )
    sub_ok = all(
        table[n + m] <= table[n] * table[m]
        for n in range(1, 121)
        for m in range(1, 121 - n)
    )
    checks.append(
        _result(
            suite,
            "cstar-machinery",
            cstar_ok and sub_ok,
            "theta family passes; normalized table submultiplicative",
        )
    )

    report = entropyratio.ratio_experiment(
        20, 0.75, census_only=True, relax_epsilon_window=True
    )
    sane = all(
        entry.lambda_hat is not None and entry.lambda_hat > 1
        for entry in report.entries
    )
    checks.append(
        _result(
            suite,
            "census-experiment",
            sane and not report.window_satisfied,
            f"{len(report.entries)} synthetic census entries, window honestly flagged",
        )
    )
    return checks


SUITES = {
    "gaplang": suite_gaplang,
    "renorm": suite_renorm,
    "ratio": suite_ratio,
}


def run_suite(name: str, k_max: int | None = None) -> list[CheckResult]:
    if name == "gaplang":
        return suite_gaplang(k_max or 6)
    if name == "renorm":
        return suite_renorm(k_max or 40)
    if name == "ratio":
        return suite_ratio()
    raise ValueError(f"unknown suite {name!r}")


def run_suites(names: list[str], k_max: int | None = None) -> list[CheckResult]:
    results: list[CheckResult] = []
    for name in names:
        results.extend(run_suite(name, k_max))
    return results
