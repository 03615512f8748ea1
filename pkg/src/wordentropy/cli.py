"""Command-line front end.

Batch only, deterministic: the same invocation over the same inputs
produces byte-identical output.  Exit codes: 0 success, 1 invalid
arguments, 2 input format error, 3 mathematical refusal, 4 internal
invariant or numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import __version__, entropyratio, gaplang, verification
from .complexity import complexity_profile, entropy_upper
from .errors import (
    InsufficientDataError,
    InternalInvariantError,
    NumericalFailureError,
    Refusal,
    WordFormatError,
)
from .renorm import renormalize
from .words import PrefixSource, Word, read_word_file

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_REFUSED = 3
EXIT_INTERNAL = 4


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract reserves 2 for
    input format problems, so steer usage errors to 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> tuple[_Parser, argparse._SubParsersAction]:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    shared.add_argument("--out", metavar="PATH", help="write output to a file")
    shared.add_argument(
        "--tol", type=float, default=None, help="override root-finding tolerance"
    )
    shared.add_argument(
        "--config",
        metavar="PATH",
        help="key=value file supplying defaults; explicit flags win",
    )

    parser = _Parser(prog="wordentropy", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", metavar="command")

    p_complexity = commands.add_parser(
        "complexity",
        parents=[shared],
        help="factor-count profile of a word",
        description="Count distinct factors of each length and report "
        "the per-length entropy rates.",
    )
    src = p_complexity.add_mutually_exclusive_group()
    src.add_argument("--word-file", metavar="PATH", help="file with one digit line")
    src.add_argument(
        "--family",
        metavar="SPEC",
        help="generated word, e.g. sturmian:1,2 periodic:01 "
        "champernowne:2 gapword:3",
    )
    p_complexity.add_argument(
        "--length", type=int, default=10000, help="generated prefix length"
    )
    p_complexity.add_argument(
        "--max-n", type=int, help="largest factor length to count (required)"
    )

    p_gaplang = commands.add_parser(
        "gaplang",
        parents=[shared],
        help="gap-language tables and growth constants",
        description="Exact counts plus the growth root beta and the "
        "peak rate gamma for one gap language.",
    )
    p_gaplang.add_argument("--k", type=int, help="separation order (required)")
    p_gaplang.add_argument(
        "--max-n", type=int, default=None, help="emit the count table up to this n"
    )

    p_renorm = commands.add_parser(
        "renorm",
        parents=[shared],
        help="block-decomposition certificate of a word",
        description="Find blocks a, b a^s certifying low complexity up "
        "to the given order, or refuse with a reason.",
    )
    src = p_renorm.add_mutually_exclusive_group()
    src.add_argument("--word-file", metavar="PATH")
    src.add_argument("--family", metavar="SPEC")
    p_renorm.add_argument("--length", type=int, default=20000)
    p_renorm.add_argument("--k", type=int, help="certificate order (required)")

    p_ratio = commands.add_parser(
        "ratio",
        parents=[shared],
        help="entropy-ratio experiment for one bound function",
        description="Build f = max(n+1, k^(n/k)), pick its witness, and "
        "run the census machinery over a word corpus or synthetic gap sets.",
    )
    p_ratio.add_argument("--k", type=int, help="bound order (required)")
    p_ratio.add_argument("--c", type=float, help="target ratio bound (required)")
    p_ratio.add_argument("--horizon", type=int, default=200)
    p_ratio.add_argument("--length", type=int, default=None, help="corpus prefix length")
    p_ratio.add_argument("--seed", type=int, default=0)
    p_ratio.add_argument(
        "--census-only",
        action="store_true",
        help="skip the word corpus; synthetic gap sets only",
    )
    p_ratio.add_argument(
        "--relax-epsilon-window",
        action="store_true",
        help="heuristic: allow epsilon below its admissible window",
    )

    p_verify = commands.add_parser(
        "verify",
        parents=[shared],
        help="run the self-check suites",
        description="Re-derive the package's claims with independent "
        "arithmetic; one line per check, exit 0 only if all pass.",
    )
    p_verify.add_argument(
        "--suite",
        choices=("all", "gaplang", "renorm", "ratio"),
        default="all",
    )
    p_verify.add_argument("--k-max", type=int, default=None)

    return parser, commands


def _config_tokens(
    path: str, command_parser: argparse.ArgumentParser, argv: list[str]
) -> list[str]:
    """Turn a key=value file into argv tokens.

    The tokens are spliced in right after the command name, so flags the
    user typed later override them (argparse keeps the last value).
    Values are validated here so errors cite the file, not the flag.
    """
    actions = {
        action.dest: action
        for action in command_parser._actions
        if action.option_strings and action.dest != "help"
    }
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise WordFormatError(f"cannot read config {path}: {exc}") from exc
    # an explicit source flag silences any source the config supplies
    user_names_source = any(
        token == flag or token.startswith(flag + "=")
        for token in argv
        for flag in ("--word-file", "--family")
    )
    tokens: list[str] = []
    for lineno, line in enumerate(lines, start=1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        key, sep, value = body.partition("=")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {body!r}")
        dest = key.strip().replace("-", "_")
        if dest not in actions:
            raise ValueError(f"{path}:{lineno}: unknown option {key.strip()!r}")
        if user_names_source and dest in ("word_file", "family"):
            continue
        action = actions[dest]
        raw = value.strip()
        flag = action.option_strings[-1]
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            if raw.lower() in ("1", "true", "yes", "on"):
                tokens.append(flag)
            continue
        if action.type is not None:
            try:
                action.type(raw)
            except (TypeError, ValueError):
                raise ValueError(
                    f"{path}:{lineno}: bad value {raw!r} for {key.strip()!r}"
                ) from None
        if action.choices is not None and raw not in action.choices:
            raise ValueError(
                f"{path}:{lineno}: {raw!r} not one of {sorted(action.choices)}"
            )
        tokens.extend((flag, raw))
    return tokens


def _load_word(args: argparse.Namespace) -> tuple[Word, str]:
    if args.word_file:
        return read_word_file(args.word_file), args.word_file
    source = PrefixSource.from_spec(args.family)
    if args.length < 0:
        raise ValueError("--length must be >= 0")
    return source.prefix(args.length), source.spec()


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.12g}"


# ---------------------------------------------------------------------------
# subcommand bodies


def _cmd_complexity(args: argparse.Namespace) -> int:
    word, source = _load_word(args)
    profile = complexity_profile(word, args.max_n)
    best = entropy_upper(profile) if profile.horizon >= 1 else None
    if args.format == "json":
        payload = {
            "source": source,
            "length": len(word),
            "max_n": args.max_n,
            "witness_horizon": profile.witness_horizon,
            "counts": list(profile.values),
            "rates": list(best.per_n) if best else [],
            "best_upper": best.best_upper if best else None,
            "best_n": best.best_n if best else None,
        }
        _emit(_json_text(payload), args.out)
    else:
        rows = [["n", "p_n", "log_p_n_over_n", "best_upper"]]
        for n in range(profile.horizon + 1):
            rate = f"{math.log(profile.values[n]) / n:.12g}" if n else ""
            rows.append([n, profile.values[n], rate, _fmt(best.best_upper if best else None)])
        _emit(_csv_text(rows), args.out)
    return EXIT_OK


def _cmd_gaplang(args: argparse.Namespace) -> int:
    if args.k < 1:
        raise ValueError("--k must be >= 1")
    horizon = args.max_n if args.max_n is not None else 2 * (args.k + 1)
    if horizon < 0:
        raise ValueError("--max-n must be >= 0")
    tol = args.tol if args.tol is not None else 1e-12
    language = gaplang.GapLanguage.compute(args.k, horizon, tol)
    if args.format == "json":
        payload: dict = {"k": language.k}
        if args.max_n is not None:
            payload["max_n"] = horizon
            payload["q_table"] = list(language.q_table)
        payload.update(
            beta=language.beta,
            log_beta=math.log(language.beta),
            gamma=language.gamma,
        )
        _emit(_json_text(payload), args.out)
        return EXIT_OK
    buffer = io.StringIO()
    if args.max_n is not None:
        gaplang.write_table_csv(language, buffer)
        buffer.write("\n")
    gaplang.write_summary_csv(language, buffer)
    _emit(buffer.getvalue(), args.out)
    return EXIT_OK


def _refusal_payload(reason: str, message: str, extra: dict | None = None) -> dict:
    payload = {"refusal": reason, "message": message}
    if extra:
        payload.update(extra)
    return payload


def _emit_mapping(payload: dict, args: argparse.Namespace) -> None:
    if args.format == "json":
        _emit(_json_text(payload), args.out)
        return
    rows = [["key", "value"]]
    for key, value in payload.items():
        if isinstance(value, list):
            value = " ".join(
                ":".join(str(piece) for piece in item) if isinstance(item, list) else str(item)
                for item in value
            )
        elif isinstance(value, dict):
            value = " ".join(f"{k}={v}" for k, v in value.items())
        elif isinstance(value, float):
            value = f"{value:.12g}"
        rows.append([key, value])
    _emit(_csv_text(rows), args.out)


def _cmd_renorm(args: argparse.Namespace) -> int:
    word, source = _load_word(args)
    try:
        certificate = renormalize(word, args.k)
    except InsufficientDataError as exc:
        payload = _refusal_payload(exc.reason, str(exc), {"partial": exc.partial})
        _emit_mapping(payload, args)
        return EXIT_REFUSED
    except Refusal as exc:
        _emit_mapping(_refusal_payload(exc.reason, str(exc)), args)
        return EXIT_REFUSED
    if certificate.periodic_suspect:
        payload = _refusal_payload(
            "periodic-suspect",
            "input looks ultimately periodic; certificate emitted for reference",
            {"certificate": certificate.certificate_dict()},
        )
        _emit_mapping(payload, args)
        return EXIT_REFUSED
    payload = dict(certificate.certificate_dict())
    payload["source"] = source
    payload["leftover_length"] = len(certificate.leftover)
    _emit_mapping(payload, args)
    return EXIT_OK


def _cmd_ratio(args: argparse.Namespace) -> int:
    report = entropyratio.ratio_experiment(
        args.k,
        args.c,
        horizon=args.horizon,
        census_only=args.census_only,
        relax_epsilon_window=args.relax_epsilon_window,
        prefix_length=args.length,
        seed=args.seed,
        tol=args.tol if args.tol is not None else 1e-9,
    )
    if args.format == "json":
        _emit(_json_text(report.to_json_dict()), args.out)
        return EXIT_OK
    rows = [
        [
            "source",
            "admissible",
            "refusal",
            "a",
            "b",
            "s",
            "skip",
            "measure",
            "best_upper",
            "block_bound",
            "lambda_hat",
            "sigma",
        ]
    ]
    for entry in report.entries:
        rows.append(
            [
                entry.source,
                int(entry.admissible),
                entry.refusal or "",
                entry.a or "",
                entry.b or "",
                "" if entry.s is None else entry.s,
                "" if entry.skip is None else entry.skip,
                "" if entry.measure is None else entry.measure,
                _fmt(entry.best_upper),
                _fmt(entry.block_bound),
                _fmt(entry.lambda_hat),
                _fmt(entry.sigma),
            ]
        )
    rows.append([])
    rows.append(["e0", "epsilon", "sigma_target", "lambda_hat", "sigma", "rho_lower", "rho_upper"])
    rows.append(
        [
            _fmt(report.e0),
            _fmt(report.epsilon),
            _fmt(report.sigma_target),
            _fmt(report.lambda_hat),
            _fmt(report.sigma),
            _fmt(report.rho_interval[0]),
            _fmt(report.rho_interval[1]),
        ]
    )
    _emit(_csv_text(rows), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    names = ["gaplang", "renorm", "ratio"] if args.suite == "all" else [args.suite]
    results = verification.run_suites(names, args.k_max)
    all_pass = all(result.passed for result in results)
    if args.format == "json":
        payload = {
            "suites": names,
            "passed": all_pass,
            "checks": [
                {
                    "suite": result.suite,
                    "name": result.name,
                    "passed": result.passed,
                    "detail": result.detail,
                }
                for result in results
            ],
        }
        _emit(_json_text(payload), args.out)
    else:
        rows = [["suite", "check", "passed", "detail"]]
        for result in results:
            rows.append(
                [result.suite, result.name, "pass" if result.passed else "FAIL", result.detail]
            )
        _emit(_csv_text(rows), args.out)
    return EXIT_OK if all_pass else EXIT_REFUSED


_COMMANDS = {
    "complexity": _cmd_complexity,
    "gaplang": _cmd_gaplang,
    "renorm": _cmd_renorm,
    "ratio": _cmd_ratio,
    "verify": _cmd_verify,
}

# required=True cannot be satisfied by config pre-population (argparse
# checks argv, not the namespace), so requiredness lives here instead
_REQUIRED = {
    "complexity": ("max_n",),
    "gaplang": ("k",),
    "renorm": ("k",),
    "ratio": ("k", "c"),
}
_WORD_COMMANDS = ("complexity", "renorm")


def _validate(args: argparse.Namespace) -> None:
    for dest in _REQUIRED.get(args.command, ()):
        if getattr(args, dest, None) is None:
            flag = "--" + dest.replace("_", "-")
            raise ValueError(f"{flag} is required for {args.command!r}")
    if args.command in _WORD_COMMANDS:
        if not args.word_file and not args.family:
            raise ValueError("one of --word-file or --family is required")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, commands = _build_parser()

    # peek at --config so its values can seed the real parse; abbrev
    # matching off, else --c (ratio) is swallowed as --config
    peek = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    peek.add_argument("--config")
    peeked, _ = peek.parse_known_args(argv)

    try:
        if peeked.config:
            command = next((a for a in argv if not a.startswith("-")), None)
            if command not in commands.choices:
                raise ValueError("--config requires a recognized command")
            injected = _config_tokens(peeked.config, commands.choices[command], argv)
            at = argv.index(command) + 1
            argv = argv[:at] + injected + argv[at:]
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help()
            return EXIT_USAGE
        _validate(args)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        # argparse already printed; normalize --help and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except WordFormatError as exc:
        print(f"wordentropy: input error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except Refusal as exc:
        print(f"wordentropy: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (NumericalFailureError, InternalInvariantError) as exc:
        print(f"wordentropy: internal failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"wordentropy: invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
