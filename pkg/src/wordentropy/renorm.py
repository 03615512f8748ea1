"""Block renormalization of low-complexity binary words.

A binary word whose factor counts stay at n+1 for all n up to some
order k can, after dropping a bounded prefix, be written as a product
of two blocks a and b a^s whose combined size beats k.  ``renormalize``
finds such blocks by repeated coarsening: parse greedily, look at which
token doubles occur away from the stream head, then either deepen the
exponent s or swap the roles of the blocks.  Accepted outputs carry the
full level trace so every intermediate decision can be replayed.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .complexity import complexity_profile
from .errors import (
    InsufficientDataError,
    InternalInvariantError,
    NotPreSturmianError,
    ParseMismatchError,
)
from .words import Word

__all__ = [
    "MIN_LENGTH_FACTOR",
    "TRIM_BUDGET",
    "DoubleClass",
    "Parse",
    "parse_blocks",
    "classify_double",
    "LevelStep",
    "Renormalization",
    "renormalize",
    "decode",
]

# refuse order-k work on words shorter than MIN_LENGTH_FACTOR * k * (k+1)
MIN_LENGTH_FACTOR = 8

# most leading tokens ever absorbed into `skip` at one coarsening level
TRIM_BUDGET = 16


class DoubleClass(enum.Enum):
    """Which token doubles occur past the first token of a stream."""

    AA_ONLY = "AA_only"
    BB_ONLY = "BB_only"
    NEITHER = "neither"
    BOTH = "both"


@dataclass(frozen=True)
class Parse:
    tokens: str  # one character per token, over {A, B}
    leftover: Word  # truncated final block, possibly empty


def parse_blocks(word: Word, a: Word, b: Word, s: int) -> Parse:
    """Greedy left-to-right decomposition of ``word`` into blocks
    A = a and B = b a^s.

    The first letter decides the block (they must differ), so the
    decomposition is unique.  A block cut off by the end of the word
    becomes the leftover; any other disagreement is a parse mismatch
    reported with its 1-based letter position.
    """
    if len(a) == 0 or len(b) == 0:
        raise ValueError("blocks must be nonempty")
    if a[0] == b[0]:
        raise ValueError("blocks must have distinct first letters")
    if s < 1:
        raise ValueError("block exponent s must be >= 1")
    data = word.letters
    block_a = a.letters
    block_b = (b + a * s).letters
    tokens: list[str] = []
    pos = 0
    while pos < len(data):
        if data[pos] == block_a[0]:
            block, name = block_a, "A"
        else:
            block, name = block_b, "B"
        chunk = data[pos : pos + len(block)]
        if chunk == block:
            tokens.append(name)
            pos += len(block)
            continue
        if block.startswith(chunk):  # word ended inside this block
            break
        mismatch = next(i for i in range(len(chunk)) if chunk[i] != block[i])
        raise ParseMismatchError(
            f"letter at position {pos + mismatch + 1} does not continue block {name}",
            position=pos + mismatch + 1,
        )
    return Parse("".join(tokens), word[pos:])


def classify_double(tokens: str) -> DoubleClass:
    """Report which of the doubles AA, BB occur past the first token.

    Pairs touching the head of the stream are ignored: the head may sit
    inside a partial block, so its doubles say nothing about the tail.
    """
    if len(tokens) < 2:
        raise ValueError("need at least two tokens to classify")
    if set(tokens) - {"A", "B"}:
        raise ValueError("tokens must be over the letters A, B")
    tail = tokens[1:]
    has_aa = "AA" in tail
    has_bb = "BB" in tail
    if has_aa and has_bb:
        return DoubleClass.BOTH
    if has_aa:
        return DoubleClass.AA_ONLY
    if has_bb:
        return DoubleClass.BB_ONLY
    return DoubleClass.NEITHER


@dataclass(frozen=True)
class LevelStep:
    """State of one coarsening level, recorded before its rule fired."""

    a: Word
    b: Word
    s: int
    skip: int  # letters dropped from the source up to this level
    dropped: int  # leading tokens absorbed at this level
    token_count: int
    double_class: DoubleClass

    @property
    def measure(self) -> int:
        return (self.s + 1) * len(self.a) + len(self.b)


@dataclass(frozen=True)
class Renormalization:
    """Certificate that the source word, minus its first ``skip``
    letters, decomposes into the blocks a and b a^s."""

    order: int
    a: Word
    b: Word
    s: int
    skip: int
    tokens: str
    leftover: Word
    source_length: int
    periodic_suspect: bool
    levels: tuple[LevelStep, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.a) == 0 or len(self.b) == 0:
            raise ValueError("blocks must be nonempty")
        if self.a[0] == self.b[0]:
            raise ValueError("blocks must have distinct first letters")
        if len(self.a) < len(self.b):
            raise ValueError("|a| >= |b| must hold")
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if self.measure <= self.order:
            raise ValueError(
                f"measure {self.measure} does not certify order {self.order}"
            )
        if set(self.tokens) - {"A", "B"}:
            raise ValueError("tokens must be over the letters A, B")

    @property
    def measure(self) -> int:
        return (self.s + 1) * len(self.a) + len(self.b)

    @property
    def block_a(self) -> Word:
        return self.a

    @property
    def block_b(self) -> Word:
        return self.b + self.a * self.s

    def token_run_lengths(self) -> list[tuple[str, int]]:
        return [
            (token, sum(1 for _ in run))
            for token, run in itertools.groupby(self.tokens)
        ]

    def decode(self) -> Word:
        """Rebuild the parsed region: substituted tokens plus leftover."""
        block_a = self.a.letters
        block_b = self.block_b.letters
        body = b"".join(
            block_a if token == "A" else block_b for token in self.tokens
        )
        return Word(self.a.alphabet, body + self.leftover.letters)

    def certificate_dict(self) -> dict:
        """The exported certificate object."""
        return {
            "k": self.order,
            "a": self.a.to_digits(),
            "b": self.b.to_digits(),
            "s": self.s,
            "skip": self.skip,
            "measure": self.measure,
            "token_run_lengths": [list(pair) for pair in self.token_run_lengths()],
        }


def decode(certificate: Renormalization) -> Word:
    return certificate.decode()


def _digram_positions(tokens: str, pattern: str) -> list[int]:
    positions = []
    start = tokens.find(pattern)
    while start != -1:
        positions.append(start)
        start = tokens.find(pattern, start + 1)
    return positions


def _separable_trim(tokens: str) -> int | None:
    """Number of leading tokens to drop so that one double kind only
    touches the stream head, or None when the two kinds interleave.

    Coarsening never shrinks the very first run of the stream, so a
    bounded exceptional prefix can keep one double kind alive at the
    head while the tail genuinely contains only the other kind.  If
    every AA strictly precedes every BB, dropping through the last AA
    leaves it as the ignored head pair (and symmetrically).
    """
    aa = _digram_positions(tokens, "AA")
    bb = _digram_positions(tokens, "BB")
    if aa[-1] < bb[0]:
        return aa[-1]
    if bb[-1] < aa[0]:
        return bb[-1]
    return None


def _token_length(token: str, a: Word, b: Word, s: int) -> int:
    return len(a) if token == "A" else s * len(a) + len(b)


def _partial(a: Word, b: Word, s: int, skip: int, token_count: int) -> dict:
    return {
        "a": a.to_digits(),
        "b": b.to_digits(),
        "s": s,
        "skip": skip,
        "measure": (s + 1) * len(a) + len(b),
        "token_count": token_count,
    }


def renormalize(word: Word, order: int) -> Renormalization:
    """Certify that a tail of ``word`` lies in {a, b a^s}* with
    (s+1)|a| + |b| > order.

    Starts from the single-letter blocks ruled out by whichever double
    letter is missing, then coarsens until the measure beats the order.
    At each level the double classification of the token stream picks
    the rule: no BB past the head means B is always followed by A, so
    s can deepen (A, BA); no AA past the head means A is always followed
    by B, so the roles swap (BA^s, A).  A bounded run of leading tokens
    may keep a stale double alive at the head; those tokens are absorbed
    into ``skip``.
    """
    k = order
    if k < 1:
        raise ValueError("order must be >= 1")
    if word.alphabet.size != 2:
        raise ValueError("renormalization is defined for binary words")
    min_len = MIN_LENGTH_FACTOR * k * (k + 1)
    if len(word) < min_len:
        raise InsufficientDataError(
            f"order {k} needs at least {min_len} letters, got {len(word)}"
        )

    data = word.letters
    if b"\x01\x01" not in data:
        a, b = Word(word.alphabet, b"\x00"), Word(word.alphabet, b"\x01")
    elif b"\x00\x00" not in data:
        a, b = Word(word.alphabet, b"\x01"), Word(word.alphabet, b"\x00")
    else:
        raise NotPreSturmianError(
            "both 00 and 11 occur, so already 4 factors of length 2"
        )

    # the complexity precondition is checkable on the prefix itself
    check_to = min(k, len(word) // 4)
    profile = complexity_profile(word, check_to)
    deficient = False
    for n in range(1, check_to + 1):
        if profile[n] > n + 1:
            raise NotPreSturmianError(
                f"{profile[n]} factors of length {n} exceed {n + 1}"
            )
        if profile[n] < n + 1:
            deficient = True  # eventually periodic; certify but flag

    s = 1
    skip = 0
    tokens = parse_blocks(word, a, b, s).tokens
    levels: list[LevelStep] = []

    while (s + 1) * len(a) + len(b) <= k:
        if len(tokens) < 3:
            raise InsufficientDataError(
                "token stream exhausted before the measure reached the order",
                partial=_partial(a, b, s, skip, len(tokens)),
            )
        cls = classify_double(tokens)
        dropped = 0
        if cls is DoubleClass.BOTH:
            trim = _separable_trim(tokens)
            if trim is None or trim > TRIM_BUDGET:
                raise NotPreSturmianError(
                    "token doubles AA and BB both occur away from the stream head"
                )
            skip += sum(_token_length(t, a, b, s) for t in tokens[:trim])
            tokens = tokens[trim:]
            dropped = trim
            if len(tokens) < 3:
                raise InsufficientDataError(
                    "token stream exhausted while absorbing the stream head",
                    partial=_partial(a, b, s, skip, len(tokens)),
                )
            cls = classify_double(tokens)
            if cls is DoubleClass.BOTH:
                raise NotPreSturmianError(
                    "token doubles AA and BB interleave beyond the stream head"
                )
        levels.append(
            LevelStep(a, b, s, skip, dropped, len(tokens), cls)
        )
        if cls in (DoubleClass.AA_ONLY, DoubleClass.NEITHER):
            # BB absent: every B is followed by A, fuse into B' = B A
            fused = tokens.replace("BA", "C")
            if fused.startswith("B"):
                skip += s * len(a) + len(b)
                fused = fused[1:]
            if fused.endswith("B"):
                fused = fused[:-1]
            if "B" in fused:
                raise InternalInvariantError(
                    "unfused B inside a stream classified as BB-free"
                )
            tokens = fused.replace("C", "B")
            s += 1
        else:
            # AA absent: every A is followed by B, swap block roles
            fused = tokens.replace("AB", "C")
            if fused.startswith("A"):
                skip += len(a)
                fused = fused[1:]
            if fused.endswith("A"):
                fused = fused[:-1]
            if "A" in fused:
                raise InternalInvariantError(
                    "unfused A inside a stream classified as AA-free"
                )
            tokens = fused.replace("B", "A").replace("C", "B")
            a, b, s = b + a * s, a, 1

    block_a = a.letters
    block_b = (b + a * s).letters
    body = b"".join(block_a if t == "A" else block_b for t in tokens)
    if data[skip : skip + len(body)] != body:
        raise InternalInvariantError("decoded blocks disagree with the source")
    leftover = word[skip + len(body) :]
    periodic = deficient or len(set(tokens[1:])) <= 1
    return Renormalization(
        order=k,
        a=a,
        b=b,
        s=s,
        skip=skip,
        tokens=tokens,
        leftover=leftover,
        source_length=len(word),
        periodic_suspect=periodic,
        levels=tuple(levels),
    )
