"""Finite words over small ordered alphabets, plus deterministic prefix
families used throughout the package.

A :class:`Word` stores letters as raw byte values ``0..q-1``.  Text form
is one ASCII digit per letter, which caps readable alphabets at ten
letters; that is plenty for everything done here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import WordFormatError

__all__ = [
    "Alphabet",
    "BINARY",
    "Word",
    "PrefixSource",
    "read_word_file",
    "write_word_file",
    "periodic_word",
    "champernowne_word",
    "champernowne_covering_length",
    "sturmian_word",
    "gap_word",
    "iter_gap_blocks",
    "drop_prefix",
]


@dataclass(frozen=True)
class Alphabet:
    """Ordered alphabet; letters are the integers ``0 .. size-1``."""

    size: int

    def __post_init__(self) -> None:
        if not 2 <= self.size <= 10:
            raise ValueError(f"alphabet size must be in 2..10, got {self.size}")

    def letters(self) -> range:
        return range(self.size)

    def __str__(self) -> str:
        return f"{{0..{self.size - 1}}}"


BINARY = Alphabet(2)


@dataclass(frozen=True)
class Word:
    """Immutable finite word.  ``letters[i]`` is the i-th letter value."""

    alphabet: Alphabet
    letters: bytes = b""

    def __post_init__(self) -> None:
        if self.letters and max(self.letters) >= self.alphabet.size:
            bad = max(self.letters)
            raise ValueError(
                f"letter {bad} out of range for alphabet {self.alphabet}"
            )

    @classmethod
    def from_digits(cls, text: str, alphabet: Alphabet | None = None) -> "Word":
        """Build a word from a string of ASCII digits.

        Unless ``alphabet`` is given it is inferred as one more than the
        largest digit, but never smaller than binary.
        """
        raw = bytearray()
        for pos, ch in enumerate(text, start=1):
            if not ch.isascii() or not ch.isdigit():
                raise WordFormatError(
                    f"character {ch!r} at position {pos} is not a digit"
                )
            raw.append(ord(ch) - ord("0"))
        if alphabet is None:
            alphabet = Alphabet(max(2, (max(raw) + 1) if raw else 2))
        elif raw and max(raw) >= alphabet.size:
            raise WordFormatError(
                f"digit {max(raw)} out of range for alphabet {alphabet}"
            )
        return cls(alphabet, bytes(raw))

    @classmethod
    def from_letters(cls, values: Iterable[int], alphabet: Alphabet) -> "Word":
        return cls(alphabet, bytes(values))

    def to_digits(self) -> str:
        return "".join(chr(ord("0") + v) for v in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.alphabet, self.letters[index])
        return self.letters[index]

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def __mul__(self, count: int) -> "Word":
        return Word(self.alphabet, self.letters * count)

    def __contains__(self, factor: "Word") -> bool:
        return factor.letters in self.letters

    def __str__(self) -> str:
        return self.to_digits()

    def __repr__(self) -> str:
        shown = self.to_digits()
        if len(shown) > 40:
            shown = shown[:40] + "..."
        return f"Word({shown!r}, q={self.alphabet.size})"


def read_word_file(path, alphabet: Alphabet | None = None) -> Word:
    """Read a word from a text file: one line of digits, newline optional."""
    try:
        with open(path, "r", encoding="ascii") as handle:
            text = handle.read()
    except OSError as exc:
        raise WordFormatError(f"cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise WordFormatError(f"{path} is not ASCII text: {exc}") from exc
    body = text.rstrip("\n")
    if "\n" in body:
        raise WordFormatError(f"{path} must contain a single line of digits")
    try:
        return Word.from_digits(body, alphabet)
    except WordFormatError as exc:
        raise WordFormatError(f"{path}: {exc}") from exc


def write_word_file(word: Word, path) -> None:
    with open(path, "w", encoding="ascii") as handle:
        handle.write(word.to_digits())
        handle.write("\n")


# ---------------------------------------------------------------------------
# prefix generators


def periodic_word(pattern: Word | str, length: int) -> Word:
    """Prefix of length ``length`` of the infinite repetition of ``pattern``."""
    if isinstance(pattern, str):
        pattern = Word.from_digits(pattern)
    if len(pattern) == 0:
        raise ValueError("pattern must be nonempty")
    _check_length(length)
    reps = -(-length // len(pattern))
    return Word(pattern.alphabet, (pattern.letters * reps)[:length])


def champernowne_word(base: int, length: int) -> Word:
    """Prefix of the concatenation of every word over ``{0..base-1}`` in
    length-then-lexicographic order: 0, 1, ..., 00, 01, 10, 11, 000, ...

    Long enough prefixes achieve full complexity: p(m) = base^m.
    """
    alphabet = Alphabet(base)
    _check_length(length)
    raw = bytearray()
    for level in itertools.count(1):
        if len(raw) >= length:
            break
        for block in itertools.product(range(base), repeat=level):
            raw.extend(block)
            if len(raw) >= length:
                break
    return Word(alphabet, bytes(raw[:length]))


def champernowne_covering_length(base: int, factor_len: int) -> int:
    """Prefix length after which every factor of length ``factor_len``
    has appeared: every such factor is one of the level-``factor_len``
    blocks, so running through that level suffices."""
    return sum(level * base**level for level in range(1, factor_len + 1))


def sturmian_word(coefficients: Sequence[int], length: int) -> Word:
    """Prefix of the characteristic Sturmian word whose slope has the
    purely periodic continued fraction ``[0; a1, a2, ...]`` obtained by
    cycling ``coefficients``.

    Standard block recursion: s(-1) = "1", s(0) = "0",
    s(j+1) = s(j)^a(j+1) s(j-1).  With a1 >= 1 the result never
    contains "11".
    """
    coeffs = list(coefficients)
    if not coeffs or any(a < 1 for a in coeffs):
        raise ValueError("continued fraction entries must be integers >= 1")
    _check_length(length)
    prev, cur = b"\x01", b"\x00"
    step = 0
    while len(cur) < length:
        a = coeffs[step % len(coeffs)]
        prev, cur = cur, cur * a + prev
        step += 1
    return Word(BINARY, cur[:length])


def iter_gap_blocks(k: int, length: int) -> Iterator[bytes]:
    """All binary words of the given length in which consecutive ones are
    separated by at least ``k`` zeros, in lexicographic order.

    Yields raw letter bytes.  Backtracking, so the cost is proportional
    to the output size rather than 2^length.
    """
    if k < 1:
        raise ValueError("separation k must be >= 1")
    if length < 0:
        raise ValueError("length must be >= 0")
    prefix = bytearray()

    def rec(zeros_owed: int) -> Iterator[bytes]:
        if len(prefix) == length:
            yield bytes(prefix)
            return
        prefix.append(0)
        yield from rec(max(0, zeros_owed - 1))
        prefix.pop()
        if zeros_owed == 0:
            prefix.append(1)
            yield from rec(k)
            prefix.pop()

    yield from rec(0)


def gap_word(k: int, length: int) -> Word:
    """Prefix of the word listing, level by level and lexicographically
    within each level, every binary block whose ones are at least ``k``
    apart, with ``0^k`` glue after each block.

    The glue keeps every factor inside the gap language, so long enough
    prefixes have exactly the gap-language counts at each length.
    """
    if k < 1:
        raise ValueError("separation k must be >= 1")
    _check_length(length)
    glue = bytes(k)
    raw = bytearray()
    for level in itertools.count(1):
        if len(raw) >= length:
            break
        for block in iter_gap_blocks(k, level):
            raw.extend(block)
            raw.extend(glue)
            if len(raw) >= length:
                break
    return Word(BINARY, bytes(raw[:length]))


def drop_prefix(word: Word, count: int) -> Word:
    """The word with its first ``count`` letters removed."""
    if not 0 <= count <= len(word):
        raise ValueError(f"cannot drop {count} letters from a word of length {len(word)}")
    return word[count:]


def _check_length(length: int) -> None:
    if length < 0:
        raise ValueError("length must be >= 0")


# ---------------------------------------------------------------------------
# named prefix families


_FAMILIES = ("periodic", "champernowne", "sturmian", "gapword")


@dataclass(frozen=True)
class PrefixSource:
    """A named deterministic prefix family.

    The textual form is ``family:p1,p2,...`` and round-trips through
    :meth:`spec` / :meth:`from_spec`.  Prefixes of one source are
    consistent: ``prefix(m)`` equals the first m letters of ``prefix(n)``
    whenever m <= n.
    """

    family: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(
                f"unknown family {self.family!r}, expected one of {', '.join(_FAMILIES)}"
            )
        p = self.params
        if self.family == "periodic":
            if not p or any(v < 0 for v in p):
                raise ValueError("periodic pattern must be a nonempty digit sequence")
            if max(p) > 9:
                raise ValueError("periodic pattern letters must be single digits")
        elif self.family == "champernowne":
            if len(p) != 1 or not 2 <= p[0] <= 10:
                raise ValueError("champernowne takes a single base in 2..10")
        elif self.family == "sturmian":
            if not p or any(v < 1 for v in p):
                raise ValueError("sturmian takes continued fraction entries >= 1")
        elif self.family == "gapword":
            if len(p) != 1 or p[0] < 1:
                raise ValueError("gapword takes a single separation k >= 1")

    @classmethod
    def from_spec(cls, text: str) -> "PrefixSource":
        family, sep, rest = text.partition(":")
        family = family.strip()
        if not sep or not rest.strip():
            raise ValueError(f"source spec {text!r} must look like family:p1,p2,...")
        parts = [piece.strip() for piece in rest.split(",")]
        # allow a bare digit string for periodic patterns, e.g. periodic:010
        if family == "periodic" and len(parts) == 1 and len(parts[0]) > 1:
            parts = list(parts[0])
        try:
            params = tuple(int(piece) for piece in parts)
        except ValueError:
            raise ValueError(f"source spec {text!r} has a non-integer parameter") from None
        return cls(family, params)

    def spec(self) -> str:
        return f"{self.family}:{','.join(str(v) for v in self.params)}"

    @property
    def alphabet(self) -> Alphabet:
        if self.family == "periodic":
            return Alphabet(max(2, max(self.params) + 1))
        if self.family == "champernowne":
            return Alphabet(self.params[0])
        return BINARY

    def prefix(self, length: int) -> Word:
        if self.family == "periodic":
            pattern = Word.from_letters(self.params, self.alphabet)
            return periodic_word(pattern, length)
        if self.family == "champernowne":
            return champernowne_word(self.params[0], length)
        if self.family == "sturmian":
            return sturmian_word(self.params, length)
        return gap_word(self.params[0], length)

    def __str__(self) -> str:
        return self.spec()
