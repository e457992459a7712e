"""Reduced words in the free group F_n.

A :class:`Word` stores its letters expanded (no run-length powers) as a tuple
of nonzero integer codes: generator ``g`` is ``g + 1`` and its inverse is
``-(g + 1)``.  Every constructor reduces, so a ``Word`` is always a reduced
word and equality of words is equality of group elements.
"""

from __future__ import annotations

import json
import random
import re
import string
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from ._backend import kernels
from .errors import AlphabetMismatch, FreeGroupError, ParseError

__all__ = [
    "Alphabet",
    "Letter",
    "Word",
    "parse_word",
    "reduce",
    "concat",
    "invert",
    "cyclically_reduce",
    "apply_hom",
    "random_word",
]

IDENTITY_TOKEN = "1"
_EXPONENT = re.compile(r"\^(-?\d+)")
_BAD_NAME_CHARS = set(string.whitespace) | {"^", "[", "]", ",", "\"", "'"}


@dataclass(frozen=True)
class Alphabet:
    """The named generating set of F_n."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise FreeGroupError(f"generator names are not distinct: {names}")
        for name in names:
            if not name or not name.isprintable() or _BAD_NAME_CHARS & set(name):
                raise FreeGroupError(f"invalid generator name {name!r}")
            if name == IDENTITY_TOKEN:
                raise FreeGroupError(f"{IDENTITY_TOKEN!r} is reserved for the identity")

    @classmethod
    def default(cls, rank: int) -> "Alphabet":
        if rank < 0:
            raise FreeGroupError("rank must be non-negative")
        if rank > 26:
            raise FreeGroupError("rank > 26 needs explicit generator names")
        return cls(tuple(string.ascii_lowercase[:rank]))

    @property
    def rank(self) -> int:
        return len(self.names)

    def generators(self) -> list["Word"]:
        return [Word(self, (g + 1,)) for g in range(self.rank)]

    def identity(self) -> "Word":
        return Word(self, ())

    def __len__(self):
        return self.rank


class Letter(NamedTuple):
    generator: int
    sign: int


def _code(letter) -> int:
    if isinstance(letter, int):
        return letter
    g, sign = letter
    if sign not in (1, -1):
        raise FreeGroupError(f"letter sign must be +1 or -1, got {sign}")
    return (g + 1) * sign


class Word:
    """An element of the free group on ``alphabet``; always reduced."""

    __slots__ = ("alphabet", "codes", "_hash")

    def __init__(self, alphabet: Alphabet, letters: Iterable = ()):
        codes = [_code(x) for x in letters]
        rank = alphabet.rank
        for c in codes:
            if c == 0 or abs(c) > rank:
                raise FreeGroupError(f"letter code {c} outside alphabet of rank {rank}")
        self.alphabet = alphabet
        self.codes = tuple(kernels.reduce_codes(codes))
        self._hash = None

    @classmethod
    def _trusted(cls, alphabet: Alphabet, codes: tuple) -> "Word":
        # codes already reduced and in range
        w = cls.__new__(cls)
        w.alphabet = alphabet
        w.codes = codes
        w._hash = None
        return w

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(abs(c) - 1, 1 if c > 0 else -1) for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __bool__(self):
        return bool(self.codes)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.codes == other.codes and self.alphabet == other.alphabet

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.names, self.codes))
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else invert(self)
        return Word(self.alphabet, base.codes * abs(k))

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.names),
            "letters": [[l.generator, l.sign] for l in self.letters],
        }

    @classmethod
    def from_json(cls, data) -> "Word":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            alphabet = Alphabet(tuple(data["alphabet"]))
            letters = [(int(g), int(s)) for g, s in data["letters"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed word JSON: {exc}") from None
        return cls(alphabet, letters)


def format_word(w: Word) -> str:
    """Render with ``^k`` exponents on runs; the identity prints as ``1``."""
    if not w.codes:
        return IDENTITY_TOKEN
    parts = []
    names = w.alphabet.names
    codes = w.codes
    i = 0
    while i < len(codes):
        j = i
        while j < len(codes) and codes[j] == codes[i]:
            j += 1
        name = names[abs(codes[i]) - 1]
        power = (j - i) * (1 if codes[i] > 0 else -1)
        parts.append(name if power == 1 else f"{name}^{power}")
        i = j
    return " ".join(parts)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse ``"a b^-1 a"``, ``"ab^-1a"`` or ``"aB"`` into a reduced word.

    Names are matched longest-first.  A single uppercase letter whose
    lowercase is a generator name (and is not itself a name) denotes the
    inverse.  ``1`` denotes the identity.
    """
    names = sorted(alphabet.names, key=len, reverse=True)
    index = {name: g for g, name in enumerate(alphabet.names)}
    codes: list[int] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        for name in names:
            if text.startswith(name, pos):
                code = index[name] + 1
                pos += len(name)
                break
        else:
            ch = text[pos]
            if ch.isupper() and ch.lower() in index:
                code = -(index[ch.lower()] + 1)
                pos += 1
            elif ch == IDENTITY_TOKEN:
                code = 0
                pos += 1
            else:
                raise ParseError(f"unknown generator at position {pos} in {text!r}")
        power = 1
        if pos < n and text[pos] == "^":
            m = _EXPONENT.match(text, pos)
            if m is None:
                raise ParseError(f"malformed exponent at position {pos} in {text!r}")
            power = int(m.group(1))
            pos = m.end()
        if code:
            c = code if power > 0 else -code
            codes.extend([c] * abs(power))
    return Word(alphabet, codes)


def reduce(raw: Sequence, alphabet: Alphabet | None = None) -> Word:
    """Free reduction of a raw letter sequence (Letters, pairs, or codes)."""
    codes = [_code(x) for x in raw]
    if alphabet is None:
        alphabet = Alphabet.default(max((abs(c) for c in codes), default=0))
    return Word(alphabet, codes)


def _check_same(u: Word, v: Word):
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet.names} vs {v.alphabet.names}")


def concat(u: Word, v: Word) -> Word:
    _check_same(u, v)
    a, b = u.codes, v.codes
    # cancel across the seam only; both halves are already reduced
    k = 0
    m = min(len(a), len(b))
    while k < m and a[-1 - k] == -b[k]:
        k += 1
    return Word._trusted(u.alphabet, a[: len(a) - k] + b[k:])


def invert(w: Word) -> Word:
    return Word._trusted(w.alphabet, tuple(-c for c in reversed(w.codes)))


def conjugate(w: Word, by: Word) -> Word:
    """``by * w * by^-1``."""
    return concat(concat(by, w), invert(by))


def cyclically_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with ``core`` cyclically reduced."""
    codes = w.codes
    i, j = 0, len(codes) - 1
    while i < j and codes[i] == -codes[j]:
        i += 1
        j -= 1
    return Word._trusted(w.alphabet, codes[i : j + 1]), Word._trusted(w.alphabet, codes[:i])


def apply_hom(images: Sequence[Word], w: Word, target: Alphabet | None = None) -> Word:
    """Image of ``w`` under the substitution homomorphism ``g -> images[g]``."""
    if len(images) != w.alphabet.rank:
        raise FreeGroupError(
            f"need {w.alphabet.rank} generator images, got {len(images)}"
        )
    if target is None:
        if not images:
            raise FreeGroupError("target alphabet required when there are no images")
        target = images[0].alphabet
    for im in images:
        if im.alphabet != target:
            raise AlphabetMismatch("generator images use different alphabets")
    inv = [tuple(-c for c in reversed(im.codes)) for im in images]
    out: list[int] = []
    for c in w.codes:
        out.extend(images[c - 1].codes if c > 0 else inv[-c - 1])
    return Word(target, out)


def random_word(length: int, alphabet: Alphabet, seed: int) -> Word:
    """A uniformly random reduced word with exactly ``length`` letters."""
    if length < 0:
        raise FreeGroupError("length must be non-negative")
    if length and alphabet.rank == 0:
        raise FreeGroupError("rank-0 alphabet has no nonempty words")
    rng = random.Random(seed)
    choices = [c for g in range(1, alphabet.rank + 1) for c in (g, -g)]
    codes: list[int] = []
    for _ in range(length):
        while True:
            c = rng.choice(choices)
            if not codes or c != -codes[-1]:
                break
        codes.append(c)
    return Word._trusted(alphabet, tuple(codes))
