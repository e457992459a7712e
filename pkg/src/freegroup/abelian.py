"""Abelianization F_n -> Z^n and the exact integer linear algebra around it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import AlphabetMismatch, FreeGroupError
from .words import Alphabet, Word

__all__ = [
    "IntMatrix",
    "abelianize",
    "hom_matrix",
    "integer_rank",
    "smith_divisors",
    "is_surjective_onto_Zn",
    "quotient_exists",
    "canonical_surjection",
]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if self.rows < 0 or self.cols < 0:
            raise FreeGroupError("matrix dimensions must be non-negative")
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise FreeGroupError("entries do not match the stated dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    @classmethod
    def from_json(cls, data, cols: int | None = None) -> "IntMatrix":
        return cls.from_rows(data, cols)


def abelianize(w: Word) -> tuple[int, ...]:
    """Exponent-sum vector of ``w``."""
    v = [0] * w.alphabet.rank
    for c in w.codes:
        if c > 0:
            v[c - 1] += 1
        else:
            v[-c - 1] -= 1
    return tuple(v)


def hom_matrix(images: Sequence[Word], rank: int | None = None) -> IntMatrix:
    """Matrix of the induced map Z^m -> Z^n; column j is ``abelianize(images[j])``."""
    if images:
        alphabet = images[0].alphabet
        if any(im.alphabet != alphabet for im in images):
            raise AlphabetMismatch("images use different alphabets")
        n = alphabet.rank
        if rank is not None and rank != n:
            raise AlphabetMismatch(f"images live in F_{n}, not F_{rank}")
    elif rank is None:
        raise FreeGroupError("rank is required for an empty image list")
    else:
        n = rank
    cols = [abelianize(im) for im in images]
    return IntMatrix(n, len(cols), tuple(tuple(c[i] for c in cols) for i in range(n)))


def integer_rank(m: IntMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    rank = 0
    prev = 1
    for col in range(cols):
        if rank == rows:
            break
        pivot = next((r for r in range(rank, rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, rows):
            f = a[r][col]
            for c in range(col, cols):
                # exact division is guaranteed by Sylvester's identity
                a[r][c] = (p * a[r][c] - f * a[rank][c]) // prev
        prev = p
        rank += 1
    return rank


def smith_divisors(m: IntMatrix) -> list[int]:
    """Nonzero elementary divisors of ``m`` (positive, each dividing the next).

    Pivot is the smallest nonzero absolute value of the remaining block,
    ties broken by lowest row then lowest column.
    """
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    divisors = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        p = a[t][t]
        dirty = False
        for i in range(t + 1, rows):
            q = a[i][t] // p
            if q:
                for j in range(t, cols):
                    a[i][j] -= q * a[t][j]
            dirty |= a[i][t] != 0
        for j in range(t + 1, cols):
            q = a[t][j] // p
            if q:
                for i in range(t, rows):
                    a[i][j] -= q * a[i][t]
            dirty |= a[t][j] != 0
        if dirty:
            continue
        bad = next(
            (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
            None,
        )
        if bad is not None:
            for j in range(t, cols):
                a[t][j] += a[bad][j]
            continue
        divisors.append(abs(p))
        t += 1
    return divisors


def is_surjective_onto_Zn(m: IntMatrix) -> bool:
    """True iff the map Z^cols -> Z^rows is onto."""
    d = smith_divisors(m)
    return len(d) == m.rows and all(x == 1 for x in d)


def _check_nonneg(*xs: int):
    if any(x < 0 for x in xs):
        raise FreeGroupError("ranks must be non-negative")


def quotient_exists(m: int, n: int) -> bool:
    """Whether F_m has a quotient isomorphic to F_n."""
    _check_nonneg(m, n)
    return m >= n


def canonical_surjection(m: int, n: int, target: Alphabet | None = None) -> list[Word]:
    """Images of the m generators of F_m under the surjection F_m -> F_n that
    keeps the first n generators and kills the rest."""
    _check_nonneg(m, n)
    if m < n:
        raise FreeGroupError(f"no surjection F_{m} -> F_{n} when m < n")
    target = target or Alphabet.default(n)
    gens = target.generators()
    return gens + [target.identity()] * (m - n)
