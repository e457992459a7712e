"""Subgroups of F_n as Stallings graphs: enumeration, conjugacy, normality,
and the existence criteria for free sub- and quotient groups."""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from typing import Sequence

from . import graph as gr
from ._backend import kernels
from .errors import AlphabetMismatch, CapExceeded, FreeGroupError, InvariantError
from .graph import INFINITE, LabeledGraph
from .words import Alphabet, Word, conjugate, parse_word

__all__ = [
    "Subgroup",
    "PermTuple",
    "subgroup_from_generators",
    "graph_from_perms",
    "perm_tuple_from_graph",
    "enumerate_index",
    "count_index",
    "conjugacy_classes",
    "is_normal",
    "conjugate_subgroup",
    "subgroup_exists",
    "normal_subgroup_exists",
    "embed_in_F2",
    "cyclic_cover",
    "nielsen_schreier_rank",
    "infinite_index_example",
    "DEFAULT_ENUM_CAP",
]

DEFAULT_ENUM_CAP = 10**7


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A finitely generated subgroup, held as its folded core graph."""

    alphabet: Alphabet
    graph: LabeledGraph
    basis: tuple[Word, ...] = field(default=())
    index: float | int = INFINITE
    rank: int = 0

    @classmethod
    def from_graph(cls, g: LabeledGraph, alphabet: Alphabet | None = None) -> "Subgroup":
        alphabet = alphabet or Alphabet.default(g.rank)
        if alphabet.rank != g.rank:
            raise AlphabetMismatch(f"alphabet rank {alphabet.rank} != graph rank {g.rank}")
        if not g.is_core():
            g = gr.core_trim(g)
        else:
            g = gr.canonical(g)
        return cls(alphabet, g, tuple(gr.free_basis(g, alphabet)), gr.index(g), gr.rank(g))

    @property
    def ambient_rank(self) -> int:
        return self.alphabet.rank

    @property
    def key(self) -> bytes:
        return gr.canonical_form(self.graph)

    @property
    def is_finite_index(self) -> bool:
        return self.index != INFINITE

    def __contains__(self, w: Word) -> bool:
        return gr.membership(self.graph, w)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.alphabet == other.alphabet and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        basis = ", ".join(str(w) for w in self.basis)
        return f"Subgroup(<{basis}>, index={self.index}, rank={self.rank})"

    def to_json(self, normal: bool | None = None) -> dict:
        return {
            "ambientRank": self.ambient_rank,
            "graph": gr.to_json(self.graph),
            "basis": [str(w) for w in self.basis],
            "index": self.index if self.is_finite_index else "infinite",
            "rank": self.rank,
            "normal": is_normal(self) if normal is None else normal,
        }

    @classmethod
    def from_json(cls, data, alphabet: Alphabet | None = None) -> "Subgroup":
        """Rebuild from the graph and check the cached fields against it."""
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        g = gr.from_json(data["graph"])
        alphabet = alphabet or Alphabet.default(int(data["ambientRank"]))
        s = cls.from_graph(g, alphabet)
        index = data.get("index")
        if index is not None and index != (s.index if s.is_finite_index else "infinite"):
            raise InvariantError(f"stored index {index!r} disagrees with the graph")
        if "rank" in data and data["rank"] != s.rank:
            raise InvariantError(f"stored rank {data['rank']} disagrees with the graph")
        if "basis" in data:
            basis = [parse_word(t, alphabet) for t in data["basis"]]
            if gr.canonical_form(_graph_of(basis, alphabet.rank)) != s.key:
                raise InvariantError("stored basis does not generate the stored graph")
        return s


def _graph_of(words: Sequence[Word], rank: int) -> LabeledGraph:
    return gr.core_trim(gr.fold(gr.bouquet(list(words), rank)))


def subgroup_from_generators(words: Sequence[Word], alphabet: Alphabet | None = None) -> Subgroup:
    words = list(words)
    if alphabet is None:
        if not words:
            raise FreeGroupError("alphabet is required for an empty generator list")
        alphabet = words[0].alphabet
    if any(w.alphabet != alphabet for w in words):
        raise AlphabetMismatch("generators use different alphabets")
    return Subgroup.from_graph(_graph_of(words, alphabet.rank), alphabet)


@dataclass(frozen=True)
class PermTuple:
    """One permutation of ``range(degree)`` per generator."""

    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if perms:
            e = len(perms[0])
            for p in perms:
                if len(p) != e or sorted(p) != list(range(e)):
                    raise InvariantError(f"{p} is not a permutation of range({e})")

    @property
    def degree(self) -> int:
        return len(self.perms[0]) if self.perms else 1

    def is_transitive(self) -> bool:
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for p in self.perms:
                if p[v] not in seen:
                    seen.add(p[v])
                    frontier.append(p[v])
        return len(seen) == self.degree


def graph_from_perms(t: PermTuple | Sequence[Sequence[int]], degree: int | None = None) -> LabeledGraph:
    """Cover with vertices ``0..e-1`` and edges ``i -g-> perms[g][i]``."""
    if not isinstance(t, PermTuple):
        t = PermTuple(tuple(t))
    e = t.degree if degree is None else degree
    if t.perms and e != t.degree:
        raise InvariantError("degree does not match the permutations")
    if not t.is_transitive():
        raise InvariantError("permutation action is not transitive")
    edges = [(g, i, p[i]) for g, p in enumerate(t.perms) for i in range(e)]
    return LabeledGraph(len(t.perms), e, edges)


def perm_tuple_from_graph(g: LabeledGraph) -> PermTuple:
    if not gr.is_complete(g):
        raise InvariantError("only covers define a permutation action")
    fwd, _ = g.maps()
    return PermTuple(tuple(tuple(row) for row in fwd))


def enum_cap() -> int:
    return int(os.environ.get("FREEGROUP_ENUM_CAP", DEFAULT_ENUM_CAP))


def enumerate_index(n: int, e: int, cap: int | None = None,
                    alphabet: Alphabet | None = None) -> list[Subgroup]:
    """All index-``e`` subgroups of F_n, sorted by canonical form.

    Brute force over transitive permutation tuples; each subgroup is the
    stabilizer of vertex 0, deduplicated by canonical form.
    """
    if n < 1 or e < 1:
        raise FreeGroupError("need n >= 1 and e >= 1")
    cap = enum_cap() if cap is None else cap
    candidates = math.factorial(e) ** n
    if candidates > cap:
        raise CapExceeded(f"{candidates} permutation tuples exceed the cap of {cap}")
    alphabet = alphabet or Alphabet.default(n)
    perms = list(itertools.permutations(range(e)))
    perm_key = kernels.perm_key
    seen = set()
    for t in itertools.product(perms, repeat=n):
        k = perm_key(t, e)
        if k is not None:
            seen.add(k)
    codes = sorted(seen, key=gr.pack_code)
    return [Subgroup.from_graph(gr._from_code(k), alphabet) for k in codes]


def count_index(n: int, e: int) -> int:
    """Number of index-``e`` subgroups of F_n by Hall's recursion."""
    if n < 1 or e < 1:
        raise FreeGroupError("need n >= 1 and e >= 1")
    counts = [0]
    for k in range(1, e + 1):
        total = k * math.factorial(k) ** (n - 1)
        total -= sum(math.factorial(k - i) ** (n - 1) * counts[i] for i in range(1, k))
        counts.append(total)
    return counts[e]


def conjugacy_classes(subs: Sequence[Subgroup]) -> list[list[Subgroup]]:
    """Partition into conjugacy classes; each class and the list sorted by canonical form."""
    classes: dict[bytes, list[Subgroup]] = {}
    for s in subs:
        classes.setdefault(gr.conjugacy_key(s.graph), []).append(s)
    out = [sorted(c, key=lambda s: s.key) for c in classes.values()]
    out.sort(key=lambda c: c[0].key)
    return out


def _normal_by_rebase(s: Subgroup) -> bool:
    key = s.key
    return all(gr.canonical_form(gr.rebase(s.graph, v)) == key
               for v in range(s.graph.vertex_count))


def _normal_by_conjugation(s: Subgroup) -> bool:
    key = s.key
    for x in s.alphabet.generators():
        for y in (x, ~x):
            conj = [conjugate(b, y) for b in s.basis]
            if gr.canonical_form(_graph_of(conj, s.ambient_rank)) != key:
                return False
    return True


def is_normal(s: Subgroup, method: str | None = None) -> bool:
    """Normality by basepoint rotation (covers) or by conjugating the basis.

    ``method`` is ``"rebase"``, ``"conjugation"`` or None (rebase for
    finite index, conjugation otherwise).  The rebase test is only valid for
    covers.
    """
    if method is None:
        method = "rebase" if s.is_finite_index else "conjugation"
    if method == "rebase":
        if not s.is_finite_index:
            raise FreeGroupError("the rebase test needs a finite-index subgroup")
        return _normal_by_rebase(s)
    if method == "conjugation":
        return _normal_by_conjugation(s)
    raise FreeGroupError(f"unknown normality method {method!r}")


def conjugate_subgroup(s: Subgroup, w: Word) -> Subgroup:
    """``w s w^-1``."""
    if w.alphabet != s.alphabet:
        raise AlphabetMismatch("conjugating word uses another alphabet")
    return subgroup_from_generators([conjugate(b, w) for b in s.basis], s.alphabet)


def _check_nonneg(*xs: int):
    if any(x < 0 for x in xs):
        raise FreeGroupError("ranks must be non-negative")


def subgroup_exists(m: int, n: int) -> bool:
    """Whether F_m has a subgroup isomorphic to F_n."""
    _check_nonneg(m, n)
    return n == 0 or (n == 1 and m >= 1) or (n >= 2 and m >= 2)


def normal_subgroup_exists(m: int, n: int) -> bool:
    """Whether F_n has a normal subgroup isomorphic to F_m."""
    _check_nonneg(m, n)
    if m == n:
        return True
    if m == 0 or n == 0:
        return m == 0
    if n == 1:
        return m <= 1
    if m == 1:
        # a nontrivial normal cyclic subgroup forces F_n abelian
        return False
    return (m - 1) % (n - 1) == 0


def nielsen_schreier_rank(n: int, e: int) -> int:
    if n < 1 or e < 1:
        raise FreeGroupError("need n >= 1 and e >= 1")
    return 1 + e * (n - 1)


def cyclic_cover(n: int, k: int, alphabet: Alphabet | None = None) -> Subgroup:
    """Normal index-``k`` subgroup: the last generator cycles ``k`` sheets,
    every other generator is a loop at each sheet."""
    if n < 1 or k < 1:
        raise FreeGroupError("need n >= 1 and k >= 1")
    cycle = tuple((i + 1) % k for i in range(k))
    ident = tuple(range(k))
    g = graph_from_perms(PermTuple((ident,) * (n - 1) + (cycle,)))
    return Subgroup.from_graph(g, alphabet)


def embed_in_F2(m: int) -> Subgroup:
    """A rank-``m`` subgroup of F_2 (the index ``m - 1`` cyclic cover)."""
    if m < 2:
        raise FreeGroupError("F_m embeds in F_2 via a cover only for m >= 2")
    return cyclic_cover(2, m - 1)


def infinite_index_example(r: int) -> Subgroup:
    """``<b^i a b^-i : 0 <= i < r>`` in F_2: rank r, infinite index, not normal."""
    if r < 1:
        raise FreeGroupError("need r >= 1")
    alphabet = Alphabet.default(2)
    a, b = alphabet.generators()
    return subgroup_from_generators([conjugate(a, b ** i) for i in range(r)], alphabet)
