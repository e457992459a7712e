"""Labeled graphs over the n-petal rose: folding, core graphs and covers.

A :class:`LabeledGraph` is a basepointed multigraph whose edges carry a
generator label.  Once folded, every label is a partial injection on
vertices, the graph is a Stallings graph, and it represents the subgroup of
loops at the basepoint.  All traversal-dependent choices (canonical
numbering, spanning tree, basis order) come from one ordering: generators
ascending, forward edges of every discovered vertex before any backward
edge.
"""

from __future__ import annotations

import json
import math
import random
import struct
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._backend import kernels
from .errors import AlphabetMismatch, FreeGroupError, InvariantError, ParseError
from .words import Alphabet, Word

__all__ = [
    "INFINITE",
    "LabeledGraph",
    "SpanningTree",
    "bouquet",
    "fold",
    "core_trim",
    "is_complete",
    "index",
    "euler_characteristic",
    "rank",
    "spanning_tree",
    "free_basis",
    "membership",
    "rebase",
    "canonical",
    "canonical_form",
    "conjugacy_key",
    "isomorphic_as_covers",
    "to_dot",
    "to_json",
    "from_json",
]

INFINITE = math.inf


class LabeledGraph:
    """Immutable basepointed graph with generator-labeled directed edges.

    ``edges`` is a sorted tuple of ``(gen, src, dst)`` triples and may
    contain repeats before folding.
    """

    __slots__ = ("rank", "vertex_count", "edges", "basepoint", "_maps", "_canon")

    def __init__(self, rank: int, vertex_count: int, edges: Iterable, basepoint: int = 0):
        edges = tuple(sorted((int(g), int(s), int(d)) for g, s, d in edges))
        if rank < 0:
            raise InvariantError("rank must be non-negative")
        if vertex_count < 1:
            raise InvariantError("a graph needs at least one vertex")
        if not 0 <= basepoint < vertex_count:
            raise InvariantError(f"basepoint {basepoint} out of range")
        for g, s, d in edges:
            if not 0 <= g < rank:
                raise InvariantError(f"edge label {g} outside rank {rank}")
            if not (0 <= s < vertex_count and 0 <= d < vertex_count):
                raise InvariantError(f"edge {(g, s, d)} has an endpoint out of range")
        self.rank = rank
        self.vertex_count = vertex_count
        self.edges = edges
        self.basepoint = basepoint
        self._maps = None
        self._canon = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (self.rank, self.vertex_count, self.basepoint, self.edges) == (
            other.rank, other.vertex_count, other.basepoint, other.edges)

    def __hash__(self):
        return hash((self.rank, self.vertex_count, self.basepoint, self.edges))

    def __repr__(self):
        return (f"LabeledGraph(rank={self.rank}, vertices={self.vertex_count}, "
                f"edges={len(self.edges)}, basepoint={self.basepoint})")

    def is_folded(self) -> bool:
        out = set()
        inc = set()
        for g, s, d in self.edges:
            if (g, s) in out or (g, d) in inc:
                return False
            out.add((g, s))
            inc.add((g, d))
        return True

    def maps(self) -> tuple[list[list[int]], list[list[int]]]:
        """Per-generator forward and backward vertex maps (``-1`` = undefined)."""
        if self._maps is None:
            if not self.is_folded():
                raise InvariantError("graph is not folded")
            fwd = [[-1] * self.vertex_count for _ in range(self.rank)]
            bwd = [[-1] * self.vertex_count for _ in range(self.rank)]
            for g, s, d in self.edges:
                fwd[g][s] = d
                bwd[g][d] = s
            self._maps = (fwd, bwd)
        return self._maps

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for _, s, d in self.edges:
            deg[s] += 1
            deg[d] += 1
        return deg

    def is_connected(self) -> bool:
        adj = [[] for _ in range(self.vertex_count)]
        for _, s, d in self.edges:
            adj[s].append(d)
            adj[d].append(s)
        seen = {self.basepoint}
        stack = [self.basepoint]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def is_core(self) -> bool:
        deg = self.degrees()
        return all(d >= 2 for v, d in enumerate(deg) if v != self.basepoint)


@dataclass(frozen=True)
class SpanningTree:
    """Parent edges of a traversal tree rooted at the basepoint.

    ``parents[v]`` is ``(gen, direction, parent)``; direction ``+1`` means
    the tree edge is ``parent -gen-> v``, ``-1`` means ``v -gen-> parent``.
    """

    order: tuple[int, ...]
    parents: dict

    def edges(self) -> set[tuple[int, int, int]]:
        out = set()
        for v, (g, direction, p) in self.parents.items():
            out.add((g, p, v) if direction > 0 else (g, v, p))
        return out

    def path_codes(self, v: int) -> list[int]:
        """Letter codes spelling the tree path from the root to ``v``."""
        codes = []
        while v in self.parents:
            g, direction, p = self.parents[v]
            codes.append((g + 1) * direction)
            v = p
        codes.reverse()
        return codes


def bouquet(words: Sequence[Word], rank: int | None = None) -> LabeledGraph:
    """Wedge of loops at the basepoint, one loop spelling each word."""
    if words:
        alphabet = words[0].alphabet
        if any(w.alphabet != alphabet for w in words):
            raise AlphabetMismatch("generators use different alphabets")
        n = alphabet.rank
    elif rank is None:
        raise FreeGroupError("rank is required for an empty generator list")
    else:
        n = rank
    edges = []
    count = 1
    for w in words:
        codes = w.codes
        if not codes:
            continue
        prev = 0
        for i, c in enumerate(codes):
            if i == len(codes) - 1:
                nxt = 0
            else:
                nxt = count
                count += 1
            if c > 0:
                edges.append((c - 1, prev, nxt))
            else:
                edges.append((-c - 1, nxt, prev))
            prev = nxt
    return LabeledGraph(n, count, edges)


def _renumber(g: LabeledGraph) -> LabeledGraph:
    """Canonical renumbering of a folded graph from its basepoint."""
    fwd, bwd = g.maps()
    order, _, _, _ = kernels.traversal(fwd, bwd, g.vertex_count, g.basepoint)
    code = kernels.encode(fwd, order, g.vertex_count)
    return _from_code(code)


def _from_code(code: tuple) -> LabeledGraph:
    it = iter(code[2:])
    return LabeledGraph(code[0], code[1], zip(it, it, it))


def fold(g: LabeledGraph, rng: random.Random | None = None) -> LabeledGraph:
    """Stallings folding by union-find; result is canonically renumbered.

    With ``rng`` the edge insertion order and the merge queue order are
    randomized, which must not change the result.
    """
    n = g.vertex_count
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    out = [dict() for _ in range(n)]
    inc = [dict() for _ in range(n)]
    pending = []

    edges = list(g.edges)
    if rng is not None:
        rng.shuffle(edges)
    for lab, s, d in edges:
        s, d = find(s), find(d)
        if lab in out[s]:
            pending.append((out[s][lab], d))
        else:
            out[s][lab] = d
        if lab in inc[d]:
            pending.append((inc[d][lab], s))
        else:
            inc[d][lab] = s
        while pending:
            a, b = pending.pop(rng.randrange(len(pending)) if rng else -1)
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            parent[b] = a
            for lab2, t in out[b].items():
                if lab2 in out[a]:
                    pending.append((out[a][lab2], t))
                else:
                    out[a][lab2] = t
            for lab2, t in inc[b].items():
                if lab2 in inc[a]:
                    pending.append((inc[a][lab2], t))
                else:
                    inc[a][lab2] = t
            out[b] = inc[b] = None

    roots = sorted({find(v) for v in range(n)})
    ids = {r: i for i, r in enumerate(roots)}
    folded = [(lab, ids[r], ids[find(t)]) for r in roots for lab, t in out[r].items()]
    merged = LabeledGraph(g.rank, len(roots), folded, ids[find(g.basepoint)])
    return _renumber(merged)


def _trim(g: LabeledGraph, keep_basepoint: bool = True) -> tuple[list[tuple], set[int]]:
    deg = g.degrees()
    alive = set(range(g.vertex_count))
    edges = list(g.edges)
    adj = [[] for _ in range(g.vertex_count)]
    for i, (_, s, d) in enumerate(edges):
        adj[s].append(i)
        adj[d].append(i)
    dead_edges = set()
    stack = [v for v in alive if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive or deg[v] > 1 or (keep_basepoint and v == g.basepoint):
            continue
        if len(alive) == 1:
            break
        alive.discard(v)
        for i in adj[v]:
            if i in dead_edges:
                continue
            dead_edges.add(i)
            _, s, d = edges[i]
            w = d if s == v else s
            deg[w] -= 1
            deg[v] -= 1
            if deg[w] <= 1:
                stack.append(w)
    kept = [e for i, e in enumerate(edges) if i not in dead_edges]
    return kept, alive


def _induced(g: LabeledGraph, edges, alive, basepoint) -> LabeledGraph:
    ids = {v: i for i, v in enumerate(sorted(alive))}
    return LabeledGraph(g.rank, len(ids), [(lab, ids[s], ids[d]) for lab, s, d in edges],
                        ids[basepoint])


def core_trim(g: LabeledGraph) -> LabeledGraph:
    """Delete hanging trees not containing the basepoint; canonically renumbered."""
    edges, alive = _trim(g)
    return _renumber(_induced(g, edges, alive, g.basepoint))


def _cyclic_core(g: LabeledGraph) -> LabeledGraph | None:
    """Core with the basepoint's hair removed too; None for a tree."""
    edges, alive = _trim(g, keep_basepoint=False)
    if not edges:
        return None
    return _induced(g, edges, alive, min(alive))


def is_complete(g: LabeledGraph) -> bool:
    fwd, _ = g.maps()
    return all(-1 not in row for row in fwd)


def index(g: LabeledGraph):
    """Number of sheets: vertex count for a cover, ``INFINITE`` otherwise."""
    return g.vertex_count if is_complete(g) else INFINITE


def euler_characteristic(g: LabeledGraph) -> int:
    return g.vertex_count - g.edge_count


def rank(g: LabeledGraph) -> int:
    """Rank of the free fundamental group: E - V + 1."""
    return g.edge_count - g.vertex_count + 1


def spanning_tree(g: LabeledGraph) -> SpanningTree:
    fwd, bwd = g.maps()
    order, parent, pgen, pdir = kernels.traversal(fwd, bwd, g.vertex_count, g.basepoint)
    if len(order) != g.vertex_count:
        raise InvariantError("graph is not connected")
    parents = {v: (pgen[v], pdir[v], parent[v]) for v in order if v != g.basepoint}
    return SpanningTree(tuple(order), parents)


def free_basis(g: LabeledGraph, alphabet: Alphabet | None = None) -> list[Word]:
    """Spanning-tree basis: one word per non-tree edge, in (gen, source) order."""
    alphabet = alphabet or Alphabet.default(g.rank)
    if alphabet.rank != g.rank:
        raise AlphabetMismatch(f"alphabet rank {alphabet.rank} != graph rank {g.rank}")
    tree = spanning_tree(g)
    tree_edges = tree.edges()
    basis = []
    for lab, s, d in g.edges:
        if (lab, s, d) in tree_edges:
            continue
        back = [-c for c in reversed(tree.path_codes(d))]
        basis.append(Word(alphabet, tree.path_codes(s) + [lab + 1] + back))
    return basis


def membership(g: LabeledGraph, w: Word) -> bool:
    """Whether ``w`` reads a closed path at the basepoint."""
    if w.alphabet.rank != g.rank:
        raise AlphabetMismatch(f"word rank {w.alphabet.rank} != graph rank {g.rank}")
    fwd, bwd = g.maps()
    return kernels.trace(fwd, bwd, w.codes, g.basepoint) == g.basepoint


def rebase(g: LabeledGraph, v: int) -> LabeledGraph:
    """Move the basepoint to ``v``, re-trim, renumber; a conjugate subgroup."""
    if not 0 <= v < g.vertex_count:
        raise FreeGroupError(f"vertex {v} out of range")
    return core_trim(LabeledGraph(g.rank, g.vertex_count, g.edges, v))


def canonical(g: LabeledGraph) -> LabeledGraph:
    """Basepoint-preserving canonical representative of a folded connected graph."""
    return _renumber(g)


def _canonical_code(g: LabeledGraph, base: int | None = None) -> tuple:
    fwd, bwd = g.maps()
    order, _, _, _ = kernels.traversal(
        fwd, bwd, g.vertex_count, g.basepoint if base is None else base)
    if len(order) != g.vertex_count:
        raise InvariantError("graph is not connected")
    return kernels.encode(fwd, order, g.vertex_count)


def pack_code(code: Sequence[int]) -> bytes:
    # big-endian unsigned so bytewise order equals numeric lexicographic order
    return struct.pack(f">{len(code)}I", *code)


def canonical_form(g: LabeledGraph) -> bytes:
    """Byte encoding equal for two graphs iff they are basepoint-isomorphic."""
    if g._canon is None:
        g._canon = pack_code(_canonical_code(g))
    return g._canon


def conjugacy_key(g: LabeledGraph) -> bytes:
    """Invariant of the basepoint-free isomorphism class of a core graph."""
    core = _cyclic_core(g)
    if core is None:
        return pack_code((g.rank, 1))
    return min(pack_code(_canonical_code(core, v)) for v in range(core.vertex_count))


def isomorphic_as_covers(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    """Isomorphism ignoring basepoints, i.e. conjugacy of the subgroups.

    Basepoint hairs are trimmed first so that graphs of conjugate
    infinite-index subgroups compare equal; for covers nothing is trimmed.
    """
    if g1.rank != g2.rank:
        raise AlphabetMismatch(f"rank {g1.rank} vs {g2.rank}")
    c1, c2 = _cyclic_core(g1), _cyclic_core(g2)
    if c1 is None or c2 is None:
        return c1 is None and c2 is None
    if (c1.vertex_count, c1.edge_count) != (c2.vertex_count, c2.edge_count):
        return False
    target = _canonical_code(c2, 0)
    return any(_canonical_code(c1, v) == target for v in range(c1.vertex_count))


def to_json(g: LabeledGraph) -> dict:
    return {
        "rank": g.rank,
        "vertices": g.vertex_count,
        "basepoint": g.basepoint,
        "edges": [list(e) for e in g.edges],
    }


def from_json(data) -> LabeledGraph:
    """Load and validate: folded, connected, in-range."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed graph JSON: {exc}") from None
    try:
        g = LabeledGraph(int(data["rank"]), int(data["vertices"]),
                         [tuple(e) for e in data["edges"]], int(data.get("basepoint", 0)))
    except InvariantError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph JSON: {exc}") from None
    if not g.is_folded():
        raise InvariantError("graph is not folded: a label repeats at some vertex")
    if not g.is_connected():
        raise InvariantError("graph is not connected")
    return g


def to_dot(g: LabeledGraph, alphabet: Alphabet | None = None) -> str:
    alphabet = alphabet or Alphabet.default(g.rank)
    lines = ["digraph G {", "  node [shape=circle];"]
    for v in range(g.vertex_count):
        shape = "doublecircle" if v == g.basepoint else "circle"
        lines.append(f"  {v} [shape={shape}];")
    for lab, s, d in g.edges:
        lines.append(f'  {s} -> {d} [label="{alphabet.names[lab]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
