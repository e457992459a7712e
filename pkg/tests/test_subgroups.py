import itertools
import json
import math

import pytest

from freegroup import (
    INFINITE,
    Alphabet,
    CapExceeded,
    FreeGroupError,
    InvariantError,
    PermTuple,
    Subgroup,
    apply_hom,
    conjugacy_classes,
    conjugate_subgroup,
    count_index,
    cyclic_cover,
    embed_in_F2,
    enumerate_index,
    graph_from_perms,
    infinite_index_example,
    is_normal,
    isomorphic_as_covers,
    nielsen_schreier_rank,
    normal_subgroup_exists,
    random_word,
    subgroup_exists,
    subgroup_from_generators,
)
from freegroup.subgroups import perm_tuple_from_graph

from .conftest import F2, F3


def transitive_tuple_count(n, e):
    perms = list(itertools.permutations(range(e)))
    total = 0
    for t in itertools.product(perms, repeat=n):
        orbit, frontier = {0}, [0]
        while frontier:
            v = frontier.pop()
            for p in t:
                if p[v] not in orbit:
                    orbit.add(p[v])
                    frontier.append(p[v])
        total += len(orbit) == e
    return total


def basis_strings(s):
    return [str(w) for w in s.basis]


class TestSubgroupFromGenerators:
    def test_whole_group(self, w2):
        s = subgroup_from_generators([w2("a"), w2("b")])
        assert (s.index, s.rank) == (1, 2)

    def test_three_sheet(self, w2):
        s = subgroup_from_generators([w2(t) for t in ("a^3", "b", "a b a^-1", "a^2 b a^-2")])
        assert (s.index, s.rank) == (3, 4)

    def test_trivial(self):
        s = subgroup_from_generators([], F2)
        assert (s.index, s.rank, s.basis) == (INFINITE, 0, ())

    def test_rebuild_from_basis(self, w2):
        s = subgroup_from_generators([w2("a^2 b"), w2("b a b^-1 a"), w2("a b^3")])
        again = subgroup_from_generators(s.basis)
        assert again == s and again.basis == s.basis

    def test_json_round_trip(self, w2):
        s = subgroup_from_generators([w2("a^2"), w2("b a b^-1")])
        data = json.loads(json.dumps(s.to_json()))
        assert set(data) == {"ambientRank", "graph", "basis", "index", "rank", "normal"}
        assert data["index"] == "infinite"
        assert Subgroup.from_json(data) == s

    def test_json_inconsistent_rank(self, w2):
        data = subgroup_from_generators([w2("a")]).to_json()
        data["rank"] = 5
        with pytest.raises(InvariantError):
            Subgroup.from_json(data)


class TestPerms:
    def test_identity_rose(self):
        g = graph_from_perms(PermTuple(((0,), (0,))))
        assert (g.vertex_count, g.edges) == (1, ((0, 0, 0), (1, 0, 0)))

    def test_cyclic(self):
        g = graph_from_perms([(1, 2, 0), (0, 1, 2)])
        assert g.edges == ((0, 0, 1), (0, 1, 2), (0, 2, 0), (1, 0, 0), (1, 1, 1), (1, 2, 2))

    def test_not_transitive(self):
        with pytest.raises(InvariantError):
            graph_from_perms([(0, 1), (0, 1)])

    def test_not_permutation(self):
        with pytest.raises(InvariantError):
            PermTuple(((0, 0),))

    def test_recover(self):
        t = PermTuple(((1, 2, 0), (0, 2, 1)))
        assert perm_tuple_from_graph(graph_from_perms(t)) == t


class TestEnumeration:
    @pytest.mark.parametrize("n,e,expected", [(2, 1, 1), (2, 2, 3), (2, 3, 13)])
    def test_counts(self, n, e, expected):
        assert len(enumerate_index(n, e)) == expected == count_index(n, e)

    @pytest.mark.parametrize("n,e", [(1, 4), (2, 3), (2, 4), (3, 2), (3, 3)])
    def test_brute_force_oracle(self, n, e):
        # each subgroup is the stabilizer of 0 in exactly (e-1)! transitive labellings
        assert len(enumerate_index(n, e)) * math.factorial(e - 1) == transitive_tuple_count(n, e)

    def test_sorted_distinct_complete(self):
        subs = enumerate_index(2, 4)
        keys = [s.key for s in subs]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)
        assert all(s.index == 4 and s.rank == nielsen_schreier_rank(2, 4) for s in subs)

    def test_rank_one(self):
        subs = enumerate_index(1, 5)
        assert len(subs) == 1 and basis_strings(subs[0]) == ["a^5"]

    def test_hall_recursion_values(self):
        assert [count_index(2, e) for e in range(1, 7)] == [1, 3, 13, 71, 461, 3447]
        assert [count_index(3, e) for e in range(1, 5)] == [1, 7, 97, 2143]
        assert count_index(1, 9) == 1

    def test_cap(self, monkeypatch):
        with pytest.raises(CapExceeded):
            enumerate_index(2, 4, cap=100)
        monkeypatch.setenv("FREEGROUP_ENUM_CAP", "10")
        with pytest.raises(CapExceeded):
            enumerate_index(2, 3)

    def test_bad_arguments(self):
        with pytest.raises(FreeGroupError):
            enumerate_index(0, 2)
        with pytest.raises(FreeGroupError):
            count_index(2, 0)


class TestConjugacy:
    def test_index3_classes(self):
        subs = enumerate_index(2, 3)
        classes = conjugacy_classes(subs)
        assert len(classes) == 7
        assert sorted(len(c) for c in classes) == [1, 1, 1, 1, 3, 3, 3]
        for c in classes:
            for s in c:
                assert all(isomorphic_as_covers(s.graph, t.graph) for t in c)
        reps = [c[0] for c in classes]
        for s, t in itertools.combinations(reps, 2):
            assert not isomorphic_as_covers(s.graph, t.graph)

    def test_index2_classes(self):
        classes = conjugacy_classes(enumerate_index(2, 2))
        assert len(classes) == 3 and all(len(c) == 1 for c in classes)

    def test_singleton(self):
        s = cyclic_cover(2, 3)
        assert conjugacy_classes([s]) == [[s]]

    @pytest.mark.parametrize("n,e", [(2, 3), (2, 4), (3, 3)])
    def test_normal_iff_singleton_class(self, n, e):
        for c in conjugacy_classes(enumerate_index(n, e)):
            for s in c:
                assert is_normal(s) == (len(c) == 1)

    def test_class_sizes_divide_index(self):
        for c in conjugacy_classes(enumerate_index(2, 4)):
            assert 4 % len(c) == 0


class TestNormality:
    def test_cyclic_cover(self):
        assert is_normal(cyclic_cover(2, 3))

    def test_index_two(self):
        s = Subgroup.from_graph(graph_from_perms([(1, 0), (0, 1)]))
        assert is_normal(s, "rebase") and is_normal(s, "conjugation")

    def test_infinite_family_not_normal(self, w2):
        s = subgroup_from_generators([w2(t) for t in ("a", "b a b^-1", "b^2 a b^-2", "b^3 a b^-3")])
        assert not is_normal(s)

    def test_rebase_needs_finite_index(self, w2):
        with pytest.raises(FreeGroupError):
            is_normal(subgroup_from_generators([w2("a")]), "rebase")

    def test_infinite_index_normal_cases(self, w2):
        assert is_normal(subgroup_from_generators([], F2))
        assert not is_normal(subgroup_from_generators([w2("a b a^-1 b^-1")]))

    def test_methods_agree(self):
        for e in range(1, 5):
            for s in enumerate_index(2, e):
                assert is_normal(s, "rebase") == is_normal(s, "conjugation")


class TestConjugateSubgroup:
    def test_by_identity(self):
        s = enumerate_index(2, 3)[3]
        assert conjugate_subgroup(s, F2.identity()) == s

    def test_normal_fixed(self, w2):
        s = cyclic_cover(2, 3)
        assert conjugate_subgroup(s, w2("a")) == s

    def test_non_normal_moves_within_class(self, w2):
        s = next(s for s in enumerate_index(2, 3) if not is_normal(s))
        moved = [conjugate_subgroup(s, w2(x)) for x in ("a", "b")]
        assert any(m != s for m in moved)
        assert all(isomorphic_as_covers(m.graph, s.graph) for m in moved)

    def test_preserves_rank_and_index(self):
        for seed, s in enumerate(enumerate_index(2, 4)[:20]):
            w = random_word(7, F2, seed)
            c = conjugate_subgroup(s, w)
            assert (c.rank, c.index) == (s.rank, s.index)
            assert isomorphic_as_covers(c.graph, s.graph)
            assert all(w * b * ~w in c for b in s.basis)

    def test_infinite_index(self, w2):
        s = subgroup_from_generators([w2("a^2 b"), w2("b^3")])
        c = conjugate_subgroup(s, w2("a b^-1"))
        assert c.rank == s.rank and isomorphic_as_covers(c.graph, s.graph)


class TestExistence:
    @pytest.mark.parametrize("m,n,expected", [
        (2, 5, True), (1, 2, False), (0, 0, True), (1, 1, True), (3, 1, True), (0, 1, False),
        (5, 0, True),
    ])
    def test_subgroup_exists(self, m, n, expected):
        assert subgroup_exists(m, n) is expected

    @pytest.mark.parametrize("m,n", [(2, 2), (2, 5), (3, 7), (4, 3)])
    def test_subgroup_witness(self, m, n):
        # F_n <= F_2 <= F_m
        ambient = Alphabet.default(m)
        into = [ambient.generators()[0], ambient.generators()[1]]
        basis = [apply_hom(into, w) for w in embed_in_F2(n).basis]
        assert subgroup_from_generators(basis, ambient).rank == n

    @pytest.mark.parametrize("m,n,expected", [
        (4, 2, True), (3, 2, True), (4, 3, False), (7, 3, True), (2, 2, True),
        (0, 3, True), (1, 0, False), (1, 2, False), (5, 1, False), (1, 1, True), (0, 1, True),
        (2, 3, False),
    ])
    def test_normal_subgroup_exists(self, m, n, expected):
        assert normal_subgroup_exists(m, n) is expected

    @pytest.mark.parametrize("n,max_index", [(2, 5), (3, 4)])
    def test_normal_criterion_against_census(self, n, max_index):
        # f.g. normal nontrivial subgroups have finite index, and rank fixes the index
        found = set()
        for e in range(1, max_index + 1):
            if any(is_normal(s) for s in enumerate_index(n, e)):
                found.add(nielsen_schreier_rank(n, e))
        for m in range(2, nielsen_schreier_rank(n, max_index) + 1):
            assert normal_subgroup_exists(m, n) == (m in found)

    def test_negative(self):
        for f in (subgroup_exists, normal_subgroup_exists):
            with pytest.raises(FreeGroupError):
                f(-1, 2)


class TestConstructions:
    def test_cyclic_cover_basis(self):
        s = cyclic_cover(2, 3)
        assert basis_strings(s) == ["a", "b a b^-1", "b^2 a b^-2", "b^3"]
        assert (s.index, s.rank, is_normal(s)) == (3, 4, True)

    def test_cyclic_cover_trivial_sheet(self):
        s = cyclic_cover(3, 1)
        assert (s.index, s.rank) == (1, 3)

    def test_cyclic_cover_rank_one(self):
        s = cyclic_cover(1, 4)
        assert basis_strings(s) == ["a^4"] and (s.index, s.rank) == (4, 1)

    @pytest.mark.parametrize("m,index", [(2, 1), (3, 2), (4, 3), (6, 5)])
    def test_embed_in_F2(self, m, index):
        s = embed_in_F2(m)
        assert (s.index, s.rank, len(s.basis)) == (index, m, m)

    def test_embed_in_F2_small(self):
        with pytest.raises(FreeGroupError):
            embed_in_F2(1)

    def test_nielsen_schreier_rank(self):
        assert nielsen_schreier_rank(2, 3) == 4
        assert nielsen_schreier_rank(5, 1) == 5
        assert nielsen_schreier_rank(1, 7) == 1

    def test_infinite_index_example(self, w2):
        s = infinite_index_example(4)
        assert (s.rank, s.index, is_normal(s)) == (4, INFINITE, False)
        assert w2("b^4 a b^-4") not in s
        assert w2("b^3 a b^-3") in s
        one = infinite_index_example(1)
        assert basis_strings(one) == ["a"] and one.index == INFINITE


def test_membership_matches_permutation_action():
    for s in enumerate_index(3, 3):
        perms = perm_tuple_from_graph(s.graph).perms
        inverse = [[p.index(i) for i in range(len(p))] for p in perms]
        for seed in range(30):
            w = random_word(seed % 11, F3, seed)
            v = 0
            for c in w.codes:
                v = perms[c - 1][v] if c > 0 else inverse[-c - 1][v]
            assert (w in s) == (v == 0)
