import random

import pytest
from hypothesis import given, settings

from conftest import FIXTURES, closures, partitions
from oracles import as_sets, partition_blocks
from somp.core import (
    event,
    is_boolean,
    is_delta_closed,
    is_lattice,
    is_point_distinguishing,
    make_even,
    make_powerset,
    make_product,
    order_tables,
)
from somp.errors import NotAMorphism
from somp.fixtures import bigsets, random_closure
from somp.morphism import (
    MorphismTable,
    identity,
    is_somp_isomorphism,
    is_somp_morphism,
    make_even_embedding,
)
from somp.quotient import (
    Partition,
    block_property_holds,
    copy_on_transversal,
    indistinguishability_partition,
    induced_morphism,
    natural_pd_representation,
    partition_boolean,
    square_commutes,
)

E = lambda *ms: event(ms)  # noqa: E731


class TestPartition:
    def test_powerset(self):
        assert indistinguishability_partition(make_powerset(3)).blocks == (E(0), E(1), E(2))

    def test_bigsets(self):
        p = indistinguishability_partition(bigsets())
        assert p.blocks == (E(0, 1), E(2, 3), E(4, 5), E(6, 7))

    def test_even4(self):
        assert indistinguishability_partition(make_even(4)).blocks == (E(0), E(1), E(2), E(3))

    @given(closures())
    def test_matches_definition(self, s):
        expected = partition_blocks(s.n, as_sets(s))
        got = indistinguishability_partition(s)
        assert [frozenset(i for i in range(s.n) if b >> i & 1) for b in got.blocks] == expected

    def test_block_property_on_random_closures(self):
        rng = random.Random(7)
        for _ in range(200):
            s = random_closure(rng)
            p = indistinguishability_partition(s)
            assert block_property_holds(s, p)
            # blocks disjoint and covering is enforced by Partition itself
            assert sum(b.bit_count() for b in p.blocks) == s.n


class TestNaturalRepresentation:
    def test_bigsets(self):
        q = natural_pd_representation(bigsets())
        assert q.quotient.n == 4
        assert set(q.quotient.events) == {0, E(0, 1), E(2, 3), E(0, 2), E(1, 3), E(0, 1, 2, 3)}
        assert is_somp_isomorphism(q.as_morphism())

    def test_point_distinguishing_input(self, fixture_somp):
        if not is_point_distinguishing(fixture_somp)[0]:
            return
        q = natural_pd_representation(fixture_somp)
        assert q.quotient == fixture_somp
        assert q.map_f == tuple(range(len(fixture_somp.events)))
        assert all(b.bit_count() == 1 for b in q.partition.blocks)

    def test_even6(self):
        q = natural_pd_representation(make_even(6))
        assert q.quotient.n == 6 and len(q.quotient.events) == 32

    def test_image_is_blocks_inside(self, fixture_somp):
        q = natural_pd_representation(fixture_somp)
        for i, a in enumerate(fixture_somp.events):
            img = q.quotient.events[q.map_f[i]]
            assert img == sum(1 << j for j, b in enumerate(q.partition.blocks) if b & a == b)

    @given(closures())
    def test_quotient_properties(self, s):
        q = natural_pd_representation(s)
        assert is_point_distinguishing(q.quotient)[0]
        assert sorted(q.map_f) == list(range(len(s.events)))
        assert is_somp_isomorphism(q.as_morphism())
        # idempotent: the quotient of the quotient has singleton blocks
        qq = natural_pd_representation(q.quotient)
        assert qq.quotient == q.quotient

    @settings(max_examples=50)
    @given(closures(max_n=6, cap=64))
    def test_structure_preservation(self, s):
        q = natural_pd_representation(s)
        src, dst, f = s.events, q.quotient.events, q.map_f
        if is_lattice(s):
            assert is_lattice(q.quotient)
            ts, tq = order_tables(s), order_tables(q.quotient)
            for i in range(len(src)):
                for j in range(len(src)):
                    assert f[ts.join(i, j)] == tq.join(f[i], f[j])
                    assert f[ts.meet(i, j)] == tq.meet(f[i], f[j])
        if is_delta_closed(s)[0]:
            assert is_delta_closed(q.quotient)[0]
            for i, a in enumerate(src):
                for j, b in enumerate(src):
                    assert dst[f[s.index[a ^ b]]] == dst[f[i]] ^ dst[f[j]]
        if is_boolean(s)[0]:
            assert is_boolean(q.quotient)[0]
            for i, a in enumerate(src):
                for j, b in enumerate(src):
                    assert dst[f[s.index[a & b]]] == dst[f[i]] & dst[f[j]]


class TestTransversal:
    def test_bigsets(self):
        t = copy_on_transversal(natural_pd_representation(bigsets()))
        assert t.points == (0, 2, 4, 6)
        assert set(t.original_events()) == {0, E(0, 2), E(4, 6), E(0, 4), E(2, 6), E(0, 2, 4, 6)}
        assert is_point_distinguishing(t.somp)[0]

    def test_point_distinguishing_input(self):
        s = make_even(4)
        t = copy_on_transversal(natural_pd_representation(s))
        assert t.points == (0, 1, 2, 3) and t.somp == s

    @given(closures())
    def test_always_point_distinguishing(self, s):
        t = copy_on_transversal(natural_pd_representation(s))
        assert is_point_distinguishing(t.somp)[0]
        assert len(t.somp.events) == len(s.events)


class TestPartitionBoolean:
    def test_two_blocks(self):
        s = partition_boolean(Partition.from_blocks(4, [E(0, 1), E(2, 3)]))
        assert s.events == (0, E(0, 1), E(2, 3), E(0, 1, 2, 3))

    def test_singletons(self):
        p = Partition.from_blocks(3, [E(0), E(1), E(2)])
        assert partition_boolean(p) == make_powerset(3)

    @settings(max_examples=100)
    @given(partitions())
    def test_round_trip(self, p):
        s = partition_boolean(p)
        assert is_boolean(s)[0]
        assert indistinguishability_partition(s) == p


class TestInducedMorphism:
    def test_identity(self):
        s = make_even(4)
        q = natural_pd_representation(s)
        g = induced_morphism(identity(s), q, q)
        assert g.table == tuple(range(8))

    def test_embedding(self):
        small, big = make_even(4), make_even(6)
        h = make_even_embedding(small, big)
        ql, qk = natural_pd_representation(small), natural_pd_representation(big)
        g = induced_morphism(h, ql, qk)
        # singleton-block quotients equal their sources
        assert g.table == h.table
        assert square_commutes(h, g, ql, qk)
        assert is_somp_morphism(g)[0]

    def test_rejects_non_morphism(self):
        s = make_powerset(2)
        q = natural_pd_representation(s)
        with pytest.raises(NotAMorphism):
            induced_morphism(MorphismTable(s, s, (0, 3, 2, 1)), q, q)

    def test_quotient_maps_as_morphisms(self):
        # g: bigsets -> its transversal copy seen as a family on 4 points
        s = bigsets()
        ql = natural_pd_representation(s)
        target = ql.quotient
        qk = natural_pd_representation(target)
        g = ql.as_morphism()
        gt = induced_morphism(g, ql, qk)
        assert square_commutes(g, gt, ql, qk)
        assert is_somp_isomorphism(gt)

    @settings(max_examples=40)
    @given(closures(max_n=5, cap=64), closures(max_n=3, cap=16))
    def test_commuting_square_for_product_projections(self, l, k):
        # A -> A, plus the whole right factor when A holds point 0, embeds l into l x k
        p = make_product(l, k)
        top_k = k.full << l.n
        g = MorphismTable(l, p, tuple(p.index[a | (top_k if a & 1 else 0)] for a in l.events))
        assert is_somp_morphism(g)[0]
        ql, qp = natural_pd_representation(l), natural_pd_representation(p)
        gt = induced_morphism(g, ql, qp)
        assert square_commutes(g, gt, ql, qp)
        assert is_somp_morphism(gt)[0]
        # uniqueness: the quotient map is onto, so the square pins every entry
        for t in range(len(gt.table)):
            sources = [i for i in range(len(l.events)) if ql.map_f[i] == t]
            assert {qp.map_f[g.table[i]] for i in sources} == {gt.table[t]}


def test_fixture_quotients_are_isomorphisms():
    for s in FIXTURES.values():
        assert is_somp_isomorphism(natural_pd_representation(s).as_morphism())
