import random
from collections import Counter

import pytest
from hypothesis import given

from conftest import crystal_vertices, multisegments
from msdual.core import Multisegment, Z, degree, multisegments_of_degree, parse_multisegment, zmod
from msdual.involution import NonAperiodicError, tau
from msdual.linalg import GF, QQ
from msdual.quiverrep import (
    NilpotentRep,
    NotNilpotentError,
    aut_count_direct,
    aut_count_orbit,
    classify,
    closure_leq,
    count_submodules,
    endo_dim,
    generic_commutant_dual,
    hom_dim,
    hom_dim_reps,
    orbit_dim,
    realize,
    submodule_census,
)


def ms(text, ring=Z):
    return parse_multisegment(text, ring)


def support(rep):
    return {i: d for i, d in rep.dims.items() if d}


class TestRealize:
    def test_empty(self):
        assert realize(Multisegment.empty(zmod(2))).total_dim() == 0

    def test_simple(self):
        rep = realize(ms("(1;1]", zmod(3)))
        assert support(rep) == {1: 1}
        assert rep.is_nilpotent()

    def test_length_two_mod2(self):
        rep = realize(ms("(2;1]", zmod(2)))
        assert support(rep) == {0: 1, 1: 1}
        assert rep.arrow(1) == [[1]]
        assert rep.arrow(0) == [[0]]

    def test_json_roundtrip(self):
        rep = realize(ms("(2;1] + (1;0]", zmod(3)), GF(3))
        back = NilpotentRep.from_json(rep.to_json())
        assert support(back) == support(rep) and classify(back) == classify(rep)


class TestClassify:
    def test_zero_map(self):
        ring = zmod(2)
        rep = NilpotentRep(ring, QQ, {0: 2, 1: 1}, {0: [[0, 0]], 1: [[0], [0]]})
        assert classify(rep) == ms("2(1;0] + (1;1]", ring)

    def test_roundtrip_example(self):
        m = ms("(2;1] + (1;0]", zmod(3))
        assert classify(realize(m)) == m

    def test_rejects_cycle(self):
        ring = zmod(2)
        rep = NilpotentRep(ring, QQ, {0: 1, 1: 1}, {0: [[1]], 1: [[1]]})
        with pytest.raises(NotNilpotentError):
            classify(rep)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_random_roundtrip(self, n):
        rng = random.Random(n)
        ring = zmod(n)
        for _ in range(50):
            segs = []
            while sum(l for _, l in segs) < rng.randint(1, 8):
                segs.append((rng.randrange(n), rng.randint(1, 4)))
            m = Multisegment.from_segments(ring, segs)
            assert classify(realize(m)) == m

    @given(multisegments(max_segments=4, max_length=3))
    def test_roundtrip_over_finite_field(self, m):
        assert classify(realize(m, GF(2))) == m


class TestDimensions:
    @pytest.mark.parametrize(
        "text,endo,orbit",
        [("(1;1]", 1, 0), ("2(1;1]", 4, 0), ("(2;1]", 1, 1), ("0", 0, 0)],
    )
    def test_examples(self, text, endo, orbit):
        m = ms(text, zmod(3))
        assert endo_dim(m) == endo
        assert orbit_dim(m) == orbit

    def test_hom_is_directed(self):
        ring = zmod(3)
        assert hom_dim(ms("(1;1]", ring), ms("(2;1]", ring)) == 0
        assert hom_dim(ms("(2;1]", ring), ms("(1;1]", ring)) == 1

    @given(multisegments(zmod(3), max_segments=3, max_length=3), multisegments(zmod(3), max_segments=3, max_length=3))
    def test_field_independent(self, a, b):
        assert hom_dim_reps(realize(a, GF(2)), realize(b, GF(2))) == hom_dim(a, b)


class TestClosure:
    def test_reflexive(self):
        m = ms("(2;1] + (1;0]", zmod(3))
        assert closure_leq(m, m)

    def test_mod2_pair(self):
        ring = zmod(2)
        low, high = ms("(1;0]+(1;1]", ring), ms("(2;1]", ring)
        assert closure_leq(low, high)
        assert not closure_leq(high, low)

    def test_zero_orbit_minimal(self):
        ring = zmod(3)
        zero = ms("2(1;1] + (1;0]", ring)
        for m in multisegments_of_degree(ring, degree(zero)):
            assert closure_leq(zero, m)

    @pytest.mark.parametrize("d", [{0: 2, 1: 2}, {0: 1, 1: 1, 2: 1}, {0: 2, 1: 1, 2: 1}])
    def test_orbit_dim_strictly_monotone(self, d):
        ring = zmod(3)
        ms_ = multisegments_of_degree(ring, d)
        for a in ms_:
            for b in ms_:
                if a != b and closure_leq(a, b):
                    assert orbit_dim(a) < orbit_dim(b)


class TestCounting:
    def test_whole_module(self):
        Q = ms("(2;1]", zmod(3))
        assert count_submodules(Q, Q, Multisegment.empty(zmod(3)), 2) == 1

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_unique_socle(self, q):
        ring = zmod(3)
        assert count_submodules(ms("(2;1]", ring), ms("(1;0]", ring), ms("(1;1]", ring), q) == 1

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_lines(self, q):
        ring = zmod(3)
        s = ms("(1;1]", ring)
        assert count_submodules(ms("2(1;1]", ring), s, s, q) == q + 1

    @pytest.mark.parametrize("q", [2, 3])
    def test_census_partitions_all_submodules(self, q):
        ring = zmod(2)
        Q = ms("(2;1] + (1;1] + (1;0]", ring)
        census = submodule_census(Q, {0: 1, 1: 1}, q)
        total = Counter()
        for (P, O), k in census.items():
            assert count_submodules(Q, P, O, q) == k
            total[P] += k
        assert sum(total.values()) == sum(census.values())

    @pytest.mark.parametrize("text", ["(1;1]", "2(1;1]", "(2;1]", "(2;1] + (1;1]"])
    @pytest.mark.parametrize("q", [2, 3])
    def test_aut_counts_agree(self, text, q):
        m = ms(text, zmod(3))
        assert aut_count_orbit(m, q) == aut_count_direct(m, q)

    def test_aut_gl2(self):
        assert aut_count_direct(ms("2(1;1]", zmod(3)), 2) == 6


class TestGenericDual:
    def test_empty(self):
        assert generic_commutant_dual(Multisegment.empty(Z)) == Multisegment.empty(Z)

    def test_segment(self):
        assert generic_commutant_dual(ms("[0;2)")) == ms("[0;1) + [1;1)")

    def test_cyclic(self):
        m = ms("(2;1]", zmod(3))
        assert generic_commutant_dual(m) == tau(m) == ms("[0;1) + [1;1)", zmod(3))

    def test_rejects_periodic(self):
        with pytest.raises(NonAperiodicError):
            generic_commutant_dual(ms("[0;1)+[1;1)", zmod(2)))

    @given(crystal_vertices(max_steps=5))
    def test_matches_tau(self, m):
        assert generic_commutant_dual(m) == tau(m)
