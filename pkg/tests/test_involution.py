import random

import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import crystal_vertices
from msdual.core import Multisegment, Z, degree, flat, negate_degree, parse_multisegment, zmod
from msdual.crystal import random_descent
from msdual.involution import (
    NonAperiodicError,
    conjugate,
    is_regular,
    mullineux,
    mw_dual,
    partition_to_multisegment,
    partitions,
    regular_partitions,
    sharp,
    tau,
)


def ms(text, ring=Z):
    return parse_multisegment(text, ring)


class TestSharp:
    def test_empty(self):
        assert sharp(Multisegment.empty(Z)) == Multisegment.empty(Z)

    def test_integer_example(self):
        assert sharp(ms("(2;1]")) == ms("(1;0] + (1;-1]")

    def test_cyclic_example(self):
        assert sharp(ms("(2;2]", zmod(3))) == ms("(1;2] + (1;1]", zmod(3))

    def test_rejects_periodic(self):
        with pytest.raises(NonAperiodicError):
            sharp(ms("[0;1)+[1;1)", zmod(2)))

    @given(crystal_vertices())
    def test_involution(self, m):
        assert sharp(sharp(m)) == m

    @given(crystal_vertices())
    def test_negates_degree(self, m):
        assert degree(sharp(m)) == negate_degree(degree(m), m.ring)

    @given(crystal_vertices(), st.integers(0, 2**16))
    def test_path_independent(self, m, seed):
        path = random_descent(m, random.Random(seed))
        assert sharp(m, path) == sharp(m)

    @given(crystal_vertices(zmod(2)))
    def test_identity_mod2(self, m):
        # residues are self-negating mod 2
        assert sharp(m) == m


class TestTau:
    def test_empty(self):
        assert tau(Multisegment.empty(Z)) == Multisegment.empty(Z)

    def test_single_segment(self):
        assert tau(ms("[0;2)")) == ms("[0;1) + [1;1)")

    def test_cyclic_composite(self):
        # tau preserves degree, so (2;1] over Z/3 maps into degree {0: 1, 1: 1}
        m = ms("(2;1]", zmod(3))
        assert tau(m) == ms("[0;1) + [1;1)", zmod(3))
        assert degree(tau(m)) == degree(m)

    @given(crystal_vertices())
    def test_involution(self, m):
        assert tau(tau(m)) == m

    @given(crystal_vertices())
    def test_commutes_with_flat(self, m):
        assert sharp(flat(m)) == flat(sharp(m))

    @given(crystal_vertices())
    def test_preserves_degree(self, m):
        assert degree(tau(m)) == degree(m)


class TestMoeglinWaldspurger:
    @pytest.mark.parametrize(
        "text,expected",
        [("0", "0"), ("[0;2)", "[0;1) + [1;1)"), ("[0;1)+[1;1)", "[0;2)")],
    )
    def test_examples(self, text, expected):
        assert mw_dual(ms(text)) == ms(expected)

    def test_rejects_cyclic(self):
        with pytest.raises(ValueError):
            mw_dual(ms("[0;1)", zmod(2)))

    @given(crystal_vertices(Z, max_steps=7))
    def test_agrees_with_tau(self, m):
        assert mw_dual(m) == tau(m)


class TestPartitions:
    @pytest.mark.parametrize(
        "la,ring,expected",
        [((1,), Z, "[0;1)"), ((2, 1), Z, "[0;2) + [-1;1)"), ((2, 1), zmod(2), "[0;2) + [1;1)")],
    )
    def test_embedding(self, la, ring, expected):
        assert partition_to_multisegment(la, ring) == ms(expected, ring)

    def test_counts(self):
        assert [len(list(partitions(k))) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
        assert len(regular_partitions(6, 2)) == 4

    @pytest.mark.parametrize("total", range(0, 8))
    def test_generic_conjugation(self, total):
        for la in partitions(total):
            assert sharp(partition_to_multisegment(la, Z)) == partition_to_multisegment(conjugate(la), Z)


class TestMullineux:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_trivial(self, n):
        assert mullineux((1,), n) == (1,)

    def test_two_row_mod2(self):
        # (1,1) is not 2-regular, so (2) has nowhere else to go
        assert mullineux((2,), 2) == (2,)

    def test_hook_mod3(self):
        assert mullineux((2, 1), 3) == (3,)

    def test_rejects_singular(self):
        with pytest.raises(ValueError):
            mullineux((1, 1), 2)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("total", range(1, 8))
    def test_involutive_and_matches_sharp(self, n, total):
        ring = zmod(n)
        for la in regular_partitions(total, n):
            mu = mullineux(la, n)
            assert is_regular(mu, n) and sum(mu) == total
            assert mullineux(mu, n) == la
            assert sharp(partition_to_multisegment(la, ring)) == partition_to_multisegment(mu, ring)
