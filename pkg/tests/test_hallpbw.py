import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import multisegments
from msdual.core import Multisegment, degree, multisegments_of_degree, multisegments_of_size, parse_multisegment, zmod
from msdual.hallpbw import (
    DegreeMismatch,
    PBWVector,
    aut_order,
    alpha,
    alpha_dims,
    alpha_endo,
    bilinear_m,
    bilinear_r,
    check_f_against_counts,
    e_prime_action,
    f_action,
    f_power,
    hall_polynomial,
    hall_product,
    norm_square,
    scalar_product,
)
from msdual.laurent import ONE, V, gauss_int
from msdual.quiverrep import aut_count_direct

Z3 = zmod(3)
I = 1


def ms(text, ring=Z3):
    return parse_multisegment(text, ring)


def basis(text, ring=Z3):
    return PBWVector.basis(ms(text, ring))


class TestVectors:
    def test_homogeneity_enforced(self):
        with pytest.raises(DegreeMismatch):
            basis("(1;1]") + basis("(1;0]")

    def test_zero_terms_dropped(self):
        u = basis("(1;1]")
        assert not (u - u)

    def test_json_roundtrip(self):
        u = f_action(I, basis("(1;0]"))
        assert PBWVector.from_json(u.to_json()) == u


class TestForms:
    def test_zero_vector(self):
        assert bilinear_m({}, {0: 1, 1: 1}, zmod(2)) == 0

    def test_mod2_unit(self):
        a = {0: 1, 1: 1}
        assert bilinear_m(a, a, zmod(2)) == 4
        assert bilinear_r(a, a, zmod(2)) == 0


class TestActions:
    def test_f_on_empty(self):
        assert f_action(I, PBWVector.basis(Multisegment.empty(Z3))) == basis(f"(1;{I}]")

    def test_f_doubles(self):
        assert f_action(I, basis(f"(1;{I}]")) == basis(f"2(1;{I}]").scale(gauss_int(2))

    def test_f_extends(self):
        got = f_action(I, basis(f"(1;{I - 1}]"))
        assert got == basis(f"(1;{I - 1}] + (1;{I}]").scale(V) + basis(f"(2;{I}]")

    def test_e_prime_examples(self):
        assert not e_prime_action(I, PBWVector.basis(Multisegment.empty(Z3)))
        assert e_prime_action(I, basis(f"(1;{I}]")) == PBWVector.basis(Multisegment.empty(Z3))
        assert e_prime_action(I, basis(f"(2;{I}]")) == basis(f"(1;{I - 1}]").scale(ONE - V**2)

    def test_divided_power(self):
        assert f_power(I, PBWVector.basis(Multisegment.empty(Z3)), 2) == basis(f"2(1;{I}]")

    @pytest.mark.parametrize("ring", [zmod(4), zmod(5)])
    def test_far_residues_commute(self, ring):
        for total in range(0, 3):
            for m in multisegments_of_size(ring, total):
                u = PBWVector.basis(m)
                assert f_action(0, f_action(2, u)) == f_action(2, f_action(0, u))


class TestScalarProduct:
    def test_examples(self):
        empty = PBWVector.basis(Multisegment.empty(Z3))
        assert scalar_product(empty, empty) == ONE
        u = basis(f"(2;{I}]")
        assert scalar_product(u, u) == ONE - V**2
        assert norm_square(ms(f"2(1;{I}]")) * gauss_int(2) == V**-1

    def test_mixed_degrees_rejected(self):
        with pytest.raises(DegreeMismatch):
            scalar_product(basis("(1;1]"), basis("(1;0]"))

    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("total", [0, 1, 2, 3])
    def test_adjointness(self, n, total):
        ring = zmod(n)
        for m in multisegments_of_size(ring, total):
            for i in ring.residues():
                left = f_action(i, PBWVector.basis(m))
                d = degree(m)
                d[i] = d.get(i, 0) + 1
                for m2 in multisegments_of_degree(ring, d):
                    w = PBWVector.basis(m2)
                    assert scalar_product(left, w) == scalar_product(PBWVector.basis(m), e_prime_action(i, w))


class TestAutomorphisms:
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_examples(self, q):
        assert aut_order(ms("(1;1]"), q) == q - 1
        assert aut_order(ms("2(1;1]"), q) == (q**2 - 1) * (q**2 - q)
        assert aut_order(ms("(2;1]"), q) == q - 1

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("total", [1, 2, 3])
    def test_against_brute_force(self, q, total):
        for m in multisegments_of_size(zmod(2), total):
            assert aut_order(m, q) == aut_count_direct(m, q)


class TestHall:
    def test_alpha_trivial(self):
        assert alpha(ms("(1;1]"), Multisegment.empty(Z3), ms("(1;1]")) == 0

    @pytest.mark.parametrize(
        "O,P,Q",
        [("(1;1]", "(1;0]", "(2;1]"), ("(1;1]", "(1;1]", "2(1;1]"), ("(2;1]", "(1;2]", "(2;1] + (1;2]")],
    )
    def test_alpha_forms_agree(self, O, P, Q):
        O, P, Q = ms(O), ms(P), ms(Q)
        assert alpha_dims(O, P, Q) == alpha_endo(O, P, Q)

    def test_alpha_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            alpha(ms("(1;1]"), ms("(1;1]"), ms("(1;1]"))

    def test_lines_polynomial(self):
        s = ms("(1;1]")
        assert hall_polynomial(s, s, ms("2(1;1]")) == [1, 1]

    def test_product_examples(self):
        s = basis(f"(1;{I}]")
        assert hall_product(s, PBWVector.basis(Multisegment.empty(Z3))) == s
        assert hall_product(s, basis(f"(1;{I - 1}]")) == f_action(I, basis(f"(1;{I - 1}]"))
        assert hall_product(s, s) == basis(f"2(1;{I}]").scale(gauss_int(2))

    @given(multisegments(Z3, max_segments=2, max_length=2), st.integers(0, 2))
    def test_f_is_hall_product(self, m, i):
        assert hall_product(basis(f"(1;{i}]"), PBWVector.basis(m)) == f_action(i, PBWVector.basis(m))

    @pytest.mark.parametrize("text", ["0", "(1;0]", "(2;1]", "(1;1] + (1;0]"])
    def test_counts_match_coefficients(self, text):
        for i in Z3.residues():
            assert all(c.ok for c in check_f_against_counts(ms(text), i))
