import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import crystal_vertices, multisegments
from msdual.config import ResourceGuardError
from msdual.core import Multisegment, Z, aperiodic_of_size, degree, is_aperiodic, parse_multisegment, zmod
from msdual.crystal import (
    crystal_graph,
    e_tilde,
    e_tilde_candidates,
    embed_phi,
    epsilon,
    f_tilde,
    highest_weight_path,
    string_sums,
)


def ms(text, ring=Z):
    return parse_multisegment(text, ring)


I = 2  # generic residue for the head-notation examples


class TestStringSums:
    def test_empty(self):
        assert string_sums(Multisegment.empty(Z), 0) == [0]

    def test_single_head_i(self):
        assert string_sums(ms(f"(1;{I}]"), I) == [-1, 0]

    def test_single_head_i_minus_one(self):
        assert string_sums(ms(f"(1;{I - 1}]"), I) == [1, 0]


class TestOperators:
    def test_f_from_empty(self):
        assert f_tilde(Multisegment.empty(zmod(3)), 0) == ms("[0;1)", zmod(3))

    def test_f_doubles(self):
        assert f_tilde(ms(f"(1;{I}]"), I) == ms(f"2(1;{I}]")

    def test_f_extends(self):
        assert f_tilde(ms(f"(1;{I - 1}]"), I) == ms(f"(2;{I}]")

    def test_e_examples(self):
        assert e_tilde(Multisegment.empty(Z), I) is None
        assert e_tilde(ms(f"(2;{I}]"), I) == ms(f"(1;{I - 1}]")
        assert e_tilde(ms(f"2(1;{I}]"), I) == ms(f"(1;{I}]")

    def test_epsilon_examples(self):
        assert epsilon(Multisegment.empty(Z), I) == 0
        assert epsilon(ms(f"2(1;{I}]"), I) == 2
        assert epsilon(ms(f"(2;{I}]"), I - 1) == 0

    @given(multisegments(), st.integers(-3, 3))
    def test_e_inverts_f(self, m, i):
        assert e_tilde(f_tilde(m, i), i) == m

    @given(multisegments(), st.integers(-3, 3))
    def test_f_inverts_e(self, m, i):
        prev = e_tilde(m, i)
        if prev is not None:
            assert f_tilde(prev, i) == m

    @given(multisegments(), st.integers(-3, 3))
    def test_e_matches_candidate_search(self, m, i):
        cands = e_tilde_candidates(m, i)
        assert len(cands) <= 1
        assert e_tilde(m, i) == (cands[0] if cands else None)

    @given(multisegments(), st.integers(-3, 3))
    def test_f_adds_unit_degree(self, m, i):
        d = degree(m)
        r = m.ring.norm(i)
        d[r] = d.get(r, 0) + 1
        assert degree(f_tilde(m, i)) == d

    @given(multisegments(), st.integers(0, 3))
    def test_f_preserves_aperiodicity(self, m, i):
        if m.ring.cyclic:
            assert is_aperiodic(f_tilde(m, i)) == is_aperiodic(m)


class TestPaths:
    def test_empty(self):
        path = highest_weight_path(Multisegment.empty(Z))
        assert path.removal == () and not path.top

    def test_two_segment(self):
        path = highest_weight_path(ms("(2;1]"))
        assert path.rebuild == (0, 1)
        assert not path.top

    def test_periodic_is_highest(self):
        m = ms("[0;1)+[1;1)", zmod(2))
        path = highest_weight_path(m)
        assert path.removal == () and path.top == m

    @pytest.mark.parametrize("n,total", [(2, 4), (3, 3), (4, 3)])
    def test_aperiodic_iff_reaches_empty(self, n, total):
        ring = zmod(n)
        from msdual.core import multisegments_of_size

        for m in multisegments_of_size(ring, total):
            assert (not highest_weight_path(m).top) == is_aperiodic(m)

    @given(crystal_vertices(zmod(3)))
    def test_rebuild_word_rebuilds(self, m):
        path = highest_weight_path(m)
        out = path.top
        for i in path.rebuild:
            out = f_tilde(out, i)
        assert out == m


class TestEmbedding:
    def test_examples(self):
        assert embed_phi(Multisegment.empty(zmod(3)), 1) == Multisegment.empty(Z)
        assert embed_phi(ms("(2;1]", zmod(3)), 1) == ms("(2;1]")
        assert embed_phi(ms("(1;1]", zmod(2)), 0) == ms("(1;-1]")

    @given(st.integers(2, 4).flatmap(lambda n: st.tuples(multisegments(zmod(n)), st.integers(0, n - 1))))
    def test_intertwines_f(self, pair):
        m, i = pair
        assert embed_phi(f_tilde(m, i), i) == f_tilde(embed_phi(m, i), i)


class TestGraph:
    def test_degree_one(self):
        g = crystal_graph(zmod(3), 1)
        assert len(g.vertices) == 4 and len(g.arrows) == 3

    def test_counts_mod3(self):
        assert crystal_graph(zmod(3), 3).counts_by_size() == [1, 3, 9, 21]

    def test_degree_two_mod2(self):
        # 2[0;1) and 2[1;1) are aperiodic too; only [0;1)+[1;1) is excluded
        g = crystal_graph(zmod(2), 2)
        got = {v for v in g.vertices if v.size() == 2}
        assert got == set(aperiodic_of_size(zmod(2), 2))
        assert ms("[0;1)+[1;1)", zmod(2)) not in got
        assert {ms("(2;0]", zmod(2)), ms("(2;1]", zmod(2))} <= got

    @pytest.mark.parametrize("n,D", [(2, 5), (3, 4), (4, 3)])
    def test_vertices_are_aperiodic(self, n, D):
        ring = zmod(n)
        g = crystal_graph(ring, D)
        g.check()
        assert set(g.vertices) == {m for t in range(D + 1) for m in aperiodic_of_size(ring, t)}

    def test_out_degree(self):
        g = crystal_graph(zmod(3), 3)
        out = {}
        for src, _, _ in g.arrows:
            out[src] = out.get(src, 0) + 1
        assert all(out[v] == 3 for v in g.vertices if v.size() < 3)

    def test_full_component_includes_periodic(self):
        g = crystal_graph(zmod(2), 2, component="all")
        assert ms("[0;1)+[1;1)", zmod(2)) in g.vertices

    def test_dot_and_json(self):
        g = crystal_graph(zmod(2), 1)
        assert g.to_dot().startswith("digraph")
        assert '"adjacency"' in g.to_json()

    def test_guard(self):
        with pytest.raises(ResourceGuardError):
            crystal_graph(zmod(2), 10_000)
