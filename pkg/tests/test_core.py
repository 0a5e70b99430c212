import json

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import multisegments, rings
from msdual.core import (
    Label,
    Multisegment,
    MultisegmentSyntaxError,
    Segment,
    VertexRing,
    Z,
    aperiodic_of_size,
    degree,
    flat,
    format_multisegment,
    from_label,
    is_aperiodic,
    multisegment_from_json,
    multisegments_of_degree,
    multisegments_of_size,
    negate_degree,
    parse_multisegment,
    reduce_mod,
    to_label,
    zmod,
)

WORKED_LABEL = Label((2, 2, 3, 1, 1, 2, 2, 1), (2, 2, 0, 0, 0, -1, -1, -1))
WORKED_TEXT = "[2;2)+[2;2)+[0;3)+2[0;1)+2[-1;2)+[-1;1)"


def ms(text, ring=Z):
    return parse_multisegment(text, ring)


class TestRingAndSegment:
    def test_parse_rings(self):
        assert VertexRing.parse("z") == Z
        assert VertexRing.parse("zmod:3") == zmod(3)
        assert str(zmod(5)) == "zmod:5"

    @pytest.mark.parametrize("bad", ["zmod:1", "zmod:0", "q", "zmod:x"])
    def test_bad_rings(self, bad):
        with pytest.raises(ValueError):
            VertexRing.parse(bad)

    def test_residues_canonical(self):
        assert zmod(3).norm(-1) == 2
        assert Z.norm(-1) == -1

    def test_segment_head_notation(self):
        seg = Segment.from_head(3, 1, Z)
        assert seg == Segment(-1, 3)
        assert seg.head(Z) == 1
        assert ms("(3;1]") == ms("[-1;3)")

    def test_segment_length_positive(self):
        with pytest.raises(ValueError):
            Segment(0, 0)


class TestLabels:
    def test_worked_label(self):
        m = from_label(WORKED_LABEL, Z)
        assert m == ms(WORKED_TEXT)
        assert format_multisegment(m) == "[-1;1) + 2[-1;2) + 2[0;1) + [0;3) + 2[2;2)"

    def test_worked_reduction(self):
        m = reduce_mod(from_label(WORKED_LABEL, Z), 2)
        assert m == ms("2[0;2) + [0;3) + 2[0;1) + 2[1;2) + [1;1)", zmod(2))
        assert not is_aperiodic(m)

    def test_empty_label(self):
        assert from_label(Label((), ()), Z) == Multisegment.empty(Z)

    def test_single_segment_mod2(self):
        assert from_label(Label((3,), (0,)), zmod(2)) == ms("[0;3)", zmod(2))

    def test_reduce_merges(self):
        assert reduce_mod(ms("[-1;1) + [1;1)"), 2) == ms("2[1;1)", zmod(2))

    def test_reduce_rejects_small_modulus(self):
        with pytest.raises(ValueError):
            reduce_mod(ms("[0;1)"), 1)

    def test_label_lengths_must_match(self):
        with pytest.raises(ValueError):
            Label((1, 2), (0,))

    @given(st.lists(st.tuples(st.integers(1, 4), st.integers(-3, 3)), max_size=6), st.randoms())
    def test_label_permutation_invariant(self, pairs, rnd):
        shuffled = list(pairs)
        rnd.shuffle(shuffled)
        a = Label(tuple(p for p, _ in pairs), tuple(x for _, x in pairs))
        b = Label(tuple(p for p, _ in shuffled), tuple(x for _, x in shuffled))
        assert from_label(a, Z) == from_label(b, Z)

    @given(st.lists(st.tuples(st.integers(1, 4), st.integers(-3, 3)), max_size=6), st.integers(2, 5))
    def test_reduce_commutes_with_labels(self, pairs, n):
        lab = Label(tuple(p for p, _ in pairs), tuple(x for _, x in pairs))
        assert reduce_mod(from_label(lab, Z), n) == from_label(lab, zmod(n))

    @given(multisegments())
    def test_to_label_roundtrip(self, m):
        assert from_label(to_label(m), m.ring) == m


class TestAperiodicity:
    def test_empty(self):
        assert is_aperiodic(Multisegment.empty(zmod(2)))

    def test_full_length_one(self):
        assert not is_aperiodic(ms("[0;1)+[1;1)", zmod(2)))

    def test_one_missing_residue(self):
        assert is_aperiodic(ms("[0;1)+[1;1)", zmod(3)))

    def test_rejects_integers(self):
        with pytest.raises(ValueError):
            is_aperiodic(ms("[0;1)"))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_all_origins_rejected(self, n):
        ring = zmod(n)
        m = Multisegment.from_segments(ring, [(i, 2) for i in range(n)])
        assert not is_aperiodic(m)


class TestFlatAndDegree:
    def test_flat_examples(self):
        assert flat(Multisegment.empty(Z)) == Multisegment.empty(Z)
        assert flat(ms("[0;2)")) == ms("[-1;2)")
        assert flat(ms("[1;1)", zmod(2))) == ms("[1;1)", zmod(2))

    def test_degree_examples(self):
        assert degree(Multisegment.empty(Z)) == {}
        assert degree(ms("[0;3)")) == {0: 1, 1: 1, 2: 1}
        assert degree(ms("[0;3)", zmod(2))) == {0: 2, 1: 1}

    @given(multisegments())
    def test_flat_involution(self, m):
        assert flat(flat(m)) == m

    @given(multisegments())
    def test_flat_negates_degree(self, m):
        assert degree(flat(m)) == negate_degree(degree(m), m.ring)

    @given(multisegments())
    def test_degree_total(self, m):
        assert sum(degree(m).values()) == m.size()


class TestEnumeration:
    def test_counts_mod3(self):
        assert len(multisegments_of_size(zmod(3), 3)) == 22
        assert len(aperiodic_of_size(zmod(3), 3)) == 21

    def test_integer_window_contains_zero(self):
        for m in multisegments_of_size(Z, 3):
            assert min(degree(m)) == 0

    @pytest.mark.parametrize("d,count", [({0: 1, 1: 1}, 3), ({0: 2}, 1), ({0: 1, 1: 1, 2: 1}, 4)])
    def test_multisegments_of_degree(self, d, count):
        # Z/2 degree (1,1): [0;2), [1;2), [0;1)+[1;1); Z degree (1,1,1): compositions of 3
        ring = zmod(2) if d == {0: 1, 1: 1} else Z
        found = multisegments_of_degree(ring, d)
        assert len(found) == count
        assert all(degree(m) == d for m in found)


class TestText:
    @pytest.mark.parametrize("text", ["", "0", "  "])
    def test_empty(self, text):
        assert parse_multisegment(text) == Multisegment.empty(Z)

    def test_grammar(self):
        m = parse_multisegment("2[0;2)+[1;3)")
        assert format_multisegment(m) == "2[0;2) + [1;3)"

    def test_worked_text(self):
        assert parse_multisegment(WORKED_TEXT) == from_label(WORKED_LABEL, Z)

    @pytest.mark.parametrize(
        "text,offset",
        [("[0;2", 0), ("[0;2) [1;1)", 6), ("[0;2)+", 6), ("0[0;1)", 0), ("[0;0)", 0)],
    )
    def test_syntax_errors_carry_offset(self, text, offset):
        with pytest.raises(MultisegmentSyntaxError) as err:
            parse_multisegment(text)
        assert err.value.offset == offset

    @given(multisegments())
    def test_print_parse_roundtrip(self, m):
        assert parse_multisegment(format_multisegment(m), m.ring) == m

    @given(multisegments())
    def test_json_roundtrip(self, m):
        assert multisegment_from_json(json.dumps(m.to_json()), m.ring) == m

    @given(rings())
    def test_canonical_form_fixed(self, ring):
        text = format_multisegment(ms("[1;2) + [0;1) + [1;2)", ring))
        assert format_multisegment(parse_multisegment(text, ring)) == text
