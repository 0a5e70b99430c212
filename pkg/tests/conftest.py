import hypothesis
import hypothesis.strategies as st
import pytest

from msdual.core import Multisegment, Z, zmod
from msdual.crystal import apply_word

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

RINGS = [Z, zmod(2), zmod(3), zmod(4)]


@st.composite
def rings(draw, cyclic_only=False):
    choices = RINGS[1:] if cyclic_only else RINGS
    return draw(st.sampled_from(choices))


@st.composite
def multisegments(draw, ring=None, max_segments=5, max_length=4):
    ring = ring if ring is not None else draw(rings())
    lo, hi = (0, ring.n - 1) if ring.cyclic else (-4, 4)
    segs = draw(
        st.lists(
            st.tuples(st.integers(lo, hi), st.integers(1, max_length)),
            max_size=max_segments,
        )
    )
    return Multisegment.from_segments(ring, segs)


@st.composite
def crystal_vertices(draw, ring=None, max_steps=8):
    """Vertices of the component of the empty multisegment, reached by random f-words."""
    ring = ring if ring is not None else draw(rings())
    residues = list(ring.residues()) if ring.cyclic else list(range(-3, 4))
    word = draw(st.lists(st.sampled_from(residues), max_size=max_steps))
    return apply_word(Multisegment.empty(ring), word)


@pytest.fixture
def z3():
    return zmod(3)


@pytest.fixture
def z2():
    return zmod(2)
