"""Multisegments over Z and Z/nZ.

A segment is stored by origin and length. ``[i;l)`` is the segment starting
at ``i`` of length ``l``; ``(l;j]`` is the segment of length ``l`` ending at
the head ``j``. Both notations are accepted by the parser and by
:meth:`Multisegment.mult` / :meth:`Multisegment.mult_head`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


@dataclass(frozen=True)
class VertexRing:
    """Either the integers (``n is None``) or Z/nZ with ``n >= 2``."""

    n: int | None = None

    def __post_init__(self):
        if self.n is not None and self.n < 2:
            raise ValueError(f"cyclic ring needs n >= 2, got {self.n}")

    @property
    def cyclic(self) -> bool:
        return self.n is not None

    def norm(self, i: int) -> int:
        return i % self.n if self.n is not None else i

    def residues(self) -> range:
        if self.n is None:
            raise ValueError("Z has no finite residue set")
        return range(self.n)

    def __str__(self):
        return "z" if self.n is None else f"zmod:{self.n}"

    @classmethod
    def parse(cls, text: str) -> "VertexRing":
        text = text.strip().lower()
        if text in ("z", "zz", "integers"):
            return cls()
        m = re.fullmatch(r"zmod:(\d+)", text)
        if not m:
            raise ValueError(f"ring must be 'z' or 'zmod:N', got {text!r}")
        return cls(int(m.group(1)))


Z = VertexRing()


def zmod(n: int) -> VertexRing:
    return VertexRing(n)


@dataclass(frozen=True, order=True)
class Segment:
    origin: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"segment length must be >= 1, got {self.length}")

    def head(self, ring: VertexRing) -> int:
        return ring.norm(self.origin + self.length - 1)

    @classmethod
    def from_head(cls, length: int, head: int, ring: VertexRing) -> "Segment":
        return cls(ring.norm(head - length + 1), length)

    def cells(self, ring: VertexRing) -> list[int]:
        return [ring.norm(self.origin + k) for k in range(self.length)]


class Multisegment:
    """Immutable finitely supported map ``(origin, length) -> multiplicity``.

    Storage is canonical (origins reduced, entries sorted), so equality and
    hashing are structural.
    """

    __slots__ = ("ring", "_m", "_key", "_hash", "_maxlen")

    def __init__(self, ring: VertexRing, mult: Mapping[tuple[int, int], int] | None = None):
        data: dict[tuple[int, int], int] = {}
        for (origin, length), k in (mult or {}).items():
            if length < 1:
                raise ValueError(f"segment length must be >= 1, got {length}")
            if k < 0:
                raise ValueError("negative multiplicity")
            if k == 0:
                continue
            key = (ring.norm(origin), length)
            data[key] = data.get(key, 0) + k
        self.ring = ring
        self._m = data
        self._key = tuple(sorted(data.items()))
        self._hash = hash((ring, self._key))
        self._maxlen = max((l for (_, l) in data), default=0)

    # construction helpers -------------------------------------------------

    @classmethod
    def empty(cls, ring: VertexRing) -> "Multisegment":
        return cls(ring)

    @classmethod
    def from_segments(cls, ring: VertexRing, segs: Iterable[tuple[int, int]]) -> "Multisegment":
        """Build from ``(origin, length)`` pairs, repeated pairs add up."""
        data: dict[tuple[int, int], int] = {}
        for o, l in segs:
            key = (ring.norm(o), l)
            data[key] = data.get(key, 0) + 1
        return cls(ring, data)

    @classmethod
    def from_heads(cls, ring: VertexRing, segs: Iterable[tuple[int, int]]) -> "Multisegment":
        """Build from ``(length, head)`` pairs, i.e. segments ``(l;j]``."""
        return cls.from_segments(ring, ((j - l + 1, l) for l, j in segs))

    # access ---------------------------------------------------------------

    def mult(self, origin: int, length: int) -> int:
        return self._m.get((self.ring.norm(origin), length), 0)

    def mult_head(self, length: int, head: int) -> int:
        """Multiplicity of the segment ``(length; head]``."""
        if length < 1:
            return 0
        return self._m.get((self.ring.norm(head - length + 1), length), 0)

    def items(self) -> tuple[tuple[tuple[int, int], int], ...]:
        return self._key

    def segments(self) -> Iterator[Segment]:
        """Segments with repetition, in canonical order."""
        for (o, l), k in self._key:
            for _ in range(k):
                yield Segment(o, l)

    def __iter__(self):
        return iter(self._key)

    def __len__(self):
        return sum(self._m.values())

    def __bool__(self):
        return bool(self._m)

    def size(self) -> int:
        """Total number of cells, i.e. the sum of all degree entries."""
        return sum(l * k for (_, l), k in self._m.items())

    def max_length(self) -> int:
        return self._maxlen

    def __eq__(self, other):
        if not isinstance(other, Multisegment):
            return NotImplemented
        return self._hash == other._hash and self.ring == other.ring and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Multisegment"):
        return self._key < other._key

    # arithmetic -----------------------------------------------------------

    def add(self, origin: int, length: int, k: int = 1) -> "Multisegment":
        data = dict(self._m)
        key = (self.ring.norm(origin), length)
        new = data.get(key, 0) + k
        if new < 0:
            raise ValueError(f"removing absent segment [{origin};{length})")
        data[key] = new
        return Multisegment(self.ring, data)

    def add_head(self, length: int, head: int, k: int = 1) -> "Multisegment":
        return self.add(head - length + 1, length, k)

    def __add__(self, other: "Multisegment") -> "Multisegment":
        if self.ring != other.ring:
            raise ValueError("multisegments over different rings")
        data = dict(self._m)
        for key, k in other._m.items():
            data[key] = data.get(key, 0) + k
        return Multisegment(self.ring, data)

    def map_segments(self, fn, ring: VertexRing | None = None) -> "Multisegment":
        """Apply ``fn(origin, length) -> (origin, length)`` to every segment."""
        ring = ring or self.ring
        data: dict[tuple[int, int], int] = {}
        for (o, l), k in self._m.items():
            o2, l2 = fn(o, l)
            key = (ring.norm(o2), l2)
            data[key] = data.get(key, 0) + k
        return Multisegment(ring, data)

    def shift(self, t: int) -> "Multisegment":
        return self.map_segments(lambda o, l: (o + t, l))

    # printing -------------------------------------------------------------

    def __str__(self):
        return format_multisegment(self)

    def __repr__(self):
        return f"Multisegment({self.ring}, {format_multisegment(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"origin": o, "length": l, "mult": k} for (o, l), k in self._key]


@dataclass(frozen=True)
class Label:
    """A pair ``(mu, a)`` taken up to simultaneous permutation."""

    mu: tuple[int, ...]
    a: tuple[int, ...]

    def __post_init__(self):
        if len(self.mu) != len(self.a):
            raise ValueError("mu and a must have equal length")
        if any(p < 1 for p in self.mu):
            raise ValueError("parts of mu must be positive")

    def normalized(self, ring: VertexRing | None = None) -> "Label":
        norm = ring.norm if ring is not None else (lambda x: x)
        pairs = sorted((p, norm(x)) for p, x in zip(self.mu, self.a))
        return Label(tuple(p for p, _ in pairs), tuple(x for _, x in pairs))


def from_label(label: Label, ring: VertexRing) -> Multisegment:
    return Multisegment.from_segments(ring, zip(label.a, label.mu))


def to_label(m: Multisegment) -> Label:
    mu, a = [], []
    for seg in m.segments():
        mu.append(seg.length)
        a.append(seg.origin)
    return Label(tuple(mu), tuple(a)).normalized(m.ring)


def reduce_mod(m: Multisegment, n: int) -> Multisegment:
    if m.ring.cyclic:
        raise ValueError("reduce_mod expects a multisegment over Z")
    ring = VertexRing(n)
    return Multisegment(ring, {(o, l): k for (o, l), k in m})


def is_aperiodic(m: Multisegment) -> bool:
    """For every occurring length some residue carries no segment of it."""
    if not m.ring.cyclic:
        raise ValueError("aperiodicity is defined for cyclic multisegments only")
    n = m.ring.n
    origins_by_length: dict[int, set[int]] = {}
    for (o, l), _ in m:
        origins_by_length.setdefault(l, set()).add(o)
    return all(len(s) < n for s in origins_by_length.values())


def is_periodic(m: Multisegment) -> bool:
    """``m_(l;r]`` does not depend on ``r``."""
    if not m.ring.cyclic:
        return not m
    for length in {l for (_, l), _ in m}:
        if len({m.mult(o, length) for o in m.ring.residues()}) != 1:
            return False
    return True


def flat(m: Multisegment) -> Multisegment:
    """Send each ``[i;l)`` to ``(l;-i]``."""
    return m.map_segments(lambda o, l: (-o - l + 1, l))


def degree(m: Multisegment) -> dict[int, int]:
    """Number of cells carrying each residue, zero entries omitted."""
    d: dict[int, int] = {}
    ring = m.ring
    for (o, l), k in m:
        if ring.cyclic and l >= ring.n:
            full, rest = divmod(l, ring.n)
            for r in ring.residues():
                d[r] = d.get(r, 0) + full * k
            for t in range(rest):
                c = ring.norm(o + t)
                d[c] = d.get(c, 0) + k
        else:
            for t in range(l):
                c = ring.norm(o + t)
                d[c] = d.get(c, 0) + k
    return d


def degree_key(d: Mapping[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((i, k) for i, k in d.items() if k))


def negate_degree(d: Mapping[int, int], ring: VertexRing) -> dict[int, int]:
    return {ring.norm(-i): k for i, k in d.items()}


# ---------------------------------------------------------------------------
# enumeration


def _multisets_of_size(segs: list[tuple[int, int]], total: int) -> Iterator[dict[tuple[int, int], int]]:
    """All multisets of ``segs`` whose lengths sum to ``total``."""

    def rec(idx: int, remaining: int, acc: dict):
        if remaining == 0:
            yield dict(acc)
            return
        if idx == len(segs):
            return
        seg = segs[idx]
        l = seg[1]
        for k in range(remaining // l, -1, -1):
            if k:
                acc[seg] = k
            yield from rec(idx + 1, remaining - k * l, acc)
            acc.pop(seg, None)

    yield from rec(0, total, {})


def multisegments_of_size(ring: VertexRing, total: int, window: int | None = None) -> list[Multisegment]:
    """All multisegments with ``total`` cells.

    Over Z the set is infinite; it is cut down to those whose support lies in
    ``[0, window - 1]`` and contains 0 (``window`` defaults to ``total``,
    which keeps every multisegment with connected support, up to translation).
    """
    if total < 0:
        return []
    if ring.cyclic:
        segs = [(o, l) for l in range(1, total + 1) for o in ring.residues()]
        return [Multisegment(ring, d) for d in _multisets_of_size(segs, total)]
    window = total if window is None else window
    segs = [(o, l) for o in range(window) for l in range(1, window - o + 1)]
    out = []
    for d in _multisets_of_size(segs, total):
        if total == 0 or any(o == 0 for (o, _) in d):
            out.append(Multisegment(ring, d))
    return out


def multisegments_of_degree(ring: VertexRing, d: Mapping[int, int]) -> list[Multisegment]:
    """All multisegments with the given degree vector."""
    d = {ring.norm(i): k for i, k in d.items() if k}
    total = sum(d.values())
    if total == 0:
        return [Multisegment.empty(ring)]
    if ring.cyclic:
        segs = [(o, l) for l in range(1, total + 1) for o in ring.residues()]
    else:
        lo, hi = min(d), max(d)
        segs = [(o, l) for o in range(lo, hi + 1) for l in range(1, hi - o + 2)]
    out = []
    target = degree_key(d)
    for mult in _bounded_multisets(segs, ring, d):
        m = Multisegment(ring, mult)
        if degree_key(degree(m)) == target:
            out.append(m)
    return out


def _bounded_multisets(segs, ring, d):
    """Multisets of segments whose cell counts never exceed ``d``."""
    remaining = dict(d)
    cells = []
    for o, l in segs:
        need: dict[int, int] = {}
        for t in range(l):
            c = ring.norm(o + t)
            need[c] = need.get(c, 0) + 1
        cells.append(need)
    acc: dict[tuple[int, int], int] = {}

    def rec(idx):
        if not any(remaining.values()):
            yield dict(acc)
            return
        if idx == len(segs):
            return
        need = cells[idx]
        kmax = min(remaining.get(c, 0) // v for c, v in need.items())
        for k in range(kmax, -1, -1):
            if k:
                acc[segs[idx]] = k
                for c, v in need.items():
                    remaining[c] -= k * v
            yield from rec(idx + 1)
            if k:
                del acc[segs[idx]]
                for c, v in need.items():
                    remaining[c] += k * v

    yield from rec(0)


def aperiodic_of_size(ring: VertexRing, total: int) -> list[Multisegment]:
    return [m for m in multisegments_of_size(ring, total) if is_aperiodic(m)]


# ---------------------------------------------------------------------------
# text and JSON forms

_TERM = re.compile(r"(\d*)\s*(?:\[\s*(-?\d+)\s*;\s*(\d+)\s*\)|\(\s*(\d+)\s*;\s*(-?\d+)\s*\])")


class MultisegmentSyntaxError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


def parse_multisegment(text: str, ring: VertexRing = Z) -> Multisegment:
    """Parse ``2[0;2)+[1;3)``; ``(l;j]`` terms are accepted too.

    An empty string or ``0`` is the empty multisegment.
    """
    stripped = text.strip()
    if stripped in ("", "0"):
        return Multisegment.empty(ring)
    data: dict[tuple[int, int], int] = {}
    pos = 0
    n = len(text)
    expect_term = True
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            if expect_term:
                raise MultisegmentSyntaxError("expected a term", pos)
            break
        if not expect_term:
            if text[pos] != "+":
                raise MultisegmentSyntaxError(f"expected '+', found {text[pos]!r}", pos)
            pos += 1
            expect_term = True
            continue
        m = _TERM.match(text, pos)
        if not m:
            raise MultisegmentSyntaxError("malformed term", pos)
        k = int(m.group(1)) if m.group(1) else 1
        if k < 1:
            raise MultisegmentSyntaxError("multiplicity must be positive", pos)
        if m.group(2) is not None:
            origin, length = int(m.group(2)), int(m.group(3))
        else:
            length, head = int(m.group(4)), int(m.group(5))
            origin = head - length + 1
        if length < 1:
            raise MultisegmentSyntaxError("segment length must be >= 1", pos)
        key = (ring.norm(origin), length)
        data[key] = data.get(key, 0) + k
        pos = m.end()
        expect_term = False
    return Multisegment(ring, data)


def format_multisegment(m: Multisegment, sep: str = " + ") -> str:
    if not m:
        return "0"
    terms = []
    for (o, l), k in m:
        terms.append(f"{k if k > 1 else ''}[{o};{l})")
    return sep.join(terms)


def multisegment_from_json(data, ring: VertexRing) -> Multisegment:
    if isinstance(data, str):
        data = json.loads(data)
    out: dict[tuple[int, int], int] = {}
    for entry in data:
        key = (ring.norm(int(entry["origin"])), int(entry["length"]))
        mult = int(entry.get("mult", 1))
        if mult < 1 or key[1] < 1:
            raise ValueError(f"bad JSON segment entry {entry!r}")
        out[key] = out.get(key, 0) + mult
    return Multisegment(ring, out)
