"""Kashiwara operators on multisegments and the crystal graph.

Vertices are multisegments in the orbit parametrization; ``f_tilde`` is the
string-sum minimization rule and ``e_tilde`` its partial inverse.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .config import DEFAULT_BOUNDS, check_bound
from .core import (
    Multisegment,
    VertexRing,
    Z,
    degree,
    format_multisegment,
    is_aperiodic,
    is_periodic,
    multisegments_of_size,
)


class CrystalInvariantError(AssertionError):
    pass


def string_sums(m: Multisegment, i: int) -> list[int]:
    """``[S_1, ..., S_{L+1}]`` where ``S_k = sum_{l>=k} (m_(l;i-1] - m_(l;i])``."""
    L = m.max_length()
    out = [0] * (L + 1)
    acc = 0
    for k in range(L, 0, -1):
        acc += m.mult_head(k, i - 1) - m.mult_head(k, i)
        out[k - 1] = acc
    return out


def plus(m: Multisegment, length: int, i: int) -> Multisegment | None:
    """``m + (l;i] - (l-1;i-1]``, or None when ``m_(l-1;i-1] = 0`` for ``l > 1``."""
    if length == 1:
        return m.add_head(1, i)
    if m.mult_head(length - 1, i - 1) == 0:
        return None
    return m.add_head(length - 1, i - 1, -1).add_head(length, i)


def minus(m: Multisegment, length: int, i: int) -> Multisegment | None:
    """``m - (l;i] + (l-1;i-1]``, or None when ``m_(l;i] = 0``."""
    if m.mult_head(length, i) == 0:
        return None
    out = m.add_head(length, i, -1)
    if length > 1:
        out = out.add_head(length - 1, i - 1)
    return out


def k_zero(m: Multisegment, i: int) -> int:
    sums = string_sums(m, i)
    low = min(sums)
    return sums.index(low) + 1


def f_tilde(m: Multisegment, i: int) -> Multisegment:
    i = m.ring.norm(i)
    k0 = k_zero(m, i)
    out = plus(m, k0, i)
    if out is None:
        # minimality of k0 forces m_(k0-1;i-1] >= 1
        raise CrystalInvariantError(f"f_tilde: no segment ({k0 - 1};{i - 1}] in {m}")
    return out


def e_tilde(m: Multisegment, i: int) -> Multisegment | None:
    """Partial inverse of ``f_tilde``; None where undefined.

    The candidate ``m - (l;i] + (l-1;i-1]`` has string sums
    ``S_k + [k <= l] + [k <= l-1]``, so it is the preimage exactly when its
    first minimizing index is ``l``.
    """
    i = m.ring.norm(i)
    sums = string_sums(m, i) + [0]
    for length in range(1, m.max_length() + 1):
        if m.mult_head(length, i) == 0:
            continue
        shifted = [x + (k <= length) + (k <= length - 1) for k, x in enumerate(sums, start=1)]
        if shifted.index(min(shifted)) + 1 == length:
            return minus(m, length, i)
    return None


def e_tilde_candidates(m: Multisegment, i: int) -> list[Multisegment]:
    """Every preimage of ``m`` under ``f_tilde(-, i)``; has at most one entry."""
    i = m.ring.norm(i)
    out = []
    for length in range(1, m.max_length() + 1):
        cand = minus(m, length, i)
        if cand is not None and f_tilde(cand, i) == m:
            out.append(cand)
    return out


def epsilon(m: Multisegment, i: int) -> int:
    k = 0
    while True:
        m = e_tilde(m, i)
        if m is None:
            return k
        k += 1


def candidate_residues(m: Multisegment) -> list[int]:
    """Residues where ``e_tilde`` can possibly act, in the fixed search order.

    Cyclic rings use ascending residues; over Z the order is 0, 1, -1, 2, -2, ...
    """
    heads = {m.ring.norm(o + l - 1) for (o, l), _ in m}
    return sorted(heads, key=lambda j: (abs(j), j < 0))


@dataclass(frozen=True)
class Path:
    """``removal`` lists residues in the order ``e_tilde`` was applied."""

    removal: tuple[int, ...]
    top: Multisegment

    @property
    def rebuild(self) -> tuple[int, ...]:
        return tuple(reversed(self.removal))


def highest_weight_path(m: Multisegment) -> Path:
    """Descend to a highest weight vertex, removing full ``i``-strings.

    At each step the first residue (in :func:`candidate_residues` order) with
    positive ``epsilon`` is chosen and ``e_tilde`` is applied until it fails,
    so every run of the rebuild word starts at a vertex with ``epsilon = 0``.
    """
    removal: list[int] = []
    while True:
        for i in candidate_residues(m):
            prev = e_tilde(m, i)
            if prev is not None:
                while prev is not None:
                    removal.append(i)
                    m = prev
                    prev = e_tilde(m, i)
                break
        else:
            return Path(tuple(removal), m)


def random_descent(m: Multisegment, rng) -> Path:
    """Descend by ``e_tilde`` choosing a uniformly random admissible residue."""
    removal: list[int] = []
    while True:
        options = []
        for i in candidate_residues(m):
            prev = e_tilde(m, i)
            if prev is not None:
                options.append((i, prev))
        if not options:
            return Path(tuple(removal), m)
        i, m = options[rng.randrange(len(options))]
        removal.append(i)


def apply_word(m: Multisegment, word: Iterable[int]) -> Multisegment:
    for i in word:
        m = f_tilde(m, i)
    return m


def embed_phi(m: Multisegment, i: int) -> Multisegment:
    """Lift a Z/nZ multisegment to Z so that heads ``i-1`` and ``i`` stay adjacent.

    Heads use representatives ``0..n-1`` when ``i != 0`` and ``-1..n-2`` when
    ``i == 0``.
    """
    ring = m.ring
    if not ring.cyclic:
        raise ValueError("embed_phi expects a cyclic multisegment")
    n = ring.n
    i = ring.norm(i)
    low = -1 if i == 0 else 0

    def rep(r: int) -> int:
        r = r % n
        return r - n if r > n - 1 + low else r

    data: dict[tuple[int, int], int] = {}
    for (o, l), k in m:
        j = rep(o + l - 1)
        key = (j - l + 1, l)
        data[key] = data.get(key, 0) + k
    return Multisegment(Z, data)


# ---------------------------------------------------------------------------
# graph generation


@dataclass
class CrystalGraph:
    ring: VertexRing
    max_degree: int
    vertices: list[Multisegment] = field(default_factory=list)
    arrows: list[tuple[Multisegment, int, Multisegment]] = field(default_factory=list)

    def counts_by_size(self) -> list[int]:
        out = [0] * (self.max_degree + 1)
        for v in self.vertices:
            out[v.size()] += 1
        return out

    def check(self) -> None:
        vs = set(self.vertices)
        for src, i, tgt in self.arrows:
            if f_tilde(src, i) != tgt:
                raise CrystalInvariantError(f"arrow {src} -{i}-> {tgt} is not f_tilde")
            d0, d1 = degree(src), degree(tgt)
            d0[i] = d0.get(i, 0) + 1
            if {k: v for k, v in d0.items() if v} != d1:
                raise CrystalInvariantError(f"arrow {src} -{i}-> {tgt} has wrong degree")
            if src not in vs or tgt not in vs:
                raise CrystalInvariantError("arrow endpoint outside vertex set")

    def to_dot(self) -> str:
        index = {v: k for k, v in enumerate(self.vertices)}
        lines = ["digraph crystal {", "  node [shape=box];"]
        for v, k in index.items():
            lines.append(f'  v{k} [label="{format_multisegment(v)}"];')
        for src, i, tgt in self.arrows:
            lines.append(f'  v{index[src]} -> v{index[tgt]} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        index = {v: k for k, v in enumerate(self.vertices)}
        adjacency: dict[int, list] = {k: [] for k in index.values()}
        for src, i, tgt in self.arrows:
            adjacency[index[src]].append({"residue": i, "target": index[tgt]})
        payload = {
            "ring": str(self.ring),
            "max_degree": self.max_degree,
            "vertices": [
                {"id": k, "label": format_multisegment(v), "segments": v.to_json()}
                for v, k in index.items()
            ],
            "adjacency": {str(k): a for k, a in adjacency.items()},
        }
        return json.dumps(payload, indent=2)


def periodic_seeds(ring: VertexRing, max_degree: int) -> list[Multisegment]:
    out = []
    for total in range(0, max_degree + 1):
        out.extend(m for m in multisegments_of_size(ring, total) if is_periodic(m))
    return out


def crystal_graph(
    ring: VertexRing,
    max_degree: int,
    component: str = "empty",
    residues: Iterable[int] | None = None,
    bound: int | None = None,
) -> CrystalGraph:
    """Breadth-first closure under ``f_tilde`` up to total degree ``max_degree``.

    ``component="empty"`` seeds with the empty multisegment only; ``"all"``
    also seeds with every periodic multisegment (cyclic rings). Over Z the
    residues must be restricted to a finite window, ``0..max_degree-1`` by
    default.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    check_bound(max_degree, DEFAULT_BOUNDS.graph_max_degree if bound is None else bound, "max degree")
    if component not in ("empty", "all"):
        raise ValueError(f"component must be 'empty' or 'all', got {component!r}")
    if residues is None:
        residues = ring.residues() if ring.cyclic else range(0, max(max_degree, 1))
    residues = [ring.norm(i) for i in residues]
    empty = Multisegment.empty(ring)
    seeds = [empty]
    if component == "all" and ring.cyclic:
        seeds = periodic_seeds(ring, max_degree)
    seen = set(seeds)
    order = list(seeds)
    arrows = []
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        if v.size() >= max_degree:
            continue
        for i in residues:
            w = f_tilde(v, i)
            arrows.append((v, i, w))
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    order.sort(key=lambda v: (v.size(), v))
    return CrystalGraph(ring, max_degree, order, arrows)


def in_empty_component(m: Multisegment) -> bool:
    """Cyclic: aperiodic; over Z every vertex lies in the component of the empty one."""
    if not m.ring.cyclic:
        return True
    return is_aperiodic(m)
