"""Nilpotent representations of the linear (Z) or cyclic (Z/nZ) quiver.

Arrows go ``i -> i-1``. ``realize`` builds an explicit representation of a
multisegment, ``classify`` recovers the multisegment from ranks of iterated
arrows, and the counting functions here are brute-force oracles over F_q.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .config import DEFAULT_BOUNDS, check_bound
from .core import Multisegment, VertexRing, degree, is_aperiodic
from .linalg import (
    QQ,
    GF,
    Matrix,
    apply,
    field_from_name,
    gl_order,
    identity,
    in_span,
    matmul,
    nullspace,
    rank,
    subspaces,
    transpose,
    zeros,
)


class NotNilpotentError(ValueError):
    pass


class GenericityNotReached(RuntimeError):
    pass


@dataclass
class NilpotentRep:
    """Graded space ``V`` with maps ``maps[i] : V_i -> V_{i-1}`` (shape ``d_{i-1} x d_i``)."""

    ring: VertexRing
    field: object
    dims: dict[int, int]
    maps: dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        self.dims = {self.ring.norm(i): d for i, d in self.dims.items()}
        for i, mat in self.maps.items():
            src, tgt = self.dim(i), self.dim(i - 1)
            if len(mat) != tgt or any(len(row) != src for row in mat):
                raise ValueError(f"map at arrow {i} -> {i - 1} must be {tgt} x {src}")

    def dim(self, i: int) -> int:
        return self.dims.get(self.ring.norm(i), 0)

    def vertices(self) -> list[int]:
        return sorted(i for i, d in self.dims.items() if d)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def arrow(self, i: int) -> Matrix:
        i = self.ring.norm(i)
        mat = self.maps.get(i)
        if mat is None:
            return zeros(self.dim(i - 1), self.dim(i), self.field)
        return mat

    def composite(self, i: int, length: int) -> Matrix:
        """Matrix of ``x^length : V_i -> V_{i-length}``."""
        mat = identity(self.dim(i), self.field)
        for t in range(length):
            src = i - t
            mat = matmul(self.arrow(src), mat, self.field, inner=self.dim(src))
        return mat

    def rank_table(self) -> dict[tuple[int, int], int]:
        """Nonzero ranks ``r_{i,l}`` of ``V_i -> V_{i-l}``, ``l = 0`` included."""
        table = {}
        for i in self.vertices():
            mat = identity(self.dim(i), self.field)
            table[(i, 0)] = self.dim(i)
            for length in range(1, self.total_dim() + 1):
                src = i - length + 1
                mat = matmul(self.arrow(src), mat, self.field, inner=self.dim(src))
                r = rank(mat, self.field) if mat else 0
                if r == 0:
                    break
                table[(i, length)] = r
        return table

    def is_nilpotent(self) -> bool:
        n = self.total_dim()
        return all(length < n for (_, length) in self.rank_table())

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return [x.numerator, x.denominator]
            return x

        return {
            "ring": str(self.ring),
            "field": "Q" if self.field == QQ else f"F_{self.field.q}",
            "dims": {str(i): d for i, d in sorted(self.dims.items()) if d},
            "maps": {
                str(i): [[enc(x) for x in row] for row in mat]
                for i, mat in sorted(self.maps.items())
                if mat and mat[0]
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "NilpotentRep":
        ring = VertexRing.parse(data["ring"])
        F = field_from_name(data.get("field", "Q"))

        def dec(x):
            if F == QQ:
                if isinstance(x, list):
                    return Fraction(int(x[0]), int(x[1]))
                return Fraction(x)
            if isinstance(x, list):
                raise ValueError("finite-field entries must be integers")
            return int(x) % F.q

        dims = {int(i): int(d) for i, d in data["dims"].items()}
        maps = {int(i): [[dec(x) for x in row] for row in mat] for i, mat in data.get("maps", {}).items()}
        return cls(ring, F, dims, maps)


def _support_vertices(ring: VertexRing, cells: dict[int, int]) -> dict[int, int]:
    if ring.cyclic:
        return {i: cells.get(i, 0) for i in ring.residues()}
    if not cells:
        return {}
    lo, hi = min(cells), max(cells)
    return {i: cells.get(i, 0) for i in range(lo, hi + 1)}


def realize(m: Multisegment, F=QQ) -> NilpotentRep:
    """Direct sum of Jordan chains: each ``(l;h]`` spans degrees ``h, h-1, ..., h-l+1``."""
    ring = m.ring
    dims = _support_vertices(ring, degree(m))
    counter = {i: 0 for i in dims}
    chains = []
    for seg in m.segments():
        h = seg.origin + seg.length - 1
        chain = []
        for t in range(seg.length):
            deg = ring.norm(h - t)
            chain.append((deg, counter[deg]))
            counter[deg] += 1
        chains.append(chain)
    maps = {}
    for i in dims:
        if ring.cyclic or (i - 1) in dims:
            maps[i] = zeros(dims.get(ring.norm(i - 1), 0), dims[i], F)
    for chain in chains:
        for (deg, a), (_, b) in zip(chain, chain[1:]):
            maps[deg][b][a] = F.one
    return NilpotentRep(ring, F, dims, maps)


def classify_ranks(table: dict[tuple[int, int], int], ring: VertexRing) -> Multisegment:
    """Multisegment with the given rank function.

    ``m_(l;i] = (r_{i,l-1} - r_{i+1,l}) - (r_{i,l} - r_{i+1,l+1})``.
    """

    def r(i, l):
        return table.get((ring.norm(i), l), 0)

    data = {}
    for (i, l0), val in table.items():
        if val == 0:
            continue
        length = l0 + 1
        k = (r(i, length - 1) - r(i + 1, length)) - (r(i, length) - r(i + 1, length + 1))
        if k < 0:
            raise NotNilpotentError(f"rank function gives negative multiplicity at ({length};{i}]")
        if k:
            data[(i - length + 1, length)] = k
    return Multisegment(ring, data)


def classify(rep: NilpotentRep) -> Multisegment:
    table = rep.rank_table()
    n = rep.total_dim()
    if any(l >= n for (_, l) in table):
        raise NotNilpotentError("representation is not nilpotent")
    return classify_ranks(table, rep.ring)


def segment_rank_table(m: Multisegment) -> dict[tuple[int, int], int]:
    """Rank function of ``realize(m)`` computed from the segments directly."""
    ring = m.ring
    table: dict[tuple[int, int], int] = {}
    for (o, length), k in m:
        h = o + length - 1
        for t in range(length):
            deg = ring.norm(h - t)
            # x^l is nonzero on the t-th chain vector iff t + l <= length - 1
            for l in range(0, length - t):
                table[(deg, l)] = table.get((deg, l), 0) + k
    return table


# ---------------------------------------------------------------------------
# Hom spaces


def _hom_system(rep1: NilpotentRep, rep2: NilpotentRep, F):
    """Equations ``x2 phi = phi x1`` on graded ``phi : rep1 -> rep2``."""
    ring = rep1.ring
    verts = sorted(set(rep1.vertices()) | set(rep2.vertices()))
    offsets = {}
    n = 0
    for j in verts:
        offsets[j] = n
        n += rep1.dim(j) * rep2.dim(j)

    def var(j, c, b):
        return offsets[ring.norm(j)] + c * rep1.dim(j) + b

    rows = []
    arrow_sources = set(verts) | {ring.norm(j + 1) for j in verts}
    for j in sorted(arrow_sources):
        d1j, d2j = rep1.dim(j), rep2.dim(j)
        d1t, d2t = rep1.dim(j - 1), rep2.dim(j - 1)
        if d1j == 0 or d2t == 0:
            continue
        x1 = rep1.arrow(j)
        x2 = rep2.arrow(j)
        for a in range(d2t):
            for b in range(d1j):
                row = [F.zero] * n
                for c in range(d2j):
                    coef = x2[a][c]
                    if coef != F.zero:
                        idx = var(j, c, b)
                        row[idx] = F.add(row[idx], coef)
                for c in range(d1t):
                    coef = x1[c][b]
                    if coef != F.zero:
                        idx = var(j - 1, a, c)
                        row[idx] = F.sub(row[idx], coef)
                if any(x != F.zero for x in row):
                    rows.append(row)
    return rows, n, offsets, verts


def hom_dim_reps(rep1: NilpotentRep, rep2: NilpotentRep) -> int:
    F = rep1.field
    rows, n, _, _ = _hom_system(rep1, rep2, F)
    return n - (rank(rows, F) if rows else 0)


@lru_cache(maxsize=None)
def _hom_dim_segments(ring: VertexRing, s1: tuple[int, int], s2: tuple[int, int]) -> int:
    m1 = Multisegment(ring, {s1: 1})
    m2 = Multisegment(ring, {s2: 1})
    if not ring.cyclic:
        # place both on a common vertex range
        lo = min(s1[0], s2[0])
        hi = max(s1[0] + s1[1], s2[0] + s2[1]) - 1
        dims = {i: 0 for i in range(lo, hi + 1)}
        r1, r2 = realize(m1), realize(m2)
        r1 = NilpotentRep(ring, QQ, {**dims, **r1.dims}, r1.maps)
        r2 = NilpotentRep(ring, QQ, {**dims, **r2.dims}, r2.maps)
        return hom_dim_reps(r1, r2)
    return hom_dim_reps(realize(m1), realize(m2))


def hom_dim(m1: Multisegment, m2: Multisegment) -> int:
    """``dim Hom(k[m1], k[m2])``, additive over indecomposable summands."""
    if m1.ring != m2.ring:
        raise ValueError("multisegments over different rings")
    total = 0
    for s1, k1 in m1:
        for s2, k2 in m2:
            total += k1 * k2 * _hom_dim_segments(m1.ring, s1, s2)
    return total


def endo_dim(m: Multisegment) -> int:
    return hom_dim(m, m)


def orbit_dim(m: Multisegment) -> int:
    return sum(d * d for d in degree(m).values()) - endo_dim(m)


def closure_leq(m1: Multisegment, m2: Multisegment) -> bool:
    """Rank criterion: ``r_{i,l}(m1) <= r_{i,l}(m2)`` everywhere."""
    if m1.ring != m2.ring or degree(m1) != degree(m2):
        raise ValueError("closure order compares multisegments of equal degree")
    t1, t2 = segment_rank_table(m1), segment_rank_table(m2)
    return all(v <= t2.get(key, 0) for key, v in t1.items())


# ---------------------------------------------------------------------------
# brute-force counts over F_q


def _all_maps(ring: VertexRing, dims: dict[int, int], F):
    """Every ``x`` in ``E_V`` as a dict of matrices."""
    arrows = [i for i in dims if (ring.cyclic or (i - 1) in dims) and dims[i] and dims.get(ring.norm(i - 1), 0)]
    shapes = [(dims[ring.norm(i - 1)], dims[i]) for i in arrows]
    sizes = [r * c for r, c in shapes]
    elems = list(F.elements())
    for values in product(elems, repeat=sum(sizes)):
        maps = {}
        pos = 0
        for i, (r, c) in zip(arrows, shapes):
            flat = values[pos : pos + r * c]
            pos += r * c
            maps[i] = [list(flat[k * c : (k + 1) * c]) for k in range(r)]
        yield maps


@lru_cache(maxsize=None)
def orbit_census(ring: VertexRing, dkey: tuple[tuple[int, int], ...], q: int) -> dict:
    """Number of nilpotent ``x`` in ``E_V(F_q)`` lying in each orbit."""
    F = GF(q)
    dims = _support_vertices(ring, dict(dkey))
    counts: Counter = Counter()
    for maps in _all_maps(ring, dims, F):
        rep = NilpotentRep(ring, F, dims, maps)
        try:
            counts[classify(rep)] += 1
        except NotNilpotentError:
            pass
    return dict(counts)


def aut_count_orbit(m: Multisegment, q: int) -> int:
    """``|Aut|`` as ``|G_V| / |orbit|`` with the orbit counted point by point."""
    d = degree(m)
    census = orbit_census(m.ring, tuple(sorted(d.items())), q)
    group = 1
    for k in d.values():
        group *= gl_order(k, q)
    size = census.get(m, 0)
    if size == 0 or group % size:
        raise ArithmeticError(f"orbit count {size} does not divide |G_V| = {group}")
    return group // size


def aut_count_direct(m: Multisegment, q: int, limit: int = 200_000) -> int:
    """Enumerate ``End`` over F_q and count elements invertible in every degree."""
    F = GF(q)
    rep = realize(m, F)
    rows, n, offsets, verts = _hom_system(rep, rep, F)
    basis = nullspace(rows, n, F) if n else []
    if q ** len(basis) > limit:
        raise ValueError(f"End has {q}^{len(basis)} elements, above the enumeration limit")
    count = 0
    for coeffs in product(list(F.elements()), repeat=len(basis)):
        vec = [F.zero] * n
        for c, b in zip(coeffs, basis):
            if c != F.zero:
                vec = [F.add(x, F.mul(c, y)) for x, y in zip(vec, b)]
        ok = True
        for j in verts:
            d = rep.dim(j)
            if d == 0:
                continue
            off = offsets[j]
            block = [vec[off + r * d : off + (r + 1) * d] for r in range(d)]
            if rank(block, F) < d:
                ok = False
                break
        if ok:
            count += 1
    return count


def _type_ranks(sub, comps, dims_Q, F, ring, N):
    """Rank functions of the submodule ``sub`` and of the quotient."""
    sub_table, quo_table = {}, {}
    for i, d in dims_Q.items():
        if d == 0:
            continue
        basis_i = sub[i][0]
        for l in range(0, N + 1):
            tgt = ring.norm(i - l)
            comp = comps.get((i, l))
            if comp is None:
                break
            imgs = [apply(comp, u, F) for u in basis_i]
            rs = rank(imgs, F) if imgs and dims_Q[tgt] else 0
            if rs:
                sub_table[(i, l)] = rs
            cols = transpose(comp) if dims_Q[tgt] else []
            u_tgt = sub[tgt][0]
            span = rank(cols + u_tgt, F) if (cols or u_tgt) and dims_Q[tgt] else 0
            rq = span - len(u_tgt)
            if rq:
                quo_table[(i, l)] = rq
    return sub_table, quo_table


def submodule_census(Q: Multisegment, dsub: dict[int, int], q: int, bound: int | None = None) -> Counter:
    """Count x-stable graded subspaces of ``realize(Q)`` of dimension ``dsub``.

    Keys are ``(submodule type, quotient type)``.
    """
    check_bound(Q.size(), DEFAULT_BOUNDS.count_max_dim if bound is None else bound, "total dimension")
    ring = Q.ring
    F = GF(q)
    rep = realize(Q, F)
    dims_Q = {i: rep.dim(i) for i in (ring.residues() if ring.cyclic else rep.dims)}
    dsub = {ring.norm(i): k for i, k in dsub.items() if k}
    for i, k in dsub.items():
        if k > dims_Q.get(i, 0):
            return Counter()
    N = rep.total_dim()
    comps = {}
    for i, d in dims_Q.items():
        if d == 0:
            continue
        for l in range(0, N + 1):
            if dims_Q.get(ring.norm(i - l), 0) == 0 and l > 0:
                comps[(i, l)] = []
                break
            comps[(i, l)] = rep.composite(i, l)
    verts = sorted(dims_Q)
    options = {i: list(subspaces(dims_Q[i], dsub.get(i, 0), F)) for i in verts}
    census: Counter = Counter()

    def stable_at(i, chosen):
        # x_i(U_i) inside U_{i-1}
        j = ring.norm(i - 1)
        if j not in chosen or dims_Q.get(j, 0) == 0 or dims_Q[i] == 0:
            return True
        x = rep.arrow(i)
        tgt_rows, tgt_piv = chosen[j]
        return all(in_span(apply(x, u, F), tgt_rows, tgt_piv, F) for u in chosen[i][0])

    def rec(idx, chosen):
        if idx == len(verts):
            sub_t, quo_t = _type_ranks(chosen, comps, dims_Q, F, ring, N)
            census[(classify_ranks(sub_t, ring), classify_ranks(quo_t, ring))] += 1
            return
        i = verts[idx]
        for opt in options[i]:
            chosen[i] = opt
            ok = stable_at(i, chosen)
            nxt = ring.norm(i + 1)
            if ok and nxt in chosen:
                ok = stable_at(nxt, chosen)
            if ok:
                rec(idx + 1, chosen)
            del chosen[i]

    rec(0, {})
    return census


def count_submodules(Q: Multisegment, P: Multisegment, O: Multisegment, q: int, bound: int | None = None) -> int:
    """Submodules of ``k[Q]`` over F_q of type ``P`` and cotype ``O``."""
    dQ, dP, dO = degree(Q), degree(P), degree(O)
    keys = set(dQ) | set(dP) | set(dO)
    if any(dQ.get(k, 0) != dP.get(k, 0) + dO.get(k, 0) for k in keys):
        raise ValueError("degree(Q) must equal degree(P) + degree(O)")
    return cached_census(Q, dP, q, bound).get((P, O), 0)


@lru_cache(maxsize=4096)
def _census_key(Q: Multisegment, dkey: tuple, q: int, bound: int | None) -> Counter:
    return submodule_census(Q, dict(dkey), q, bound)


def cached_census(Q: Multisegment, dsub: dict[int, int], q: int, bound: int | None = None) -> Counter:
    """Memoized :func:`submodule_census`; callers must not mutate the result."""
    dkey = tuple(sorted((Q.ring.norm(i), k) for i, k in dsub.items() if k))
    return _census_key(Q, dkey, q, bound)


# ---------------------------------------------------------------------------
# generic commuting operator


def commutant_basis(rep: NilpotentRep) -> tuple[list, dict]:
    """Basis of ``{y : y_j : V_j -> V_{j+1}, x y = y x}``.

    Returns the basis as vectors and the layout ``j -> (offset, rows, cols)``.
    """
    ring, F = rep.ring, rep.field
    verts = rep.vertices()
    layout = {}
    n = 0
    for j in verts:
        r, c = rep.dim(j + 1), rep.dim(j)
        if r and c:
            layout[j] = (n, r, c)
            n += r * c
    if n == 0:
        return [], layout

    def y_entry(j, a, b):
        j = ring.norm(j)
        if j not in layout:
            return None
        off, r, c = layout[j]
        return off + a * c + b

    rows = []
    # (x y - y x) restricted to V_j -> V_j for each vertex j
    for j in verts:
        d = rep.dim(j)
        x_up = rep.arrow(j + 1)  # V_{j+1} -> V_j
        x_dn = rep.arrow(j)  # V_j -> V_{j-1}
        for a in range(d):
            for b in range(d):
                row = [F.zero] * n
                for c in range(rep.dim(j + 1)):
                    coef = x_up[a][c]
                    idx = y_entry(j, c, b)
                    if coef != F.zero and idx is not None:
                        row[idx] = F.add(row[idx], coef)
                for c in range(rep.dim(j - 1)):
                    coef = x_dn[c][b]
                    idx = y_entry(j - 1, a, c)
                    if coef != F.zero and idx is not None:
                        row[idx] = F.sub(row[idx], coef)
                if any(v != F.zero for v in row):
                    rows.append(row)
    return nullspace(rows, n, F), layout


def transpose_up(rep: NilpotentRep, vec: list, layout: dict) -> NilpotentRep:
    """Representation ``t_y`` with arrows ``V_{j+1} -> V_j`` given by ``y_j`` transposed."""
    maps = {}
    for j, (off, r, c) in layout.items():
        y = [vec[off + a * c : off + (a + 1) * c] for a in range(r)]
        maps[rep.ring.norm(j + 1)] = transpose(y)
    return NilpotentRep(rep.ring, rep.field, dict(rep.dims), maps)


def _integral(vec):
    from math import lcm

    den = 1
    for x in vec:
        den = lcm(den, Fraction(x).denominator)
    return [Fraction(x) * den for x in vec]


@dataclass
class GenericDualResult:
    dual: Multisegment
    samples: int
    draws: int
    commutant_dim: int


def generic_commutant_dual(
    m: Multisegment,
    seed: int = 0,
    samples: int = 5,
    coeff_bound: int = 10,
    max_draws: int | None = None,
    detail: bool = False,
):
    """Orbit of the transpose of a generic ``y`` commuting with ``x = realize(m)``.

    Random integer combinations of a basis of the commutant are drawn until
    ``samples`` draws attain the pointwise maximal rank function; that orbit
    is returned. Non-nilpotent draws are discarded.
    """
    from .involution import NonAperiodicError

    if m.ring.cyclic and not is_aperiodic(m):
        raise NonAperiodicError(f"{m} is not aperiodic over {m.ring}")
    rng = random.Random(seed)
    rep = realize(m, QQ)
    basis, layout = commutant_basis(rep)
    basis = [_integral(b) for b in basis]
    max_draws = max_draws if max_draws is not None else 4 * samples
    results: list[tuple[dict, Multisegment]] = []
    draws = 0
    while draws < max_draws:
        draws += 1
        coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in basis]
        vec = [Fraction(0)] * sum(r * c for _, r, c in layout.values())
        for c, b in zip(coeffs, basis):
            if c:
                vec = [x + c * y for x, y in zip(vec, b)]
        ty = transpose_up(rep, vec, layout)
        try:
            dual = classify(ty)
        except NotNilpotentError:
            continue
        results.append((ty.rank_table() if ty.total_dim() else {}, dual))
        if len(results) >= samples:
            top = {}
            for table, _ in results:
                for key, v in table.items():
                    top[key] = max(top.get(key, 0), v)
            hits = [d for table, d in results if table == top]
            if len(hits) >= samples:
                out = GenericDualResult(hits[0], len(hits), draws, len(basis))
                return out if detail else out.dual
    raise GenericityNotReached(
        f"{len(results)} nilpotent draws out of {draws} never reached {samples} agreeing generic samples for {m}"
    )
