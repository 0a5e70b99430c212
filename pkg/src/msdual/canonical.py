"""Canonical basis on the PBW basis from bar-invariant crystal monomials.

Each aperiodic ``m`` gets a monomial ``A_m``: divided powers of the ``f_i``
along the rebuild word of its crystal path. Monomials are bar-invariant and
expand positively in the canonical basis, so ``b_m`` is obtained from
``A_m`` by repeatedly subtracting ``gamma * b_m'`` where ``m'`` is a
closure-maximal index whose coefficient lies outside ``v Z[v]`` and
``gamma`` is the bar-symmetric part of that coefficient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import groupby

from .config import DEFAULT_BOUNDS, check_bound
from .core import (
    Multisegment,
    VertexRing,
    degree,
    degree_key,
    format_multisegment,
    is_aperiodic,
    multisegments_of_degree,
    negate_degree,
)
from .crystal import highest_weight_path
from .hallpbw import PBWVector, f_power
from .involution import NonAperiodicError, sharp
from .laurent import ONE, ZERO, LaurentPoly, bar_symmetric_part, format_laurent
from .quiverrep import closure_leq, orbit_dim


class InvariantViolation(AssertionError):
    pass


class LeadingTermFailure(AssertionError):
    pass


class CorrectionStalled(RuntimeError):
    pass


Word = tuple[tuple[int, int], ...]


def divided_word(m: Multisegment) -> Word:
    """Rebuild word of the crystal path grouped into ``(residue, power)`` runs."""
    path = highest_weight_path(m)
    if path.top:
        raise NonAperiodicError(f"{m} is not in the component of the empty multisegment")
    return tuple((i, len(list(g))) for i, g in groupby(path.rebuild))


def monomial_from_word(ring: VertexRing, word: Word) -> PBWVector:
    u = PBWVector.basis(Multisegment.empty(ring))
    for i, a in word:
        u = f_power(i, u, a)
    return u


def monomial_for(m: Multisegment) -> PBWVector:
    """``f_{i_k}^{(a_k)} ... f_{i_1}^{(a_1)} <empty>`` along the crystal path of ``m``."""
    if m.ring.cyclic and not is_aperiodic(m):
        raise NonAperiodicError(f"{m} is not aperiodic over {m.ring}")
    A = monomial_from_word(m.ring, divided_word(m))
    lead = A[m]
    if not lead or not lead.nonnegative() or lead.min_exp() != 0 or lead[0] != 1:
        raise LeadingTermFailure(f"coefficient of <{m}> in its monomial is {lead}, expected 1 + v N[v]")
    return A


@dataclass
class CanonicalTable:
    ring: VertexRing
    deg: dict[int, int]
    basis: dict[Multisegment, PBWVector] = field(default_factory=dict)
    # b_m as a combination of monomials A_m' (bar-invariant coefficients)
    in_monomials: dict[Multisegment, dict[Multisegment, LaurentPoly]] = field(default_factory=dict)
    words: dict[Multisegment, Word] = field(default_factory=dict)
    order: list[Multisegment] = field(default_factory=list)

    def indices(self) -> list[Multisegment]:
        return sorted(self.basis)

    def coefficient(self, m: Multisegment, m2: Multisegment) -> LaurentPoly:
        return self.basis[m][m2]

    def check(self) -> None:
        """Unitriangularity with off-diagonal entries in ``v N[v]``."""
        for m, b in self.basis.items():
            if b[m] != ONE:
                raise InvariantViolation(f"coefficient of <{m}> in b[{m}] is {b[m]}, not 1")
            for m2, c in b.items():
                if m2 == m:
                    continue
                if not c.in_v_z_v():
                    raise InvariantViolation(f"b[{m}] has coefficient {c} at <{m2}> outside v Z[v]")
                if not c.nonnegative():
                    raise InvariantViolation(f"b[{m}] has negative coefficient {c} at <{m2}>")
                if not closure_leq(m2, m):
                    raise InvariantViolation(f"b[{m}] is supported on <{m2}>, outside the orbit closure")

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "degree": {str(i): k for i, k in sorted(self.deg.items())},
            "basis": [
                {
                    "index": format_multisegment(m),
                    "terms": [{"pbw": format_multisegment(m2), "coeff": c.to_json()} for m2, c in self.basis[m].items()],
                }
                for m in self.indices()
            ],
        }

    def format_rows(self) -> list[str]:
        rows = []
        for m in self.indices():
            b = self.basis[m]
            terms = [f"<{format_multisegment(m)}>"]
            for m2, c in sorted(b.items(), key=lambda t: (-orbit_dim(t[0]), t[0])):
                if m2 == m:
                    continue
                text = format_laurent(c)
                if len(c.coeffs) > 1:
                    text = f"({text})"
                terms.append(f"{text}<{format_multisegment(m2)}>")
            rows.append(f"b[{format_multisegment(m)}] = " + " + ".join(terms))
        return rows


def linear_extension(ms: list[Multisegment], order: str = "dim", seed: int = 0) -> list[Multisegment]:
    """Indices sorted compatibly with closure order, largest orbit first.

    ``"dim"`` breaks ties by the canonical key, ``"dim-reversed"`` by the
    reversed key, ``"random"`` shuffles ties with ``seed``.
    """
    rng = random.Random(seed)
    tiebreak = {m: k for k, m in enumerate(sorted(ms))}
    if order == "dim":
        key = lambda m: (-orbit_dim(m), tiebreak[m])
    elif order == "dim-reversed":
        key = lambda m: (-orbit_dim(m), -tiebreak[m])
    elif order == "random":
        noise = {m: rng.random() for m in ms}
        key = lambda m: (-orbit_dim(m), noise[m])
    else:
        raise ValueError(f"unknown order {order!r}")
    return sorted(ms, key=key)


def _bad_positions(X: PBWVector, m: Multisegment, aperiodic: set) -> list[Multisegment]:
    return [m2 for m2, c in X.items() if m2 != m and m2 in aperiodic and not c.in_v_z_v()]


def canonical_basis(
    ring: VertexRing,
    d: dict[int, int],
    order: str = "dim",
    seed: int = 0,
    bound: int | None = None,
    check: bool = True,
) -> CanonicalTable:
    d = {ring.norm(i): k for i, k in d.items() if k}
    limit = bound if bound is not None else DEFAULT_BOUNDS.canonical_bound(ring.n if ring.cyclic else None)
    check_bound(sum(d.values()), limit, "total degree")
    candidates = multisegments_of_degree(ring, d)
    indices = [m for m in candidates if not ring.cyclic or is_aperiodic(m)]
    aperiodic = set(indices)
    seq = linear_extension(indices, order, seed)
    rank = {m: k for k, m in enumerate(seq)}
    table = CanonicalTable(ring, d, order=seq)

    current: dict[Multisegment, PBWVector] = {}
    track: dict[Multisegment, dict[Multisegment, LaurentPoly]] = {}
    for m in seq:
        table.words[m] = divided_word(m)
        current[m] = monomial_for(m)
        track[m] = {m: ONE}

    pending = list(seq)
    while pending:
        progressed = False
        still = []
        for m in pending:
            X = current[m]
            while True:
                bad = _bad_positions(X, m, aperiodic)
                if not bad:
                    break
                top = [b for b in bad if not any(b != c and closure_leq(b, c) for c in bad)]
                m2 = min(top, key=lambda t: rank[t])
                if m2 not in table.basis:
                    break
                gamma = bar_symmetric_part(X[m2])
                X = X - table.basis[m2].scale(gamma)
                for k, g in table.in_monomials[m2].items():
                    new = track[m].get(k, ZERO) - gamma * g
                    if new:
                        track[m][k] = new
                    else:
                        track[m].pop(k, None)
                progressed = True
            current[m] = X
            if bad:
                still.append(m)
            else:
                if X[m] != ONE:
                    raise InvariantViolation(f"corrected element for {m} has leading coefficient {X[m]}")
                table.basis[m] = X
                table.in_monomials[m] = track[m]
                progressed = True
        if still and not progressed:
            raise CorrectionStalled(
                "no canonical element can be finished; waiting indices: "
                + ", ".join(format_multisegment(m) for m in still)
            )
        pending = still
    if check:
        table.check()
    return table


# ---------------------------------------------------------------------------
# the sharp symmetry


@dataclass
class SharpReport:
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def negate_word(ring: VertexRing, word: Word) -> Word:
    return tuple((ring.norm(-i), a) for i, a in word)


def sharp_on_canonical(table: CanonicalTable, image: CanonicalTable | None = None) -> SharpReport:
    """Check that the automorphism ``f_i -> f_{-i}`` sends ``b_m`` to ``b_{sharp(m)}``.

    ``b_m`` is rewritten through its monomial expansion; each monomial word is
    negated and re-evaluated in the negated degree.
    """
    ring = table.ring
    if image is None:
        image = canonical_basis(ring, negate_degree(table.deg, ring), check=False)
    report = SharpReport()
    cache: dict[Multisegment, PBWVector] = {}
    for m in table.indices():
        report.checked += 1
        target = sharp(m)
        total = PBWVector(ring, deg=degree_key(negate_degree(table.deg, ring)))
        for k, g in table.in_monomials[m].items():
            if k not in cache:
                cache[k] = monomial_from_word(ring, negate_word(ring, table.words[k]))
            total = total + cache[k].scale(g)
        expected = image.basis.get(target)
        if expected is None or total != expected:
            report.mismatches.append(f"b[{m}] maps to {total}, expected b[{target}] = {expected}")
    return report


def flat_relabel(u: PBWVector) -> PBWVector:
    """Relabel every PBW index by the segment reflection ``[i;l) -> (l;-i]``."""
    from .core import flat

    out = PBWVector(u.ring)
    for m, c in u.items():
        out = out + PBWVector(u.ring, {flat(m): c})
    return out


def flat_relabel_report(table: CanonicalTable, image: CanonicalTable | None = None) -> SharpReport:
    """Check ``flat`` on indices sends ``b_m`` to ``b_{flat(m)}``."""
    from .core import flat

    ring = table.ring
    if image is None:
        image = canonical_basis(ring, negate_degree(table.deg, ring), check=False)
    report = SharpReport()
    for m in table.indices():
        report.checked += 1
        got = flat_relabel(table.basis[m])
        expected = image.basis.get(flat(m))
        if expected is None or got != expected:
            report.mismatches.append(f"flat(b[{m}]) = {got}, expected b[{flat(m)}] = {expected}")
    return report


def degrees_up_to(ring: VertexRing, total: int) -> list[dict[int, int]]:
    """Every degree vector of the given total carried by some aperiodic multisegment."""
    from .core import multisegments_of_size

    seen = {}
    for m in multisegments_of_size(ring, total):
        if ring.cyclic and not is_aperiodic(m):
            continue
        seen.setdefault(degree_key(degree(m)), degree(m))
    return [seen[k] for k in sorted(seen)]
