"""The involutions sharp and tau on multisegments, plus partition oracles.

``sharp`` reads a crystal path from the empty multisegment and replays it with
negated residues. ``tau = sharp o flat``. ``mw_dual`` computes tau along the
distinguished descent (minimal head, then minimal length) over Z. Partitions
enter through the row embedding and the Mullineux map.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .core import Multisegment, VertexRing, flat, is_aperiodic
from .crystal import Path, apply_word, f_tilde, highest_weight_path, minus


class NonAperiodicError(ValueError):
    """The multisegment lies outside the component of the empty multisegment."""


class InvolutionInvariantError(AssertionError):
    pass


def _require_aperiodic(m: Multisegment) -> None:
    if m.ring.cyclic and not is_aperiodic(m):
        raise NonAperiodicError(f"{m} is not aperiodic over {m.ring}")


def replay_negated(path: Path, ring: VertexRing) -> Multisegment:
    start = Multisegment.empty(ring)
    return apply_word(start, (ring.norm(-i) for i in path.rebuild))


def sharp(m: Multisegment, path: Path | None = None) -> Multisegment:
    """Image of ``m`` under the residue symmetry ``i <-> -i`` of the crystal."""
    if path is None:
        return _sharp_along_default_path(m)
    _require_aperiodic(m)
    if path.top:
        raise InvolutionInvariantError(f"descent from {m} stopped at {path.top}, not at 0")
    return replay_negated(path, m.ring)


@lru_cache(maxsize=262_144)
def _sharp_along_default_path(m: Multisegment) -> Multisegment:
    _require_aperiodic(m)
    path = highest_weight_path(m)
    if path.top:
        raise InvolutionInvariantError(f"descent from {m} stopped at {path.top}, not at 0")
    return replay_negated(path, m.ring)


def tau(m: Multisegment, check: bool = True) -> Multisegment:
    """Zelevinsky's involution, ``sharp(flat(m))``.

    With ``check`` the commuting composite ``flat(sharp(m))`` is evaluated too
    and must agree.
    """
    _require_aperiodic(m)
    out = sharp(flat(m))
    if check:
        other = flat(sharp(m))
        if other != out:
            raise InvolutionInvariantError(f"sharp.flat and flat.sharp disagree on {m}: {out} vs {other}")
    return out


def mw_path(m: Multisegment) -> Path:
    """Descent picking the segment with minimal head, then minimal length."""
    if m.ring.cyclic:
        raise ValueError("the distinguished descent needs a total order on vertices (Z only)")
    removal = []
    while m:
        head, length = min(((o + l - 1), l) for (o, l), _ in m)
        prev = minus(m, length, head)
        if f_tilde(prev, head) != m:
            raise InvolutionInvariantError(f"no arrow {prev} -{head}-> {m}")
        removal.append(head)
        m = prev
    return Path(tuple(removal), m)


def mw_dual(m: Multisegment) -> Multisegment:
    """Zelevinsky's involution over Z along the Moeglin-Waldspurger descent."""
    if m.ring.cyclic:
        raise ValueError("mw_dual is defined over Z only")
    return replay_negated(mw_path(flat(m)), m.ring)


# ---------------------------------------------------------------------------
# partitions

Partition = tuple[int, ...]


def partitions(total: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``total`` in reverse lexicographic order."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def conjugate(la: Partition) -> Partition:
    if not la:
        return ()
    return tuple(sum(1 for p in la if p > c) for c in range(la[0]))


def is_regular(la: Partition, n: int) -> bool:
    """No part repeated ``n`` or more times."""
    run = 1
    for a, b in zip(la, la[1:]):
        run = run + 1 if a == b else 1
        if run >= n:
            return False
    return not (la and n <= 1)


def regular_partitions(total: int, n: int) -> list[Partition]:
    return [la for la in partitions(total) if is_regular(la, n)]


def partition_to_multisegment(la: Partition, ring: VertexRing) -> Multisegment:
    """Row ``r`` (from 1) becomes ``[1-r; la_r)``, so cell ``(r, c)`` has content ``c - r``."""
    return Multisegment.from_segments(ring, ((1 - r, part) for r, part in enumerate(la, start=1)))


def rim_segments(la: Partition, e: int) -> list[list[tuple[int, int]]]:
    """The ``e``-segments of the rim, cells as ``(row, col)`` from 0."""
    rows = len(la)
    segs = []
    start = 0
    while start < rows:
        seg = []
        r, c = start, la[start] - 1
        while len(seg) < e:
            seg.append((r, c))
            # walk the rim: down when the cell below exists, otherwise left
            if r + 1 < rows and la[r + 1] > c:
                r += 1
            elif c > 0:
                c -= 1
            else:
                break
        segs.append(seg)
        start = seg[-1][0] + 1
    return segs


def _rim_cells(la: Partition, e: int) -> list[tuple[int, int]]:
    return [cell for seg in rim_segments(la, e) for cell in seg]


def remove_rim(la: Partition, e: int) -> Partition:
    rows = list(la)
    for r, _ in _rim_cells(la, e):
        rows[r] -= 1
    return tuple(p for p in rows if p > 0)


def mullineux_symbol(la: Partition, e: int) -> tuple[tuple[int, int], ...]:
    """Columns ``(a_k, r_k)``: rim size removed and number of rows at step ``k``."""
    cols = []
    while la:
        removed = len(_rim_cells(la, e))
        cols.append((removed, len(la)))
        la = remove_rim(la, e)
    return tuple(cols)


@lru_cache(maxsize=None)
def _symbol_table(total: int, e: int) -> dict:
    table = {}
    for la in regular_partitions(total, e):
        sym = mullineux_symbol(la, e)
        if sym in table:
            raise InvolutionInvariantError(f"Mullineux symbol {sym} is not injective at {la}")
        table[sym] = la
    return table


def mullineux(la: Partition, e: int) -> Partition:
    """Mullineux's bijection on ``e``-regular partitions via rim removal.

    The image symbol has columns ``(a, a - r + [e does not divide a])``; the
    partition carrying it is found by searching all ``e``-regular partitions
    of the same size.
    """
    la = tuple(la)
    if not is_regular(la, e):
        raise ValueError(f"{la} is not {e}-regular")
    sym = mullineux_symbol(la, e)
    image = tuple((a, a - r + (1 if a % e else 0)) for a, r in sym)
    table = _symbol_table(sum(la), e)
    if image not in table:
        raise InvolutionInvariantError(f"no {e}-regular partition has Mullineux symbol {image}")
    return table[image]
