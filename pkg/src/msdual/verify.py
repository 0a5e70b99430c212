"""Verification suites: each check sweeps a family of inputs and records failures."""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .core import (
    Multisegment,
    VertexRing,
    Z,
    degree,
    degree_key,
    flat,
    is_aperiodic,
    multisegments_of_size,
    zmod,
)
from .crystal import (
    apply_word,
    crystal_graph,
    e_tilde,
    embed_phi,
    f_tilde,
    highest_weight_path,
    random_descent,
)
from .hallpbw import PBWVector, aut_order, check_f_against_counts, e_prime_action, f_action, scalar_product
from .involution import (
    conjugate,
    mullineux,
    mw_dual,
    partition_to_multisegment,
    partitions,
    regular_partitions,
    sharp,
    tau,
)
from .quiverrep import aut_count_direct, aut_count_orbit, classify, generic_commutant_dual, realize

MAX_REPORTED = 20


@dataclass
class Check:
    name: str
    criterion: int | None = None
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    failure_count: int = 0
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failure_count == 0 and self.cases > 0

    def case(self, passed: bool, detail: Callable[[], str] | str = "") -> None:
        self.cases += 1
        if not passed:
            self.failure_count += 1
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(detail() if callable(detail) else detail)

    def to_json(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        check = fn(*args, **kwargs)
        check.seconds = round(time.perf_counter() - start, 3)
        return check

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _guard(check: Check, fn, label: str) -> None:
    """Run one case; exceptions count as failures rather than aborting the sweep."""
    try:
        fn()
    except Exception as exc:  # noqa: BLE001 - report every failure mode
        check.case(False, f"{label}: {type(exc).__name__}: {exc}")


def _vertices(ring: VertexRing, max_degree: int) -> Iterable[Multisegment]:
    for total in range(max_degree + 1):
        for m in multisegments_of_size(ring, total):
            if not ring.cyclic or is_aperiodic(m):
                yield m


# ---------------------------------------------------------------------------
# involutions


@_timed
def check_involution_laws(rings: dict[VertexRing, int]) -> Check:
    """Squares of sharp, tau, flat are trivial and tau = sharp.flat = flat.sharp."""
    check = Check("involution laws", 1)
    for ring, bound in rings.items():
        for m in _vertices(ring, bound):
            def case(m=m):
                s = sharp(m)
                fl = flat(m)
                t = tau(m)
                ok = sharp(s) == m and flat(fl) == m and tau(t) == m and t == sharp(fl) == flat(s)
                check.case(ok, lambda: f"{ring}: laws fail at {m}")
            _guard(check, case, f"{ring} {m}")
    return check


def random_vertex(ring: VertexRing, rng: random.Random, max_degree: int) -> Multisegment:
    residues = list(ring.residues()) if ring.cyclic else list(range(-3, 4))
    word = [rng.choice(residues) for _ in range(rng.randint(1, max_degree))]
    return apply_word(Multisegment.empty(ring), word)


@_timed
def check_path_independence(rings: Iterable[VertexRing], count: int = 100, orders: int = 3, seed: int = 0, max_degree: int = 8) -> Check:
    check = Check("path independence of sharp", 2)
    rng = random.Random(seed)
    for ring in rings:
        for _ in range(count):
            m = random_vertex(ring, rng, max_degree)
            ref = sharp(m)
            outs = [sharp(m, random_descent(m, random.Random(rng.random()))) for _ in range(orders)]
            check.case(all(o == ref for o in outs), lambda: f"{ring}: {m} gives {sorted(map(str, set(outs)))} vs {ref}")
    return check


@_timed
def check_mw_agreement(max_degree: int = 8) -> Check:
    check = Check("Moeglin-Waldspurger descent equals tau", 3)
    for m in _vertices(Z, max_degree):
        _guard(check, lambda m=m: check.case(mw_dual(m) == tau(m), lambda: f"{m}: {mw_dual(m)} vs {tau(m)}"), str(m))
    return check


@_timed
def check_conjugation(max_size: int = 8) -> Check:
    check = Check("generic case is partition conjugation", 4)
    for total in range(1, max_size + 1):
        for la in partitions(total):
            got = sharp(partition_to_multisegment(la, Z))
            want = partition_to_multisegment(conjugate(la), Z)
            check.case(got == want, lambda: f"{la}: {got} vs {want}")
    return check


@_timed
def check_mullineux(ns: Iterable[int] = (2, 3), max_size: int = 8) -> Check:
    check = Check("sharp agrees with the Mullineux map", 5)
    for n in ns:
        ring = zmod(n)
        for total in range(1, max_size + 1):
            for la in regular_partitions(total, n):
                got = sharp(partition_to_multisegment(la, ring))
                image = mullineux(la, n)
                want = partition_to_multisegment(image, ring)
                check.case(got == want, lambda: f"n={n} {la}: sharp gives {got}, Mullineux gives {image}")
    return check


# ---------------------------------------------------------------------------
# Hall algebra


@_timed
def check_hall_counts(ns: Iterable[int] = (2, 3), max_dim: int = 4, qs: Iterable[int] = (2, 3, 4)) -> Check:
    check = Check("f_i on PBW matches Hall counts", 6)
    qs = tuple(qs)
    for n in ns:
        ring = zmod(n)
        for total in range(max_dim + 1):
            for m in multisegments_of_size(ring, total):
                for i in ring.residues():
                    for row in check_f_against_counts(m, i, qs):
                        check.case(row.ok, lambda: f"n={n} f_{i}<{m}> at <{row.Q}>: {row.coefficient}, expected {row.expected}, counted {row.observed}")
    return check


@_timed
def check_adjointness(ns: Iterable[int] = (2, 3), max_degree: int = 5) -> Check:
    check = Check("f_i and e'_i are adjoint", 7)
    for n in ns:
        ring = zmod(n)
        by_degree: dict = {}
        for total in range(max_degree + 1):
            for m in multisegments_of_size(ring, total):
                by_degree.setdefault(degree_key(degree(m)), []).append(m)
        for total in range(max_degree):
            for m in multisegments_of_size(ring, total):
                u = PBWVector.basis(m)
                for i in ring.residues():
                    fu = f_action(i, u)
                    d = degree(m)
                    d[i] = d.get(i, 0) + 1
                    for w in by_degree.get(degree_key(d), []):
                        bw = PBWVector.basis(w)
                        ok = scalar_product(fu, bw) == scalar_product(u, e_prime_action(i, bw))
                        check.case(ok, lambda: f"n={n} i={i} ({m}, {w})")
    return check


@_timed
def check_aut_orders(rings: Iterable[VertexRing], max_dim: int = 4, qs: Iterable[int] = (2, 3), direct_limit: int = 20_000) -> Check:
    """Automorphism group orders against the orbit census (and direct enumeration when small)."""
    check = Check("automorphism orders", 8)
    for ring in rings:
        for total in range(1, max_dim + 1):
            for m in multisegments_of_size(ring, total):
                for q in qs:
                    formula = aut_order(m, q)
                    counted = aut_count_orbit(m, q)
                    check.case(formula == counted, lambda: f"{ring} {m} q={q}: formula {formula}, census {counted}")
                    try:
                        direct = aut_count_direct(m, q, limit=direct_limit)
                    except ValueError:
                        continue
                    check.case(formula == direct, lambda: f"{ring} {m} q={q}: formula {formula}, direct {direct}")
    return check


# ---------------------------------------------------------------------------
# crystal


@_timed
def check_crystal(ns: Iterable[int] = (2, 3), max_degree: int = 6, counts: dict | None = None) -> Check:
    check = Check("crystal structure", 9)
    for n in ns:
        ring = zmod(n)
        for total in range(max_degree + 1):
            for m in multisegments_of_size(ring, total):
                ap = is_aperiodic(m)
                for i in ring.residues():
                    up = f_tilde(m, i)
                    check.case(e_tilde(up, i) == m, lambda: f"n={n}: e_{i} f_{i} {m} = {e_tilde(up, i)}")
                    down = e_tilde(m, i)
                    if down is not None:
                        check.case(f_tilde(down, i) == m, lambda: f"n={n}: f_{i} e_{i} {m}")
                    check.case(is_aperiodic(up) == ap, lambda: f"n={n}: f_{i} changes aperiodicity of {m}")
                    lhs = embed_phi(up, i)
                    rhs = f_tilde(embed_phi(m, i), i)
                    check.case(lhs == rhs, lambda: f"n={n}: intertwining fails at {m}, i={i}: {lhs} vs {rhs}")
                top = highest_weight_path(m).top
                check.case((not top) == ap, lambda: f"n={n}: descent from {m} ends at {top}")
    for n, expected in (counts or {3: [1, 3, 9, 21]}).items():
        got = crystal_graph(zmod(n), len(expected) - 1).counts_by_size()
        check.case(got == expected, lambda: f"n={n}: vertex counts {got}, expected {expected}")
        check.notes.append(f"n={n} vertex counts {got}")
    return check


# ---------------------------------------------------------------------------
# canonical basis


@_timed
def check_canonical(bounds: dict[VertexRing, int]) -> Check:
    from .canonical import canonical_basis, degrees_up_to, sharp_on_canonical

    check = Check("canonical basis", 10)
    for ring, bound in bounds.items():
        for total in range(1, bound + 1):
            for d in degrees_up_to(ring, total):
                label = f"{ring} d={d}"
                try:
                    table = canonical_basis(ring, d)
                except Exception as exc:  # noqa: BLE001
                    check.case(False, f"{label}: {type(exc).__name__}: {exc}")
                    continue
                check.case(True)
                for order in ("dim-reversed", "random"):
                    other = canonical_basis(ring, d, order=order, seed=total)
                    check.case(other.basis == table.basis, f"{label}: order {order} changes the table")
                report = sharp_on_canonical(table)
                check.case(report.ok, lambda: f"{label}: {report.mismatches[:2]}")
    return check


# ---------------------------------------------------------------------------
# geometry and realizations


@_timed
def check_geometry(rings: dict[VertexRing, int], seed: int = 0) -> Check:
    check = Check("generic commutant realizes tau", 11)
    for ring, bound in rings.items():
        for m in _vertices(ring, bound):
            def case(m=m):
                got = generic_commutant_dual(m, seed=seed)
                want = tau(m) if ring.cyclic else mw_dual(m)
                check.case(got == want, lambda: f"{ring} {m}: generic {got}, expected {want}")
            _guard(check, case, f"{ring} {m}")
    return check


@_timed
def check_roundtrip(rings: dict[VertexRing, int], random_cases: int = 200, seed: int = 0, random_degree: tuple[int, int] = (7, 12)) -> Check:
    check = Check("classify inverts realize", 12)
    for ring, bound in rings.items():
        for total in range(bound + 1):
            for m in multisegments_of_size(ring, total):
                check.case(classify(realize(m)) == m, lambda: f"{ring} {m}")
    rng = random.Random(seed)
    ring_list = list(rings)
    for _ in range(random_cases):
        ring = rng.choice(ring_list)
        m = random_multisegment(ring, rng, rng.randint(*random_degree))
        check.case(classify(realize(m)) == m, lambda: f"{ring} {m}")
    return check


def random_multisegment(ring: VertexRing, rng: random.Random, total: int) -> Multisegment:
    data: dict = {}
    left = total
    while left:
        length = rng.randint(1, left)
        origin = rng.randrange(ring.n) if ring.cyclic else rng.randint(-3, 3)
        data[(origin, length)] = data.get((origin, length), 0) + 1
        left -= length
    return Multisegment(ring, data)


# ---------------------------------------------------------------------------
# suites


SUITES = ("involution", "crystal", "hall", "canonical", "geometry", "mullineux", "all")


@dataclass
class SuiteOptions:
    rings: list[VertexRing] | None = None
    max_degree: int | None = None
    max_dim: int | None = None
    ns: list[int] | None = None
    seed: int = 0
    quick: bool = False


def _ring_bounds(opts: SuiteOptions, default: dict[VertexRing, int]) -> dict[VertexRing, int]:
    rings = opts.rings or list(default)
    out = {}
    for ring in rings:
        bound = default.get(ring, min(default.values()))
        if opts.max_degree is not None:
            bound = opts.max_degree
        out[ring] = bound
    return out


def _ns(opts: SuiteOptions, default=(2, 3)) -> list[int]:
    if opts.ns:
        return list(opts.ns)
    if opts.rings:
        cyc = [r.n for r in opts.rings if r.cyclic]
        if cyc:
            return cyc
    return list(default)


def suite_checks(name: str, opts: SuiteOptions) -> list[Callable[[], Check]]:
    q = opts.quick
    cyc_deg = 4 if q else 6
    z_deg = 5 if q else 8

    if name == "involution":
        bounds = _ring_bounds(opts, {zmod(2): cyc_deg, zmod(3): cyc_deg, Z: z_deg})
        zb = bounds.get(Z, opts.max_degree if opts.max_degree is not None else z_deg)
        out = [
            lambda: check_involution_laws(bounds),
            lambda: check_path_independence(list(bounds), count=30 if q else 100, seed=opts.seed),
        ]
        if opts.rings is None or Z in opts.rings:
            out += [lambda: check_mw_agreement(zb), lambda: check_conjugation(zb)]
        return out
    if name == "mullineux":
        return [lambda: check_mullineux(_ns(opts), opts.max_degree or (6 if q else 8))]
    if name == "hall":
        dim = opts.max_dim or (3 if q else 4)
        ns = _ns(opts)
        rings = [zmod(n) for n in ns]
        return [
            lambda: check_hall_counts(ns, dim),
            lambda: check_adjointness(ns, dim + 1),
            lambda: check_aut_orders(rings + ([] if opts.ns else [Z]), dim),
        ]
    if name == "crystal":
        ns = _ns(opts)
        return [lambda: check_crystal(ns, opts.max_degree or cyc_deg)]
    if name == "canonical":
        default = {zmod(2): 4 if q else 6, zmod(3): 3 if q else 4, Z: 3 if q else 4}
        if opts.ns:
            default = {zmod(n): default.get(zmod(n), 3) for n in opts.ns}
        return [lambda: check_canonical(_ring_bounds(opts, default))]
    if name == "geometry":
        gdeg = 4 if q else 6
        geo = _ring_bounds(opts, {zmod(2): gdeg, zmod(3): gdeg, Z: gdeg})
        rt = _ring_bounds(opts, {zmod(2): gdeg, zmod(3): gdeg, zmod(4): gdeg, Z: gdeg})
        return [
            lambda: check_geometry(geo, seed=opts.seed),
            lambda: check_roundtrip(rt, random_cases=50 if q else 200, seed=opts.seed),
        ]
    if name == "all":
        out = []
        for sub in SUITES[:-1]:
            out += suite_checks(sub, opts)
        return out
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def run_verify(name: str, opts: SuiteOptions | None = None) -> dict:
    opts = opts or SuiteOptions()
    checks = [fn() for fn in suite_checks(name, opts)]
    failed = sum(1 for c in checks if not c.ok)
    return {
        "suite": name,
        "seed": opts.seed,
        "quick": opts.quick,
        "checks": [c.to_json() for c in checks],
        "passed": len(checks) - failed,
        "failed": failed,
        "exit_code": 0 if failed == 0 else 1,
    }
