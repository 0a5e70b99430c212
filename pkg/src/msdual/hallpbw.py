"""The twisted Hall algebra in the PBW basis ``<m> = v^{dim O_m} u_{O_m}``.

``f_action`` and ``e_prime_action`` are the closed formulas for the
generators and their adjoints; ``hall_product`` is the general product with
Hall polynomials interpolated from brute-force counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .config import DEFAULT_BOUNDS, check_bound
from .core import Multisegment, VertexRing, degree, degree_key, multisegment_from_json, multisegments_of_degree
from .crystal import minus, plus
from .laurent import ONE, V, ZERO, LaurentPoly, RationalFunction, gauss_factorial, gauss_int
from .quiverrep import cached_census, endo_dim, orbit_dim


class DegreeMismatch(ValueError):
    pass


class InterpolationError(ArithmeticError):
    pass


class PBWVector:
    """Finite combination of PBW basis elements, homogeneous of one degree."""

    __slots__ = ("ring", "deg", "_c")

    def __init__(self, ring: VertexRing, coeffs: Mapping[Multisegment, LaurentPoly] | None = None, deg=None):
        self.ring = ring
        self._c: dict[Multisegment, LaurentPoly] = {}
        self.deg = None if deg is None else (deg if isinstance(deg, tuple) else degree_key(deg))
        for m, c in (coeffs or {}).items():
            if isinstance(c, int):
                c = LaurentPoly.const(c)
            self._add_term(m, c)

    def _add_term(self, m: Multisegment, c: LaurentPoly) -> None:
        if m.ring != self.ring:
            raise ValueError(f"{m} is not over {self.ring}")
        dk = degree_key(degree(m))
        if self.deg is None:
            self.deg = dk
        elif dk != self.deg:
            raise DegreeMismatch(f"{m} has degree {dict(dk)}, vector has degree {dict(self.deg)}")
        new = self._c.get(m, ZERO) + c
        if new:
            self._c[m] = new
        else:
            self._c.pop(m, None)

    @classmethod
    def basis(cls, m: Multisegment) -> "PBWVector":
        return cls(m.ring, {m: ONE})

    @classmethod
    def zero(cls, ring: VertexRing, deg=None) -> "PBWVector":
        return cls(ring, deg=deg)

    def degree(self) -> dict[int, int]:
        return dict(self.deg or ())

    def __getitem__(self, m: Multisegment) -> LaurentPoly:
        return self._c.get(m, ZERO)

    def items(self) -> list[tuple[Multisegment, LaurentPoly]]:
        return sorted(self._c.items(), key=lambda t: t[0])

    def support(self) -> list[Multisegment]:
        return sorted(self._c)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def copy(self) -> "PBWVector":
        out = PBWVector(self.ring, deg=self.deg)
        out._c = dict(self._c)
        return out

    def __add__(self, other: "PBWVector") -> "PBWVector":
        out = self.copy()
        if other.deg is not None and out.deg is not None and other.deg != out.deg and other and out:
            raise DegreeMismatch("adding PBW vectors of different degrees")
        if not out:
            out.deg = other.deg
        for m, c in other._c.items():
            out._add_term(m, c)
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "PBWVector") -> "PBWVector":
        return self + (-other)

    def scale(self, c) -> "PBWVector":
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        out = PBWVector(self.ring, deg=self.deg)
        for m, x in self._c.items():
            y = x * c
            if y:
                out._c[m] = y
        return out

    def __rmul__(self, c):
        return self.scale(c)

    def divide(self, d: LaurentPoly) -> "PBWVector":
        """Exact division of every coefficient; raises ``DivisionFailure`` otherwise."""
        out = PBWVector(self.ring, deg=self.deg)
        for m, x in self._c.items():
            out._c[m] = x.divmod_exact(d)
        return out

    def bar_coefficients(self) -> "PBWVector":
        out = PBWVector(self.ring, deg=self.deg)
        out._c = {m: c.bar() for m, c in self._c.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, PBWVector):
            return NotImplemented
        return self.ring == other.ring and self._c == other._c

    __hash__ = None

    def __repr__(self):
        return f"PBWVector({format_pbw(self)})"

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "terms": [{"multisegment": m.to_json(), "coeff": c.to_json()} for m, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PBWVector":
        ring = VertexRing.parse(data["ring"])
        out = cls(ring)
        for term in data.get("terms", []):
            m = multisegment_from_json(term["multisegment"], ring)
            out._add_term(m, LaurentPoly.from_json(term["coeff"]))
        return out


def format_pbw(u: PBWVector) -> str:
    if not u:
        return "0"
    parts = []
    for m, c in u.items():
        label = f"<{m}>"
        if c == ONE:
            parts.append(label)
        elif len(c.coeffs) == 1:
            parts.append(f"{c}*{label}")
        else:
            parts.append(f"({c})*{label}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# bilinear forms


def bilinear_m(a: Mapping[int, int], b: Mapping[int, int], ring: VertexRing) -> int:
    """``sum_{i -> i-1} a_i b_{i-1} + sum_i a_i b_i``."""
    return sum(x * (b.get(ring.norm(i - 1), 0) + b.get(i, 0)) for i, x in a.items())


def bilinear_r(a: Mapping[int, int], b: Mapping[int, int], ring: VertexRing) -> int:
    """``-sum_{i -> i-1} a_i b_{i-1} + sum_i a_i b_i``."""
    return sum(x * (b.get(i, 0) - b.get(ring.norm(i - 1), 0)) for i, x in a.items())


# ---------------------------------------------------------------------------
# generators


def _tail_exponent(m: Multisegment, length: int, i: int) -> int:
    """``sum_{k > length} (m_(k-1;i-1] - m_(k;i])``."""
    return sum(m.mult_head(k - 1, i - 1) - m.mult_head(k, i) for k in range(length + 1, m.max_length() + 2))


def f_basis(i: int, m: Multisegment) -> dict[Multisegment, LaurentPoly]:
    i = m.ring.norm(i)
    out = {}
    for length in range(1, m.max_length() + 2):
        target = plus(m, length, i)
        if target is None:
            continue
        coef = gauss_int(m.mult_head(length, i) + 1).shift(_tail_exponent(m, length, i))
        out[target] = out.get(target, ZERO) + coef
    return out


def e_prime_basis(i: int, m: Multisegment) -> dict[Multisegment, LaurentPoly]:
    i = m.ring.norm(i)
    out = {}
    for length in range(1, m.max_length() + 1):
        target = minus(m, length, i)
        if target is None:
            continue
        e = _tail_exponent(m, length, i) - m.mult_head(length, i) + 1
        coef = LaurentPoly.monomial(e)
        if length >= 2:
            coef = coef * (ONE - LaurentPoly.monomial(2 * (m.mult_head(length - 1, i - 1) + 1)))
        out[target] = out.get(target, ZERO) + coef
    return out


def _linear(op, i: int, u: PBWVector) -> PBWVector:
    out = PBWVector(u.ring)
    for m, c in u.items():
        for target, coef in op(i, m).items():
            out._add_term(target, c * coef)
    if not out and u.deg is not None:
        d = dict(u.deg)
        d[u.ring.norm(i)] = d.get(u.ring.norm(i), 0) + (1 if op is f_basis else -1)
        if all(x >= 0 for x in d.values()):
            out.deg = degree_key({k: x for k, x in d.items() if x})
    return out


def f_action(i: int, u: PBWVector) -> PBWVector:
    """Left multiplication by the generator ``f_i = <O_i>``."""
    return _linear(f_basis, i, u)


def e_prime_action(i: int, u: PBWVector) -> PBWVector:
    """The adjoint of ``f_i`` for :func:`scalar_product`."""
    return _linear(e_prime_basis, i, u)


def f_power(i: int, u: PBWVector, a: int, divided: bool = True) -> PBWVector:
    """``f_i^a u``, divided by ``[a]!`` when ``divided``."""
    for _ in range(a):
        u = f_action(i, u)
    return u.divide(gauss_factorial(a)) if divided else u


def apply_f_word(word: Iterable[int], u: PBWVector) -> PBWVector:
    """Apply ``f_{i_1}`` first, then ``f_{i_2}``, and so on."""
    for i in word:
        u = f_action(i, u)
    return u


# ---------------------------------------------------------------------------
# scalar product


def norm_square(m: Multisegment) -> RationalFunction:
    """``(<m>, <m>) = prod v^{-C(k,2)} (1-v^2)^{(l-1)k} / [k]!`` over segments ``(l;i]`` of multiplicity ``k``."""
    num = ONE
    den = ONE
    one_minus = ONE - V * V
    for (_, length), k in m:
        num = num * LaurentPoly.monomial(-(k * (k - 1) // 2)) * one_minus ** ((length - 1) * k)
        den = den * gauss_factorial(k)
    return RationalFunction(num, den)


def scalar_product(u: PBWVector, w: PBWVector) -> RationalFunction:
    if u and w and u.deg != w.deg:
        raise DegreeMismatch("scalar product of vectors of different degrees")
    total = RationalFunction(0)
    for m, c in u.items():
        d = w[m]
        if d:
            total = total + norm_square(m) * (c * d)
    return total


# ---------------------------------------------------------------------------
# automorphisms and the twist exponent


def aut_order(m: Multisegment, q: int) -> int:
    """``q^eps(m) prod phi_k(q^-1)`` over multiplicities ``k`` of the segments."""
    val = Fraction(q) ** endo_dim(m)
    for _, k in m:
        for t in range(1, k + 1):
            val *= 1 - Fraction(1, q**t)
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral automorphism count {val} for {m}")
    return int(val)


def alpha_dims(O: Multisegment, P: Multisegment, Q: Multisegment) -> int:
    """``dim O + dim P - dim Q + m(dim V, dim W)``."""
    ring = Q.ring
    return orbit_dim(O) + orbit_dim(P) - orbit_dim(Q) + bilinear_m(degree(O), degree(P), ring)


def alpha_endo(O: Multisegment, P: Multisegment, Q: Multisegment) -> int:
    """``-eps(O) - eps(P) + eps(Q) - r(dim V, dim W)``."""
    ring = Q.ring
    return -endo_dim(O) - endo_dim(P) + endo_dim(Q) - bilinear_r(degree(O), degree(P), ring)


def alpha(O: Multisegment, P: Multisegment, Q: Multisegment) -> int:
    """Exponent of the twist in ``<O> o <P>``; ``O`` is the cotype and ``P`` the type."""
    dO, dP, dQ = degree(O), degree(P), degree(Q)
    keys = set(dO) | set(dP) | set(dQ)
    if any(dQ.get(k, 0) != dO.get(k, 0) + dP.get(k, 0) for k in keys):
        raise DegreeMismatch("degree(Q) must equal degree(O) + degree(P)")
    a, b = alpha_dims(O, P, Q), alpha_endo(O, P, Q)
    if a != b:
        raise AssertionError(f"twist exponents disagree on ({O}, {P}, {Q}): {a} vs {b}")
    return a


# ---------------------------------------------------------------------------
# Hall polynomials by interpolation


SAMPLE_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


def _interpolate(points: list[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (low to high) of the Lagrange interpolant."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for j, (xj, yj) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for k, (xk, _) in enumerate(points):
            if k == j:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xk * basis[t + 1]
            denom *= xj - xk
        for t in range(n):
            coeffs[t] += yj * basis[t] / denom
    return coeffs


def _eval(coeffs: list[Fraction], x: int) -> Fraction:
    return sum((c * x**t for t, c in enumerate(coeffs)), Fraction(0))


def hall_polynomial(O: Multisegment, P: Multisegment, Q: Multisegment, bound: int | None = None) -> list[int]:
    """Integer coefficients (low to high) of ``F^Q_{O,P}(q)``."""
    dP, dO = degree(P), degree(O)
    cap = sum(dP.get(i, 0) * dO.get(i, 0) for i in set(dP) | set(dO))
    samples: list[tuple[int, int]] = []

    def count(q):
        return cached_census(Q, dP, q, bound).get((P, O), 0)

    qs = iter(SAMPLE_QS)
    agreed = 0
    coeffs: list[Fraction] = []
    for q in qs:
        y = count(q)
        if samples and _eval(coeffs, q) == y:
            agreed += 1
        else:
            agreed = 0
        samples.append((q, y))
        coeffs = _interpolate(samples)
        # two consecutive agreements: one confirms the degree, one is held out
        if agreed >= 2 or len(samples) >= cap + 3:
            break
    else:
        raise InterpolationError(f"ran out of sample fields for F^{Q}_({O},{P})")
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationError(f"non-integral Hall polynomial {coeffs} for F^{Q}_({O},{P})")
    if len(coeffs) - 1 > cap:
        raise InterpolationError(f"Hall polynomial of degree {len(coeffs) - 1} exceeds the Grassmannian bound {cap}")
    return [int(c) for c in coeffs]


def hall_structure_constant(O: Multisegment, P: Multisegment, Q: Multisegment, bound: int | None = None) -> LaurentPoly:
    """``v^alpha F^Q_{O,P}(v^-2)``."""
    poly = hall_polynomial(O, P, Q, bound)
    if not poly:
        return ZERO
    out = LaurentPoly({-2 * t: c for t, c in enumerate(poly)})
    return out.shift(alpha(O, P, Q))


def hall_product(u: PBWVector, w: PBWVector, bound: int | None = None) -> PBWVector:
    """``u o w`` by bilinearity from ``<O> o <P> = sum_Q v^alpha F^Q_{O,P}(v^-2) <Q>``."""
    ring = u.ring
    if w.ring != ring:
        raise ValueError("PBW vectors over different rings")
    out = PBWVector(ring)
    if not u or not w:
        return out
    du, dw = u.degree(), w.degree()
    total = {k: du.get(k, 0) + dw.get(k, 0) for k in set(du) | set(dw)}
    check_bound(sum(total.values()), DEFAULT_BOUNDS.hall_max_dim if bound is None else bound, "product degree")
    targets = multisegments_of_degree(ring, total)
    for O, cO in u.items():
        for P, cP in w.items():
            for Q in targets:
                sc = hall_structure_constant(O, P, Q, bound)
                if sc:
                    out._add_term(Q, cO * cP * sc)
    return out


@dataclass
class HallCheck:
    """One coefficient of ``f_i <m>`` compared against counted Hall numbers."""

    m: Multisegment
    i: int
    Q: Multisegment
    coefficient: LaurentPoly
    expected: dict[int, int]
    observed: dict[int, int]

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


def check_f_against_counts(m: Multisegment, i: int, qs: Iterable[int] = (2, 3, 4), bound: int | None = None) -> list[HallCheck]:
    """For every ``Q`` of degree ``deg m + e_i`` compare ``coef * v^-alpha`` at ``v^-2 = q`` with counts."""
    ring = m.ring
    i = ring.norm(i)
    Oi = Multisegment.from_heads(ring, [(1, i)])
    coeffs = f_basis(i, m)
    d = degree(m)
    d[i] = d.get(i, 0) + 1
    out = []
    for Q in multisegments_of_degree(ring, d):
        c = coeffs.get(Q, ZERO)
        a = alpha(Oi, m, Q)
        reduced = c.shift(-a)
        if any(e % 2 or e > 0 for e in reduced.coeffs):
            expected = {q: None for q in qs}
        else:
            # substitute v^-2 = q
            expected = {q: sum(c0 * q ** (-e // 2) for e, c0 in reduced.coeffs.items()) for q in qs}
        observed = {q: cached_census(Q, degree(m), q, bound).get((m, Oi), 0) for q in qs}
        out.append(HallCheck(m, i, Q, c, expected, observed))
    return out
