"""Sparse Laurent polynomials in ``v`` with integer coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping


class DivisionFailure(ArithmeticError):
    pass


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = {e: c for e, c in (coeffs or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def terms(self) -> list[tuple[int, int]]:
        """``(exponent, coefficient)`` pairs, descending exponents."""
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) == 1:
                (e, c), = self._c.items()
                if c in (1, -1):
                    return LaurentPoly({e * k: c ** -k})
            raise DivisionFailure(f"cannot invert {self}")
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by ``v**e``."""
        return LaurentPoly({k + e: c for k, c in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """``v -> v**-1``."""
        return LaurentPoly({-e: c for e, c in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises when there is a remainder."""
        if not other:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self:
            return LaurentPoly()
        rem = dict(self._c)
        lead_e = other.max_exp()
        lead_c = other[lead_e]
        low = other.min_exp()
        quot: dict[int, int] = {}
        floor = self.min_exp() - low
        while rem:
            e = max(rem)
            if e - lead_e < floor:
                break
            c = rem[e]
            if c % lead_c:
                break
            q = c // lead_c
            qe = e - lead_e
            quot[qe] = q
            for oe, oc in other._c.items():
                k = oe + qe
                val = rem.get(k, 0) - q * oc
                if val:
                    rem[k] = val
                else:
                    rem.pop(k, None)
        if rem:
            raise DivisionFailure(f"({self}) is not divisible by ({other})")
        return LaurentPoly(quot)

    def in_v_z_v(self) -> bool:
        """Lies in ``v Z[v]``."""
        return all(e >= 1 for e in self._c)

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self._c.values())

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        return sum((Fraction(c) * x ** e for e, c in self._c.items()), Fraction(0))

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms()}

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data.items()})


V = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def format_laurent(p: LaurentPoly) -> str:
    if not p:
        return "0"
    parts = []
    for e, c in p.terms():
        if e == 0:
            mono = ""
        elif e == 1:
            mono = "v"
        else:
            mono = f"v^{e}"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_LTERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*(v(?:\^\(?(-?\d+)\)?)?)?\s*")


def parse_laurent(text: str) -> LaurentPoly:
    """Inverse of :func:`format_laurent`."""
    text = text.strip()
    if text in ("", "0"):
        return ZERO
    out: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _LTERM.match(text, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3) is None:
            e = 0
        else:
            e = int(m.group(4)) if m.group(4) is not None else 1
        out[e] = out.get(e, 0) + sign * c
        pos = m.end()
    return LaurentPoly(out)


def gauss_int(a: int) -> LaurentPoly:
    """``[a] = (v^a - v^-a) / (v - v^-1)``, any integer ``a``."""
    if a == 0:
        return ZERO
    if a < 0:
        return -gauss_int(-a)
    return LaurentPoly({a - 1 - 2 * k: 1 for k in range(a)})


def gauss_factorial(a: int) -> LaurentPoly:
    if a < 0:
        raise ValueError("factorial of a negative integer")
    out = ONE
    for k in range(1, a + 1):
        out = out * gauss_int(k)
    return out


def bar_symmetric_part(c: LaurentPoly) -> LaurentPoly:
    """The bar-invariant ``g`` with ``c - g`` in ``v Z[v]``."""
    out: dict[int, int] = {}
    for e, coef in c.coeffs.items():
        if e == 0:
            out[0] = out.get(0, 0) + coef
        elif e < 0:
            out[e] = out.get(e, 0) + coef
            out[-e] = out.get(-e, 0) + coef
    return LaurentPoly(out)


class RationalFunction:
    """Quotient of Laurent polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly | int, den: LaurentPoly | int = 1):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if isinstance(den, int):
            den = LaurentPoly.const(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (LaurentPoly, int)):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.num

    def simplified(self) -> "RationalFunction | LaurentPoly":
        """The Laurent polynomial when the denominator divides exactly."""
        try:
            return self.num.divmod_exact(self.den)
        except DivisionFailure:
            return self

    def __str__(self):
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__
