"""Exact linear algebra over Q and finite fields F_q.

Matrices are lists of rows. Field elements are ``Fraction`` for Q and small
ints ``0..q-1`` for F_q (prime powers use table arithmetic on the base-p
encoding of coefficient vectors).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

Matrix = list[list]


class Rationals:
    name = "Q"
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def elem(self, k) -> Fraction:
        return Fraction(k)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return Fraction(1) / a

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


QQ = Rationals()


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    out = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    # reduce by the monic modulus
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for t in range(k + 1):
                out[d - k + t] = (out[d - k + t] - c * mod[t]) % p
    return out[:k]


def _irreducible(p: int, k: int) -> list[int]:
    """Smallest monic irreducible of degree ``k`` over F_p (coefficients low to high)."""
    for tail in product(range(p), repeat=k):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        # no roots and no factor of degree <= k // 2: brute force over monic divisors
        ok = True
        for d in range(1, k // 2 + 1):
            for dtail in product(range(p), repeat=d):
                div = list(dtail) + [1]
                if _poly_divides(div, poly, p):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return poly
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


def _poly_divides(div: list[int], poly: list[int], p: int) -> bool:
    rem = list(poly)
    d = len(div) - 1
    for top in range(len(rem) - 1, d - 1, -1):
        c = rem[top]
        if c:
            for t in range(d + 1):
                rem[top - d + t] = (rem[top - d + t] - c * div[t]) % p
    return not any(rem[:d])


class FiniteField:
    """F_q with elements ``0..q-1``; arithmetic through lookup tables."""

    def __init__(self, q: int):
        p, k = _factor_prime_power(q)
        self.q = self.order = q
        self.p, self.k = p, k
        self.name = f"F_{q}"
        self.zero, self.one = 0, 1
        if k == 1:
            self._add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self._mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            mod = _irreducible(p, k)

            def digits(x):
                return [(x // p**t) % p for t in range(k)]

            def encode(ds):
                return sum(d * p**t for t, d in enumerate(ds))

            self._add = [
                [encode([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)]
                for a in range(q)
            ]
            self._mul = [
                [encode(_poly_mulmod(digits(a), digits(b), mod, p)) for b in range(q)]
                for a in range(q)
            ]
        self._neg = [next(b for b in range(q) if self._add[a][b] == 0) for a in range(q)]
        self._inv = [None] + [next(b for b in range(q) if self._mul[a][b] == 1) for a in range(1, q)]

    def elem(self, k: int) -> int:
        # integers map through the prime subfield
        k %= self.p
        out = 0
        for _ in range(k):
            out = self._add[out][1]
        return out

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self._inv[a]

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("F", self.q))


@lru_cache(maxsize=None)
def GF(q: int) -> FiniteField:
    return FiniteField(q)


def field_from_name(name: str):
    name = name.strip().lower()
    if name in ("q", "qq", "rationals"):
        return QQ
    if name.startswith("f_") or name.startswith("gf"):
        digits = "".join(ch for ch in name if ch.isdigit())
        return GF(int(digits))
    return GF(int(name))


# ---------------------------------------------------------------------------
# elimination


def convert(mat: Sequence[Sequence], F) -> Matrix:
    return [[F.elem(x) if isinstance(x, int) else x for x in row] for row in mat]


def rref(rows: Sequence[Sequence], F) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows dropped."""
    a = [list(r) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    zero = F.zero
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != zero), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != zero:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence], F) -> int:
    if not rows or not len(rows[0]):
        return 0
    return len(rref(rows, F)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, F) -> Matrix:
    """Basis of ``{x : A x = 0}`` as a list of vectors."""
    if ncols == 0:
        return []
    if not rows:
        return [[F.one if j == k else F.zero for j in range(ncols)] for k in range(ncols)]
    red, pivots = rref(rows, F)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [F.zero] * ncols
        vec[f] = F.one
        for row, pc in zip(red, pivots):
            vec[pc] = F.neg(row[f])
        basis.append(vec)
    return basis


def matmul(a: Matrix, b: Matrix, F, inner: int | None = None) -> Matrix:
    """Product of an ``r x k`` and a ``k x c`` matrix (``inner`` = k for empty shapes)."""
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    if k == 0:
        cols = len(b[0]) if b else 0
        return [[F.zero] * cols for _ in a]
    cols = len(b[0])
    out = []
    for row in a:
        acc = [F.zero] * cols
        for t, x in enumerate(row):
            if x != F.zero:
                brow = b[t]
                acc = [F.add(s, F.mul(x, y)) for s, y in zip(acc, brow)]
        out.append(acc)
    return out


def apply(mat: Matrix, vec: Sequence, F) -> list:
    return [_dot(row, vec, F) for row in mat]


def _dot(row, vec, F):
    acc = F.zero
    for x, y in zip(row, vec):
        if x != F.zero and y != F.zero:
            acc = F.add(acc, F.mul(x, y))
    return acc


def transpose(mat: Matrix, ncols: int | None = None) -> Matrix:
    if not mat:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*mat)]


def identity(d: int, F) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]


def zeros(r: int, c: int, F) -> Matrix:
    return [[F.zero] * c for _ in range(r)]


def in_span(vec: Sequence, basis_rref: Matrix, pivots: list[int], F) -> bool:
    v = list(vec)
    for row, pc in zip(basis_rref, pivots):
        if v[pc] != F.zero:
            f = v[pc]
            v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
    return all(x == F.zero for x in v)


def subspaces(dim: int, k: int, F: FiniteField) -> Iterator[tuple[Matrix, list[int]]]:
    """Every ``k``-dimensional subspace of ``F^dim`` as (RREF basis, pivots)."""
    if k < 0 or k > dim:
        return
    if k == 0:
        yield [], []
        return
    elems = list(F.elements())
    for pivots in combinations(range(dim), k):
        free_slots = [
            (r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, dim) if c not in pivots
        ]
        for values in product(elems, repeat=len(free_slots)):
            rows = [[F.zero] * dim for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = F.one
            for (r, c), x in zip(free_slots, values):
                rows[r][c] = x
            yield rows, list(pivots)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for t in range(k):
        num *= q ** (n - t) - 1
        den *= q ** (t + 1) - 1
    return num // den


def gl_order(d: int, q: int) -> int:
    out = 1
    for t in range(d):
        out *= q**d - q**t
    return out
