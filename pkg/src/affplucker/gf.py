"""Arithmetic in small finite fields GF(p^h), q = p^h <= 32.

Elements are integer codes in ``[0, q)``; the base-p digits of a code are the
polynomial coefficients, lowest degree first.  All arithmetic goes through
q x q tables built once per field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

MAX_ORDER = 32


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# --- polynomials over GF(p), coefficient lists low-to-high -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    m = _trim(list(m))
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _monic_polys(degree: int, p: int):
    """Monic polynomials of the given degree, lexicographic in (c0, c1, ...)."""
    for low in product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(poly, f, p):
                return False
    return True


def smallest_irreducible(p: int, h: int) -> tuple[int, ...]:
    for cand in _monic_polys(h, p):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {h} over GF({p})")


# --- the field ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^h) with a fixed monic irreducible modulus.

    ``modulus`` is the coefficient list low-to-high and includes the leading 1.
    """

    p: int
    h: int
    modulus: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...] = field(repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False)
    neg_table: tuple[int, ...] = field(repr=False)
    inv_table: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.h

    @property
    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.h) == (other.p, other.h)

    def __hash__(self) -> int:
        return hash((self.p, self.h))

    def __str__(self) -> str:
        coeffs = ",".join(map(str, self.modulus))
        return f"GF({self.q}); modulus=[{coeffs}]"

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.h):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, digits) -> int:
        code = 0
        for d in reversed(list(digits)):
            code = code * self.p + d
        return code

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no multiplicative inverse")
        return self.inv_table[a]

    def power(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul_table[r][a]
        return r

    def primitive_element(self) -> int:
        """Smallest code generating the multiplicative group."""
        for g in range(1, self.q):
            x, k = g, 1
            while x != 1:
                x = self.mul_table[x][g]
                k += 1
            if k == self.q - 1:
                return g
        raise AssertionError("multiplicative group is not cyclic")


def _build(p: int, h: int, modulus: tuple[int, ...]) -> FieldSpec:
    q = p ** h

    def digits(a):
        return [(a // p ** i) % p for i in range(h)]

    def code(ds):
        return sum(d * p ** i for i, d in enumerate(ds))

    add = tuple(
        tuple(code([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q))
        for a in range(q)
    )
    mul_rows = []
    for a in range(q):
        da = digits(a)
        row = []
        for b in range(q):
            db = digits(b)
            prod = [0] * (2 * h - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            red = _poly_mod(prod, list(modulus), p)
            row.append(code(red + [0] * (h - len(red))))
        mul_rows.append(tuple(row))
    mul = tuple(mul_rows)
    neg = tuple(add[a].index(0) for a in range(q))
    inv = (0,) + tuple(mul[a].index(1) for a in range(1, q))
    return FieldSpec(p, h, modulus, add, mul, neg, inv)


@lru_cache(maxsize=None)
def field_make(p: int, h: int = 1) -> FieldSpec:
    """Build GF(p^h) using the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if h < 1:
        raise FieldError(f"extension degree must be >= 1, got {h}")
    if p ** h > MAX_ORDER:
        raise FieldError(f"field order {p}^{h} exceeds desk bound {MAX_ORDER}")
    return _build(p, h, smallest_irreducible(p, h))


def field_automorphisms(F: FieldSpec) -> list[tuple[int, ...]]:
    """The Frobenius powers x -> x^(p^i), i = 0..h-1, as element permutations."""
    autos = []
    for i in range(F.h):
        e = F.p ** i
        perm = tuple(F.power(a, e) if a else 0 for a in F.elements)
        for a in F.elements:
            for b in F.elements:
                if perm[F.add(a, b)] != F.add(perm[a], perm[b]) or perm[F.mul(a, b)] != F.mul(perm[a], perm[b]):
                    raise AssertionError(f"Frobenius power {i} is not a field automorphism")
        autos.append(perm)
    return autos


@dataclass(frozen=True)
class FieldElem:
    """A field element bound to its field; convenience wrapper over the int codes."""

    field: FieldSpec
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.q:
            raise FieldError(f"code {self.code} out of range for {self.field}")

    def _check(self, other: FieldElem) -> None:
        if other.field != self.field:
            raise FieldError("operands belong to different fields")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.field, self.field.add(self.code, other.code))

    def __sub__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.field, self.field.sub(self.code, other.code))

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.field, self.field.mul(self.code, other.code))

    def __neg__(self) -> FieldElem:
        return FieldElem(self.field, self.field.neg(self.code))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.code))


def f_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def f_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def f_neg(a: FieldElem) -> FieldElem:
    return -a


def f_inv(a: FieldElem) -> FieldElem:
    return a.inverse()
