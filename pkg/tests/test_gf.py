from itertools import product

import pytest
from hypothesis import given, strategies as st

from affplucker.gf import (
    FieldElem,
    FieldError,
    f_add,
    f_inv,
    f_mul,
    f_neg,
    field_automorphisms,
    field_make,
    is_prime,
)

ORDERS = [(p, h) for p in range(2, 33) if is_prime(p) for h in range(1, 6) if p ** h <= 32]


def _reducible_oracle(p, h):
    """All monic reducible degree-h polynomials, as products of lower-degree monic ones."""

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return tuple(out)

    reducible = set()
    for d in range(1, h):
        for low_a in product(range(p), repeat=d):
            for low_b in product(range(p), repeat=h - d):
                reducible.add(mul(low_a + (1,), low_b + (1,)))
    return reducible


def test_prime_fields():
    assert field_make(2, 1).modulus == (0, 1)
    assert str(field_make(2, 1)) == "GF(2); modulus=[0,1]"
    assert field_make(3, 1).q == 3


def test_gf4_modulus_and_product():
    F = field_make(2, 2)
    assert F.modulus == (1, 1, 1)
    assert str(F) == "GF(4); modulus=[1,1,1]"
    assert F.mul(2, 2) == 3


@pytest.mark.parametrize("p,h", [(p, h) for p, h in ORDERS if h > 1])
def test_modulus_is_lexicographically_smallest_irreducible(p, h):
    reducible = _reducible_oracle(p, h)
    first = next(low + (1,) for low in product(range(p), repeat=h) if low + (1,) not in reducible)
    assert field_make(p, h).modulus == first


def test_gf3_addition():
    F = field_make(3, 1)
    assert f_add(FieldElem(F, 2), FieldElem(F, 2)).code == 1


@pytest.mark.parametrize("p,h", ORDERS)
def test_inverse_of_one(p, h):
    F = field_make(p, h)
    assert f_inv(FieldElem(F, 1)).code == 1


@pytest.mark.parametrize("p,h", ORDERS)
def test_field_axioms_exhaustive(p, h):
    F = field_make(p, h)
    E = range(F.q)
    for a in E:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in E:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.mul(a, b) < F.q and F.add(a, b) < F.q
    # triples only on the smaller fields; q = 32 has 32768 of them which is still quick
    for a, b, c in product(E, repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_inverse_of_zero_raises():
    F = field_make(5, 1)
    with pytest.raises(FieldError):
        f_inv(FieldElem(F, 0))


@pytest.mark.parametrize("p,h", [(4, 1), (1, 1), (2, 6), (3, 4), (2, 0)])
def test_invalid_parameters(p, h):
    with pytest.raises(FieldError):
        field_make(p, h)


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        FieldElem(field_make(2, 1), 1) + FieldElem(field_make(3, 1), 1)


def test_automorphisms_small():
    assert field_automorphisms(field_make(2, 1)) == [(0, 1)]
    assert field_automorphisms(field_make(3, 1)) == [(0, 1, 2)]
    ident, frob = field_automorphisms(field_make(2, 2))
    assert ident == (0, 1, 2, 3)
    assert frob == (0, 1, 3, 2)


@pytest.mark.parametrize("p,h", ORDERS)
def test_automorphisms_form_cyclic_group(p, h):
    F = field_make(p, h)
    autos = field_automorphisms(F)
    assert len(autos) == h
    assert len(set(autos)) == h
    frob = autos[1 % h]
    # powers of the Frobenius map exhaust the list, and composition is closed
    power = autos[0]
    for i in range(h):
        assert power == autos[i]
        power = tuple(frob[x] for x in power)
    assert power == autos[0]


@given(st.sampled_from(ORDERS), st.data())
def test_wrapper_matches_tables(ph, data):
    F = field_make(*ph)
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    A, B = FieldElem(F, a), FieldElem(F, b)
    assert f_add(A, B).code == F.add(a, b)
    assert f_mul(A, B).code == F.mul(a, b)
    assert f_add(A, f_neg(A)).code == 0
    assert (A - B).code == F.add(a, F.neg(b))
