from __future__ import annotations

import random

import pytest

from galois_sums import (
    BadLevel,
    GaloisRing,
    InvalidModulus,
    NotAUnit,
    Polynomial,
    RingParams,
    SizeLimit,
    build_ring,
    find_basic_primitive_poly,
)

from conftest import ring


def poly_mul_plain(a, b, mod):
    """Independent schoolbook polynomial product used as an oracle."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % mod
    return out


def test_params_validation():
    with pytest.raises(ValueError):
        RingParams(4, 2, 1)
    with pytest.raises(ValueError):
        RingParams(3, 0, 1)
    with pytest.raises(ValueError):
        RingParams(3, 2, 0)


def test_modulus_search_quadratic_over_z4():
    h = find_basic_primitive_poly(2, 2, 2)
    assert h.coeffs == (1, 1, 1)
    # oracle: (x - 1)(x^2 + x + 1) = x^3 - 1 over Z_4
    prod = poly_mul_plain([-1 % 4, 1], list(h.coeffs), 4)
    assert prod == [3, 0, 0, 1]  # x^3 - 1 mod 4


def test_modulus_search_degenerate_degree_one():
    h = find_basic_primitive_poly(3, 2, 1)
    # x - g with g the Teichmuller generator of order 2 in Z_9
    g = (-h.coeffs[0]) % 9
    assert g == 8
    assert pow(g, 2, 9) == 1 and g != 1
    assert h.coeffs == (1, 1)


def test_modulus_search_primitive_cubic_over_f2():
    h = find_basic_primitive_poly(2, 1, 3)
    assert h.coeffs == (1, 1, 0, 1)  # x^3 + x + 1
    # oracle: the class of x has order 7 in F_2[x]/(h)
    f2 = build_ring(2, 1, 3)
    x = f2.xi
    powers = {(x ** k).coords for k in range(1, 8)}
    assert len(powers) == 7 and (x ** 7) == f2.one


def test_build_ring_teichmuller_set(z9):
    assert [t.coords for t in z9.teich_set] == [(0,), (1,), (8,)]
    # oracle: exhaustively solve t^3 = t in Z_9
    sols = {(t,) for t in range(9) if pow(t, 3, 9) == t % 9}
    assert {t.coords for t in z9.teich_set} == sols


def test_build_ring_sizes(gr4_16):
    assert gr4_16.element_count == 16
    assert len(gr4_16.units()) == 12


def test_build_degenerate_field():
    f4 = build_ring(2, 1, 2)
    assert f4.element_count == 4
    assert len(f4.units()) == 3


def test_build_rejects_bad_modulus():
    with pytest.raises(InvalidModulus):
        build_ring(2, 2, 2, modulus=Polynomial((1, 0, 1)))  # x^2 + 1 is not primitive
    with pytest.raises(InvalidModulus):
        build_ring(2, 2, 2, modulus=Polynomial((1, 1, 2)))  # not monic


def test_size_cap():
    with pytest.raises(SizeLimit):
        build_ring(2, 2, 2, element_cap=8)


def test_inverse_in_z9(z9):
    assert z9.scalar(2).inv() == z9.scalar(5)
    with pytest.raises(NotAUnit):
        z9.scalar(3).inv()


def test_xi_square_in_gr4_16(gr4_16):
    # reduce x^2 mod x^2 + x + 1 over Z_4: x^2 = -x - 1 = 3x + 3
    assert (gr4_16.xi * gr4_16.xi).coords == (3, 3)


def test_additive_inverse_everywhere(z9, gr4_16):
    for r in (z9, gr4_16):
        for x in r.elements():
            assert (x + (-x)).is_zero


def test_teichmuller_decompose_z9(z9):
    five = z9.scalar(5)
    digits = z9.teichmuller_decompose(five)
    assert [d.coords for d in digits] == [(8,), (8,)]
    assert (8 + 3 * 8) % 9 == 5
    # oracle: exhaustive search over T^2
    T = [t.coords[0] for t in z9.teich_set]
    sols = [(c0, c1) for c0 in T for c1 in T if (c0 + 3 * c1) % 9 == 5]
    assert sols == [(8, 8)]


def test_teichmuller_trivial_digits(gr4_16):
    assert all(d.is_zero for d in gr4_16.teichmuller_decompose(gr4_16.zero))
    digits = gr4_16.teichmuller_decompose(gr4_16.xi)
    assert digits[0] == gr4_16.xi and digits[1].is_zero


@pytest.mark.parametrize("p,n,s", [(3, 2, 1), (2, 2, 2), (3, 3, 1), (2, 3, 2), (3, 2, 2)])
def test_teichmuller_round_trip_exhaustive(p, n, s):
    r = ring(p, n, s)
    for x in r.elements():
        digits = r.teichmuller_decompose(x)
        assert all(d.coords in {t.coords for t in r.teich_set} for d in digits)
        assert r.teich_recompose(digits) == x


def test_valuation(z9, gr4_16):
    k, u = z9.valuation(z9.scalar(6))
    assert k == 1 and u.coords == (2,) and u.ring.pn == 3
    assert z9.scalar(5).is_unit
    assert z9.valuation(z9.zero) == (2, None)
    k, u = gr4_16.valuation(gr4_16.element((0, 2)))
    assert k == 1 and u == u.ring.xi  # image of xi in F_4


def test_frobenius(gr4_16, z9):
    assert gr4_16.frobenius(gr4_16.one) == gr4_16.one
    assert gr4_16.frobenius(gr4_16.xi) == gr4_16.xi * gr4_16.xi
    rng = random.Random(0)
    for r in (gr4_16, z9):
        elems = r.elements()
        for _ in range(100):
            x = rng.choice(elems)
            y = r.frobenius(x)
            for _ in range(r.s - 1):
                y = r.frobenius(y)
            assert y == x


def test_frobenius_is_homomorphism():
    rng = random.Random(1)
    for key in [(2, 2, 2), (2, 3, 2), (3, 2, 2)]:
        r = ring(*key)
        elems = r.elements()
        for _ in range(10_000 // 3 + 1):
            x, y = rng.choice(elems), rng.choice(elems)
            assert r.frobenius(x * y) == r.frobenius(x) * r.frobenius(y)
            assert r.frobenius(x + y) == r.frobenius(x) + r.frobenius(y)


def test_trace(gr4_16, z9):
    assert z9.trace(z9.scalar(7)) == 7  # s = 1: identity
    assert gr4_16.trace(gr4_16.xi) == 3  # xi + xi^2 = -1
    assert gr4_16.trace(gr4_16.one) == 2  # s copies of 1
    rng = random.Random(2)
    for _ in range(200):
        x = rng.choice(gr4_16.elements())
        assert gr4_16.trace(gr4_16.frobenius(x)) == gr4_16.trace(x)


def test_reduce(z9, gr4_16):
    assert z9.reduce(z9.scalar(5), 1).coords == (2,)
    assert gr4_16.reduce(gr4_16.element((1, 2)), 1).coords == (1, 0)
    with pytest.raises(BadLevel):
        z9.reduce(z9.one, 2)


def test_reduce_commutes_with_trace(gr4_16):
    red = gr4_16.reduced(1)
    for x in gr4_16.elements():
        assert gr4_16.trace(x) % red.pn == red.trace(gr4_16.reduce(x, 1))


@pytest.mark.parametrize("p,n,s", [(3, 2, 1), (2, 2, 2), (2, 3, 2), (3, 2, 2)])
def test_ring_invariants(p, n, s):
    r = ring(p, n, s)
    # exact division of x^(q-1) - 1 by the modulus is checked at build time,
    # so construction succeeding is the check; re-verify the root order here.
    assert len({t.coords for t in r.teich_set}) == r.q
    assert (r.xi ** (r.q - 1)) == r.one
    for j in range(1, r.q - 1):
        assert (r.xi ** j) != r.one
    assert len(r.units()) == r.q ** n - r.q ** (n - 1)
    for k in range(n + 1):
        assert len(r.ideal(k)) == r.q ** (n - k)


def test_serialization_round_trip(gr4_16):
    data = gr4_16.to_json()
    assert data == {"p": 2, "n": 2, "s": 2, "modulus": [1, 1, 1]}
    clone = GaloisRing.from_json(data)
    assert clone.key == gr4_16.key
