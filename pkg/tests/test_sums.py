from __future__ import annotations

import itertools
import random

import pytest

from galois_sums import (
    AdditiveCharacter,
    RingMismatch,
    TooLarge,
    canonical_twists,
    canonicalize,
    char_inv,
    char_mul,
    count_unit_solutions,
    count_unit_solutions_brute,
    enumerate_characters,
    expected_gauss,
    gauss_sum,
    jacobi,
    jacobi_brute,
    jacobi_expected,
    product_character,
    project_character,
    s_cardinality,
    s_cardinality_qn,
    tilde_jacobi_brute,
    tilde_jacobi_classify,
)

from conftest import ring


def brute_gauss(r, chi, b):
    """Independent accumulation of the Gauss sum, orthogonal to gauss_sum()."""
    lam = AdditiveCharacter(r, b)
    return sum((chi.eval_unit(u) * lam.eval(u)).to_complex() for u in r.units())


def test_gauss_trivial_cases(z9):
    chars = enumerate_characters(z9)
    triv = chars[0]
    sv = gauss_sum(triv, z9.zero)
    assert sv.expected.integer == 6 and abs(sv.value - 6) < 1e-9
    sv = gauss_sum(triv, z9.scalar(3))
    assert sv.expected.integer == -3 and abs(sv.value + 3) < 1e-9
    sv = gauss_sum(triv, z9.one)
    assert sv.expected.kind == "zero" and abs(sv.value) < 1e-9


def test_gauss_primitive_magnitude(z9):
    prim = next(c for c in enumerate_characters(z9) if c.is_primitive)
    sv = gauss_sum(prim, z9.one)
    assert abs(abs(sv.value) - 3.0) < 1e-9
    assert sv.expected.magnitude(z9.q) == 3.0
    assert abs(sv.value - brute_gauss(z9, prim, z9.one)) < 1e-12


def test_gauss_ideal_twist_magnitude(z9):
    one_level = next(c for c in enumerate_characters(z9) if c.level == 1)
    sv = gauss_sum(one_level, z9.scalar(3))
    assert abs(abs(sv.value) - 3 ** 1.5) < 1e-9
    assert abs(sv.expected.magnitude(3) - 3 ** 1.5) < 1e-12


def test_gauss_conjugation_symmetry():
    rng = random.Random(5)
    for key in [(3, 2, 1), (2, 2, 2), (3, 2, 2)]:
        r = ring(*key)
        chars = enumerate_characters(r)
        for _ in range(25):
            chi = rng.choice(chars)
            b = rng.choice(r.elements())
            lhs = gauss_sum(char_inv(chi), -b).value
            rhs = gauss_sum(chi, b).value.conjugate()
            assert abs(lhs - rhs) < 1e-9


def test_count_unit_solutions(z9):
    assert count_unit_solutions(z9, 2, z9.one) == 3
    assert count_unit_solutions_brute(z9, 2, z9.one) == 3
    assert count_unit_solutions(z9, 2, z9.scalar(3)) == 6
    assert count_unit_solutions_brute(z9, 2, z9.scalar(3)) == 6
    assert count_unit_solutions(z9, 2, z9.zero) == len(z9.units())


@pytest.mark.parametrize("key", [(3, 2, 1), (2, 2, 2)])
@pytest.mark.parametrize("m", [2, 3])
def test_count_formula_matches_enumeration(key, m):
    r = ring(*key)
    for a in [r.zero, r.one, r.p_power(1)]:
        assert count_unit_solutions(r, m, a) == count_unit_solutions_brute(r, m, a)


def test_jacobi_trivial_pair_values(z9):
    triv = enumerate_characters(z9)[0]
    sv = jacobi([triv, triv], z9.one)
    assert abs(sv.value - 3) < 1e-9 and sv.expected.integer == 3
    sv = jacobi([triv, triv], z9.scalar(3))
    assert abs(sv.value - 6) < 1e-9 and sv.expected.integer == 6


def test_jacobi_primitive_pair_magnitude(z9):
    chars = enumerate_characters(z9)
    pair = next(
        (c1, c2)
        for c1 in chars
        for c2 in chars
        if c1.is_primitive and c2.is_primitive and char_mul(c1, c2).is_primitive
    )
    sv = jacobi(list(pair), z9.one)
    assert abs(abs(sv.value) - 3.0) < 1e-6
    assert sv.expected.kind == "power_of_q"


def test_jacobi_triple_primitive_magnitude(z9):
    chars = [c for c in enumerate_characters(z9) if c.is_primitive]
    triple = next(
        t for t in itertools.product(chars, repeat=3) if product_character(t).is_primitive
    )
    sv = jacobi(list(triple), z9.one)
    assert abs(abs(sv.value) - 9.0) < 1e-6  # q^((m-1)n/2)


def test_jacobi_ideal_twist_gauss_quotient(z9):
    # a primitive character times one whose product has level 1 gives |J_p| = q^(3/2)
    chars = enumerate_characters(z9)
    found = None
    for c1, c2 in itertools.product(chars, repeat=2):
        if c2.is_primitive and not c1.is_trivial and char_mul(c1, c2).level == 1:
            found = (c1, c2)
            break
    sv = jacobi(list(found), z9.scalar(3))
    assert abs(abs(sv.value) - 3 ** 1.5) < 1e-6
    assert abs(sv.expected.magnitude(3) - 3 ** 1.5) < 1e-9


def test_jacobi_multi_vanishing(z9, gr4_16):
    # product nontrivial on the deepest subgroup kills every ideal twist
    for r in (z9, gr4_16):
        chars = enumerate_characters(r)
        for triple in itertools.product(chars, repeat=3):
            if not any(c.is_primitive for c in triple):
                continue
            if product_character(triple).is_primitive:
                sv = jacobi_brute(list(triple), r.p_power(1))
                assert abs(sv.value) < 1e-6
                break


def test_jacobi_symmetry_under_permutation():
    rng = random.Random(6)
    for key in [(3, 2, 1), (2, 2, 2)]:
        r = ring(*key)
        chars = enumerate_characters(r)
        for _ in range(10):
            tup = [rng.choice(chars) for _ in range(3)]
            a = rng.choice(r.elements())
            base = jacobi_brute(tup, a).value
            perm = list(tup)
            rng.shuffle(perm)
            assert abs(jacobi_brute(perm, a).value - base) < 1e-9


def test_canonicalize_unit(z9):
    chars = enumerate_characters(z9)[1:3]
    canon, scalar = canonicalize(chars, z9.one)
    assert canon == z9.one and scalar.is_one
    canon, scalar = canonicalize(chars, z9.scalar(2))
    assert canon == z9.one
    prod = product_character(chars)
    assert (scalar * prod.eval_unit(z9.scalar(2)).conjugate()).is_one


def test_canonicalize_reduction_identity():
    rng = random.Random(7)
    for key in [(3, 2, 1), (2, 2, 2)]:
        r = ring(*key)
        chars = enumerate_characters(r)
        candidates = [a for a in r.elements() if not a.is_zero]
        for _ in range(15):
            tup = [rng.choice(chars) for _ in range(2)]
            a = rng.choice(candidates)
            canon, scalar = canonicalize(tup, a)
            lhs = jacobi_brute(tup, a).value
            rhs = scalar.to_complex() * jacobi_brute(tup, canon).value
            assert abs(lhs - rhs) < 1e-9


def test_canonicalize_teichmuller_lift_example(z9):
    chars = [enumerate_characters(z9)[1], enumerate_characters(z9)[2]]
    canon, scalar = canonicalize(chars, z9.scalar(6))  # 6 = 3 * 2
    assert canon == z9.scalar(3)
    lhs = jacobi_brute(chars, z9.scalar(6)).value
    rhs = scalar.to_complex() * jacobi_brute(chars, z9.scalar(3)).value
    assert abs(lhs - rhs) < 1e-9


@pytest.mark.parametrize("key", [(3, 2, 1), (2, 2, 2)])
def test_dispatch_complete_and_correct_m2(key):
    r = ring(*key)
    chars = enumerate_characters(r)
    for pair in itertools.product(chars, repeat=2):
        for a in canonical_twists(r):
            e = jacobi_expected(list(pair), a)
            assert e.kind != "unclassified"
            b = jacobi_brute(list(pair), a)
            assert abs(abs(b.value) - e.magnitude(r.q)) < 1e-6
            if e.value is not None:
                assert abs(b.value - e.value) < 1e-6


def test_gauss_quotient_identity(z9, gr4_16):
    # whenever the pair product has level n - k, the ideal-twist sum satisfies
    # J * G(prod, lambda_{p^k}) = q^k G(chi1) G(chi2)
    for r in (z9, gr4_16):
        chars = enumerate_characters(r)
        n = r.n
        for c1, c2 in itertools.product(chars, repeat=2):
            if not c2.is_primitive:
                continue
            prod = char_mul(c1, c2)
            t = prod.level
            if not 1 <= t <= n - 1:
                continue
            k = n - t
            lhs = jacobi_brute([c1, c2], r.p_power(k)).value * gauss_sum(
                prod, r.p_power(k)
            ).value
            rhs = (
                r.q ** k
                * gauss_sum(c1, r.one).value
                * gauss_sum(c2, r.one).value
            )
            assert abs(lhs - rhs) < 1e-6


def test_reduction_to_quotient_ring():
    # pairs of non-primitive characters reduce with scale q^(k(m-1))
    for key, ks in [((3, 3, 1), (1, 2)), ((2, 3, 2), (1, 2))]:
        r = ring(*key)
        chars = enumerate_characters(r)
        for k in ks:
            eligible = [c for c in chars if c.trivial_on_subgroup(r.n - k)]
            for c1, c2 in itertools.product(eligible, repeat=2):
                proj = [project_character(c, k) for c in (c1, c2)]
                for a in [r.zero, r.one, r.p_power(1), r.p_power(2)]:
                    lhs = jacobi_brute([c1, c2], a).value
                    rhs = jacobi_brute(proj, r.reduce(a, k)).value
                    assert abs(lhs - r.q ** k * rhs) < 1e-6


def test_jacobi_cap():
    r = ring(3, 2, 1)
    chars = enumerate_characters(r)[:2]
    with pytest.raises(TooLarge):
        jacobi_brute(chars, r.one, cap=2)


def test_jacobi_ring_mismatch(z9, gr4_16):
    with pytest.raises(RingMismatch):
        jacobi_brute([enumerate_characters(z9)[0], enumerate_characters(gr4_16)[0]], z9.one)


def test_s_cardinality_values(z9):
    assert s_cardinality_qn(3, 2, 3, 1) == 54
    assert s_cardinality_qn(11, 2, 3, 1) == 13310
    assert s_cardinality(z9, 2, 1) == len(z9.units())


def test_tilde_matches_plain_when_tail_nontrivial(z9):
    chars = enumerate_characters(z9)
    nontrivial = [c for c in chars if not c.is_trivial]
    rng = random.Random(8)
    for _ in range(10):
        tup = [rng.choice(chars), rng.choice(nontrivial), rng.choice(nontrivial)]
        a = rng.choice(z9.elements())
        assert (
            abs(
                tilde_jacobi_brute(tup, 1, a).value
                - jacobi_brute(tup, a).value
            )
            < 1e-9
        )


def test_tilde_all_trivial_counts(z9):
    triv = enumerate_characters(z9)[0]
    sv = tilde_jacobi_brute([triv, triv, triv], 1, z9.one)
    assert abs(sv.value - 54) < 1e-9
    e = tilde_jacobi_classify([triv, triv, triv], 1, z9.one)
    assert e.integer == 54


def test_tilde_zero_cases(z9):
    chars = enumerate_characters(z9)
    triv = chars[0]
    nontriv = chars[1]
    # mixed free block
    e = tilde_jacobi_classify([nontriv, nontriv, triv], 1, z9.one)
    assert e.kind == "zero"
    assert abs(tilde_jacobi_brute([nontriv, nontriv, triv], 1, z9.one).value) < 1e-9
    # trivial free block with a nontrivial unit block
    e = tilde_jacobi_classify([nontriv, triv, triv], 2, z9.one)
    assert e.kind == "zero"
    assert abs(tilde_jacobi_brute([nontriv, triv, triv], 2, z9.one).value) < 1e-9


@pytest.mark.parametrize("key", [(3, 2, 1), (2, 2, 2)])
def test_tilde_random_cross_check(key):
    r = ring(*key)
    chars = enumerate_characters(r)
    rng = random.Random(9)
    for _ in range(100):
        m = rng.choice([2, 3])
        k = rng.randrange(1, m)
        tup = [rng.choice(chars) for _ in range(m)]
        a = rng.choice(r.elements())
        e = tilde_jacobi_classify(tup, k, a)
        b = tilde_jacobi_brute(tup, k, a)
        assert abs(abs(b.value) - e.magnitude(r.q)) < 1e-6
        if e.value is not None:
            assert abs(b.value - e.value) < 1e-6


def test_expected_gauss_field_case(f4):
    chars = enumerate_characters(f4)
    nontriv = chars[1]
    e = expected_gauss(nontriv, f4.one)
    assert e.kind == "power_of_q" and float(e.exponent) == 0.5
    assert abs(abs(gauss_sum(nontriv, f4.one).value) - 2.0) < 1e-9
