"""Gauss sums, Jacobi sums, and modified Jacobi sums over a Galois ring.

Every sum has two routes: a brute-force summation in a fixed lexicographic
term order, and a closed-form expectation assembled from the magnitude laws
of the theory.  The expectation carries a tagged magnitude (zero, a power of
q, an explicit integer, or an exact complex value) together with a short
provenance token naming the law that produced it.  Verification suites check
the two routes against each other; the closed forms are never fed back into
the brute-force side.

Closed-form dispatch, in order:

* base ring is a field (n = 1): evaluated by brute force;
* all characters trivial: exact integer from the unit-solution count;
* a = 0: split off one nontrivial character (the defining sum is symmetric
  under joint permutation of characters and coordinates);
* two characters: one-trivial table, inverse pair, or a primitive character
  present (vanishing laws and Gauss-sum quotients);
* three or more with a primitive character present: Gauss-sum quotients;
* otherwise every character is trivial on 1 + p^(n-k) R for the maximal
  common k >= 1 and the sum reduces to the quotient ring with a digit-count
  scale factor of q^(k(m-1)) per reduction level.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .characters import (
    AdditiveCharacter,
    MultCharacter,
    RootOfUnity,
    product_character,
    project_character,
)
from .errors import RingMismatch, TooLarge
from .ring import GaloisRing, RingElement

DEFAULT_TERM_CAP = 10 ** 7


def term_tolerance(terms: int) -> float:
    """Absolute tolerance for a brute-force sum of the given term count."""
    return max(1e-12 * terms, 1e-9)


@dataclass(frozen=True)
class Expected:
    """Closed-form expectation for a character sum.

    kind is one of "zero", "power_of_q" (magnitude q**exponent), "integer"
    (exact signed integer value), "exact" (exact complex value), or
    "unclassified"; value carries the predicted complex number whenever the
    law pins one down.
    """

    kind: str
    lemma: str
    exponent: Fraction | None = None
    integer: int | None = None
    value: complex | None = None

    @classmethod
    def zero(cls, lemma: str) -> Expected:
        return cls("zero", lemma, value=0j)

    @classmethod
    def of_integer(cls, i: int, lemma: str) -> Expected:
        return cls("integer", lemma, integer=i, value=complex(i))

    @classmethod
    def power(cls, exponent: Fraction, lemma: str, value: complex | None = None) -> Expected:
        return cls("power_of_q", lemma, exponent=exponent, value=value)

    @classmethod
    def exact(cls, value: complex, lemma: str) -> Expected:
        return cls("exact", lemma, value=value)

    @classmethod
    def unclassified(cls) -> Expected:
        return cls("unclassified", "none")

    def magnitude(self, q: int) -> float | None:
        if self.kind == "zero":
            return 0.0
        if self.kind == "integer":
            return float(abs(self.integer))
        if self.kind == "power_of_q":
            return float(q) ** float(self.exponent)
        if self.kind == "exact":
            return abs(self.value)
        return None

    def shift_power(self, j: Fraction, c: int, lemma: str) -> Expected:
        """Expectation of c * (this sum) where c = q**j exactly."""
        if self.kind == "power_of_q":
            return Expected(
                "power_of_q",
                lemma,
                exponent=self.exponent + j,
                value=None if self.value is None else self.value * c,
            )
        if self.kind == "zero":
            return Expected.zero(lemma)
        if self.kind == "integer":
            return Expected.of_integer(self.integer * c, lemma)
        if self.kind == "exact":
            return Expected.exact(self.value * c, lemma)
        return Expected.unclassified()

    def rotated(self, w: RootOfUnity, lemma: str) -> Expected:
        """Expectation of w * (this sum) for a root of unity w."""
        if w.is_one or self.kind == "zero":
            return Expected(self.kind, lemma, self.exponent, self.integer, self.value)
        wc = w.to_complex()
        if self.kind == "integer":
            if 2 * w.numerator == w.order:
                return Expected.of_integer(-self.integer, lemma)
            return Expected.exact(self.integer * wc, lemma)
        if self.kind == "power_of_q":
            return Expected(
                "power_of_q",
                lemma,
                exponent=self.exponent,
                value=None if self.value is None else self.value * wc,
            )
        if self.kind == "exact":
            return Expected.exact(self.value * wc, lemma)
        return Expected.unclassified()

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.exponent is not None:
            out["exponent"] = [self.exponent.numerator, self.exponent.denominator]
        if self.integer is not None:
            out["integer"] = self.integer
        if self.value is not None:
            out["value"] = [self.value.real, self.value.imag]
        return out


@dataclass
class SumValue:
    """A computed character sum: complex value, expectation, term count."""

    value: complex
    expected: Expected
    terms: int

    @property
    def tolerance(self) -> float:
        return term_tolerance(self.terms)

    def agrees(self, q: int, tol: float | None = None) -> bool:
        tol = self.tolerance if tol is None else tol
        mag = self.expected.magnitude(q)
        if mag is not None and abs(abs(self.value) - mag) > tol:
            return False
        if self.expected.value is not None and abs(self.value - self.expected.value) > tol:
            return False
        return True

    def to_json(self, lemma: bool = True) -> dict:
        out = {
            "value": [self.value.real, self.value.imag],
            "expected": self.expected.to_json(),
            "terms": self.terms,
        }
        if lemma:
            out["lemma"] = self.expected.lemma
        return out


# ---------------------------------------------------------------------------
# Gauss sums


def _gauss_value(chi: MultCharacter, b: RingElement) -> complex:
    ring = chi.ring
    key = ("gauss", chi.exponents, b.coords)
    if key in ring._cache:
        return ring._cache[key]
    lam = AdditiveCharacter(ring, b)
    total = 0j
    for u in ring.units():
        total += (chi.eval_unit(u) * lam.eval(u)).to_complex()
    ring._cache[key] = total
    return total


def expected_gauss(chi: MultCharacter, b: RingElement) -> Expected:
    """Magnitude law for G(chi, lambda_b), split by the valuation of b."""
    ring = chi.ring
    n = ring.n
    if chi.is_trivial:
        if b.is_zero:
            return Expected.of_integer(ring.unit_count, "trivial-all")
        k, _ = ring.valuation(b)
        if k == n - 1:
            return Expected.of_integer(-(ring.q ** (n - 1)), "trivial-deep-twist")
        return Expected.zero("trivial-shallow-twist")
    if b.is_zero:
        return Expected.zero("nontrivial-zero-twist")
    k, _ = ring.valuation(b)
    if k == 0:
        if chi.is_primitive:
            return Expected.power(Fraction(n, 2), "primitive-unit-twist")
        return Expected.zero("gauss-vanishing")
    if chi.level == n - k:
        return Expected.power(Fraction(n + k, 2), "matched-ideal-twist")
    return Expected.zero("gauss-vanishing")


def gauss_sum(chi: MultCharacter, b: RingElement) -> SumValue:
    chi.ring._check_same(b)
    return SumValue(
        value=_gauss_value(chi, b),
        expected=expected_gauss(chi, b),
        terms=chi.ring.unit_count,
    )


# ---------------------------------------------------------------------------
# unit-solution counts


def count_unit_solutions(ring: GaloisRing, m: int, a: RingElement) -> int:
    """Number of unit m-tuples summing to a, by the closed-form count."""
    if m < 2:
        raise ValueError("m must be >= 2")
    q, n = ring.q, ring.n
    if a.is_unit:
        body = (q - 1) ** m + (-1) ** (m + 1)
    else:
        body = (q - 1) ** m + (-1) ** m * (q - 1)
    val = Fraction(q) ** (n * m - m - n) * body
    assert val.denominator == 1
    return int(val)


def count_unit_solutions_brute(
    ring: GaloisRing, m: int, a: RingElement, cap: int = DEFAULT_TERM_CAP
) -> int:
    units = ring.units()
    if len(units) ** (m - 1) > cap:
        raise TooLarge(f"{len(units) ** (m - 1)} tuples exceeds cap {cap}")
    unit_set = {u.coords for u in units}

    def walk(rem: tuple[int, ...], left: int) -> int:
        if left == 0:
            return 1 if rem in unit_set else 0
        return sum(walk(ring._sub(rem, u.coords), left - 1) for u in units)

    return walk(a.coords, m - 1)


def s_cardinality_qn(q: int, n: int, m: int, k: int) -> int:
    """|S| for the mixed domain (R*)^k x R^(m-k) with a fixed coordinate sum."""
    if not 1 <= k <= m - 1:
        raise ValueError("need 1 <= k <= m - 1")
    val = Fraction((q ** n - q ** (n - 1)) ** k * (q ** n) ** (m - k), q ** n)
    assert val.denominator == 1
    return int(val)


def s_cardinality(ring: GaloisRing, m: int, k: int) -> int:
    return s_cardinality_qn(ring.q, ring.n, m, k)


# ---------------------------------------------------------------------------
# Jacobi sums: brute force


def _check_chars(chars) -> GaloisRing:
    chars = list(chars)
    if len(chars) < 2:
        raise ValueError("need at least two characters")
    ring = chars[0].ring
    for c in chars[1:]:
        if c.ring.key != ring.key:
            raise RingMismatch("characters over different rings")
    return ring


def jacobi_brute(chars, a: RingElement, cap: int = DEFAULT_TERM_CAP) -> SumValue:
    """Direct sum over unit tuples with the given coordinate sum.

    Iterates (x_1, ..., x_{m-1}) over units in lexicographic order and solves
    for x_m, skipping tuples whose final coordinate is not a unit.
    """
    chars = list(chars)
    ring = _check_chars(chars)
    ring._check_same(a)
    m = len(chars)
    units = [u.coords for u in ring.units()]
    n_terms = len(units) ** (m - 1)
    if n_terms > cap:
        raise TooLarge(f"{n_terms} tuples exceeds cap {cap}")
    tables = [
        {u.coords: chars[i].eval_unit(u).to_complex() for u in ring.units()}
        for i in range(m)
    ]
    last = tables[m - 1]
    sub = ring._sub
    total = 0j
    if m == 2:
        t0 = tables[0]
        ac = a.coords
        for x in units:
            c = last.get(sub(ac, x))
            if c is not None:
                total += t0[x] * c
    elif m == 3:
        t0, t1 = tables[0], tables[1]
        ac = a.coords
        for x1 in units:
            r1 = sub(ac, x1)
            v1 = t0[x1]
            for x2 in units:
                c = last.get(sub(r1, x2))
                if c is not None:
                    total += v1 * t1[x2] * c
    else:
        ac = a.coords
        for combo in itertools.product(units, repeat=m - 1):
            rem = ac
            v = 1 + 0j
            for i, x in enumerate(combo):
                rem = sub(rem, x)
                v *= tables[i][x]
            c = last.get(rem)
            if c is not None:
                total += v * c
    return SumValue(value=total, expected=Expected.unclassified(), terms=n_terms)


# ---------------------------------------------------------------------------
# canonicalization: J_a = chi_1...chi_m(t) * J_{p^k}


def canonical_twists(ring: GaloisRing) -> list[RingElement]:
    """The canonical right-hand sides {0, 1, p, ..., p^(n-1)}."""
    return [ring.zero, ring.one] + [ring.p_power(k) for k in range(1, ring.n)]


def is_canonical(a: RingElement) -> bool:
    return a in canonical_twists(a.ring)


def canonicalize(chars, a: RingElement) -> tuple[RingElement, RootOfUnity]:
    """Reduce the twist to {0, 1, p^k} and return the scalar character factor.

    For a unit a the scalar is chi_1...chi_m(a); for a = p^k t with t a unit
    of the quotient ring, t is lifted back via its Teichmuller digit string
    (padded with zeros) and the scalar is the product character at that lift.
    """
    chars = list(chars)
    ring = _check_chars(chars)
    ring._check_same(a)
    one_root = RootOfUnity.make(0, 1)
    if a.is_zero:
        return ring.zero, one_root
    prod = product_character(chars)
    k, u = ring.valuation(a)
    if k == 0:
        return ring.one, prod.eval_unit(a)
    lifted = _lift_unit(ring, u, k)
    return ring.p_power(k), prod.eval_unit(lifted)


def _lift_unit(ring: GaloisRing, u: RingElement, k: int) -> RingElement:
    """Lift a unit of GR(p^(n-k), .) into R via its Teichmuller digits."""
    reduced = ring.reduced(k)
    digits = reduced.teichmuller_decompose(u)
    out = ring.zero
    for i, d in enumerate(digits):
        if d.is_zero:
            continue
        e = reduced.dlog_T[d.coords]
        out = out + ring.scalar(ring.p ** i) * ring.xi_powers[e]
    return out


# ---------------------------------------------------------------------------
# Jacobi sums: closed-form dispatch


def _gauss_quotient(
    chars, prod: MultCharacter, twist: RingElement, scale: int
) -> complex:
    num = 1 + 0j
    for c in chars:
        num *= _gauss_value(c, c.ring.one)
    den = _gauss_value(prod, twist)
    assert abs(den) > 1e-6, "denominator Gauss sum vanished unexpectedly"
    return scale * num / den


def jacobi_expected(chars, a: RingElement, cap: int = DEFAULT_TERM_CAP) -> Expected:
    """Closed-form value/magnitude of J_a for a canonical twist a."""
    chars = list(chars)
    ring = _check_chars(chars)
    ring._check_same(a)
    if not is_canonical(a):
        raise ValueError(f"{a} is not canonical; use canonicalize() first")
    m = len(chars)
    q, n = ring.q, ring.n

    if n == 1:
        # field base case: evaluated directly rather than via field theory
        val = jacobi_brute(chars, a, cap=cap).value
        return Expected.exact(val, "field-base")

    if all(c.is_trivial for c in chars):
        return Expected.of_integer(count_unit_solutions(ring, m, a), "all-trivial-count")

    if a.is_zero:
        return _expected_zero_twist(chars, ring, m, q, n, cap)

    prod = product_character(chars)
    if m == 2:
        return _expected_pair(chars, prod, a, ring, q, n, cap)
    return _expected_multi(chars, prod, a, ring, m, q, n, cap)


def _expected_zero_twist(chars, ring, m, q, n, cap) -> Expected:
    prod = product_character(chars)
    if m == 2:
        # pairing x with a - x = -x collapses the sum to a single character sum
        if prod.is_trivial:
            sign = chars[1].sign_at_minus_one()
            return Expected.of_integer(sign * ring.unit_count, "zero-twist-pair")
        return Expected.zero("zero-twist-pair")
    if prod.is_trivial:
        idx = max(i for i, c in enumerate(chars) if not c.is_trivial)
        rest = chars[:idx] + chars[idx + 1 :]
        sign = chars[idx].sign_at_minus_one()
        sub = jacobi_expected(rest, ring.one, cap=cap)
        scale = sign * ring.unit_count
        if sub.kind == "zero":
            return Expected.zero("zero-twist-split")
        if sub.value is not None:
            return Expected.exact(scale * sub.value, "zero-twist-split")
        return Expected.unclassified()
    return Expected.zero("zero-twist-split")


def _expected_pair(chars, prod, a, ring, q, n, cap) -> Expected:
    chi1, chi2 = chars
    k = 0 if a == ring.one else ring.valuation(a)[0]

    if chi1.is_trivial or chi2.is_trivial:
        nt = chi2 if chi1.is_trivial else chi1
        if k == 0:
            if nt.level == 1:
                return Expected.of_integer(-(q ** (n - 1)), "one-trivial-pair")
            return Expected.zero("one-trivial-pair")
        return Expected.zero("one-trivial-pair")

    if prod.is_trivial:
        sign = chi2.sign_at_minus_one()
        if k == 0:
            if chi2.level <= 1:
                return Expected.of_integer(-sign * q ** (n - 1), "inverse-pair")
            return Expected.zero("inverse-pair")
        t2 = chi2.level
        if t2 > k + 1:
            return Expected.zero("inverse-pair-ideal")
        if t2 <= k:
            return Expected.of_integer(sign * ring.unit_count, "inverse-pair-ideal")
        return Expected.of_integer(-sign * q ** (n - 1), "inverse-pair-ideal")

    if chi1.is_primitive or chi2.is_primitive:
        t = prod.level
        if k == 0:
            if t == n:
                val = _gauss_quotient(chars, prod, ring.one, 1)
                if chi1.is_primitive and chi2.is_primitive:
                    return Expected.power(Fraction(n, 2), "gauss-quotient-pair", val)
                return Expected("zero", "gauss-quotient-pair", value=0j)
            return Expected.zero("primitive-pair-vanishing")
        if t == n:
            return Expected.zero("primitive-pair-vanishing")
        if k == n - t:
            val = _gauss_quotient(chars, prod, ring.p_power(k), q ** k)
            return Expected.power(Fraction(n + k, 2), "gauss-quotient-ideal-pair", val)
        return Expected.zero("level-mismatch-zero")

    # neither character primitive: reduce to the quotient ring
    return _expected_reduction(chars, a, ring, 2, q, n, cap)


def _expected_multi(chars, prod, a, ring, m, q, n, cap) -> Expected:
    k = 0 if a == ring.one else ring.valuation(a)[0]
    prim_idx = [i for i, c in enumerate(chars) if c.is_primitive]
    if not prim_idx:
        return _expected_reduction(chars, a, ring, m, q, n, cap)

    idx = prim_idx[-1]
    ordered = chars[:idx] + chars[idx + 1 :] + [chars[idx]]
    last = ordered[-1]
    t = prod.level
    all_prim = len(prim_idx) == m

    if k == 0:
        if t == n:
            val = _gauss_quotient(ordered, prod, ring.one, 1)
            if all_prim:
                return Expected.power(Fraction((m - 1) * n, 2), "gauss-quotient", val)
            return Expected("zero", "gauss-quotient", value=0j)
        return Expected.zero("multi-vanishing")

    if 1 <= t <= n - 1 and k == n - t:
        val = _gauss_quotient(ordered, prod, ring.p_power(k), q ** k)
        if all_prim:
            return Expected.power(
                Fraction((m - 1) * n + k, 2), "gauss-quotient-ideal", val
            )
        return Expected("zero", "gauss-quotient-ideal", value=0j)
    if t == 0 and k == n - 1:
        rest = ordered[:-1]
        prod_rest = product_character(rest)
        sign = -last.sign_at_minus_one() * q ** (n - 1)
        val = sign * _gauss_quotient(rest, prod_rest, ring.one, 1)
        if all(c.is_primitive for c in rest) and prod_rest.is_primitive:
            return Expected.power(Fraction(n * m - 2, 2), "boundary-split", val)
        return Expected("zero", "boundary-split", value=0j)
    return Expected.zero("multi-vanishing")


def _expected_reduction(chars, a, ring, m, q, n, cap) -> Expected:
    """No character primitive: push the sum down to GR(p^(n-k), .).

    Counting lifts of a unit tuple through the reduction map gives a factor
    q^(k(m-1)): each of the m fibers has q^k points and the coordinate-sum
    constraint removes one factor.
    """
    k = n - max(c.level for c in chars)
    assert 1 <= k <= n - 1
    target = ring.reduced(k)
    projected = [project_character(c, k) for c in chars]
    a_red = ring.reduce(a, k)
    sub = jacobi_expected(projected, a_red, cap=cap)
    scale = q ** (k * (m - 1))
    return sub.shift_power(Fraction(k * (m - 1)), scale, "digit-reduction")


def jacobi(chars, a: RingElement, cap: int = DEFAULT_TERM_CAP) -> SumValue:
    """Brute-force J_a together with its closed-form expectation."""
    chars = list(chars)
    brute = jacobi_brute(chars, a, cap=cap)
    canon, scalar = canonicalize(chars, a)
    base = jacobi_expected(chars, canon, cap=cap)
    return SumValue(value=brute.value, expected=base.rotated(scalar, base.lemma), terms=brute.terms)


# ---------------------------------------------------------------------------
# modified Jacobi sums over S = (R*)^k x R^(m-k)


def tilde_jacobi_brute(
    chars, k: int, a: RingElement, cap: int = DEFAULT_TERM_CAP
) -> SumValue:
    """Sum of extended character products over the mixed domain S."""
    chars = list(chars)
    ring = _check_chars(chars)
    ring._check_same(a)
    m = len(chars)
    if not 1 <= k <= m - 1:
        raise ValueError("need 1 <= k <= m - 1")
    units = [u.coords for u in ring.units()]
    everything = [x.coords for x in ring.elements()]
    n_terms = len(units) ** k * len(everything) ** (m - 1 - k)
    if n_terms > cap:
        raise TooLarge(f"{n_terms} tuples exceeds cap {cap}")
    tables = [c.value_table() for c in chars]
    last = tables[m - 1]
    sub = ring._sub
    domains = [units] * k + [everything] * (m - 1 - k)
    total = 0j
    ac = a.coords
    for combo in itertools.product(*domains):
        rem = ac
        v = 1 + 0j
        for i, x in enumerate(combo):
            rem = sub(rem, x)
            if v:
                v *= tables[i][x]
        if v:
            total += v * last[rem]
    return SumValue(value=total, expected=Expected.unclassified(), terms=n_terms)


def tilde_jacobi_classify(
    chars, k: int, a: RingElement, cap: int = DEFAULT_TERM_CAP
) -> Expected:
    """Expected value of the modified sum, split by which block is trivial.

    A trivial character extended by 1 on the maximal ideal leaves its free
    coordinate unconstrained, so once the whole free block is trivial the sum
    factorizes over the unit block and dies unless every character is trivial.
    """
    chars = list(chars)
    ring = _check_chars(chars)
    m = len(chars)
    if not 1 <= k <= m - 1:
        raise ValueError("need 1 <= k <= m - 1")
    tail = chars[k:]
    tail_trivial = [c.is_trivial for c in tail]
    if all(not t for t in tail_trivial):
        canon, scalar = canonicalize(chars, a)
        base = jacobi_expected(chars, canon, cap=cap)
        return base.rotated(scalar, "unit-restricted")
    if all(tail_trivial):
        if all(c.is_trivial for c in chars):
            return Expected.of_integer(s_cardinality(ring, m, k), "free-block-count")
        return Expected.zero("free-block-zero")
    return Expected.zero("mixed-free-block")
