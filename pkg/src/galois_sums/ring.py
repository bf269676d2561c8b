"""Galois rings GR(p^n, p^ns) with exact arithmetic.

The ring is the quotient Z_{p^n}[x]/(h(x)) where h is a monic degree-s
polynomial whose reduction mod p is primitive over F_p and which divides
x^(p^s - 1) - 1 over Z_{p^n}.  Elements are stored in the polynomial basis
1, xi, ..., xi^(s-1) with coefficients in Z_{p^n}; xi (the class of x) has
multiplicative order p^s - 1.  For s = 1 the ring is Z_{p^n} itself and xi
is the unique Teichmuller generator of the (p-1)-torsion.

Structural tables (Teichmuller set, discrete logs against xi, the Frobenius
coordinate map) are built eagerly and every invariant (order of xi, t^q = t,
exact divisibility of x^(q-1) - 1 by the modulus) is checked at build time;
failures raise InvalidModulus.  Derived tables are cached lazily, but each
cache entry is a deterministic function of the ring alone, so rings are safe
to share across threads: a racing recomputation writes the same value.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BadLevel, InvalidModulus, NotAUnit, NotInBaseRing, SizeLimit

DEFAULT_ELEMENT_CAP = 1 << 20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk-scale inputs only)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# integer-coefficient polynomial helpers (ascending coefficient lists)

def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list[int], b: list[int], mod: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % mod
    return _trim(out)


def _poly_divmod(num: list[int], den: list[int], mod: int) -> tuple[list[int], list[int]]:
    """Long division by a monic divisor; exact over Z_mod."""
    num = [c % mod for c in num]
    d = len(den) - 1
    if len(num) - 1 < d:
        return [0], _trim(num)
    quot = [0] * (len(num) - d)
    rem = list(num)
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if c:
            quot[i - d] = c
            for j, dj in enumerate(den):
                rem[i - d + j] = (rem[i - d + j] - c * dj) % mod
    return _trim(quot), _trim(rem)


def _poly_pow_mod(base: list[int], exp: int, den: list[int], mod: int) -> list[int]:
    result = [1]
    acc = _poly_divmod(base, den, mod)[1]
    while exp > 0:
        if exp & 1:
            result = _poly_divmod(_poly_mul(result, acc, mod), den, mod)[1]
        acc = _poly_divmod(_poly_mul(acc, acc, mod), den, mod)[1]
        exp >>= 1
    return result


def _is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg(f)/2 over F_p."""
    s = len(f) - 1
    if s == 1:
        return True
    if f[0] % p == 0:
        return False
    for d in range(1, s // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            _, r = _poly_divmod(list(f), g, p)
            if all(c == 0 for c in r):
                return False
    return True


def _is_primitive(f: list[int], p: int) -> bool:
    """f monic of degree s over F_p; checks the class of x has order p^s - 1."""
    s = len(f) - 1
    q1 = p ** s - 1
    if not _is_irreducible(f, p):
        return False
    x = [0, 1]
    if _poly_pow_mod(x, q1, f, p) != [1]:
        return False
    for ell in factorize(q1):
        if _poly_pow_mod(x, q1 // ell, f, p) == [1]:
            return False
    return True


def _divides_cyclotomic(h: list[int], mod: int, e: int) -> bool:
    """Exact division check: h | x^e - 1 over Z_mod."""
    big = [0] * (e + 1)
    big[0] = (-1) % mod
    big[e] = 1
    _, r = _poly_divmod(big, list(h), mod)
    return all(c == 0 for c in r)


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fac = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in fac):
            return g
    raise ValueError(f"no primitive root mod {p}")


@dataclass(frozen=True)
class RingParams:
    """Shape parameters of GR(p^n, p^ns): characteristic p^n, extension degree s."""

    p: int
    n: int
    s: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")

    @property
    def q(self) -> int:
        return self.p ** self.s


@dataclass(frozen=True)
class Polynomial:
    """A monic polynomial over Z_{p^n}, ascending coefficients."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                terms.append(xs if c == 1 else f"{c}{xs}")
        return " + ".join(terms) if terms else "0"


def find_basic_primitive_poly(p: int, n: int, s: int) -> Polynomial:
    """Deterministic monic degree-s modulus for GR(p^n, p^ns).

    The reduction mod p is the lexicographically smallest primitive polynomial
    over F_p (coefficients compared from degree s-1 down to the constant), and
    the returned polynomial is its unique monic lift dividing x^(p^s - 1) - 1
    over Z_{p^n}.  For s = 1 the result is x - g where g is the Teichmuller
    lift of the smallest primitive root mod p.
    """
    params = RingParams(p, n, s)
    pn = p ** n
    q = params.q
    if s == 1:
        g = smallest_primitive_root(p)
        t = pow(g, p ** (n - 1), pn)
        return Polynomial(((-t) % pn, 1))
    f: list[int] | None = None
    for desc in itertools.product(range(p), repeat=s):
        cand = list(desc[::-1]) + [1]
        if _is_primitive(cand, p):
            f = cand
            break
    assert f is not None  # a primitive polynomial of every degree exists
    if n == 1:
        return Polynomial(tuple(f))
    step = p ** (n - 1)
    for offs in itertools.product(range(step), repeat=s):
        h = [f[i] + p * offs[s - 1 - i] for i in range(s)] + [1]
        if _divides_cyclotomic(h, pn, q - 1):
            return Polynomial(tuple(h))
    raise InvalidModulus(f"no qualifying lift of {f} found mod {pn}")  # pragma: no cover


class RingElement:
    """An element of a GaloisRing in polynomial-basis coordinates."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: GaloisRing, coords: tuple[int, ...]):
        self.ring = ring
        self.coords = coords

    def __add__(self, other: RingElement) -> RingElement:
        self.ring._check_same(other)
        return RingElement(self.ring, self.ring._add(self.coords, other.coords))

    def __sub__(self, other: RingElement) -> RingElement:
        self.ring._check_same(other)
        return RingElement(self.ring, self.ring._sub(self.coords, other.coords))

    def __mul__(self, other: RingElement) -> RingElement:
        self.ring._check_same(other)
        return RingElement(self.ring, self.ring._mul(self.coords, other.coords))

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, self.ring._neg(self.coords))

    def __pow__(self, e: int) -> RingElement:
        return RingElement(self.ring, self.ring._pow(self.coords, e))

    def inv(self) -> RingElement:
        return RingElement(self.ring, self.ring._inv(self.coords))

    @property
    def is_unit(self) -> bool:
        return self.ring._is_unit(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RingElement)
            and self.ring.key == other.ring.key
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"RingElement{self.coords}"


class GaloisRing:
    """Immutable context for GR(p^n, p^ns): modulus, Teichmuller table, dlogs."""

    def __init__(
        self,
        p: int,
        n: int,
        s: int,
        modulus: Polynomial | None = None,
        element_cap: int = DEFAULT_ELEMENT_CAP,
    ):
        self.params = RingParams(p, n, s)
        self.p, self.n, self.s = p, n, s
        self.q = self.params.q
        self.pn = p ** n
        self.element_count = self.q ** n
        self.unit_count = self.q ** n - self.q ** (n - 1)
        if self.element_count > element_cap:
            raise SizeLimit(
                f"ring would have {self.element_count} elements, cap is {element_cap}"
            )
        if modulus is None:
            modulus = find_basic_primitive_poly(p, n, s)
        self._validate_modulus(modulus)
        self.modulus = modulus
        self._mod_low = modulus.coeffs[:-1]

        self.zero = RingElement(self, (0,) * s)
        self.one = RingElement(self, (1,) + (0,) * (s - 1))
        if s == 1:
            self.xi = RingElement(self, ((-modulus.coeffs[0]) % self.pn,))
        else:
            self.xi = RingElement(self, (0, 1) + (0,) * (s - 2))

        self._build_teichmuller()
        self._build_frobenius()
        self._cache: dict = {}
        self._reduced: dict[int, GaloisRing] = {}

    # -- construction helpers ------------------------------------------------

    def _validate_modulus(self, h: Polynomial) -> None:
        if len(h.coeffs) != self.s + 1:
            raise InvalidModulus(f"modulus degree must be {self.s}")
        if not h.is_monic:
            raise InvalidModulus("modulus must be monic")
        if any(not (0 <= c < self.pn) for c in h.coeffs):
            raise InvalidModulus(f"coefficients must be reduced mod {self.pn}")
        f = [c % self.p for c in h.coeffs]
        if self.s == 1:
            g = (-f[0]) % self.p
            order_target = self.p - 1
            if self.p > 2:
                fac = factorize(order_target)
                if g == 0 or any(pow(g, order_target // ell, self.p) == 1 for ell in fac):
                    raise InvalidModulus("reduction mod p is not primitive")
        elif not _is_primitive(f, self.p):
            raise InvalidModulus("reduction mod p is not a primitive polynomial")
        if not _divides_cyclotomic(list(h.coeffs), self.pn, self.q - 1):
            raise InvalidModulus(f"{h} does not divide x^{self.q - 1} - 1 mod {self.pn}")

    def _build_teichmuller(self) -> None:
        powers = [self.one.coords]
        acc = self.one.coords
        for _ in range(self.q - 2):
            acc = self._mul(acc, self.xi.coords)
            powers.append(acc)
        if self._mul(acc, self.xi.coords) != self.one.coords:
            raise InvalidModulus("xi does not have order q - 1")
        if len(set(powers)) != self.q - 1:
            raise InvalidModulus("powers of xi are not distinct")
        self.xi_powers = [RingElement(self, c) for c in powers]
        self.teich_set = [self.zero] + self.xi_powers
        for t in self.teich_set:
            if self._pow(t.coords, self.q) != t.coords:
                raise InvalidModulus("Teichmuller element fails t^q = t")
        self.dlog_T = {c: i for i, c in enumerate(powers)}

    def _build_frobenius(self) -> None:
        # phi maps sum a_i xi^i to sum a_i xi^(i p); rows give xi^(i p) coords
        rows = []
        for i in range(self.s):
            rows.append(self.xi_powers[(i * self.p) % (self.q - 1)].coords)
        self._frob_rows = rows

    # -- tuple-level arithmetic (performance kernels use these directly) ------

    def _check_same(self, other) -> None:
        from .errors import RingMismatch

        ring = other.ring if isinstance(other, RingElement) else other
        if ring.key != self.key:
            raise RingMismatch(f"{ring} is not {self}")

    def _add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        pn = self.pn
        return tuple((x + y) % pn for x, y in zip(a, b))

    def _sub(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        pn = self.pn
        return tuple((x - y) % pn for x, y in zip(a, b))

    def _neg(self, a: tuple[int, ...]) -> tuple[int, ...]:
        pn = self.pn
        return tuple((-x) % pn for x in a)

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        s, pn = self.s, self.pn
        if s == 1:
            return ((a[0] * b[0]) % pn,)
        conv = [0] * (2 * s - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                conv[i + j] += ai * bj
        low = self._mod_low
        for d in range(2 * s - 2, s - 1, -1):
            c = conv[d]
            if c % pn == 0:
                continue
            base = d - s
            for j, hj in enumerate(low):
                conv[base + j] -= c * hj
        return tuple(conv[i] % pn for i in range(s))

    def _pow(self, a: tuple[int, ...], e: int) -> tuple[int, ...]:
        result = self.one.coords
        acc = a
        while e > 0:
            if e & 1:
                result = self._mul(result, acc)
            acc = self._mul(acc, acc)
            e >>= 1
        return result

    def _is_unit(self, a: tuple[int, ...]) -> bool:
        p = self.p
        return any(c % p != 0 for c in a)

    def _inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        if not self._is_unit(a):
            raise NotAUnit(f"{a} lies in the maximal ideal")
        return self._pow(a, self.unit_count - 1)

    # -- public element API ----------------------------------------------------

    @property
    def key(self) -> tuple:
        return (self.p, self.n, self.s, self.modulus.coeffs)

    def element(self, coords) -> RingElement:
        coords = tuple(int(c) % self.pn for c in coords)
        if len(coords) != self.s:
            raise ValueError(f"expected {self.s} coordinates, got {len(coords)}")
        return RingElement(self, coords)

    def scalar(self, c: int) -> RingElement:
        return RingElement(self, (c % self.pn,) + (0,) * (self.s - 1))

    def p_power(self, k: int) -> RingElement:
        if not 0 <= k <= self.n:
            raise ValueError(f"k must be in [0, {self.n}]")
        return self.scalar(self.p ** k) if k < self.n else self.zero

    def add(self, x: RingElement, y: RingElement) -> RingElement:
        return x + y

    def mul(self, x: RingElement, y: RingElement) -> RingElement:
        return x * y

    def neg(self, x: RingElement) -> RingElement:
        return -x

    def inv(self, x: RingElement) -> RingElement:
        return x.inv()

    def is_unit(self, x: RingElement) -> bool:
        return x.is_unit

    def elements(self) -> list[RingElement]:
        """All q^n elements in lexicographic coordinate order."""
        if "elements" not in self._cache:
            self._cache["elements"] = [
                RingElement(self, c)
                for c in itertools.product(range(self.pn), repeat=self.s)
            ]
        return self._cache["elements"]

    def units(self) -> list[RingElement]:
        if "units" not in self._cache:
            self._cache["units"] = [x for x in self.elements() if x.is_unit]
        return self._cache["units"]

    def ideal(self, k: int) -> list[RingElement]:
        """The ideal p^k R in enumeration order (q^(n-k) elements)."""
        if not 0 <= k <= self.n:
            raise BadLevel(f"k must be in [0, {self.n}]")
        key = ("ideal", k)
        if key not in self._cache:
            pk = self.p ** k
            self._cache[key] = [
                RingElement(self, c)
                for c in itertools.product(range(0, self.pn, pk), repeat=self.s)
            ]
        return self._cache[key]

    def one_plus_ideal(self, k: int) -> list[RingElement]:
        """The subgroup 1 + p^k R of the units (k >= 1)."""
        key = ("one_plus_ideal", k)
        if key not in self._cache:
            self._cache[key] = [self.one + m for m in self.ideal(k)]
        return self._cache[key]

    # -- Teichmuller structure --------------------------------------------------

    def teich_lift(self, x: RingElement) -> RingElement:
        """The unique t in T with t = x mod p, computed as x^(q^(n-1))."""
        return RingElement(self, self._pow(x.coords, self.q ** (self.n - 1)))

    def teichmuller_decompose(self, x: RingElement) -> tuple[RingElement, ...]:
        """Digits (c_0, ..., c_{n-1}) in T with x = sum p^i c_i."""
        digits = []
        r = x.coords
        for _ in range(self.n):
            c = self._pow(r, self.q ** (self.n - 1))
            digits.append(RingElement(self, c))
            diff = self._sub(r, c)
            assert all(d % self.p == 0 for d in diff)
            r = tuple(d // self.p for d in diff)
        return tuple(digits)

    def teich_recompose(self, digits) -> RingElement:
        acc = self.zero
        for i, c in enumerate(digits):
            acc = acc + self.scalar(self.p ** i) * c
        return acc

    def valuation(self, x: RingElement) -> tuple[int, RingElement | None]:
        """Minimal k with x in p^k R, plus the unit part in GR(p^(n-k), .).

        Returns (n, None) for x = 0 by convention.
        """
        if x.is_zero:
            return self.n, None
        k = self.n
        for c in x.coords:
            if c == 0:
                continue
            v = 0
            while c % self.p == 0:
                c //= self.p
                v += 1
            k = min(k, v)
        pk = self.p ** k
        u_coords = tuple(c // pk for c in x.coords)
        target = self.reduced(k)
        return k, target.element(u_coords)

    # -- Frobenius, trace, reduction ---------------------------------------------

    def frobenius(self, x: RingElement) -> RingElement:
        out = self.zero.coords
        for i, a in enumerate(x.coords):
            if a:
                row = self._frob_rows[i]
                out = self._add(out, tuple((a * r) % self.pn for r in row))
        return RingElement(self, out)

    def trace(self, x: RingElement) -> int:
        """Generalized trace tr_n(x) = x + phi(x) + ... + phi^(s-1)(x) in Z_{p^n}."""
        acc = x
        cur = x
        for _ in range(self.s - 1):
            cur = self.frobenius(cur)
            acc = acc + cur
        if any(c != 0 for c in acc.coords[1:]):
            raise NotInBaseRing(f"trace of {x} is {acc}, not a scalar")
        return acc.coords[0]

    def reduced(self, k: int) -> GaloisRing:
        """The quotient ring GR(p^(n-k), p^((n-k)s)), cached per level."""
        if k == 0:
            return self
        if not 1 <= k <= self.n - 1:
            raise BadLevel(f"reduction level {k} not in [1, {self.n - 1}]")
        if k not in self._reduced:
            pm = self.p ** (self.n - k)
            h = Polynomial(tuple(c % pm for c in self.modulus.coeffs))
            self._reduced[k] = GaloisRing(self.p, self.n - k, self.s, modulus=h)
        return self._reduced[k]

    def reduce(self, x: RingElement, k: int) -> RingElement:
        """Coordinate-wise reduction mod p^(n-k) into the quotient ring."""
        target = self.reduced(k)
        return target.element(tuple(c % target.pn for c in x.coords))

    def residue_field(self) -> GaloisRing:
        return self.reduced(self.n - 1) if self.n > 1 else self

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "s": self.s,
            "modulus": list(self.modulus.coeffs),
        }

    @classmethod
    def from_json(cls, data: dict, element_cap: int = DEFAULT_ELEMENT_CAP) -> GaloisRing:
        return cls(
            data["p"],
            data["n"],
            data["s"],
            modulus=Polynomial(tuple(data["modulus"])),
            element_cap=element_cap,
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GaloisRing) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"GR({self.p}^{self.n}, {self.p}^{self.n * self.s}; {self.modulus})"


def build_ring(
    p: int,
    n: int,
    s: int,
    modulus: Polynomial | None = None,
    element_cap: int = DEFAULT_ELEMENT_CAP,
) -> GaloisRing:
    """Construct GR(p^n, p^ns), searching for the canonical modulus if omitted."""
    return GaloisRing(p, n, s, modulus=modulus, element_cap=element_cap)
