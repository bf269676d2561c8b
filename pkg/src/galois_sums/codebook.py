"""Unit-norm codebooks from modified Jacobi sums, with Welch-bound evaluation.

A codebook row is indexed by a tuple of multiplicative characters of the form
lift(psi) * section(a): psi runs over the characters of the quotient ring one
level down, a over the residue field, and section(a) is the fixed extension
of phi_a to the full unit group.  Entries are extended character products
over the mixed domain S = {(x_1..x_m) in (R*)^k x R^(m-k) : sum x_i = a},
scaled by the square root of the support size; the standard basis of the
ambient space is appended.  Zero entries are structural (an extended
character vanishing on the maximal ideal), never a floating-point accident.
"""
from __future__ import annotations

import io
import itertools
import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import (
    MultCharacter,
    enumerate_characters,
    extend_phi,
    lift_character,
)
from .errors import DegenerateDimensions, NotAUnit, NotPrimePower, TooLarge
from .ring import GaloisRing, RingElement, factorize
from .sums import s_cardinality, s_cardinality_qn

DEFAULT_ENTRY_CAP = 10 ** 8
DEFAULT_PAIR_BUDGET = 10 ** 9


def worker_count() -> int:
    """Worker bound from GALOIS_SUMS_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("GALOIS_SUMS_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class CodebookParams:
    ring: GaloisRing
    m: int
    k: int
    a: RingElement
    psi0: MultCharacter | None = None
    section: str = "lex-min"

    def __post_init__(self) -> None:
        if self.ring.n < 2:
            raise ValueError("codebook construction needs n >= 2")
        if self.m < 2:
            raise ValueError("m must be >= 2")
        if not 1 <= self.k <= self.m - 1:
            raise ValueError("need 1 <= k <= m - 1")
        self.ring._check_same(self.a)
        if self.psi0 is None:
            self.psi0 = MultCharacter.trivial(self.ring.reduced(1))


@dataclass
class Codebook:
    params: CodebookParams
    rows: np.ndarray
    row_labels: list
    support_sizes: np.ndarray
    N: int
    K: int
    f_count: int

    def to_json_params(self) -> dict:
        p = self.params
        return {
            "ring": p.ring.to_json(),
            "m": p.m,
            "k": p.k,
            "a": list(p.a.coords),
            "psi0": list(p.psi0.exponents),
            "section": p.section,
            "N": self.N,
            "K": self.K,
        }


@dataclass
class EvalReport:
    imax_measured: float
    imax_formula: float
    welch: float
    ratio: float
    pair_argmax: tuple[int, int]

    def to_json(self, N: int, K: int) -> dict:
        return {
            "N": N,
            "K": K,
            "imax_measured": self.imax_measured,
            "imax_formula": self.imax_formula,
            "welch": self.welch,
            "ratio": self.ratio,
            "argmax": list(self.pair_argmax),
        }


def _row_characters(params: CodebookParams):
    """Yield (label, chars) for every row of the structured part, in lex order."""
    ring = params.ring
    red = ring.reduced(1)
    field = ring.residue_field()
    red_chars = enumerate_characters(red)
    fq = field.elements()
    lift_cache = {psi.exponents: lift_character(psi, ring) for psi in red_chars}
    section = {a.coords: extend_phi(ring, a, params.section) for a in fq}
    psi0_lift = lift_cache[params.psi0.exponents]
    tail_space = list(itertools.product(red_chars, fq))
    for a1 in fq:
        head = psi0_lift * section[a1.coords]
        for combo in itertools.product(tail_space, repeat=params.m - 1):
            chars = [head] + [lift_cache[psi.exponents] * section[ai.coords] for psi, ai in combo]
            label = (a1.coords,) + tuple(
                (psi.exponents, ai.coords) for psi, ai in combo
            )
            yield label, chars


def s_tuples(params: CodebookParams) -> list[tuple[tuple[int, ...], ...]]:
    """The domain S in lexicographic order, as full coordinate m-tuples."""
    ring, m, k = params.ring, params.m, params.k
    units = [u.coords for u in ring.units()]
    everything = [x.coords for x in ring.elements()]
    domains = [units] * k + [everything] * (m - 1 - k)
    out = []
    ac = params.a.coords
    sub = ring._sub
    for combo in itertools.product(*domains):
        rem = ac
        for x in combo:
            rem = sub(rem, x)
        out.append(combo + (rem,))
    return out


def build_codebook(
    params: CodebookParams,
    allow_nonunit_a: bool = False,
    entry_cap: int = DEFAULT_ENTRY_CAP,
) -> Codebook:
    """Assemble the full N x K matrix of the construction.

    The main optimality statement requires a unit twist a; passing a in the
    maximal ideal is allowed only with allow_nonunit_a=True and emits a
    warning since those parameter choices carry no optimality guarantee.
    """
    ring = params.ring
    if not params.a.is_unit:
        if not allow_nonunit_a:
            raise NotAUnit("codebook twist a must be a unit (or pass allow_nonunit_a)")
        warnings.warn(
            "twist a lies in the maximal ideal: the optimality guarantees do not apply",
            stacklevel=2,
        )
    q, n, m, k = ring.q, ring.n, params.m, params.k
    K = s_cardinality(ring, m, k)
    f_count = q * ring.unit_count ** (m - 1)
    N = f_count + K
    if N * K > entry_cap:
        raise TooLarge(f"{N} x {K} entries exceeds cap {entry_cap}")

    columns = s_tuples(params)
    assert len(columns) == K

    unit_set = {u.coords for u in ring.units()}
    rows = np.zeros((N, K), dtype=np.complex128)
    labels: list = []
    supports = np.zeros(N, dtype=np.int64)
    for r_idx, (label, chars) in enumerate(_row_characters(params)):
        tables = []
        nontrivial = []
        for c in chars:
            tables.append({u: c.eval_unit(params.ring.element(u)).to_complex() for u in unit_set})
            nontrivial.append(not c.is_trivial)
        row = np.zeros(K, dtype=np.complex128)
        support = 0
        for col, tup in enumerate(columns):
            v = 1 + 0j
            dead = False
            for i, x in enumerate(tup):
                if x in unit_set:
                    v *= tables[i][x]
                elif nontrivial[i]:
                    dead = True
                    break
            if not dead:
                row[col] = v
                support += 1
        assert support > 0
        rows[r_idx] = row / math.sqrt(support)
        supports[r_idx] = support
        labels.append(("F",) + label)
    for j in range(K):
        rows[f_count + j, j] = 1.0
        supports[f_count + j] = 1
        labels.append(("E", j))
    return Codebook(
        params=params,
        rows=rows,
        row_labels=labels,
        support_sizes=supports,
        N=N,
        K=K,
        f_count=f_count,
    )


# ---------------------------------------------------------------------------
# evaluation


def imax_exhaustive(
    cb: Codebook,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    threads: int | None = None,
) -> EvalReport:
    """Maximum |c_i c_j^H| over all unordered pairs, with deterministic argmax.

    The scan is blocked over rows; blocks may be dispatched to a thread pool
    (bounded by GALOIS_SUMS_THREADS) but results are combined in block order,
    so the reported maximum and its smallest-index witness never depend on
    scheduling.
    """
    N, K = cb.N, cb.K
    if N * (N - 1) // 2 * K > pair_budget:
        raise TooLarge("pair scan exceeds budget")
    threads = worker_count() if threads is None else max(1, threads)
    rows = cb.rows
    conj = rows.conj().T
    block = 256  # fixed, so the block split never depends on the thread count

    def scan(i0: int) -> tuple[float, tuple[int, int]]:
        i1 = min(N, i0 + block)
        g = np.abs(rows[i0:i1] @ conj)
        cols = np.arange(N)[None, :]
        idx = np.arange(i0, i1)[:, None]
        g[cols <= idx] = -1.0
        flat = int(np.argmax(g))
        r, c = divmod(flat, N)
        return float(g[r, c]), (i0 + r, c)

    starts = list(range(0, N, block))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(scan, starts))
    else:
        results = [scan(i0) for i0 in starts]

    best_val, best_pair = -1.0, (0, 0)
    for val, pair in results:
        if val > best_val:
            best_val, best_pair = val, pair
    p = cb.params
    formula = imax_formula(p.ring.q, p.ring.n, p.m)
    welch = welch_bound(N, K)
    return EvalReport(
        imax_measured=best_val,
        imax_formula=formula,
        welch=welch,
        ratio=best_val / welch,
        pair_argmax=best_pair,
    )


def _q_power(q: int, num: int) -> float:
    """q**(num/2) with exact integer arithmetic when num is even."""
    if num % 2 == 0:
        return float(q ** (num // 2))
    return math.sqrt(q ** num)


def imax_formula(q: int, n: int, m: int) -> float:
    """Peak cross-correlation of the unit-twist construction."""
    den = q ** (m * n - m - n) * ((q - 1) ** m + (-1) ** (m + 1))
    return _q_power(q, (m - 1) * n) / den


def imax_remark(q: int, n: int, m: int, case: str) -> float:
    """Peak cross-correlation for the degenerate twists.

    case "a0" is the zero twist, case "aM" a twist in the maximal ideal.
    Neither family is optimal.
    """
    body = (q - 1) ** m + (-1) ** m * (q - 1)
    if case == "a0":
        return (q ** n - q ** (n - 1)) * _q_power(q, (m - 2) * n) / (
            q ** (m * n - m - n) * body
        )
    if case == "aM":
        return _q_power(q, 2 * m + 2 * n - m * n - 1) / body
    raise ValueError(f"case must be 'a0' or 'aM', got {case!r}")


def welch_bound(N: int, K: int) -> float:
    if not N > K >= 1:
        raise DegenerateDimensions(f"need N > K >= 1, got ({N}, {K})")
    return math.sqrt(float(Fraction(N - K, (N - 1) * K)))


def codebook_size(q: int, n: int, m: int, k: int) -> tuple[int, int]:
    K = s_cardinality_qn(q, n, m, k)
    N = q * (q ** n - q ** (n - 1)) ** (m - 1) + K
    return N, K


def asymptotic_ratio(q: int, n: int, m: int, k: int) -> float:
    """Imax / I_W for the unit-twist construction; tends to 1 as q grows."""
    N, K = codebook_size(q, n, m, k)
    return imax_formula(q, n, m) / welch_bound(N, K)


def is_prime_power(q: int) -> bool:
    return q > 1 and len(factorize(q)) == 1


@dataclass
class Table2Row:
    q: int
    N: int
    K: int
    imax: float
    welch: float
    ratio: float

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "N": self.N,
            "K": self.K,
            "imax": self.imax,
            "welch": self.welch,
            "ratio": self.ratio,
        }


TABLE2_DEFAULT_Q = (11, 19, 31, 53, 81, 121, 179, 256)


def table2(q_list=None, n: int = 2, m: int = 3, k: int = 1) -> list[Table2Row]:
    """Analytic parameter table for the default (n, m, k) = (2, 3, 1) family."""
    qs = TABLE2_DEFAULT_Q if q_list is None else tuple(q_list)
    out = []
    for q in qs:
        if not is_prime_power(q):
            raise NotPrimePower(f"{q} is not a prime power")
        N, K = codebook_size(q, n, m, k)
        out.append(
            Table2Row(
                q=q,
                N=N,
                K=K,
                imax=imax_formula(q, n, m),
                welch=welch_bound(N, K),
                ratio=asymptotic_ratio(q, n, m, k),
            )
        )
    return out


# ---------------------------------------------------------------------------
# export / import


def export_codebook(cb: Codebook, fmt: str = "csv") -> bytes:
    """CSV (interleaved re,im at 17 significant digits) or JSON with params."""
    if fmt == "csv":
        buf = io.StringIO()
        for row in cb.rows:
            buf.write(
                ",".join(f"{v.real:.17g},{v.imag:.17g}" for v in row)
            )
            buf.write("\n")
        return buf.getvalue().encode()
    if fmt == "json":
        payload = {
            "params": cb.to_json_params(),
            "rows": [
                [x for v in row for x in (v.real, v.imag)] for row in cb.rows
            ],
        }
        return json.dumps(payload).encode()
    raise ValueError(f"unknown format {fmt!r}")


def import_codebook(data: bytes) -> Codebook:
    """Rebuild a codebook from its JSON export; round-trips bit-exactly."""
    payload = json.loads(data.decode())
    meta = payload["params"]
    ring = GaloisRing.from_json(meta["ring"])
    params = CodebookParams(
        ring=ring,
        m=meta["m"],
        k=meta["k"],
        a=ring.element(meta["a"]),
        psi0=MultCharacter(ring.reduced(1), tuple(meta["psi0"])),
        section=meta["section"],
    )
    raw = payload["rows"]
    rows = np.array(
        [[complex(r[i], r[i + 1]) for i in range(0, len(r), 2)] for r in raw],
        dtype=np.complex128,
    )
    supports = np.array([int(np.count_nonzero(row)) for row in rows], dtype=np.int64)
    K = meta["K"]
    N = meta["N"]
    return Codebook(
        params=params,
        rows=rows,
        row_labels=[None] * N,
        support_sizes=supports,
        N=N,
        K=K,
        f_count=N - K,
    )
