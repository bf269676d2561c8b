from __future__ import annotations

import itertools
import math
import warnings

import numpy as np
import pytest

from galois_sums import (
    CodebookParams,
    DegenerateDimensions,
    NotAUnit,
    NotPrimePower,
    TooLarge,
    asymptotic_ratio,
    build_codebook,
    codebook_size,
    count_unit_solutions,
    enumerate_characters,
    export_codebook,
    imax_exhaustive,
    imax_formula,
    imax_remark,
    import_codebook,
    jacobi_expected,
    table2,
    welch_bound,
)

from conftest import ring


def build(key, m=3, k=1, a_mode="unit", **kw):
    r = ring(*key)
    a = {"unit": r.one, "zero": r.zero, "ideal": r.p_power(1)}[a_mode]
    params = CodebookParams(ring=r, m=m, k=k, a=a, **kw)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_codebook(params, allow_nonunit_a=a_mode != "unit")


def test_dimensions_q3():
    cb = build((3, 2, 1))
    assert (cb.N, cb.K) == (162, 54)
    assert cb.f_count == 3 * 6 ** 2


def test_dimensions_q4():
    cb = build((2, 2, 2))
    assert (cb.N, cb.K) == (768, 192)


def test_parameters_only_large_q():
    assert codebook_size(11, 2, 3, 1) == (146410, 13310)


def test_rows_unit_norm():
    for key in [(3, 2, 1), (2, 2, 2)]:
        cb = build(key)
        norms = np.linalg.norm(cb.rows, axis=1)
        assert float(np.max(np.abs(norms - 1.0))) < 1e-9


def test_basis_rows_orthonormal():
    cb = build((3, 2, 1))
    basis = cb.rows[cb.f_count :]
    gram = basis @ basis.conj().T
    assert np.allclose(gram, np.eye(cb.K), atol=1e-12)


def test_support_bounds_unit_twist():
    for key in [(3, 2, 1), (2, 2, 2)]:
        cb = build(key)
        r = cb.params.ring
        lower = count_unit_solutions(r, 3, r.one)
        supports = cb.support_sizes[: cb.f_count]
        assert supports.min() >= lower
        assert supports.max() <= cb.K


def test_imax_q3_attains_formula():
    cb = build((3, 2, 1))
    rep = imax_exhaustive(cb)
    assert abs(rep.imax_measured - 1 / 3) < 1e-9
    assert abs(rep.imax_formula - 1 / 3) < 1e-15
    assert rep.imax_measured >= rep.welch - 1e-12


def test_imax_q4_measured_above_formula():
    # rows differing only in lifted quotient-ring characters correlate at 2/7;
    # the closed-form peak of 1/7 misses that class
    cb = build((2, 2, 2))
    rep = imax_exhaustive(cb)
    assert abs(rep.imax_formula - 1 / 7) < 1e-15
    assert abs(rep.imax_measured - 2 / 7) < 1e-9
    i, j = rep.pair_argmax
    li, lj = cb.row_labels[i], cb.row_labels[j]
    # witness pair shares every section index, differs in the psi components
    assert li[1] == lj[1] and all(a[1] == b[1] for a, b in zip(li[2:], lj[2:]))


def test_cross_correlations_match_sum_magnitudes():
    # every structured-pair correlation equals a predicted Jacobi magnitude
    for key in [(3, 2, 1), (2, 2, 2)]:
        cb = build(key)
        r = cb.params.ring
        f = cb.f_count
        gram = np.abs(cb.rows[:f] @ cb.rows[:f].conj().T)
        supports = cb.support_sizes[:f].astype(float)
        chars = enumerate_characters(r)
        mags = set()
        for triple in itertools.product(chars, repeat=3):
            e = jacobi_expected(list(triple), r.one)
            mags.add(round(e.magnitude(r.q), 9))
        seen = set()
        for i in range(f):
            for j in range(i + 1, f):
                val = gram[i, j] * math.sqrt(supports[i] * supports[j])
                seen.add(round(val, 6))
        for v in seen:
            assert any(abs(v - m) < 1e-6 for m in mags), v


def test_section_independence():
    base = build((3, 2, 1), section="lex-min")
    alt = build((3, 2, 1), section="lex-max")
    assert (base.N, base.K) == (alt.N, alt.K)
    assert not np.allclose(base.rows, alt.rows)  # rows genuinely differ
    r1 = imax_exhaustive(base)
    r2 = imax_exhaustive(alt)
    assert abs(r1.imax_measured - r2.imax_measured) < 1e-12


def test_psi0_choice_preserves_parameters():
    r = ring(3, 2, 1)
    red = r.reduced(1)
    nontrivial = enumerate_characters(red)[1]
    cb = build((3, 2, 1), psi0=nontrivial)
    rep = imax_exhaustive(cb)
    assert (cb.N, cb.K) == (162, 54)
    assert abs(rep.imax_measured - 1 / 3) < 1e-9


def test_unit_requirement():
    r = ring(3, 2, 1)
    with pytest.raises(NotAUnit):
        build_codebook(CodebookParams(ring=r, m=3, k=1, a=r.zero))
    with pytest.warns(UserWarning):
        build_codebook(CodebookParams(ring=r, m=2, k=1, a=r.zero), allow_nonunit_a=True)


def test_entry_cap():
    r = ring(3, 2, 1)
    with pytest.raises(TooLarge):
        build_codebook(CodebookParams(ring=r, m=3, k=1, a=r.one), entry_cap=100)


def test_remark_formulas_as_written():
    # the closed forms evaluated exactly as stated
    assert abs(imax_remark(3, 2, 3, "a0") - 1.0) < 1e-15
    assert abs(imax_remark(3, 2, 3, "aM") - math.sqrt(27) / 6) < 1e-15
    with pytest.raises(ValueError):
        imax_remark(3, 2, 3, "bad")


def test_degenerate_twist_peaks_measured():
    # both degenerate families contain rows equal up to phase: peak 1
    for mode in ("zero", "ideal"):
        cb = build((3, 2, 1), a_mode=mode)
        rep = imax_exhaustive(cb)
        assert abs(rep.imax_measured - 1.0) < 1e-9
        assert rep.imax_measured > imax_formula(3, 2, 3)


def test_welch_bound():
    assert abs(welch_bound(2, 1) - 1.0) < 1e-15
    assert abs(welch_bound(146410, 13310) - 0.008264491) < 1e-9
    assert abs(welch_bound(2345778, 123462) - 0.002770084) < 1e-9
    with pytest.raises(DegenerateDimensions):
        welch_bound(5, 5)


def test_imax_formula_values():
    assert abs(imax_formula(11, 2, 3) - 0.010989011) < 1e-9
    assert abs(imax_formula(19, 2, 3) - 0.003257329) < 1e-9
    assert abs(imax_formula(3, 2, 3) - 1 / 3) < 1e-15


def test_asymptotic_ratio():
    assert abs(asymptotic_ratio(11, 2, 3, 1) - 1.329665789) < 1e-8
    assert abs(asymptotic_ratio(256, 2, 3, 1) - 1.01181084127) < 1e-9
    qs = [11, 19, 31, 53, 81, 121, 179, 256]
    gaps = [asymptotic_ratio(q, 2, 3, 1) - 1 for q in qs]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_table2_rows():
    rows = {r.q: r for r in table2()}
    assert rows[53].N == 410305012 and rows[53].K == 7741604
    assert abs(rows[81].imax - 0.0001582028) < 1e-10
    assert abs(rows[179].welch - 0.00003121001) < 1e-11
    with pytest.raises(NotPrimePower):
        table2([12])


def test_export_csv_basis_rows():
    cb = build((3, 2, 1), m=2, k=1)
    data = export_codebook(cb, fmt="csv").decode().splitlines()
    assert len(data) == cb.N
    # a basis row is exact zeros and a single exact one
    last = data[-1].split(",")
    assert last.count("1") == 1 and last.count("0") == len(last) - 1


def test_export_import_round_trip():
    cb = build((3, 2, 1))
    blob = export_codebook(cb, fmt="json")
    clone = import_codebook(blob)
    assert (clone.N, clone.K) == (cb.N, cb.K)
    assert np.array_equal(clone.rows, cb.rows)  # bit-exact
    assert export_codebook(clone, fmt="json") == blob
    meta = clone.to_json_params()
    assert meta["section"] == "lex-min"
    assert meta["ring"]["modulus"] == [1, 1]


def test_threaded_scan_matches_serial(monkeypatch):
    cb = build((3, 2, 1))
    serial = imax_exhaustive(cb, threads=1)
    threaded = imax_exhaustive(cb, threads=4)
    assert serial.imax_measured == threaded.imax_measured
    assert serial.pair_argmax == threaded.pair_argmax
    monkeypatch.setenv("GALOIS_SUMS_THREADS", "3")
    env_scan = imax_exhaustive(cb)
    assert env_scan.pair_argmax == serial.pair_argmax
