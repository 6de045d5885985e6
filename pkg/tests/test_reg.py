"""Regularity reports, KL polynomials, conjecture suite, and scans."""

import json
import os
from math import comb

import pytest

from conftest import rng

from schubreg.perm import (
    Permutation,
    all_permutations,
    bruhat_leq,
    contains_pattern,
    is_covexillary,
    length,
)
from schubreg.poly import UniPoly
from schubreg.reg import (
    ALL_CHECKS,
    BRUHAT_ERROR,
    FALSIFIABLE_CHECKS,
    RegularityReport,
    ScanRecord,
    check_conjectures,
    finalps_check,
    kernel_version,
    kl_degree,
    kl_polynomial,
    max_reg_scan,
    ps_series,
    r_polynomial,
    regularity,
    scan_pairs,
    scan_record,
    staircase_permutation,
)
from schubreg.shapes import NotCovexillaryError, regularity_formula

GOLDEN_V = Permutation((1, 4, 2, 3, 5, 7, 6))
GOLDEN_W = Permutation((7, 3, 1, 4, 5, 6, 2))


def left_descent_r_poly(v, w, cache=None):
    """R-polynomials recomputed through left descents, as an oracle."""
    if cache is None:
        cache = {}
    key = (v, w)
    if key in cache:
        return cache[key]
    if v == w:
        return UniPoly.one()
    if not bruhat_leq(v, w):
        return UniPoly.zero()
    n = w.n
    i = next(k for k in range(1, n) if w.inverse()(k) > w.inverse()(k + 1))
    swap = lambda u: Permutation(
        tuple(i + 1 if x == i else i if x == i + 1 else x for x in u.word)
    )
    sw = swap(w)
    sv = swap(v)
    if length(sv) < length(v):
        out = left_descent_r_poly(sv, sw, cache)
    else:
        out = UniPoly([-1, 1]) * left_descent_r_poly(v, sw, cache) + UniPoly(
            [0, 1]
        ) * left_descent_r_poly(sv, sw, cache)
    cache[key] = out
    return out


def rationally_smooth(w):
    return not contains_pattern(w, Permutation((3, 4, 1, 2))) and not (
        contains_pattern(w, Permutation((4, 2, 3, 1)))
    )


def test_r_polynomial_matches_left_descent_oracle():
    cache = {}
    for n in (2, 3, 4):
        for w in all_permutations(n):
            for v in all_permutations(n):
                if bruhat_leq(v, w):
                    assert r_polynomial(v, w) == left_descent_r_poly(
                        v, w, cache
                    ), (v, w)


def test_r_polynomial_basics():
    e = Permutation((1, 2))
    s = Permutation((2, 1))
    assert r_polynomial(e, e) == UniPoly.one()
    assert r_polynomial(e, s) == UniPoly([-1, 1])
    assert r_polynomial(s, e) == UniPoly.zero()


def test_kl_known_values():
    e4 = Permutation.identity(4)
    assert kl_polynomial(e4, Permutation((3, 4, 1, 2))) == UniPoly([1, 1])
    assert kl_polynomial(e4, Permutation((4, 2, 3, 1))) == UniPoly([1, 1])
    assert kl_polynomial(e4, e4) == UniPoly.one()
    assert kl_polynomial(e4, Permutation.longest(4)) == UniPoly.one()


def test_kl_trivial_for_rationally_smooth_w():
    # every KL polynomial of a 3412- and 4231-avoiding w is 1
    for n in (3, 4, 5):
        for w in all_permutations(n):
            if not rationally_smooth(w):
                continue
            for v in all_permutations(n):
                if bruhat_leq(v, w):
                    assert kl_polynomial(v, w) == UniPoly.one(), (v, w)


def test_kl_detects_rational_singularity():
    # conversely, a pattern hit forces some nontrivial polynomial
    for w in all_permutations(4):
        if rationally_smooth(w):
            continue
        found = any(
            kl_polynomial(v, w) != UniPoly.one()
            for v in all_permutations(4)
            if bruhat_leq(v, w)
        )
        assert found, w


def test_kl_degree_bound_and_constant_term():
    r = rng(601)
    perms = list(all_permutations(5))
    pairs = [
        (v, w) for w in perms for v in perms if bruhat_leq(v, w)
    ]
    for v, w in r.sample(pairs, 120):
        p = kl_polynomial(v, w)
        assert p[0] == 1
        gap = length(w) - length(v)
        if gap >= 1:
            assert 2 * int(p.degree()) <= gap - 1
        assert kl_degree(v, w) == int(p.degree())


def test_regularity_methods_and_labels():
    r = regularity(GOLDEN_V, GOLDEN_W, method="both")
    assert (r.reg, r.formula_reg, r.groebner_reg) == (2, 2, 2)
    assert not r.discrepant
    assert r.covexillary and r.cm_status == "proven"
    assert r.H == UniPoly([1, 3, 1])
    assert (r.dim, r.height, r.n_vars) == (8, 10, 18)
    assert r.homogeneous_ideal is False
    auto = regularity(GOLDEN_V, GOLDEN_W)
    assert auto.method == "formula" and auto.reg == 2
    assert auto.H is None and auto.groebner_reg is None
    verified = regularity(GOLDEN_V, GOLDEN_W, verify=True)
    assert verified.method == "both" and verified.reg == 2


def test_regularity_non_covexillary_is_conjectural():
    v = Permutation.identity(4)
    w = Permutation((3, 4, 1, 2))
    r = regularity(v, w)
    assert r.method == "groebner"
    assert r.cm_status == "conjectural"
    assert r.reg == 1 and r.formula_reg is None
    with pytest.raises(NotCovexillaryError):
        regularity(v, w, method="formula")
    with pytest.raises(NotCovexillaryError):
        regularity(v, w, method="both")


def test_regularity_rejects_incomparable():
    with pytest.raises(ValueError, match=BRUHAT_ERROR):
        regularity(Permutation((2, 1, 3)), Permutation((1, 2, 3)))
    with pytest.raises(ValueError):
        regularity(Permutation((1, 2)), Permutation((1, 2, 3)))


def test_regularity_with_kl_and_checks():
    r = regularity(GOLDEN_V, GOLDEN_W, with_kl=True, checks="all")
    assert r.kl_degree == 2
    assert set(r.conjecture_flags) == set(ALL_CHECKS)
    assert all(val == "pass" for val in r.conjecture_flags.values())
    assert set(FALSIFIABLE_CHECKS) == set(ALL_CHECKS) - {"reg-le-deg-p"}


def test_report_json_round_trip():
    for rep in (
        regularity(GOLDEN_V, GOLDEN_W, method="both", with_kl=True),
        regularity(Permutation.identity(4), Permutation((3, 4, 1, 2))),
        regularity(GOLDEN_V, GOLDEN_W, checks=("h-nonneg",)),
    ):
        data = rep.to_json()
        text = json.dumps(data, sort_keys=True)
        back = RegularityReport.from_json(json.loads(text))
        assert back.to_json() == data
        assert back.reg == rep.reg and back.H == rep.H


def test_ps_series_values():
    coeffs, mult = ps_series(GOLDEN_W, GOLDEN_W, 5)
    assert coeffs == (1, 0, 0, 0, 0, 0) and mult == 1
    coeffs, mult = ps_series(Permutation((1, 2, 3)), Permutation((3, 1, 2)), 3)
    assert coeffs == (1, 2, 3, 4) and mult == 1
    coeffs, mult = ps_series(
        Permutation.identity(4), Permutation((4, 2, 3, 1)), 3
    )
    assert coeffs == (1, 6, 20, 50) and mult == 2
    with pytest.raises(ValueError):
        ps_series(GOLDEN_W, GOLDEN_W, -1)


def test_finalps_identity_golden():
    assert finalps_check(GOLDEN_V, GOLDEN_W)
    assert finalps_check(GOLDEN_W, GOLDEN_W)


def test_check_conjectures_trivial_and_flagging():
    flags = check_conjectures(GOLDEN_W, GOLDEN_W)
    assert all(val == "pass" for val in flags.values())
    flags = check_conjectures(
        Permutation.identity(4), Permutation((3, 4, 1, 2)), checks="all"
    )
    assert flags["h-nonneg"] == "pass"
    assert flags["dual-path"] == "not-checkable"
    with pytest.raises(ValueError):
        check_conjectures(GOLDEN_V, GOLDEN_W, checks=("unknown-check",))


def test_staircase_permutations():
    for j, n in ((2, 5), (3, 8), (4, 11), (5, 14)):
        w = staircase_permutation(j)
        assert w.n == n
        # the printed code (1, ..., j, 0, ...) counts co-inversions
        assert length(w) == comb(n, 2) - comb(j + 1, 2)
        assert is_covexillary(w)
    with pytest.raises(ValueError):
        staircase_permutation(0)


def test_scan_pairs_order_and_restriction():
    pairs = scan_pairs(3)
    assert len(pairs) == 19
    keys = [(length(w) - length(v), w.word, v.word) for v, w in pairs]
    assert keys == sorted(keys)
    cov_only = scan_pairs(4, restrict="covexillary-only")
    assert len(cov_only) == 199
    assert all(is_covexillary(w) for _, w in cov_only)
    with pytest.raises(ValueError):
        scan_pairs(3, restrict="smooth")


def test_scan_record_round_trip():
    rec = scan_record(GOLDEN_V, GOLDEN_W, checks=("h-nonneg",))
    assert rec.reg == 2 and rec.error is None
    assert rec.kernel == kernel_version()
    line = rec.to_json_line()
    assert ScanRecord.from_json_line(line) == rec
    # a strict budget produces an error record instead of raising
    strict = scan_record(
        Permutation.identity(4), Permutation((3, 4, 1, 2)), budget_ms=0
    )
    assert strict.reg is None
    assert "budget" in strict.error


def test_kernel_version_shape():
    name = kernel_version()
    assert name.startswith("schubreg-")
    assert name.rsplit("-", 1)[1] in ("python", "cython")


def test_max_reg_scan_small():
    res = max_reg_scan(3)
    assert res.max_reg == 0
    assert len(res.records) == 19
    assert res.complete
    assert not res.conjecture_failures
    res4 = max_reg_scan(4)
    assert res4.max_reg == 1
    assert len(res4.records) == 213
    assert ("1234", "4231") in res4.argmax


def stable_fields(record):
    data = json.loads(record.to_json_line())
    data.pop("elapsed_ms")
    return data


def test_max_reg_scan_cache_resume(tmp_path):
    cache = str(tmp_path / "scan4.jsonl")
    first = max_reg_scan(4, cache_path=cache)
    with open(cache, "rb") as fh:
        full = fh.read()
    assert len(full.splitlines()) == 213
    # a second run must not recompute or rewrite anything
    second = max_reg_scan(4, cache_path=cache)
    with open(cache, "rb") as fh:
        assert fh.read() == full
    assert [r.to_json_line() for r in second.records] == [
        r.to_json_line() for r in first.records
    ]
    # truncate to half and resume; everything but timing is reproduced
    lines = full.splitlines(keepends=True)
    with open(cache, "wb") as fh:
        fh.writelines(lines[: len(lines) // 2])
    third = max_reg_scan(4, cache_path=cache)
    assert [stable_fields(r) for r in third.records] == [
        stable_fields(r) for r in first.records
    ]
    # corrupt line is skipped and recomputed
    with open(cache, "w") as fh:
        fh.write(lines[0].decode())
        fh.write("{not json}\n")
    fourth = max_reg_scan(4, cache_path=cache)
    assert fourth.max_reg == 1 and len(fourth.records) == 213


def test_max_reg_scan_workers_agree():
    serial = max_reg_scan(4, restrict="covexillary-only")
    parallel = max_reg_scan(4, restrict="covexillary-only", workers=2)
    assert serial.max_reg == parallel.max_reg
    assert [stable_fields(r) for r in serial.records] == [
        stable_fields(r) for r in parallel.records
    ]


def test_max_reg_scan_budget_partial():
    res = max_reg_scan(4, budget_ms=0)
    # formula pairs still finish; groebner pairs over budget become errors
    assert not res.complete
    assert res.max_reg == 1
    over = [rec for rec in res.records if rec.error is not None]
    assert over and all(rec.reg is None for rec in over)
    assert all("budget" in rec.error for rec in over)
