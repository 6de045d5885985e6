"""Regularity reports, Poincare series, Kazhdan-Lusztig degrees and scans.

Two independent routes to the regularity of a chart's tangent cone live
side by side here: the covexillary tableau rule (shapes) and the Groebner
pipeline (gb).  Reports carry a cm_status label because outside the
covexillary theorem the Groebner number deg H is only conjecturally the
regularity; the two are never silently reconciled.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, inf

from . import kernel
from ._version import __version__
from .gb import HilbertData, ResourceBudgetExceeded, hilbert_data
from .groth import groth_spec_1mq
from .perm import (
    Permutation,
    all_permutations,
    bruhat_interval,
    bruhat_leq,
    free_cell_count,
    is_covexillary,
    length,
    permutation_from_reversed_code,
    w0_compose,
)
from .poly import UniPoly
from .shapes import NotCovexillaryError, companion_permutation, regularity_formula

BRUHAT_ERROR = "not Bruhat-comparable in the required direction"

ALL_CHECKS = (
    "h-nonneg",
    "deg-bound",
    "h-semicontinuity",
    "reg-semicontinuity",
    "dual-path",
    "kl-degree",
    "reg-le-deg-p",
)
# reg-le-deg-p is informational (weak evidence either way); a "fail" there
# never falsifies anything.
FALSIFIABLE_CHECKS = ALL_CHECKS[:-1]


def _require_bruhat(v: Permutation, w: Permutation):
    if v.n != w.n:
        raise ValueError("permutations live in different symmetric groups")
    if not bruhat_leq(v, w):
        raise ValueError("%s vs %s: %s" % (v, w, BRUHAT_ERROR))


# ----------------------------------------------------------------------
# Kazhdan-Lusztig polynomials (classical recursion, plumbing)


@lru_cache(maxsize=None)
def r_polynomial(v: Permutation, w: Permutation) -> UniPoly:
    """R_{v,w} by the right-descent recursion; zero unless v <= w."""
    if v.word == w.word:
        return UniPoly.one()
    if not bruhat_leq(v, w):
        return UniPoly.zero()
    i = next(k for k in range(1, w.n) if w(k) > w(k + 1))
    ws = w.right_s(i)
    vs = v.right_s(i)
    if length(vs) < length(v):
        return r_polynomial(vs, ws)
    q = UniPoly.q()
    return (q - 1) * r_polynomial(v, ws) + q * r_polynomial(vs, ws)


@lru_cache(maxsize=None)
def kl_polynomial(v: Permutation, w: Permutation) -> UniPoly:
    """P_{v,w} extracted from q^L P(1/q) = sum_z R_{v,z} P_{z,w}."""
    _require_bruhat(v, w)
    if v.word == w.word:
        return UniPoly.one()
    gap = length(w) - length(v)
    total = UniPoly.zero()
    for z in sorted(bruhat_interval(v, w), key=lambda z: z.word):
        if z.word == v.word:
            continue
        rp = r_polynomial(v, z)
        if not rp.is_zero():
            total = total + rp * kl_polynomial(z, w)
    bound = (gap - 1) // 2
    p = UniPoly([-total[k] for k in range(bound + 1)])
    assert p[0] == 1, "KL polynomial without constant term 1 for (%s, %s)" % (v, w)
    # The mirrored half of the functional equation is an exact certificate.
    full = p + total
    top = int(full.degree()) if not full.is_zero() else 0
    assert top <= gap and all(
        full[d] == p[gap - d] for d in range(gap + 1)
    ), "KL functional equation violated for (%s, %s)" % (v, w)
    return p


def kl_degree(v: Permutation, w: Permutation) -> int:
    return int(kl_polynomial(v, w).degree())


# ----------------------------------------------------------------------
# Reports


@dataclass
class RegularityReport:
    """Everything the tool knows about the tangent cone of one chart."""

    v: Permutation
    w: Permutation
    method: str
    reg: int | None
    formula_reg: int | None
    groebner_reg: int | None
    discrepant: bool
    H: UniPoly | None
    dim: int
    height: int
    n_vars: int
    covexillary: bool
    cm_status: str
    homogeneous_ideal: bool | None
    kl_degree: int | None
    conjecture_flags: dict
    elapsed_ms: float

    def to_json(self) -> dict:
        return {
            "v": str(self.v),
            "w": str(self.w),
            "n": self.v.n,
            "method": self.method,
            "reg": self.reg,
            "formula_reg": self.formula_reg,
            "groebner_reg": self.groebner_reg,
            "discrepant": self.discrepant,
            "h_coeffs": list(self.H.coeffs) if self.H is not None else None,
            "dim": self.dim,
            "height": self.height,
            "n_vars": self.n_vars,
            "covexillary": self.covexillary,
            "cm_status": self.cm_status,
            "homogeneous_ideal": self.homogeneous_ideal,
            "kl_degree": self.kl_degree,
            "conjecture_flags": dict(self.conjecture_flags),
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RegularityReport":
        return cls(
            v=Permutation.from_string(data["v"]),
            w=Permutation.from_string(data["w"]),
            method=data["method"],
            reg=data["reg"],
            formula_reg=data["formula_reg"],
            groebner_reg=data["groebner_reg"],
            discrepant=data["discrepant"],
            H=UniPoly(data["h_coeffs"]) if data["h_coeffs"] is not None else None,
            dim=data["dim"],
            height=data["height"],
            n_vars=data["n_vars"],
            covexillary=data["covexillary"],
            cm_status=data["cm_status"],
            homogeneous_ideal=data["homogeneous_ideal"],
            kl_degree=data["kl_degree"],
            conjecture_flags=dict(data["conjecture_flags"]),
            elapsed_ms=data["elapsed_ms"],
        )


def regularity(
    v: Permutation,
    w: Permutation,
    method: str = "auto",
    verify: bool = False,
    with_kl: bool = False,
    checks=(),
    mode: str = "full",
    budget_ms=None,
) -> RegularityReport:
    """Regularity of the tangent cone of the chart of X_w attached to v.

    method "formula" runs the covexillary tableau rule, "groebner" the
    Hilbert-series pipeline, "both" runs and compares them, and "auto" picks
    the formula for covexillary w (upgraded to "both" under verify) and the
    Groebner route otherwise.  Outside the covexillary theorem the reported
    value is deg H with cm_status "conjectural".
    """
    start = time.monotonic()
    _require_bruhat(v, w)
    cov = is_covexillary(w)
    if method == "auto":
        method = ("both" if verify else "formula") if cov else "groebner"
    if method not in ("formula", "groebner", "both"):
        raise ValueError("unknown method %r" % method)
    if method in ("formula", "both") and not cov:
        raise NotCovexillaryError(
            "method %s needs a 3412-avoiding w; %s is not" % (method, w)
        )

    formula_reg = None
    if method in ("formula", "both"):
        formula_reg = regularity_formula(v, w)

    hd = None
    groebner_reg = None
    if method in ("groebner", "both"):
        hd = hilbert_data(v, w, mode=mode, budget_ms=budget_ms)
        groebner_reg = int(hd.H.degree())

    discrepant = (
        method == "both"
        and formula_reg is not None
        and groebner_reg is not None
        and formula_reg != groebner_reg
    )
    if discrepant:
        reg = None
    else:
        reg = formula_reg if formula_reg is not None else groebner_reg

    dim = length(w) - length(v)
    height = comb(w.n, 2) - length(w)
    n_vars = free_cell_count(v)
    if hd is not None:
        assert (hd.dim, hd.height, hd.n_vars) == (dim, height, n_vars)

    report = RegularityReport(
        v=v,
        w=w,
        method=method,
        reg=reg,
        formula_reg=formula_reg,
        groebner_reg=groebner_reg,
        discrepant=discrepant,
        H=hd.H if hd is not None else None,
        dim=dim,
        height=height,
        n_vars=n_vars,
        covexillary=cov,
        cm_status="proven" if cov else "conjectural",
        homogeneous_ideal=hd.homogeneous if hd is not None else None,
        kl_degree=kl_degree(v, w) if with_kl else None,
        conjecture_flags={},
        elapsed_ms=0.0,
    )
    if checks:
        report.conjecture_flags = check_conjectures(
            v, w, checks=checks, hd=hd, budget_ms=budget_ms
        )
    report.elapsed_ms = (time.monotonic() - start) * 1000.0
    return report


# ----------------------------------------------------------------------
# Series and the Grothendieck cross-identity


def ps_series(v: Permutation, w: Permutation, order: int, budget_ms=None, hd=None):
    """Hilbert function of the tangent cone, degrees 0..order inclusive.

    Returns (coefficients, multiplicity) where multiplicity = H(1) is the
    Hilbert-Samuel multiplicity of the chart.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if hd is None:
        hd = hilbert_data(v, w, budget_ms=budget_ms)
    coeffs = tuple(hd.H.series_coefficients(hd.dim, order))
    return coeffs, int(hd.H.evaluate(1))


def finalps_check(
    v: Permutation, w: Permutation, budget_ms=None, H=None, height=None
) -> bool:
    """Exact identity between the Grothendieck specialization and H.

    The companion's partner polynomial specialized at 1-q must equal
    H_{v,w}(q) * (1-q)^{codim X_w}; both sides are computed independently
    (divided differences vs the Groebner pipeline) unless H and height are
    supplied by the caller.
    """
    _require_bruhat(v, w)
    companion = companion_permutation(v, w).perm
    lhs = groth_spec_1mq(w0_compose(companion))
    if H is None or height is None:
        hd = hilbert_data(v, w, budget_ms=budget_ms)
        H, height = hd.H, hd.height
    rhs = H * UniPoly.one_minus_q() ** height
    return lhs == rhs


# ----------------------------------------------------------------------
# Conjecture checks


def _covers_below(v: Permutation):
    """All u lowered from v by one Bruhat cover (u = v t, l(u) = l(v) - 1)."""
    word = v.word
    n = v.n
    out = []
    for i in range(n - 1):
        for j in range(i + 1, n):
            if word[i] > word[j] and not any(
                word[i] > word[k] > word[j] for k in range(i + 1, j)
            ):
                u = list(word)
                u[i], u[j] = u[j], u[i]
                out.append(Permutation(tuple(u)))
    return out


def check_conjectures(
    v: Permutation,
    w: Permutation,
    checks="all",
    hd=None,
    budget_ms=None,
) -> dict:
    """Evaluate the conjecture suite on one pair; values pass/fail/not-checkable.

    h-nonneg          H has nonnegative coefficients
    deg-bound         deg H <= (l(w) - l(v) - 1)/2
    h-semicontinuity  coefficientwise H_{u,w} >= H_{v,w} over covers u of v
    reg-semicontinuity covexillary only: formula reg is monotone under covers
    dual-path         covexillary only: formula reg = deg H
    kl-degree         covexillary only: deg P_{v,w} = formula reg
    reg-le-deg-p      informational: reg <= deg P (speculation, never fatal)
    """
    _require_bruhat(v, w)
    selected = ALL_CHECKS if checks == "all" else tuple(checks)
    for name in selected:
        if name not in ALL_CHECKS:
            raise ValueError("unknown check %r" % name)
    if v.word == w.word:
        return {name: "pass" for name in selected}
    cov = is_covexillary(w)
    flags = {}

    def data() -> HilbertData:
        nonlocal hd
        if hd is None:
            hd = hilbert_data(v, w, budget_ms=budget_ms)
        return hd

    for name in selected:
        if name == "h-nonneg":
            flags[name] = "pass" if all(c >= 0 for c in data().H.coeffs) else "fail"
        elif name == "deg-bound":
            gap = length(w) - length(v)
            flags[name] = "pass" if 2 * int(data().H.degree()) <= gap - 1 else "fail"
        elif name == "h-semicontinuity":
            ok = True
            h_here = data().H
            for u in _covers_below(v):
                h_below = hilbert_data(u, w, budget_ms=budget_ms).H
                top = max(int(h_below.degree()), int(h_here.degree()))
                if any(h_below[t] < h_here[t] for t in range(top + 1)):
                    ok = False
                    break
            flags[name] = "pass" if ok else "fail"
        elif name == "reg-semicontinuity":
            if not cov:
                flags[name] = "not-checkable"
                continue
            here = regularity_formula(v, w)
            ok = all(regularity_formula(u, w) >= here for u in _covers_below(v))
            flags[name] = "pass" if ok else "fail"
        elif name == "dual-path":
            if not cov:
                flags[name] = "not-checkable"
                continue
            flags[name] = (
                "pass"
                if regularity_formula(v, w) == int(data().H.degree())
                else "fail"
            )
        elif name == "kl-degree":
            if not cov:
                flags[name] = "not-checkable"
                continue
            flags[name] = (
                "pass" if kl_degree(v, w) == regularity_formula(v, w) else "fail"
            )
        elif name == "reg-le-deg-p":
            if not cov:
                flags[name] = "not-checkable"
                continue
            flags[name] = (
                "pass" if regularity_formula(v, w) <= kl_degree(v, w) else "fail"
            )
    return flags


# ----------------------------------------------------------------------
# Scans


@dataclass
class ScanRecord:
    """One scanned pair, flattened for the JSON-lines cache."""

    n: int
    v: str
    w: str
    reg: int | None
    method: str
    covexillary: bool
    cm_status: str
    dim: int
    height: int
    n_vars: int
    h_coeffs: list | None
    kl_degree: int | None
    homogeneous_ideal: bool | None
    conjectures: dict
    error: str | None
    kernel: str
    elapsed_ms: float

    def to_json_line(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)

    @classmethod
    def from_json_line(cls, line: str) -> "ScanRecord":
        data = json.loads(line)
        return cls(**{name: data[name] for name in cls.__dataclass_fields__})


def kernel_version() -> str:
    return "schubreg-%s-%s" % (__version__, kernel.implementation_name())


def scan_record(v: Permutation, w: Permutation, checks=(), budget_ms=None) -> ScanRecord:
    """Compute one pair for a scan; budget overruns become error records."""
    start = time.monotonic()
    try:
        report = regularity(v, w, method="auto", checks=checks, budget_ms=budget_ms)
        return ScanRecord(
            n=v.n,
            v=str(v),
            w=str(w),
            reg=report.reg,
            method=report.method,
            covexillary=report.covexillary,
            cm_status=report.cm_status,
            dim=report.dim,
            height=report.height,
            n_vars=report.n_vars,
            h_coeffs=list(report.H.coeffs) if report.H is not None else None,
            kl_degree=report.kl_degree,
            homogeneous_ideal=report.homogeneous_ideal,
            conjectures=dict(report.conjecture_flags),
            error=None,
            kernel=kernel_version(),
            elapsed_ms=round((time.monotonic() - start) * 1000.0, 3),
        )
    except ResourceBudgetExceeded as exc:
        return ScanRecord(
            n=v.n,
            v=str(v),
            w=str(w),
            reg=None,
            method="groebner",
            covexillary=is_covexillary(w),
            cm_status="conjectural",
            dim=length(w) - length(v),
            height=comb(w.n, 2) - length(w),
            n_vars=free_cell_count(v),
            h_coeffs=None,
            kl_degree=None,
            homogeneous_ideal=None,
            conjectures={},
            error="budget: %s" % exc,
            kernel=kernel_version(),
            elapsed_ms=round((time.monotonic() - start) * 1000.0, 3),
        )


def _scan_worker(payload):
    v_text, w_text, checks, budget_ms = payload
    v = Permutation.from_string(v_text)
    w = Permutation.from_string(w_text)
    return scan_record(v, w, checks=checks, budget_ms=budget_ms)


@dataclass
class ScanResult:
    n: int
    restrict: str
    max_reg: int | None
    argmax: tuple
    records: list
    partial: bool
    conjecture_failures: tuple

    @property
    def complete(self) -> bool:
        return not self.partial


def scan_pairs(n: int, restrict: str = "all"):
    """Bruhat pairs of S_n in scan order: by l(w) - l(v), then w, then v."""
    if restrict not in ("all", "covexillary-only"):
        raise ValueError("restrict must be 'all' or 'covexillary-only'")
    pairs = []
    perms = list(all_permutations(n))
    for w in perms:
        if restrict == "covexillary-only" and not is_covexillary(w):
            continue
        for v in perms:
            if bruhat_leq(v, w):
                pairs.append((v, w))
    pairs.sort(key=lambda vw: (length(vw[1]) - length(vw[0]), vw[1].word, vw[0].word))
    return pairs


def max_reg_scan(
    n: int,
    restrict: str = "all",
    checks=(),
    budget_ms=None,
    cache_path=None,
    workers: int = 1,
    record_sink=None,
) -> ScanResult:
    """Scan all Bruhat pairs of S_n for the largest tangent-cone regularity.

    Covexillary w go through the tableau rule; everything else runs the
    Groebner pipeline under the budget.  Pairs already present in the cache
    file are reused verbatim, so a rerun is free and the reported summary is
    reproducible.  A budget overrun marks the scan partial and the reported
    max is only a lower bound.
    """
    pairs = scan_pairs(n, restrict)
    cached = {}
    if cache_path is not None:
        try:
            with open(cache_path, "r", encoding="utf-8") as handle:
                for line in handle:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        record = ScanRecord.from_json_line(line)
                    except (ValueError, KeyError, TypeError):
                        continue  # corrupt line: recomputed below
                    cached[(record.v, record.w)] = record
        except FileNotFoundError:
            pass

    todo = [(v, w) for (v, w) in pairs if (str(v), str(w)) not in cached]
    fresh = {}
    handle = open(cache_path, "a", encoding="utf-8") if cache_path is not None else None
    try:
        if workers > 1 and todo:
            from multiprocessing import Pool

            payloads = [(str(v), str(w), tuple(checks), budget_ms) for (v, w) in todo]
            with Pool(workers) as pool:
                for record in pool.imap(_scan_worker, payloads, chunksize=4):
                    fresh[(record.v, record.w)] = record
                    if handle is not None:
                        handle.write(record.to_json_line() + "\n")
                        handle.flush()
                    if record_sink is not None:
                        record_sink(record)
        else:
            for (v, w) in todo:
                record = scan_record(v, w, checks=checks, budget_ms=budget_ms)
                fresh[(record.v, record.w)] = record
                if handle is not None:
                    handle.write(record.to_json_line() + "\n")
                    handle.flush()
                if record_sink is not None:
                    record_sink(record)
    finally:
        if handle is not None:
            handle.close()

    records = []
    for (v, w) in pairs:
        key = (str(v), str(w))
        records.append(cached.get(key) or fresh[key])

    regs = [r.reg for r in records if r.reg is not None]
    max_reg = max(regs) if regs else None
    argmax = tuple(
        (r.v, r.w) for r in records if r.reg is not None and r.reg == max_reg
    )
    failures = tuple(
        (r.v, r.w, name)
        for r in records
        for name, value in sorted(r.conjectures.items())
        if value == "fail" and name in FALSIFIABLE_CHECKS
    )
    partial = any(r.error is not None for r in records)
    return ScanResult(
        n=n,
        restrict=restrict,
        max_reg=max_reg,
        argmax=argmax,
        records=records,
        partial=partial,
        conjecture_failures=failures,
    )


def staircase_permutation(j: int) -> Permutation:
    """The permutation in S_{3j-1} whose printed code is (1, 2, ..., j, 0, ...).

    Its chart at the identity has tangent-cone regularity j(j-1)/2, which
    makes the family a quadratic-growth witness for the max-regularity scan.
    """
    if j < 1:
        raise ValueError("j must be positive")
    n = 3 * j - 1
    code = tuple(range(1, j + 1)) + (0,) * (n - j)
    return permutation_from_reversed_code(code)
