"""Groebner bases, tangent cones and Hilbert series over the chart rings.

The Buchberger loop uses the normal selection strategy keyed by sugar degree,
the product and chain criteria in Gebauer-Moeller form, and fraction-free
integer arithmetic.  Reduced bases normalize every element to content 1 with
a positive leading coefficient and sort by ascending leading monomial, so a
basis is a canonical artifact of (ideal, order).

Tangent cones come from the homogenization route: a Groebner basis under a
graded order homogenizes to a generating set of the homogenized ideal, and a
basis of that ideal under the t-heavy graded order dehomogenizes onto lowest
degree forms.  Because the t-heavy order ties break toward high t powers,
the dehomogenized leading terms are leading terms of the lowest forms under
plain grevlex, so the lowest forms are already a grevlex basis of the
tangent-cone ideal; no third basis computation is needed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, inf

from . import kernel
from .ideal import Ideal, kl_generators
from .kernel.orders import OrderPack, divides, raw_lcm
from .perm import Permutation, free_cell_count, length
from .poly import MultiPoly, PolyRing, UniPoly


class ResourceBudgetExceeded(RuntimeError):
    """A Groebner computation ran past its time or pair budget."""


@dataclass(frozen=True, slots=True)
class MonomialOrder:
    """kind in {grevlex, lex, grevlex_t}; priority permutes variables."""

    kind: str = "grevlex"
    priority: tuple[int, ...] | None = None

    def pack_for(self, nvars: int) -> OrderPack:
        return _pack_cache(nvars, self.kind, self.priority)


GREVLEX = MonomialOrder()
LEX = MonomialOrder("lex")


@lru_cache(maxsize=None)
def _pack_cache(nvars, kind, priority):
    return OrderPack(nvars, kind, priority)


def _lcm_int(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _to_kernel(f: MultiPoly, pack: OrderPack):
    denom = 1
    for c in f.terms.values():
        denom = _lcm_int(denom, c.denominator)
    terms = [
        (pack.key_from_exps(e), pack.pack(e), int(c * denom))
        for e, c in f.terms.items()
    ]
    terms.sort(reverse=True)
    return kernel.content_normalize(terms)


def _from_kernel(terms, pack: OrderPack, ring: PolyRing) -> MultiPoly:
    return MultiPoly(ring, {pack.unpack(r): Fraction(c) for (_, r, c) in terms})


def _prepare(term_lists):
    """Reducer table sorted by ascending leading key."""
    prepared = [
        (terms[0][0], terms[0][1], terms[0][2], tuple(terms[1:])) for terms in term_lists
    ]
    prepared.sort(key=lambda red: red[0])
    return prepared


def _sugar(terms, pack: OrderPack) -> int:
    return max(pack.degree_of_raw(r) for (_, r, _) in terms)


class _Deadline:
    __slots__ = ("at", "budget_ms")

    def __init__(self, budget_ms):
        self.budget_ms = budget_ms
        self.at = (
            time.monotonic() + budget_ms / 1000.0
            if budget_ms is not None
            else None
        )

    def check(self, what: str):
        if self.at is not None and time.monotonic() > self.at:
            raise ResourceBudgetExceeded(
                "%s exceeded the %d ms budget" % (what, self.budget_ms)
            )


def _buchberger_terms(kgens, pack: OrderPack, budget_ms=None, max_pairs=None):
    """Core loop over kernel term lists; returns (reduced term lists, stats)."""
    deadline = _Deadline(budget_ms)
    basis = []  # term lists
    sugars = []
    reducers = []  # kept sorted by leading key
    pairs: dict = {}  # (i, j) -> (sugar, lcm_key, lcm_raw), i < j
    stats = {"pairs_processed": 0, "zero_reductions": 0, "updates": 0}
    corr, hmask = pack.corr, pack.hmask

    def insert_reducer(terms):
        red = (terms[0][0], terms[0][1], terms[0][2], tuple(terms[1:]))
        lo, hi = 0, len(reducers)
        while lo < hi:
            mid = (lo + hi) // 2
            if reducers[mid][0] < red[0]:
                lo = mid + 1
            else:
                hi = mid
        reducers.insert(lo, red)

    def update(new_terms, new_sugar):
        """Gebauer-Moeller pair update for one accepted element."""
        t = len(basis)
        lmf = new_terms[0][1]
        lmf_deg = pack.degree_of_raw(lmf)
        lcmf = [raw_lcm(basis[i][0][1], lmf, hmask) for i in range(t)]
        survivors = []
        for i in range(t):
            li = lcmf[i]
            dominated = False
            for j in range(t):
                if j != i and lcmf[j] != li and divides(lcmf[j], li, hmask):
                    dominated = True
                    break
            if not dominated:
                survivors.append(i)
        groups: dict = {}
        for i in survivors:
            groups.setdefault(lcmf[i], []).append(i)
        for value in sorted(groups):
            members = groups[value]
            if any(basis[i][0][1] + lmf == value for i in members):
                continue  # a coprime pair certifies the whole class
            i = min(members)
            sugar = max(
                sugars[i] + pack.degree_of_raw(value - basis[i][0][1]),
                new_sugar + pack.degree_of_raw(value - lmf),
            )
            pairs[(i, t)] = (sugar, pack.keyof(value), value)
        for (i, j) in list(pairs):
            if j == t:
                continue
            lcm_ij = pairs[(i, j)][2]
            if (
                divides(lmf, lcm_ij, hmask)
                and lcmf[i] != lcm_ij
                and lcmf[j] != lcm_ij
            ):
                del pairs[(i, j)]
        basis.append(new_terms)
        sugars.append(new_sugar)
        insert_reducer(new_terms)
        stats["updates"] += 1

    for gen in sorted(kgens):
        deadline.check("generator interreduction")
        reduced = kernel.normal_form(gen, reducers, corr, hmask)
        if reduced:
            update(reduced, _sugar(reduced, pack))

    while pairs:
        deadline.check("pair processing")
        if max_pairs is not None and stats["pairs_processed"] >= max_pairs:
            raise ResourceBudgetExceeded(
                "pair budget of %d exhausted" % max_pairs
            )
        (i, j) = min(
            pairs, key=lambda ij: (pairs[ij][0], pairs[ij][1], ij[1], ij[0])
        )
        pair_sugar = pairs.pop((i, j))[0]
        spoly = kernel.s_polynomial(basis[i], basis[j], pack)
        stats["pairs_processed"] += 1
        if not spoly:
            stats["zero_reductions"] += 1
            continue
        reduced = kernel.normal_form(spoly, reducers, corr, hmask)
        if reduced:
            update(reduced, max(pair_sugar, _sugar(reduced, pack)))
        else:
            stats["zero_reductions"] += 1

    final = _reduce_basis(basis, pack)
    stats["basis_size"] = len(final)
    return final, stats


def _reduce_basis(term_lists, pack: OrderPack):
    """Minimalize and tail-reduce known basis elements (stays a basis)."""
    corr, hmask = pack.corr, pack.hmask
    kept = []
    for terms in sorted((t for t in term_lists if t), key=lambda ts: ts[0][0]):
        lm = terms[0][1]
        if any(other[0][1] != lm and divides(other[0][1], lm, hmask) for other in kept):
            continue
        if any(other[0][1] == lm for other in kept):
            continue
        kept.append(terms)
    out = []
    for idx, terms in enumerate(kept):
        others = _prepare(kept[:idx] + kept[idx + 1 :])
        out.append(kernel.normal_form(terms, others, corr, hmask))
    out.sort(key=lambda ts: ts[0][0])
    return out


@dataclass
class GroebnerBasis:
    """A reduced basis; elements are content-free with positive lead."""

    ring: PolyRing
    order: MonomialOrder
    elements: tuple[MultiPoly, ...]
    stats: dict = field(default_factory=dict, repr=False)
    _terms: list = field(default=None, repr=False)
    _pack: OrderPack = field(default=None, repr=False)
    _reducers: list = field(default=None, repr=False)

    def __post_init__(self):
        if self.ring.nvars and self._pack is None:
            self._pack = self.order.pack_for(self.ring.nvars)
        if self._terms is None:
            self._terms = (
                [_to_kernel(g, self._pack) for g in self.elements]
                if self.ring.nvars
                else []
            )
        if self._reducers is None:
            self._reducers = _prepare(self._terms)

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        """Canonical remainder (content-free, positive leading coefficient)."""
        if f.ring != self.ring:
            raise ValueError("polynomial lives in a different ring")
        if f.is_zero() or not self.ring.nvars:
            return f
        terms = _to_kernel(f, self._pack)
        reduced = kernel.normal_form(terms, self._reducers, self._pack.corr, self._pack.hmask)
        return _from_kernel(reduced, self._pack, self.ring)

    def contains(self, f: MultiPoly) -> bool:
        if not self.ring.nvars:
            return bool(self.elements) or f.is_zero()
        return self.normal_form(f).is_zero()

    def leading_exponents(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self._pack.unpack(terms[0][1]) for terms in self._terms)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.elements)

    def check_certificate(self, budget_ms=None) -> bool:
        """Directly verify that every S-pair reduces to zero."""
        deadline = _Deadline(budget_ms)
        n = len(self._terms)
        for i in range(n):
            for j in range(i + 1, n):
                deadline.check("certificate check")
                spoly = kernel.s_polynomial(self._terms[i], self._terms[j], self._pack)
                if spoly and kernel.normal_form(
                    spoly, self._reducers, self._pack.corr, self._pack.hmask
                ):
                    return False
        return True


def buchberger(
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    budget_ms=None,
    max_pairs=None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal under the given order."""
    ring = ideal.ring
    gens = [g for g in ideal.generators if not g.is_zero()]
    if ring.nvars == 0:
        elements = (ring.one(),) if gens else ()
        return GroebnerBasis(ring, order, elements, {"basis_size": len(elements)})
    if not gens:
        return GroebnerBasis(ring, order, (), {"basis_size": 0})
    pack = order.pack_for(ring.nvars)
    kgens = [_to_kernel(g, pack) for g in gens]
    final, stats = _buchberger_terms(kgens, pack, budget_ms, max_pairs)
    elements = tuple(_from_kernel(terms, pack, ring) for terms in final)
    return GroebnerBasis(ring, order, elements, stats, _terms=final, _pack=pack)


def normal_form(f: MultiPoly, basis: GroebnerBasis) -> MultiPoly:
    return basis.normal_form(f)


def _basis_from_known(term_lists, pack, ring, order) -> GroebnerBasis:
    """Wrap term lists that are already a basis into reduced canonical form."""
    final = _reduce_basis(term_lists, pack)
    elements = tuple(_from_kernel(terms, pack, ring) for terms in final)
    return GroebnerBasis(
        ring, order, elements, {"basis_size": len(final)}, _terms=final, _pack=pack
    )


def _fresh_name(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "0"
    return name


def _tangent_cone(ideal: Ideal, budget_ms=None):
    """Returns (cone ideal with attached grevlex basis, source homogeneous?)."""
    ring = ideal.ring
    gens = [g for g in ideal.generators if not g.is_zero()]
    if ring.nvars == 0 or not gens:
        basis = buchberger(Ideal(ring, tuple(gens)), GREVLEX, budget_ms)
        cone = Ideal(ring, basis.elements, provenance="tangent-cone")
        cone.groebner = basis
        return cone, True
    basis1 = buchberger(Ideal(ring, tuple(gens)), GREVLEX, budget_ms)
    if basis1.is_homogeneous():
        cone = Ideal(ring, basis1.elements, provenance="tangent-cone")
        cone.groebner = basis1
        return cone, True
    tname = _fresh_name("t", ring.names)
    hring = PolyRing((tname,) + ring.names)
    hgens = []
    for g in basis1.elements:
        top = int(g.degree())
        hgens.append(
            MultiPoly(
                hring, {(top - sum(e),) + e: c for e, c in g.terms.items()}
            )
        )
    basis2 = buchberger(
        Ideal(hring, tuple(hgens)), MonomialOrder("grevlex_t"), budget_ms
    )
    pack = GREVLEX.pack_for(ring.nvars)
    lowest = []
    for g in basis2.elements:
        dehom: dict = {}
        for e, c in g.terms.items():
            dehom[e[1:]] = dehom.get(e[1:], 0) + c
        f = MultiPoly(ring, {e: c for e, c in dehom.items() if c})
        if f.is_zero():
            continue
        lowest.append(_to_kernel(f.lowest_form(), pack))
    cone_basis = _basis_from_known(lowest, pack, ring, GREVLEX)
    cone = Ideal(ring, cone_basis.elements, provenance="tangent-cone")
    cone.groebner = cone_basis
    return cone, False


def lowest_degree_forms_ideal(ideal: Ideal, budget_ms=None) -> Ideal:
    """The ideal of lowest-degree homogeneous forms of all elements.

    The returned generators are its reduced grevlex basis, attached as the
    `groebner` certificate.
    """
    return _tangent_cone(ideal, budget_ms)[0]


# ----------------------------------------------------------------------
# Hilbert series of monomial ideals


def _minimalize_monomials(exps):
    exps = sorted(set(tuple(e) for e in exps), key=lambda e: (sum(e), e))
    out = []
    for e in exps:
        if not any(all(a <= b for a, b in zip(m, e)) for m in out):
            out.append(e)
    return out


def _support_components(gens):
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        support = [k for k, e in enumerate(g) if e]
        for k in support:
            parent.setdefault(k, k)
        for a, b in zip(support, support[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    buckets: dict = {}
    for g in gens:
        root = find(next(k for k, e in enumerate(g) if e))
        buckets.setdefault(root, []).append(g)
    return list(buckets.values())


def _numerator(gens, memo) -> UniPoly:
    if not gens:
        return UniPoly.one()
    cached = memo.get(gens)
    if cached is not None:
        return cached
    if any(sum(g) == 0 for g in gens):
        return UniPoly.zero()
    components = _support_components(list(gens))
    if len(components) > 1:
        result = UniPoly.one()
        for comp in components:
            result = result * _numerator(tuple(sorted(comp)), memo)
        memo[gens] = result
        return result
    supports = [sum(1 for e in g if e) for g in gens]
    if all(s == 1 for s in supports):
        result = UniPoly.one()
        for g in gens:
            result = result * (UniPoly.one() - UniPoly.q() ** sum(g))
        memo[gens] = result
        return result
    nvars = len(gens[0])
    counts = [0] * nvars
    for g in gens:
        for k, e in enumerate(g):
            if e:
                counts[k] += 1
    pivot = max(range(nvars), key=lambda k: counts[k])
    plus = [g for g in gens if g[pivot] == 0]
    unit = tuple(1 if k == pivot else 0 for k in range(nvars))
    plus.append(unit)
    colon = [
        tuple(e - 1 if k == pivot and e else e for k, e in enumerate(g)) for g in gens
    ]
    result = _numerator(
        tuple(sorted(_minimalize_monomials(plus))), memo
    ) + UniPoly.q() * _numerator(tuple(sorted(_minimalize_monomials(colon))), memo)
    memo[gens] = result
    return result


def hilbert_numerator(monomials, nvars=None) -> UniPoly:
    """Numerator K with PS(S/M; q) = K(q) / (1-q)^nvars for monomial M."""
    if isinstance(monomials, Ideal):
        nvars = monomials.ring.nvars
        exps = []
        for g in monomials.generators:
            if len(g.terms) != 1:
                raise ValueError("hilbert_numerator needs a monomial ideal")
            exps.append(next(iter(g.terms)))
    else:
        exps = [tuple(e) for e in monomials]
        if nvars is None:
            raise ValueError("nvars is required for raw exponent input")
        for e in exps:
            if len(e) != nvars:
                raise ValueError("exponent arity mismatch")
    minimal = _minimalize_monomials(exps)
    return _numerator(tuple(minimal), {})


def regularity_from_K(K: UniPoly, height: int) -> int:
    """deg K - height, the regularity reading for Cohen-Macaulay quotients."""
    if K.is_zero():
        raise ValueError("zero K-polynomial")
    value = int(K.degree()) - height
    if value < 0:
        raise ValueError("height exceeds deg K; inputs are inconsistent")
    return value


def postulation_number(K: UniPoly, nvars: int):
    """(largest t with hilbert function != hilbert polynomial, deg K - dim).

    The first slot is -inf when the function agrees with the polynomial
    everywhere; the second is the classical a-invariant style reading, kept
    separate because the two genuinely differ off the nice cases.
    """
    if K.is_zero():
        raise ValueError("zero K-polynomial")
    dim = nvars - K.one_minus_q_multiplicity()
    deg_k = int(K.degree())
    alt = deg_k - dim
    if nvars == 0:
        return deg_k, alt
    hs = K.series_coefficients(nvars, deg_k)

    def poly_value(t: int) -> Fraction:
        total = Fraction(0)
        for j, c in enumerate(K.coeffs):
            if not c:
                continue
            prod = Fraction(1)
            for step in range(1, nvars):
                prod *= Fraction(t - j + step, step)
            total += c * prod
        return total

    post = -inf
    for t in range(deg_k + 1):
        if hs[t] != poly_value(t):
            post = t
    return post, alt


# ----------------------------------------------------------------------
# The chart pipeline


@dataclass
class HilbertData:
    """Hilbert-series data of a chart's tangent cone."""

    v: Permutation
    w: Permutation
    n_vars: int
    dim: int
    height: int
    K: UniPoly
    H: UniPoly
    homogeneous: bool
    kl_ideal: Ideal
    cone_ideal: Ideal
    elapsed_ms: float


def hilbert_data(
    v: Permutation, w: Permutation, mode: str = "full", budget_ms=None
) -> HilbertData:
    """Tangent-cone Hilbert data of the chart of X_w attached to v."""
    start = time.monotonic()
    chart_ideal = kl_generators(v, w, mode)
    n_vars = chart_ideal.ring.nvars
    expected_dim = length(w) - length(v)
    expected_height = comb(w.n, 2) - length(w)
    if n_vars == 0:
        if expected_dim or expected_height:
            raise RuntimeError("empty chart with nonzero expected dimensions")
        one = UniPoly.one()
        cone = Ideal(chart_ideal.ring, (), provenance="tangent-cone")
        return HilbertData(
            v, w, 0, 0, 0, one, one, True, chart_ideal, cone,
            (time.monotonic() - start) * 1000.0,
        )
    cone, homogeneous = _tangent_cone(chart_ideal, budget_ms)
    basis = cone.groebner
    K = hilbert_numerator(basis.leading_exponents(), n_vars)
    if K.is_zero():
        raise RuntimeError("chart ideal defines the empty scheme; conventions broken")
    dim = n_vars - K.one_minus_q_multiplicity()
    if dim != expected_dim:
        raise RuntimeError(
            "dimension mismatch for (%s, %s): pipeline says %d, theory says %d"
            % (v, w, dim, expected_dim)
        )
    height = n_vars - dim
    if height != expected_height:
        raise RuntimeError(
            "height mismatch for (%s, %s): %d vs %d" % (v, w, height, expected_height)
        )
    H = K.exact_divide(UniPoly.one_minus_q() ** height)
    if H[0] != 1:
        raise RuntimeError("h-polynomial does not start at 1 for (%s, %s)" % (v, w))
    return HilbertData(
        v, w, n_vars, dim, height, K, H, homogeneous, chart_ideal, cone,
        (time.monotonic() - start) * 1000.0,
    )
