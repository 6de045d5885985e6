"""Exact sparse polynomials.

MultiPoly keeps a dict from dense exponent tuples to Fraction coefficients
over a fixed ring of named variables.  UniPoly is a plain integer-coefficient
polynomial in one variable q used for Hilbert numerators, h-polynomials and
Kazhdan-Lusztig polynomials.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, inf

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class PolyRing:
    """An ordered tuple of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self._index = {name: k for k, name in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError("unknown variable %r" % name) from None

    def var(self, which) -> "MultiPoly":
        k = which if isinstance(which, int) else self._index[which]
        exps = [0] * len(self.names)
        exps[k] = 1
        return MultiPoly(self, {tuple(exps): Fraction(1)})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly(self, {})
        return MultiPoly(self, {(0,) * len(self.names): c})

    def from_terms(self, terms) -> "MultiPoly":
        """Build from {exponent tuple: coefficient}, dropping zeros."""
        clean = {}
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff:
                exps = tuple(exps)
                if len(exps) != len(self.names):
                    raise ValueError("exponent tuple of wrong arity: %r" % (exps,))
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
        return MultiPoly(self, {e: c for e, c in clean.items() if c})

    def parse(self, text: str) -> "MultiPoly":
        return parse_poly(text, self)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "PolyRing(%s)" % (", ".join(self.names))


class MultiPoly:
    """Immutable-by-convention sparse polynomial over a PolyRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | float:
        """Total degree; -inf for the zero polynomial."""
        if not self.terms:
            return -inf
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no minimal degree")
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degrees = {sum(e) for e in self.terms}
        return len(degrees) == 1

    def lowest_form(self) -> "MultiPoly":
        """The homogeneous component of minimal total degree."""
        if not self.terms:
            return self
        d = self.min_degree()
        return MultiPoly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def homogeneous_component(self, d: int) -> "MultiPoly":
        return MultiPoly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def _check(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("mixed rings")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return self.ring.zero()
            return MultiPoly(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    def swap_vars(self, i: int, j: int) -> "MultiPoly":
        """Exchange variables number i and j (0-indexed)."""
        out: dict = {}
        for e, c in self.terms.items():
            lst = list(e)
            lst[i], lst[j] = lst[j], lst[i]
            key = tuple(lst)
            out[key] = out.get(key, Fraction(0)) + c
        return MultiPoly(self.ring, {e: c for e, c in out.items() if c})

    def evaluate(self, values) -> Fraction:
        values = [Fraction(v) for v in values]
        if len(values) != self.ring.nvars:
            raise ValueError("expected %d values" % self.ring.nvars)
        total = Fraction(0)
        for e, c in self.terms.items():
            prod = c
            for base, power in zip(values, e):
                if power:
                    prod *= base**power
            total += prod
        return total

    def degree_coefficients(self) -> list[Fraction]:
        """Sums of coefficients per total degree (index d = degree d)."""
        if not self.terms:
            return []
        out = [Fraction(0)] * (int(self.degree()) + 1)
        for e, c in self.terms.items():
            out[sum(e)] += c
        return out

    def substitute_all(self, value: "UniPoly") -> "UniPoly":
        """Replace every variable by the same univariate polynomial."""
        per_degree = self.degree_coefficients()
        total = UniPoly.zero()
        power = UniPoly.one()
        for d, c in enumerate(per_degree):
            if c:
                if c.denominator != 1:
                    raise ValueError("substitution needs integer coefficients")
                total = total + power * int(c)
            if d + 1 < len(per_degree):
                power = power * value
        return total

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True
        )

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        chunks = []
        for e, c in self.sorted_terms():
            factors = []
            for k, power in enumerate(e):
                if power == 1:
                    factors.append(names[k])
                elif power > 1:
                    factors.append("%s^%d" % (names[k], power))
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = "%s*%s" % (mag, body)
            if not chunks:
                chunks.append(piece if c > 0 else "-" + piece)
            else:
                chunks.append(("+ " if c > 0 else "- ") + piece)
        return " ".join(chunks)

    def __repr__(self):
        return "MultiPoly(%s)" % self


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    """Parse sums of *-separated power products, e.g. "z_5_1*z_3_3 - 2*z_5_3^2"."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    # Split into signed terms.
    terms: dict = {}
    pos = 0
    sign = 1
    if text[pos] in "+-":
        sign = -1 if text[pos] == "-" else 1
        pos += 1
    while pos < len(text):
        chunk_end = pos
        while chunk_end < len(text) and text[chunk_end] not in "+-":
            chunk_end += 1
        chunk = text[pos:chunk_end].strip()
        if not chunk:
            raise ValueError("dangling sign in %r" % text)
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError("empty factor in %r" % chunk)
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            if "^" in factor:
                name, _, power_text = factor.partition("^")
                power = int(power_text)
            else:
                name, power = factor, 1
            if not _NAME.fullmatch(name.strip()):
                raise ValueError("bad factor %r" % factor)
            exps[ring.index(name.strip())] += power
        key = tuple(exps)
        s = terms.get(key, Fraction(0)) + coeff
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)
        if chunk_end >= len(text):
            break
        sign = -1 if text[chunk_end] == "-" else 1
        pos = chunk_end + 1
    return MultiPoly(ring, terms)


def divided_difference_pi(f: MultiPoly, i: int) -> MultiPoly:
    """Isobaric divided difference:
    pi_i(f) = ((1 - x_{i+1}) f - (1 - x_i) f^{s_i}) / (x_i - x_{i+1}),
    with i 1-indexed.  The division must be exact."""
    ring = f.ring
    if not 1 <= i < ring.nvars:
        raise IndexError("pi_%d needs variables x_%d and x_%d" % (i, i, i + 1))
    a = i - 1
    b = i
    xi = ring.var(a)
    xj = ring.var(b)
    swapped = f.swap_vars(a, b)
    numerator = (ring.one() - xj) * f - (ring.one() - xi) * swapped
    return _exact_divide_by_var_difference(numerator, a, b)


def _exact_divide_by_var_difference(g: MultiPoly, a: int, b: int) -> MultiPoly:
    """Exact quotient g / (x_a - x_b), by telescoping each term.

    x^p y^q = (x - y) * sum_{k=0}^{p-1} x^{p-1-k} y^{q+k}  +  y^{p+q},
    so the remainder collapses onto x-free monomials and must cancel.
    """
    ring = g.ring
    quotient: dict = {}
    remainder: dict = {}
    for e, c in g.terms.items():
        p = e[a]
        base = list(e)
        for k in range(p):
            base[a] = p - 1 - k
            base[b] = e[b] + k
            key = tuple(base)
            s = quotient.get(key, Fraction(0)) + c
            if s:
                quotient[key] = s
            else:
                del quotient[key]
        base[a] = 0
        base[b] = e[b] + p
        key = tuple(base)
        s = remainder.get(key, Fraction(0)) + c
        if s:
            remainder[key] = s
        else:
            del remainder[key]
    if remainder:
        raise ValueError("division by x_%d - x_%d is not exact" % (a + 1, b + 1))
    return MultiPoly(ring, quotient)


class UniPoly:
    """Integer-coefficient polynomial in q; zero has degree -inf."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, int):
                raise ValueError("UniPoly wants integer coefficients, got %r" % (c,))
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((1,))

    @classmethod
    def q(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def one_minus_q(cls) -> "UniPoly":
        return cls((1, -1))

    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else -inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __add__(self, other):
        if isinstance(other, int):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(size)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPoly([c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            if ca:
                for b, cb in enumerate(other.coeffs):
                    out[a + b] += ca * cb
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = UniPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, x):
        total = Fraction(0) if isinstance(x, Fraction) else 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def exact_divide(self, other: "UniPoly") -> "UniPoly":
        """Quotient self / other; raises unless the division is exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return UniPoly.zero()
        num = list(self.coeffs)
        den = other.coeffs
        dn = len(den) - 1
        if len(num) - 1 < dn:
            raise ValueError("inexact division")
        out = [0] * (len(num) - dn)
        for k in range(len(out) - 1, -1, -1):
            lead = num[k + dn]
            if lead % den[-1]:
                raise ValueError("inexact division")
            q = lead // den[-1]
            out[k] = q
            if q:
                for j, d in enumerate(den):
                    num[k + j] -= q * d
        if any(num):
            raise ValueError("inexact division")
        return UniPoly(out)

    def one_minus_q_multiplicity(self) -> int:
        """Largest m with (1-q)^m dividing self (self must be nonzero)."""
        if self.is_zero():
            raise ValueError("the zero polynomial is divisible by everything")
        m = 0
        current = self
        while current.evaluate(1) == 0:
            current = current.exact_divide(UniPoly.one_minus_q())
            m += 1
        return m

    def series_coefficients(self, dim: int, order: int) -> list[int]:
        """Coefficients of self / (1-q)^dim up to degree `order` inclusive."""
        out = []
        for m in range(order + 1):
            total = 0
            for j, c in enumerate(self.coeffs):
                if j > m:
                    break
                if c:
                    total += c * comb(m - j + dim - 1, dim - 1) if dim > 0 else (c if j == m else 0)
            out.append(total)
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        chunks = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "q" if mag == 1 else "%d*q" % mag
            else:
                body = "q^%d" % k if mag == 1 else "%d*q^%d" % (mag, k)
            if not chunks:
                chunks.append(body if c > 0 else "-" + body)
            else:
                chunks.append(("+ " if c > 0 else "- ") + body)
        return " ".join(chunks)

    def __repr__(self):
        return "UniPoly(%s)" % self
