"""Packed-exponent monomial encodings and order keys.

A monomial in n variables is packed into one integer, 16 bits per variable
(`raw`).  Each term order gets an integer `key` whose natural comparison
realizes the order; keys are multiplicative up to an additive constant
(`corr`), so products and quotients of keys are single integer operations.

raw layout:   variable k occupies bits [16k, 16k+16).
grevlex key:  [total degree][0xFFFF - e_last] ... [0xFFFF - e_first]
lex key:      [e_first] ... [e_last]
grevlex_t:    [total degree][e_t][grevlex fields of the remaining variables]
              (variable 0 is the homogenization variable; higher t wins ties,
              which makes dehomogenized leading terms pick lowest forms).

Divisibility and lcm of raws use carry-free field tricks, which requires all
exponents to stay below 2^14; assert_exponent guards that.
"""

from __future__ import annotations

SHIFT = 16
FIELD = 0xFFFF
MAX_EXP = 1 << 14

KINDS = ("grevlex", "lex", "grevlex_t")


def assert_exponent(e: int) -> None:
    if not 0 <= e < MAX_EXP:
        raise OverflowError("exponent %d exceeds the packed field limit" % e)


class OrderPack:
    """Order-aware packing for a fixed number of variables."""

    __slots__ = ("nvars", "kind", "priority", "hmask", "corr", "deg_shift")

    def __init__(self, nvars: int, kind: str = "grevlex", priority=None):
        if kind not in KINDS:
            raise ValueError("unknown order kind %r" % kind)
        if nvars < 1:
            raise ValueError("OrderPack needs at least one variable")
        if priority is not None:
            priority = tuple(priority)
            if sorted(priority) != list(range(nvars)):
                raise ValueError("priority must be a permutation of 0..nvars-1")
            if kind == "grevlex_t":
                raise ValueError("grevlex_t does not take a priority permutation")
        self.nvars = nvars
        self.kind = kind
        self.priority = priority
        self.hmask = sum(0x8000 << (SHIFT * k) for k in range(nvars))
        self.deg_shift = SHIFT * nvars
        if kind == "grevlex":
            self.corr = sum(FIELD << (SHIFT * k) for k in range(nvars))
        elif kind == "grevlex_t":
            self.corr = sum(FIELD << (SHIFT * k) for k in range(nvars - 1))
        else:
            self.corr = 0

    def _effective(self, exps):
        if self.priority is None:
            return tuple(exps)
        return tuple(exps[p] for p in self.priority)

    def pack(self, exps) -> int:
        raw = 0
        for k, e in enumerate(exps):
            assert_exponent(e)
            raw |= e << (SHIFT * k)
        return raw

    def unpack(self, raw: int) -> tuple[int, ...]:
        return tuple((raw >> (SHIFT * k)) & FIELD for k in range(self.nvars))

    def degree_of_raw(self, raw: int) -> int:
        total = 0
        while raw:
            total += raw & FIELD
            raw >>= SHIFT
        return total

    def key_from_exps(self, exps) -> int:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("expected %d exponents" % self.nvars)
        for e in exps:
            assert_exponent(e)
        eff = self._effective(exps)
        n = self.nvars
        if self.kind == "lex":
            key = 0
            for k, e in enumerate(eff):
                key |= e << (SHIFT * (n - 1 - k))
            return key
        if self.kind == "grevlex":
            # Reversed comparison: the last variable sits in the top field,
            # complemented so that a smaller trailing exponent wins.
            key = sum(eff) << self.deg_shift
            for k, e in enumerate(eff):
                key |= (FIELD - e) << (SHIFT * k)
            return key
        # grevlex_t: variable 0 dominates after total degree, the rest are
        # compared by grevlex among themselves.
        key = sum(eff) << self.deg_shift
        key |= eff[0] << (SHIFT * (n - 1))
        for k in range(1, n):
            key |= (FIELD - eff[k]) << (SHIFT * (k - 1))
        return key

    def keyof(self, raw: int) -> int:
        return self.key_from_exps(self.unpack(raw))

    def key_degree(self, key: int) -> int:
        """Total degree, available only for the graded kinds."""
        if self.kind == "lex":
            raise ValueError("lex keys do not carry the degree")
        return key >> self.deg_shift


def divides(d: int, m: int, hmask: int) -> bool:
    """Fieldwise d <= m for packed raws."""
    return ((m | hmask) - d) & hmask == hmask


def raw_lcm(a: int, b: int, hmask: int) -> int:
    """Fieldwise max of two packed raws."""
    ge = ((a | hmask) - b) & hmask  # top bit of each field where a >= b
    full = (ge << 1) - (ge >> (SHIFT - 1))  # expand indicators to full fields
    return (a & full) | (b & ~full)
