"""Permutations in one-line notation and their diagram combinatorics.

Everything is 1-indexed.  Boxes (i, j) are matrix coordinates counted from
the top-left of the n x n grid.  The diagram convention used throughout puts
a box at (i, j) when i > w(j) and j < w^{-1}(i), so the diagram records
co-inversions: |D(w)| = n(n-1)/2 - length(w).  Southwest ranks
R_w(a, j) = #{h <= j : w(h) >= a} are ranks of lower-left submatrices of the
permutation matrix of w.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _iter_words
from math import comb

Box = tuple[int, int]


@dataclass(frozen=True, slots=True)
class Permutation:
    """A permutation of {1..n} stored in one-line notation."""

    word: tuple[int, ...]

    def __post_init__(self):
        if tuple(sorted(self.word)) != tuple(range(1, len(self.word) + 1)):
            raise ValueError("not a permutation of 1..n: %r" % (self.word,))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self.word):
            raise IndexError("position %d out of range 1..%d" % (i, len(self.word)))
        return self.word[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.word)
        for pos, val in enumerate(self.word, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def length(self) -> int:
        return length(self)

    def is_identity(self) -> bool:
        return all(val == pos for pos, val in enumerate(self.word, start=1))

    def right_s(self, i: int) -> "Permutation":
        """Multiply on the right by the adjacent transposition s_i (swap spots i, i+1)."""
        if not 1 <= i < len(self.word):
            raise IndexError("transposition index %d out of range" % i)
        w = list(self.word)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))

    def first_ascent(self) -> int | None:
        """Smallest i with w(i) < w(i+1), or None for the longest element."""
        for i in range(1, len(self.word)):
            if self.word[i - 1] < self.word[i]:
                return i
        return None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def from_string(cls, text: str) -> "Permutation":
        """Parse "7314562" (digits, n <= 9) or "7,11,6,10,5,9,4,8,3,2,1"."""
        text = text.strip()
        if "," in text:
            word = tuple(int(part) for part in text.split(","))
        else:
            if not text.isdigit():
                raise ValueError("cannot parse permutation from %r" % text)
            word = tuple(int(ch) for ch in text)
        return cls(word)

    def __str__(self) -> str:
        if len(self.word) <= 9:
            return "".join(str(v) for v in self.word)
        return ",".join(str(v) for v in self.word)

    def __repr__(self) -> str:
        return "Permutation(%s)" % str(self)


def all_permutations(n: int):
    """Iterate over S_n in lexicographic order of one-line words."""
    for word in _iter_words(range(1, n + 1)):
        yield Permutation(word)


@lru_cache(maxsize=None)
def length(w: Permutation) -> int:
    """Coxeter length = number of inversions."""
    word = w.word
    return sum(
        1
        for a in range(len(word))
        for b in range(a + 1, len(word))
        if word[a] > word[b]
    )


def sw_rank(u: Permutation, a: int, j: int) -> int:
    """R_u(a, j) = #{h <= j : u(h) >= a}, the rank of the southwest submatrix
    spanning rows a..n and columns 1..j of the permutation matrix."""
    if not (1 <= a <= u.n and 1 <= j <= u.n):
        raise IndexError("rank query (%d, %d) outside the %d x %d grid" % (a, j, u.n, u.n))
    word = u.word
    return sum(1 for h in range(j) if word[h] >= a)


@lru_cache(maxsize=None)
def rank_matrix(u: Permutation) -> tuple[tuple[int, ...], ...]:
    """All southwest ranks; entry [a-1][j-1] is R_u(a, j)."""
    n = u.n
    word = u.word
    rows = []
    for a in range(1, n + 1):
        row = []
        count = 0
        for h in range(n):
            if word[h] >= a:
                count += 1
            row.append(count)
        rows.append(tuple(row))
    return tuple(rows)


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """Bruhat order via pointwise comparison of southwest rank matrices."""
    if v.n != w.n:
        raise ValueError("cannot compare permutations of different sizes")
    if v.word == w.word:
        return True
    rv = rank_matrix(v)
    rw = rank_matrix(w)
    for a in range(v.n):
        rva = rv[a]
        rwa = rw[a]
        for j in range(v.n):
            if rva[j] > rwa[j]:
                return False
    return True


def bruhat_interval(v: Permutation, w: Permutation) -> frozenset[Permutation]:
    """All u with v <= u <= w.  Errors unless v <= w."""
    if not bruhat_leq(v, w):
        raise ValueError("%s is not below %s in Bruhat order" % (v, w))
    return frozenset(
        u for u in all_permutations(v.n) if bruhat_leq(v, u) and bruhat_leq(u, w)
    )


@lru_cache(maxsize=None)
def contains_pattern(w: Permutation, p: Permutation) -> bool:
    """True when some subsequence of w is order-isomorphic to p."""
    k = p.n
    n = w.n
    if k > n:
        return False
    pat = p.word
    word = w.word

    def extend(start: int, chosen: tuple[int, ...]) -> bool:
        t = len(chosen)
        if t == k:
            return True
        for pos in range(start, n - (k - t) + 1):
            val = word[pos]
            if all((val > c) == (pat[t] > pat[s]) for s, c in enumerate(chosen)):
                if extend(pos + 1, chosen + (val,)):
                    return True
        return False

    return extend(0, ())


_PAT_3412 = Permutation((3, 4, 1, 2))
_PAT_2143 = Permutation((2, 1, 4, 3))


@lru_cache(maxsize=None)
def is_covexillary(w: Permutation) -> bool:
    """Covexillary = 3412-avoiding."""
    return not contains_pattern(w, _PAT_3412)


@lru_cache(maxsize=None)
def is_vexillary(w: Permutation) -> bool:
    """Vexillary = 2143-avoiding."""
    return not contains_pattern(w, _PAT_2143)


@lru_cache(maxsize=None)
def diagram(w: Permutation) -> frozenset[Box]:
    """D(w) = {(i, j) : i > w(j), j < w^{-1}(i)}."""
    n = w.n
    inv = w.inverse().word
    return frozenset(
        (i, j)
        for j in range(1, n + 1)
        for i in range(w.word[j - 1] + 1, n + 1)
        if j < inv[i - 1]
    )


@lru_cache(maxsize=None)
def essential_set(w: Permutation) -> frozenset[Box]:
    """Boxes of D(w) with no diagram box directly north or east."""
    boxes = diagram(w)
    return frozenset(
        (i, j) for (i, j) in boxes if (i - 1, j) not in boxes and (i, j + 1) not in boxes
    )


def code_and_shape(w: Permutation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Row counts of D(w) printed bottom row first, and their sorted partition.

    The code is (c_n, ..., c_1) where c_i = #boxes of D(w) in grid row i; the
    shape is the weakly decreasing sort with zeros dropped.
    """
    n = w.n
    counts = [0] * (n + 1)
    for (i, _) in diagram(w):
        counts[i] += 1
    code = tuple(counts[i] for i in range(n, 0, -1))
    shape = tuple(sorted((c for c in code if c), reverse=True))
    return code, shape


def shape(w: Permutation) -> tuple[int, ...]:
    return code_and_shape(w)[1]


def w0_compose(u: Permutation) -> Permutation:
    """w0 * u, i.e. i -> n + 1 - u(i).  Swaps vexillary and covexillary."""
    n = u.n
    return Permutation(tuple(n + 1 - val for val in u.word))


def permutation_from_reversed_code(code: tuple[int, ...]) -> Permutation:
    """Invert code_and_shape: build the w whose printed code is `code`.

    The printed code (c_n, ..., c_1) read left to right is the Lehmer code of
    (w0 w)^{-1}, so build that permutation from its Lehmer code and undo the
    two transforms.
    """
    n = len(code)
    for a, c in enumerate(code):
        if not 0 <= c <= n - 1 - a:
            raise ValueError("entry %d of %r is not a valid Lehmer value" % (c, code))
    available = list(range(1, n + 1))
    u = []
    for c in code:
        u.append(available.pop(c))
    lehmer = Permutation(tuple(u))
    return w0_compose(lehmer.inverse())


def diagram_ascii(w: Permutation) -> str:
    """Grid picture: `#` diagram box, `e` essential box, `o` the dots of w."""
    n = w.n
    boxes = diagram(w)
    ess = essential_set(w)
    rows = []
    for i in range(1, n + 1):
        cells = []
        for j in range(1, n + 1):
            if (i, j) in ess:
                cells.append("e")
            elif (i, j) in boxes:
                cells.append("#")
            elif w.word[j - 1] == i:
                cells.append("o")
            else:
                cells.append(".")
        rows.append(" ".join(cells))
    return "\n".join(rows)


def free_cell_count(v: Permutation) -> int:
    """Dimension of the affine chart attached to v: C(n,2) - length(v)."""
    return comb(v.n, 2) - length(v)
