"""Edge labels on the rotation diagram and what they count.

Every cover edge is realized by a rotation triplet; the anchor label gives a
natural edge labeling whose complement (block count plus ground-set size
minus the anchor label) makes every interval carry a unique weakly rising
unrefinable chain with a strictly minimal first step.  Counting chains whose
labels strictly fall computes the Möbius function; reading the (anchor,
pivot) label pairs along maximal chains sets up bijections with labeled
parking functions.  The type-multiplicity machinery counts, for a fixed
pivot word, how many anchor words can accompany it.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, replace
from functools import cache
from itertools import permutations, product
from math import comb, factorial

from .lattice import HasseDiagram, MAX_HASSE_N, build_hasse
from .partitions import Partition, catalan


def double_factorial_odd(n: int) -> int:
    """(2n-3)!! with the empty-product convention for n <= 1."""
    out = 1
    for j in range(1, 2 * n - 2, 2):
        out *= j
    return out


def fuss_catalan(n: int, k: int) -> int:
    """Number of k-ary trees with n internal nodes."""
    return comb(k * n, n) // ((k - 1) * n + 1)


# --- edge labels -----------------------------------------------------------


@dataclass(frozen=True)
class EdgeLabel:
    """Labels of one cover edge: the anchor label, its complement against
    the lower element's block count, and the (anchor, pivot) pair."""

    ltilde: int
    el: int
    refined: tuple[int, int]

    def __post_init__(self):
        a, b = self.refined
        if not (1 <= a < b):
            raise ValueError("refined pair must satisfy 1 <= anchor < pivot")
        if a != self.ltilde:
            raise ValueError("anchor label and first refined entry differ")
        if self.el < 1:
            raise ValueError("complementary label must be positive")


def edge_labels(diagram: HasseDiagram) -> HasseDiagram:
    """Attach an EdgeLabel to every cover edge.

    Each edge is realized by exactly one triplet for every diagram size this
    package builds; if several ever occur, the one whose largest moved label
    is maximal is used, with the triplet sort order breaking residual ties.
    """
    labels: dict[tuple[int, int], EdgeLabel] = {}
    for (lo, hi), nus in diagram.edge_triplets.items():
        nu = max(
            nus,
            key=lambda t: (max(t.s_labels | {t.n_label}), t.sort_key()),
        )
        lower_blocks = len(diagram.elements[lo].blocks)
        ltilde = nu.a_label
        labels[(lo, hi)] = EdgeLabel(
            ltilde=ltilde,
            el=diagram.n + lower_blocks - ltilde,
            refined=(nu.a_label, nu.n_label),
        )
    return replace(diagram, edge_labels=labels)


def _require_labels(diagram: HasseDiagram) -> HasseDiagram:
    return diagram if diagram.edge_labels is not None else edge_labels(diagram)


# --- chains in an interval -------------------------------------------------


@cache
def _up_sets(diagram: HasseDiagram) -> list[frozenset[int]]:
    """Index set of elements weakly above each element, computed once."""
    order = sorted(
        range(len(diagram.elements)), key=diagram.rank, reverse=True
    )
    ups: list[frozenset[int]] = [frozenset()] * len(diagram.elements)
    for i in order:
        acc = {i}
        for j in diagram.upper[i]:
            acc |= ups[j]
        ups[i] = frozenset(acc)
    return ups


def _chains_between(
    diagram: HasseDiagram, lo: int, hi: int
) -> list[tuple[int, ...]]:
    """All unrefinable chains from lo to hi as index tuples."""
    if lo == hi:
        return [(lo,)]
    ups = _up_sets(diagram)
    out: list[tuple[int, ...]] = []
    stack: list[tuple[int, ...]] = [(lo,)]
    while stack:
        chain = stack.pop()
        for nxt in diagram.upper[chain[-1]]:
            if nxt == hi:
                out.append(chain + (nxt,))
            elif hi in ups[nxt]:
                stack.append(chain + (nxt,))
    return out


def _label_word(
    diagram: HasseDiagram, chain: tuple[int, ...]
) -> tuple[int, ...]:
    return tuple(
        diagram.edge_labels[(a, b)].el for a, b in zip(chain, chain[1:])
    )


def maximal_chains(diagram: HasseDiagram) -> list[tuple[int, ...]]:
    return _chains_between(diagram, diagram.bottom, diagram.top)


# --- the two defining properties of the labeling ---------------------------


def el_violation(diagram: HasseDiagram):
    """First interval violating the rising-chain conditions, else None.

    For every interval there must be exactly one weakly rising unrefinable
    chain, and its first label must be strictly smaller than the first label
    of every other chain of the interval.
    """
    d = _require_labels(diagram)
    ups = _up_sets(d)
    for lo in range(len(d.elements)):
        for hi in sorted(ups[lo]):
            if lo == hi:
                continue
            chains = _chains_between(d, lo, hi)
            wordof = {c: _label_word(d, c) for c in chains}
            rising = [
                c
                for c in chains
                if all(x <= y for x, y in zip(wordof[c], wordof[c][1:]))
            ]
            if len(rising) != 1:
                return (lo, hi, f"{len(rising)} rising chains")
            first = wordof[rising[0]][0]
            for c in chains:
                if c[1] != rising[0][1] and wordof[c][0] <= first:
                    return (lo, hi, "rising chain does not start strictly first")
    return None


def el_check(diagram: HasseDiagram) -> bool:
    """True when every interval has a unique weakly rising chain whose first
    label is strictly minimal among all chains of the interval."""
    return el_violation(diagram) is None


# --- Möbius function -------------------------------------------------------


def _interval_indices(diagram: HasseDiagram, lo: int, hi: int) -> list[int]:
    ups = _up_sets(diagram)
    return [z for z in ups[lo] if hi in ups[z]]


def moebius_recursive(
    diagram: HasseDiagram, x: Partition, y: Partition
) -> int:
    """Möbius value of the interval [x, y] by the defining recursion."""
    lo, hi = diagram.index[x], diagram.index[y]
    ups = _up_sets(diagram)
    if hi not in ups[lo]:
        raise ValueError("x must be below y")
    inside = sorted(_interval_indices(diagram, lo, hi), key=diagram.rank)
    mu: dict[int, int] = {}
    for z in inside:
        if z == lo:
            mu[z] = 1
        else:
            mu[z] = -sum(mu[w] for w in inside if w != z and z in ups[w])
    return mu[hi]


def moebius_via_chains(
    diagram: HasseDiagram, x: Partition, y: Partition
) -> int:
    """Möbius value as a signed count of strictly falling unrefinable chains."""
    d = _require_labels(diagram)
    lo, hi = d.index[x], d.index[y]
    if hi not in _up_sets(d)[lo]:
        raise ValueError("x must be below y")
    falling = 0
    for chain in _chains_between(d, lo, hi):
        word = _label_word(d, chain)
        if all(a > b for a, b in zip(word, word[1:])):
            falling += 1
    sign = -1 if (d.rank(hi) - d.rank(lo)) % 2 else 1
    return sign * falling


# --- chain counting --------------------------------------------------------


def count_maximal_chains(
    diagram: HasseDiagram, restrict_312: bool = False
) -> int:
    """Number of unrefinable chains from bottom to top, optionally keeping
    only chains through 312-avoiding elements."""
    keep = [
        not restrict_312 or p.avoids(312) for p in diagram.elements
    ]
    if not (keep[diagram.bottom] and keep[diagram.top]):
        return 0
    order = sorted(range(len(diagram.elements)), key=diagram.rank)
    ways = {i: 0 for i in range(len(diagram.elements))}
    ways[diagram.bottom] = 1
    for i in order:
        if not keep[i] or ways[i] == 0:
            continue
        for j in diagram.upper[i]:
            if keep[j]:
                ways[j] += ways[i]
    return ways[diagram.top]


def count_k_chains(n: int, k: int, restrict_312: bool = False) -> int:
    """Number of weakly increasing (k-1)-tuples in the rotation order
    (restricted to 312-avoiding elements when asked)."""
    if not 1 <= n <= MAX_HASSE_N:
        raise ValueError(f"n must be between 1 and {MAX_HASSE_N}")
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return 1
    diagram = build_hasse(n, restrict_312=restrict_312)
    ups = _up_sets(diagram)
    size = len(diagram.elements)
    counts = [1] * size
    for _ in range(k - 2):
        acc = [0] * size
        for j in range(size):
            if counts[j]:
                for i in ups[j]:
                    acc[i] += counts[j]
        counts = acc
    return sum(counts)


# --- parking functions -----------------------------------------------------


def is_parking_function(seq) -> bool:
    arranged = sorted(seq)
    return all(1 <= v <= i for i, v in enumerate(arranged, start=1))


def parking_functions(n: int) -> list[tuple[int, ...]]:
    return [a for a in product(range(1, n + 1), repeat=n) if is_parking_function(a)]


@dataclass(frozen=True)
class LabeledParkingFunction:
    """A parking function paired with a distinct-label word dominating it.

    The labels either use the same alphabet as the parking function
    (a_i <= b_i, b a permutation of [m]) or sit one higher (b a permutation
    of [2..m+1] with a_i < b_i), which is how they are read off the cover
    diagram's edge pairs; ``standard()`` converts to the first form.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        m = len(self.a)
        if len(self.b) != m or m == 0:
            raise ValueError("sequences must have equal positive length")
        if not is_parking_function(self.a):
            raise ValueError("first sequence must be a parking function")
        shift = min(self.b) - 1
        if shift not in (0, 1) or sorted(self.b) != list(
            range(1 + shift, m + 1 + shift)
        ):
            raise ValueError("labels must be a permutation of [m] or [2..m+1]")
        if any(x > y - shift for x, y in zip(self.a, self.b)):
            raise ValueError("labels must dominate the parking function")

    @property
    def shifted(self) -> bool:
        return min(self.b) == 2

    def standard(self) -> "LabeledParkingFunction":
        if not self.shifted:
            return self
        return LabeledParkingFunction(self.a, tuple(x - 1 for x in self.b))


def labeled_parking_functions(n: int) -> list[LabeledParkingFunction]:
    out = []
    for a in parking_functions(n):
        for b in permutations(range(1, n + 1)):
            if all(x <= y for x, y in zip(a, b)):
                out.append(LabeledParkingFunction(a, b))
    return out


def chain_to_lpf(
    diagram: HasseDiagram, chain
) -> LabeledParkingFunction:
    """Read the (anchor, pivot) label pairs along a maximal chain.

    The anchors form a parking function of size n-1 and the pivots are a
    permutation of [2..n] dominating it; the map is a bijection onto such
    pairs over all maximal chains.
    """
    d = _require_labels(diagram)
    idx = [p if isinstance(p, int) else d.index[p] for p in chain]
    if idx[0] != d.bottom or idx[-1] != d.top:
        raise ValueError("chain must run from bottom to top")
    for lo, hi in zip(idx, idx[1:]):
        if (lo, hi) not in d.edge_labels:
            raise ValueError("consecutive chain entries must be cover edges")
    pairs = [d.edge_labels[(lo, hi)].refined for lo, hi in zip(idx, idx[1:])]
    return LabeledParkingFunction(
        tuple(a for a, _ in pairs), tuple(b for _, b in pairs)
    )


# --- generating function of labeled parking functions ----------------------


def poly_mul(p: dict, q: dict) -> dict:
    out: Counter = Counter()
    for (i, j), c in p.items():
        for (k, l), e in q.items():
            out[(i + k, j + l)] += c * e
    return dict(out)


def gen_I(n: int) -> dict[tuple[int, int], int]:
    """Two-variable generating function of labeled parking functions as a
    sparse exponent-to-coefficient map: the product over i of the degree-i
    truncated geometric sums in each variable."""
    poly = {(0, 0): 1}
    for i in range(1, n + 1):
        row = {(e, 0): 1 for e in range(i)}
        col = {(0, e): 1 for e in range(i)}
        poly = poly_mul(poly, poly_mul(row, col))
    return poly


def poly_to_json(poly: dict[tuple[int, int], int]) -> str:
    return json.dumps(
        {",".join(map(str, key)): val for key, val in sorted(poly.items())},
        indent=2,
    )


def inversions(seq) -> int:
    return sum(
        1
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
        if seq[i] > seq[j]
    )


# --- weakly increasing anchor words and their companions -------------------


def decreasing_sequences(n: int):
    """The weakly increasing anchor words of length n-1 (entry i at most i)
    together with, for each word, every pivot word that can label a strictly
    falling maximal chain above it."""

    def grow(prefix: tuple[int, ...]) -> list[tuple[int, ...]]:
        i = len(prefix)
        if i == n - 1:
            return [prefix]
        floor = prefix[-1] if prefix else 1
        out = []
        for v in range(floor, i + 2):
            out.extend(grow(prefix + (v,)))
        return out

    anchors = grow(())
    companions = {
        a: tuple(
            b
            for b in permutations(range(2, n + 1))
            if all(x < y for x, y in zip(a, b))
        )
        for a in anchors
    }
    return anchors, companions


# --- pivot-word types and multiplicities -----------------------------------


@dataclass(frozen=True)
class GammaType:
    """Type of a word: the values along the nearest-smaller-to-the-left
    chain ending at the last position, with the remaining positions blank
    (None)."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries or self.entries[-1] is None:
            raise ValueError("last entry must be an integer")
        values = [e for e in self.entries if e is not None]
        if any(x >= y for x, y in zip(values, values[1:])):
            raise ValueError("non-blank entries must strictly increase")

    @classmethod
    def parse(cls, text: str) -> "GammaType":
        return cls(tuple(None if ch == "*" else int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join("*" if e is None else str(e) for e in self.entries)


def gamma_type(word) -> GammaType:
    """Type of a word: follow nearest-smaller-to-the-left links from the
    last entry, keeping the values met and blanking everything else."""
    w = tuple(word)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError("word must be a permutation of 1..m")
    entries: list = [None] * len(w)
    j = len(w) - 1
    entries[j] = w[j]
    while j > 0:
        i = j - 1
        while i >= 0 and w[i] > w[j]:
            i -= 1
        if i < 0:
            break
        entries[i] = w[i]
        j = i
    return GammaType(tuple(entries))


def gamma_types(m: int) -> set[GammaType]:
    return {gamma_type(w) for w in permutations(range(1, m + 1))}


def gamma_prime(m: int) -> list[tuple[int, ...]]:
    """All blank-free sequences with entry i between 1 and i."""
    return [
        seq
        for seq in product(*(range(1, i + 1) for i in range(1, m + 1)))
    ]


@cache
def _multiplicity(entries: tuple) -> int:
    if len(entries) == 1:
        return 1
    last = entries[-1]
    before = entries[-2]
    total = 0
    for choice in range(1, last + 1):
        if before is None:
            new_last = min(choice, len(entries) - 1)
        else:
            new_last = min(before, choice)
        head = tuple(
            None if e is None else (new_last if e >= new_last else e)
            for e in entries[:-2]
        )
        total += _multiplicity(head + (new_last,))
    return total


def type_multiplicity(gamma) -> int:
    """Number of weakly increasing anchor words below any word of this type,
    computed by the single-step reduction recursion."""
    entries = gamma.entries if isinstance(gamma, GammaType) else tuple(gamma)
    if not entries or entries[-1] is None:
        raise ValueError("last entry must be an integer")
    return _multiplicity(entries)


def word_multiplicity(word) -> int:
    """Number of weakly increasing sequences bounded by both the position
    index and the word entry at every position."""
    w = tuple(word)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError("word must be a permutation of 1..m")
    counts = {0: 1}
    for i, cap in enumerate((min(i + 1, v) for i, v in enumerate(w)), start=1):
        acc: dict[int, int] = {}
        for v in range(1, cap + 1):
            acc[v] = sum(c for u, c in counts.items() if u <= v)
        counts = acc
    return sum(counts.values())
