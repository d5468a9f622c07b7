"""Noncommutative crossing partitions of [n] and their basic predicates.

A noncommutative crossing partition is an ordered sequence of blocks
``pi_1 / pi_2 / ... / pi_l`` such that

* every integer of ``[n] = {1, ..., n}`` occurs in exactly one block,
* each block is strictly increasing left to right,
* ``max(pi_i) > min(pi_{i+1})`` for consecutive blocks.

Concatenating the blocks gives a permutation of ``[n]``; cutting a
permutation at its descents gives the blocks back, so these objects are in
bijection with permutations and there are ``n!`` of them.

Text format: blocks separated by ``/``, elements inside a block separated by
``,``.  When every element is a single digit the commas may be dropped, e.g.
``24/3/1`` == ``2,4/3/1``.

>>> p = Partition.parse("24/3/1")
>>> p.to_permutation()
(2, 4, 3, 1)
>>> str(p)
'2,4/3/1'
>>> p.rank(), p.block_count()
(1, 3)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations as _permutations
from math import comb
from typing import Sequence

__all__ = [
    "Partition",
    "FAMILIES",
    "enumerate_partitions",
    "catalan",
]

FAMILIES = ("NCCP", "NCP", "NCCP312", "NCCP132")

_PATTERNS = {"312": (3, 1, 2), "132": (1, 3, 2)}


def catalan(n: int) -> int:
    """The n-th Catalan number (1, 1, 2, 5, 14, ...)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class Partition:
    """An ordered partition of [n] into increasing blocks with descents between them.

    Immutable and hashable; instances key the hash maps of the lattice code.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: list[int] = []
        for block in self.blocks:
            if not block:
                raise ValueError("empty block")
            if any(block[i] >= block[i + 1] for i in range(len(block) - 1)):
                raise ValueError(f"block {block} is not strictly increasing")
            seen.extend(block)
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(
                f"blocks {self.blocks} do not cover [{self.n}] exactly once"
            )
        for left, right in zip(self.blocks, self.blocks[1:]):
            if not left[-1] > right[0]:
                raise ValueError(
                    f"no descent between consecutive blocks {left} and {right}"
                )

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @staticmethod
    def from_permutation(word: Sequence[int]) -> "Partition":
        """Cut a permutation at its descents: 83741526 -> 8/37/4/15/26."""
        word = tuple(word)
        n = len(word)
        if sorted(word) != list(range(1, n + 1)):
            raise ValueError(f"{word!r} is not a permutation of [n]")
        blocks: list[tuple[int, ...]] = []
        run: list[int] = []
        for value in word:
            if run and value < run[-1]:
                blocks.append(tuple(run))
                run = []
            run.append(value)
        blocks.append(tuple(run))
        return Partition(n, tuple(blocks))

    @staticmethod
    def parse(text: str) -> "Partition":
        """Parse the ``/``-separated block format (see module docstring)."""
        text = text.strip()
        if not text:
            raise ValueError("empty partition text")
        raw_blocks = text.split("/")
        if "," in text:
            blocks = tuple(
                tuple(int(tok) for tok in raw.split(",")) for raw in raw_blocks
            )
            return Partition(sum(len(b) for b in blocks), blocks)
        # Bare-digit mode: every character one element.  If that reading is
        # invalid but each block is a plain integer, re-read blocks as whole
        # numbers so that all-singleton partitions with n >= 10 still parse.
        try:
            blocks = tuple(tuple(int(ch) for ch in raw) for raw in raw_blocks)
            return Partition(sum(len(b) for b in blocks), blocks)
        except ValueError as digit_error:
            try:
                blocks = tuple((int(raw),) for raw in raw_blocks)
                return Partition(len(blocks), blocks)
            except ValueError:
                raise digit_error from None

    @staticmethod
    def from_json(payload: str | dict) -> "Partition":
        data = json.loads(payload) if isinstance(payload, str) else payload
        return Partition(int(data["n"]), tuple(tuple(b) for b in data["blocks"]))

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        return "/".join(",".join(str(x) for x in block) for block in self.blocks)

    def compact(self) -> str:
        """Digit-concatenated form, only defined for n <= 9 (e.g. ``24/3/1``)."""
        if self.n > 9:
            raise ValueError("compact form requires n <= 9")
        return "/".join("".join(str(x) for x in block) for block in self.blocks)

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    # ------------------------------------------------------------------
    # basic statistics
    # ------------------------------------------------------------------

    def to_permutation(self) -> tuple[int, ...]:
        return tuple(x for block in self.blocks for x in block)

    def block_count(self) -> int:
        return len(self.blocks)

    def rank(self) -> int:
        """n minus the number of blocks; the grading of the rotation lattice."""
        return self.n - len(self.blocks)

    def inversions(self) -> int:
        word = self.to_permutation()
        return sum(
            1
            for i in range(len(word))
            for j in range(i + 1, len(word))
            if word[i] > word[j]
        )

    def type_sequence(self) -> tuple[int, ...]:
        """Block sizes left to right."""
        return tuple(len(block) for block in self.blocks)

    # ------------------------------------------------------------------
    # predicates
    # ------------------------------------------------------------------

    def is_noncrossing(self) -> bool:
        """No a < b < c < d with a,c in one block and b,d in a different one."""
        for i in range(len(self.blocks)):
            for j in range(len(self.blocks)):
                if i == j:
                    continue
                bi, bj = self.blocks[i], self.blocks[j]
                for ai in range(len(bi)):
                    for ci in range(ai + 1, len(bi)):
                        a, c = bi[ai], bi[ci]
                        if any(a < b < c for b in bj) and bj[-1] > c:
                            return False
        return True

    def is_canonical(self) -> bool:
        """Block minima strictly increase right to left."""
        minima = [block[0] for block in self.blocks]
        return all(minima[i] > minima[i + 1] for i in range(len(minima) - 1))

    def avoids(self, pattern: int | str) -> bool:
        """Classical pattern avoidance of 312 or 132 on the one-line word."""
        key = str(pattern)
        if key not in _PATTERNS:
            raise ValueError(f"unsupported pattern {pattern!r}; expected 312 or 132")
        target = _PATTERNS[key]
        word = self.to_permutation()
        n = len(word)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    triple = (word[i], word[j], word[k])
                    order = tuple(sorted(triple).index(x) + 1 for x in triple)
                    if order == target:
                        return False
        return True


def _family_filter(p: Partition, family: str) -> bool:
    if family == "NCCP":
        return True
    if family == "NCP":
        return p.is_noncrossing() and p.is_canonical()
    if family == "NCCP312":
        return p.avoids(312)
    if family == "NCCP132":
        return p.avoids(132)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def enumerate_partitions(n: int, family: str = "NCCP") -> list[Partition]:
    """All members of a family for ground set [n], ordered lexicographically
    by one-line permutation.

    family is one of NCCP (everything), NCP (noncrossing + canonical),
    NCCP312, NCCP132 (pattern-avoiding).  Case-insensitive.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    family = family.upper()
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    out = []
    for word in _permutations(range(1, n + 1)):
        p = Partition.from_permutation(word)
        if _family_filter(p, family):
            out.append(p)
    return out
