"""Complement maps on noncrossing partitions and their 312-avoiding twins.

All maps act through a discrete circular presentation: the ground set sits
clockwise on a circle, each block is drawn as a closed polygon of chords
(singletons as loops that bound nothing), and a second family of primed
points interleaves the first.  Because the chords of a noncrossing partition
never cross, two primed points lie in the same region of the disk exactly
when every chord has them on the same side, so regions are computed from
chord-side bitmasks and never from coordinates.

The value complement relabels i to n+1-i; the region complement reads primed
points counterclockwise and is an order-reversing involution; the Kreweras
complement reads them clockwise and squares to a rotation; the extraction
complement peels increasing sequences off a one-line word and lands on
noncrossing partitions whenever the word avoids 312.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .partitions import Partition, enumerate_partitions
from .trees import kreweras_image, kreweras_preimage

__all__ = [
    "CircularPresentation",
    "ExtractionImage",
    "value_complement",
    "region_complement",
    "kreweras_complement",
    "complement_312",
    "extraction_complement",
    "alpha_diagram_check",
    "beta_diagram_check",
    "is_symmetric",
    "rotate_labels",
    "presentation_text",
]


def _require_ncp(p: Partition) -> Partition:
    if not (p.is_noncrossing() and p.is_canonical()):
        raise ValueError(f"{p} is not a noncrossing canonical partition")
    return p


def canonical_ncp(n: int, groups) -> Partition:
    """Assemble blocks (any iterable of iterables) in canonical order:
    sorted increasingly inside, by decreasing minimum across."""
    blocks = sorted((tuple(sorted(g)) for g in groups), key=lambda b: -b[0])
    return Partition(n, tuple(blocks))


# --- circular presentations -------------------------------------------------


@dataclass(frozen=True)
class CircularPresentation:
    """A noncrossing partition on a circle with interleaved primed points.

    ``clockwise_primes`` selects the orientation of the primed labels: True
    places i' between i and i+1 (the Kreweras reading), False places 1'
    between n and 1 with the remaining labels running counterclockwise (the
    region-complement reading).
    """

    partition: Partition
    clockwise_primes: bool

    def __post_init__(self):
        _require_ncp(self.partition)

    @property
    def n(self) -> int:
        return self.partition.n

    def _prime_after(self, i: int) -> int:
        """Label of the primed point clockwise-after circle point i."""
        if self.clockwise_primes:
            return i
        return 1 if i == self.n else self.n + 1 - i

    @cached_property
    def primed_points(self) -> tuple[int, ...]:
        """Primed labels in clockwise order, starting after point 1."""
        return tuple(self._prime_after(i) for i in range(1, self.n + 1))

    @cached_property
    def _positions(self) -> tuple[dict, dict]:
        """Clockwise position (0..2n-1) of each plain and primed label."""
        plain, primed = {}, {}
        for i in range(1, self.n + 1):
            plain[i] = 2 * (i - 1)
            primed[self._prime_after(i)] = 2 * (i - 1) + 1
        return plain, primed

    @cached_property
    def chords(self) -> tuple[tuple[int, int], ...]:
        """Chords of every block as plain-label pairs: the closed polygon of
        each block with two or more points; singletons draw loops that bound
        no region and contribute no chord."""
        out = []
        for block in self.partition.blocks:
            if len(block) < 2:
                continue
            out.extend(zip(block, block[1:]))
            if len(block) > 2:
                out.append((block[-1], block[0]))
        return tuple(out)

    def prime_groups(self) -> list[frozenset[int]]:
        """Primed labels grouped by region of the chord arrangement."""
        plain, primed = self._positions
        spans = []
        for u, v in self.chords:
            a, b = sorted((plain[u], plain[v]))
            spans.append((a, b))
        groups: dict[tuple[bool, ...], set[int]] = {}
        for label, pos in primed.items():
            side = tuple(a < pos < b for a, b in spans)
            groups.setdefault(side, set()).add(label)
        return [frozenset(g) for g in groups.values()]

    def region_partition(self) -> Partition:
        """The partition read off the primed points, canonically ordered."""
        return canonical_ncp(self.n, self.prime_groups())


# --- the maps ---------------------------------------------------------------


def value_complement(p: Partition) -> Partition:
    """Relabel i to n+1-i in one-line notation and re-cut at descents.

    Exchanges the 312- and 132-avoiding families; an involution."""
    n = p.n
    return Partition.from_permutation(
        tuple(n + 1 - x for x in p.to_permutation())
    )


def region_complement(p: Partition) -> Partition:
    """Connect primed points (counterclockwise labels) lying in the same
    region.  An order-reversing involution with rank(p) + rank(image) = n-1,
    i.e. block counts summing to n+1."""
    return CircularPresentation(p, clockwise_primes=False).region_partition()


def kreweras_complement(p: Partition) -> Partition:
    """Connect primed points (clockwise labels) lying in the same region.
    A bijection whose square rotates all labels by one."""
    return CircularPresentation(p, clockwise_primes=True).region_partition()


def complement_312(p: Partition) -> Partition:
    """The value complement conjugated onto the 312-avoiding family."""
    if not p.avoids(312):
        raise ValueError(f"{p} contains a 312 pattern")
    return kreweras_preimage(value_complement(p))


@dataclass(frozen=True)
class ExtractionImage:
    """Result of the extraction complement.

    ``ncp_guaranteed`` is True when the input avoided 312, which is the case
    in which the image is provably noncrossing."""

    partition: Partition
    ncp_guaranteed: bool


def extraction_complement(p: Partition) -> ExtractionImage:
    """Repeatedly peel off the increasing sequence that starts at the
    smallest remaining letter and walks left, picking up each run-maximal
    letter exceeding everything collected so far; the peeled sequences in
    reverse extraction order form the image."""
    remaining = list(p.to_permutation())
    sequences = []
    while remaining:
        smallest = min(remaining)
        start = remaining.index(smallest)
        taken = [smallest]
        for pos in range(start - 1, -1, -1):
            value = remaining[pos]
            run_max = pos == len(remaining) - 1 or remaining[pos + 1] < value
            if run_max and value > taken[-1]:
                taken.append(value)
        sequences.append(tuple(taken))
        chosen = set(taken)
        remaining = [v for v in remaining if v not in chosen]
    blocks = tuple(reversed(sequences))
    return ExtractionImage(Partition(p.n, blocks), p.avoids(312))


# --- commutative diagrams ---------------------------------------------------


def alpha_diagram_check(n: int) -> bool:
    """The square linking the 312-avoiding involution, the region complement
    and the value complement commutes pointwise."""
    for p in enumerate_partitions(n, "NCCP312"):
        image = kreweras_image(p)
        target = value_complement(p)
        if region_complement(image) != target:
            return False
        if kreweras_image(complement_312(p)) != target:
            return False
    return True


def beta_diagram_check(n: int) -> bool:
    """The triangle linking the extraction complement and the Kreweras
    complement commutes pointwise."""
    for p in enumerate_partitions(n, "NCCP312"):
        expected = kreweras_complement(kreweras_image(p))
        if extraction_complement(p).partition != expected:
            return False
    return True


# --- symmetry and rotation --------------------------------------------------


def _reflect(i: int, n: int) -> int:
    m = (2 - i) % n
    return m if m else n


def is_symmetric(p: Partition) -> bool:
    """True when the chord picture is invariant under the reflection fixing
    point 1 (axis through point n/2+1 for even n, through the midpoint of
    (n+1)/2 and (n+3)/2 for odd n)."""
    _require_ncp(p)
    blocks = {frozenset(b) for b in p.blocks}
    mirrored = {
        frozenset(_reflect(i, p.n) for i in b) for b in p.blocks
    }
    return blocks == mirrored


def rotate_labels(p: Partition) -> Partition:
    """Relabel i to i-1 cyclically (1 wraps to n) and reorder blocks
    canonically; the square of the Kreweras complement."""
    n = p.n
    return canonical_ncp(
        n, ({(i - 2) % n + 1 for i in block} for block in p.blocks)
    )


# --- text export ------------------------------------------------------------


def presentation_text(p: Partition, mode: str = "region") -> str:
    """Plain-text rendering of a circular presentation: the clockwise point
    sequence, the solid chords of the input, and the dashed chords of its
    complement image drawn on the primed points."""
    if mode == "region":
        pres = CircularPresentation(p, clockwise_primes=False)
        image = region_complement(p)
    elif mode == "kreweras":
        pres = CircularPresentation(p, clockwise_primes=True)
        image = kreweras_complement(p)
    else:
        raise ValueError(f"unknown mode {mode!r}; expected region or kreweras")
    points = []
    for i in range(1, pres.n + 1):
        points.append(str(i))
        points.append(f"{pres._prime_after(i)}'")
    lines = [
        f"circle n={pres.n} mode={mode}",
        "clockwise: " + " ".join(points),
    ]
    for u, v in pres.chords:
        lines.append(f"solid {u}-{v}")
    for block in image.blocks:
        if len(block) < 2:
            continue
        for u, v in zip(block, block[1:]):
            lines.append(f"dashed {u}'-{v}'")
        if len(block) > 2:
            lines.append(f"dashed {block[-1]}'-{block[0]}'")
    return "\n".join(lines)
