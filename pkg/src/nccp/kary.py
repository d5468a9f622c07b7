"""Labeled k-ary trees, height sequences, chain decompositions, tilings.

A labeled k-ary tree on ``n`` nodes has labels ``1..n`` increasing away
from the root, and every node carries ``k`` child slots indexed
``p = 1..k`` **counted from the right** (slot ``k`` is the planar
leftmost, slot ``1`` the rightmost).  Reading the free slots of a tree
in planar left-to-right order gives the insertion positions that encode
a tree as a *height sequence* ``h = (h_1, ..., h_n)`` with ``h_1 = 0``
and ``0 <= h_i <= (k-1)(i-1)``: node ``i`` occupies the slot ``h_i``
places from the right among the free slots of the partial tree on
``1..i-1``.

``chi`` splits a k-ary tree into ``k-1`` labeled binary trees whose
word partitions form a weakly increasing chain; ``chi_inv`` rebuilds
the k-ary tree from such a chain.  The same data is realized
geometrically by ``tiling_from_height``: a cover-inclusive tiling by
ribbon tiles above the staircase path ``(U D^{k-1})^n``, whose
trajectory weights recover ``h``.  ``chain_to_tiling`` composes the two
pictures, sending a weakly increasing chain of ``k-1`` partitions to a
``(k-1)``-Dyck tiling; non-trivial tiles appear exactly when the chain
leaves the 312-avoiding sublattice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache, cached_property
from itertools import product
from math import comb

from .lattice import MAX_HASSE_N, leq
from .partitions import Partition
from .trees import (
    EMPTY_MARKS,
    LabeledBinaryTree,
    is_canonical_tree,
    partition_from_tree,
    tree_from_partition,
)

# Enumeration of all tilings of a given size is exhaustive; this cap keeps
# the cached tables to at most a few hundred thousand entries.
MAX_TILING_TABLE = 200_000


# ---------------------------------------------------------------------------
# labeled k-ary trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LabeledKAryTree:
    """An increasing labeled tree with ``k`` ordered child slots per node.

    ``entries[i] = (label, children)`` where ``children`` is a k-tuple and
    ``children[p-1]`` is the child hanging from the ``p``-slot (``p``
    counted from the right, so ``children[-1]`` is the leftmost child).
    """

    k: int
    entries: tuple[tuple[int, tuple[int | None, ...]], ...]

    @staticmethod
    def from_dict(
        k: int, children: dict[int, tuple[int | None, ...]]
    ) -> "LabeledKAryTree":
        entries = tuple(
            (label, tuple(children[label])) for label in sorted(children)
        )
        return LabeledKAryTree(k, entries)

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("arity k must be at least 2")
        labels = [e[0] for e in self.entries]
        n = len(labels)
        if labels != list(range(1, n + 1)):
            raise ValueError("labels must be exactly 1..n")
        child_of: dict[int, int] = {}
        for label, slots in self.entries:
            if len(slots) != self.k:
                raise ValueError(f"node {label} must have {self.k} slots")
            for child in slots:
                if child is None:
                    continue
                if child <= label:
                    raise ValueError(
                        f"label {child} below {label}: labels must increase "
                        "downward"
                    )
                if child in child_of:
                    raise ValueError(f"label {child} has two parents")
                child_of[child] = label
        if n and 1 in child_of:
            raise ValueError("label 1 must be the root")
        if len(child_of) != n - 1:
            raise ValueError("tree must be connected")

    # -- basic structure ----------------------------------------------

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def root(self) -> int:
        return 1

    @cached_property
    def children(self) -> dict[int, tuple[int | None, ...]]:
        return {label: slots for label, slots in self.entries}

    @cached_property
    def parent_slot(self) -> dict[int, tuple[int, int]]:
        """label -> (parent, p) for every non-root label."""
        out: dict[int, tuple[int, int]] = {}
        for label, slots in self.entries:
            for idx, child in enumerate(slots):
                if child is not None:
                    out[child] = (label, idx + 1)
        return out

    def child(self, label: int, p: int) -> int | None:
        if not 1 <= p <= self.k:
            raise ValueError(f"slot index {p} out of range 1..{self.k}")
        return self.children[label][p - 1]

    def subtree_labels(self, label: int) -> frozenset[int]:
        out = {label}
        stack = [label]
        while stack:
            node = stack.pop()
            for child in self.children[node]:
                if child is not None:
                    out.add(child)
                    stack.append(child)
        return frozenset(out)

    def free_slots(self) -> tuple[tuple[int, int], ...]:
        """All empty (node, p) slots in planar left-to-right order.

        The planar order visits, at each node, the slots from leftmost
        (``p = k``) to rightmost (``p = 1``), descending into occupied
        slots.  A tree on ``n`` nodes exposes ``(k-1)n + 1`` free slots.
        """
        out: list[tuple[int, int]] = []

        def walk(node: int) -> None:
            for p in range(self.k, 0, -1):
                child = self.children[node][p - 1]
                if child is None:
                    out.append((node, p))
                else:
                    walk(child)

        if self.entries:
            walk(self.root)
        return tuple(out)

    # -- serialization -------------------------------------------------

    def to_text(self) -> str:
        """Render as ``label(c_k,...,c_1)``: slots left-to-right, ``·`` holes."""

        def render(node: int | None) -> str:
            if node is None:
                return "·"
            slots = self.children[node]
            if all(child is None for child in slots):
                return str(node)
            inner = ",".join(render(slots[p - 1]) for p in range(self.k, 0, -1))
            return f"{node}({inner})"

        return render(self.root)

    def __str__(self) -> str:
        return self.to_text()


def parse_kary(text: str, k: int) -> LabeledKAryTree:
    """Inverse of ``to_text``: ``label(c_k,...,c_1)`` with ``·`` holes."""
    text = text.replace(" ", "")
    pos = 0
    children: dict[int, tuple[int | None, ...]] = {}

    def parse_node() -> int | None:
        nonlocal pos
        if pos < len(text) and text[pos] in EMPTY_MARKS:
            pos += 1
            return None
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"expected a label at position {start} of {text!r}")
        label = int(text[start:pos])
        slots: list[int | None] = [None] * k
        if pos < len(text) and text[pos] == "(":
            pos += 1
            for p in range(k, 0, -1):
                slots[p - 1] = parse_node()
                expected = "," if p > 1 else ")"
                if pos >= len(text) or text[pos] != expected:
                    raise ValueError(
                        f"expected {expected!r} at position {pos} of {text!r}"
                    )
                pos += 1
        children[label] = tuple(slots)
        return label

    parse_node()
    if pos != len(text):
        raise ValueError(f"trailing text at position {pos} of {text!r}")
    return LabeledKAryTree.from_dict(k, children)


# ---------------------------------------------------------------------------
# height sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeightSequence:
    """Insertion positions ``h`` of a labeled k-ary tree (``k`` = arity)."""

    h: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", tuple(self.h))
        if self.k < 2:
            raise ValueError("arity k must be at least 2")
        if not self.h:
            raise ValueError("height sequence must be non-empty")
        for i, value in enumerate(self.h, start=1):
            if not 0 <= value <= (self.k - 1) * (i - 1):
                raise ValueError(
                    f"h_{i} = {value} outside 0..{(self.k - 1) * (i - 1)}"
                )

    @property
    def n(self) -> int:
        return len(self.h)

    def __iter__(self):
        return iter(self.h)

    def __len__(self) -> int:
        return len(self.h)

    def __getitem__(self, idx):
        return self.h[idx]


def height_sequence(tree: LabeledKAryTree) -> HeightSequence:
    """Free-slot position (from the right) of each label at insertion time."""
    heights = [0]
    partial: dict[int, list[int | None]] = {1: [None] * tree.k}
    for label in range(2, tree.n + 1):
        snapshot = LabeledKAryTree.from_dict(
            tree.k, {lab: tuple(slots) for lab, slots in partial.items()}
        )
        slots = snapshot.free_slots()
        parent, p = tree.parent_slot[label]
        position = slots.index((parent, p))
        heights.append(len(slots) - 1 - position)
        partial[parent][p - 1] = label
        partial[label] = [None] * tree.k
    return HeightSequence(tuple(heights), tree.k)


def tree_from_height(h, k: int | None = None) -> LabeledKAryTree:
    """Inverse of ``height_sequence``."""
    if isinstance(h, HeightSequence):
        seq = h
    else:
        if k is None:
            raise ValueError("k is required when h is a plain sequence")
        seq = HeightSequence(tuple(h), k)
    children: dict[int, list[int | None]] = {1: [None] * seq.k}
    for label in range(2, seq.n + 1):
        snapshot = LabeledKAryTree.from_dict(
            seq.k, {lab: tuple(slots) for lab, slots in children.items()}
        )
        slots = snapshot.free_slots()
        parent, p = slots[len(slots) - 1 - seq.h[label - 1]]
        children[parent][p - 1] = label
        children[label] = [None] * seq.k
    return LabeledKAryTree.from_dict(
        seq.k, {lab: tuple(slots) for lab, slots in children.items()}
    )


def enumerate_kary_trees(n: int, k: int):
    """All labeled k-ary trees on ``n`` nodes, in height-sequence order."""
    if n < 1:
        raise ValueError("n must be positive")
    ranges = [range((k - 1) * i + 1) for i in range(n)]
    for values in product(*ranges):
        yield tree_from_height(HeightSequence(values, k))


def count_labeled_kary_trees(n: int, k: int) -> int:
    """``prod_{j=0}^{n-1} ((k-1)j + 1)`` labeled k-ary trees on n nodes."""
    out = 1
    for j in range(n):
        out *= (k - 1) * j + 1
    return out


def count_canonical_kary_trees(n: int, k: int) -> int:
    """Fuss-Catalan count ``C(kn+1, n) / (kn+1)`` of canonical k-ary trees."""
    return comb(k * n + 1, n) // (k * n + 1)


def is_canonical_kary(tree: LabeledKAryTree) -> bool:
    """True when every label ``l+1`` sits weakly right of label ``l``.

    ``l+1`` is weakly right of ``l`` when it lies in the subtree of ``l``
    or, at the branch point of their root paths, hangs from a slot with a
    smaller index (slots are counted from the right).
    """
    for small in range(1, tree.n):
        large = small + 1
        path_small = _path_to_root(tree, small)
        path_large = _path_to_root(tree, large)
        if small in path_large:
            continue
        if large in path_small:
            return False
        set_small = set(path_small)
        meet = next(x for x in path_large if x in set_small)
        branch_small = path_small[path_small.index(meet) - 1]
        branch_large = path_large[path_large.index(meet) - 1]
        p_small = tree.parent_slot[branch_small][1]
        p_large = tree.parent_slot[branch_large][1]
        if p_large >= p_small:
            return False
    return True


def _path_to_root(tree: LabeledKAryTree, label: int) -> tuple[int, ...]:
    path = [label]
    while path[-1] != tree.root:
        path.append(tree.parent_slot[path[-1]][0])
    return tuple(path)


# ---------------------------------------------------------------------------
# chain decomposition chi and its inverse
# ---------------------------------------------------------------------------


def _right_bottom(children: dict[int, list[int | None]], node: int) -> int:
    while children[node][1] is not None:
        node = children[node][1]
    return node


def _planar_side(
    tree: LabeledKAryTree, m: int, p: int, x: int
) -> tuple[str, bool]:
    """Planar side of node ``x`` relative to the leaf at slot ``p`` of ``m``.

    Climb from ``x`` until the parent hop lands on ``m`` or on the root
    path of ``m``; compare the branch slot of ``x`` there against the
    leaf path's slot (``p`` at ``m`` itself, the path slot at a proper
    ancestor).  Returns ``("L" or "R", inside)`` where ``inside`` tells
    whether ``x`` belongs to the k-ary subtree of ``m``.
    """
    parent_slot = tree.parent_slot
    path = {}
    node = m
    while node != tree.root:
        parent, slot = parent_slot[node]
        path[parent] = slot
        node = parent
    node = x
    while True:
        parent, slot = parent_slot[node]
        if parent == m:
            return ("L" if slot > p else "R"), True
        if parent in path:
            return ("L" if slot > path[parent] else "R"), False
        node = parent


def _left_insert_target(
    children: dict[int, list[int | None]],
    tree: LabeledKAryTree,
    i: int,
    m: int,
    p: int,
) -> int:
    """Node whose left slot receives the new label in component ``i``.

    The candidates are the nodes with a free left slot inside the left
    subtree of ``m``, read in word order; when there are none the label
    attaches directly below ``m``.  The scan walks the candidates in
    order and stops by comparing each candidate ``x`` and its successor
    ``y`` against the planar position of the new leaf:

    * ``x`` inside the subtree of ``m``: move on when ``y`` is planar
      left of the leaf -- unless ``x`` hangs from a slot right of ``p``
      and carries the larger label -- or when ``y`` is planar right but
      hangs from a slot left of component ``i`` while ``x`` is planar
      left; otherwise stop at ``x``.
    * ``x`` outside the subtree of ``m``: move on exactly when both
      ``x`` and ``m`` hang from slots left of ``p``.
    """
    order: list[int] = []
    stack: list[int] = []
    node = children[m][0]
    while stack or node is not None:
        if node is not None:
            stack.append(node)
            node = children[node][0]
        else:
            node = stack.pop()
            order.append(node)
            node = children[node][1]
    cands = [c for c in order if children[c][0] is None]
    if not cands:
        return m
    parent_slot = tree.parent_slot
    m_slot = parent_slot[m][1] if m != tree.root else None
    for x, y in zip(cands, cands[1:]):
        q_x = parent_slot[x][1]
        x_side, x_inside = _planar_side(tree, m, p, x)
        if x_inside:
            y_side, _ = _planar_side(tree, m, p, y)
            if y_side == "L":
                skip = not (q_x < p and x > y)
            else:
                skip = parent_slot[y][1] > i and x_side == "L"
        else:
            skip = q_x > p and m_slot is not None and m_slot > p
        if not skip:
            return x
    return cands[-1]


def chi(tree: LabeledKAryTree) -> tuple[LabeledBinaryTree, ...]:
    """Split a k-ary tree into ``k-1`` binary trees forming a chain.

    Component ``i`` (1-based) re-inserts the labels in increasing order:
    a label hanging from slot ``p`` of parent ``m`` extends the right
    chain below ``m`` when ``p <= i`` and otherwise attaches by a left
    edge at the target picked by ``_left_insert_target``.
    """
    out = []
    for i in range(1, tree.k):
        children: dict[int, list[int | None]] = {1: [None, None]}
        for label in range(2, tree.n + 1):
            m, p = tree.parent_slot[label]
            if p <= i:
                target = _right_bottom(children, m)
                side = 1
            else:
                target = _left_insert_target(children, tree, i, m, p)
                side = 0
            if children[target][side] is not None:
                raise AssertionError(
                    f"slot clash inserting {label} in component {i}"
                )
            children[target][side] = label
            children[label] = [None, None]
        out.append(
            LabeledBinaryTree.from_dict(
                {lab: (slots[0], slots[1]) for lab, slots in children.items()}
            )
        )
    return tuple(out)


def chi_inv(components) -> LabeledKAryTree:
    """Rebuild the k-ary tree from the ``k-1`` binary trees of a chain.

    For every node the label sets of its k-ary subtrees are the
    successive differences of its right-subtree label sets across the
    components; the leftover (beyond the last component) fills the
    leftmost slot.  Raises ``ValueError`` when the components are not
    the image of any k-ary tree.
    """
    ds = tuple(components)
    if not ds:
        raise ValueError("need at least one binary tree")
    k = len(ds) + 1
    n = ds[0].n
    if any(d.n != n for d in ds):
        raise ValueError("components have inconsistent label sets")
    children: dict[int, tuple[int | None, ...]] = {}

    def solve(v: int, labels: frozenset[int]) -> None:
        right_sets = []
        for d in ds:
            rc = d.right(v)
            full = d.subtree_labels(rc) if rc is not None else frozenset()
            right_sets.append(full & labels)
        for a, b in zip(right_sets, right_sets[1:]):
            if not a <= b:
                raise ValueError(
                    "components are not a chain image: right subtrees of "
                    f"{v} do not nest"
                )
        parts = [right_sets[0]]
        for a, b in zip(right_sets, right_sets[1:]):
            parts.append(b - a)
        parts.append(labels - {v} - right_sets[-1])
        slots: list[int | None] = [None] * k
        for idx, part in enumerate(parts):
            if not part:
                continue
            child = min(part)
            if child <= v:
                raise ValueError(
                    f"components are not a chain image: {child} cannot "
                    f"hang below {v}"
                )
            slots[idx] = child
            solve(child, part)
        children[v] = tuple(slots)

    solve(1, frozenset(range(1, n + 1)))
    tree = LabeledKAryTree.from_dict(k, children)
    if chi(tree) != ds:
        raise ValueError("components are not the image of any k-ary tree")
    return tree


def chi_partition_chain(tree: LabeledKAryTree) -> tuple[Partition, ...]:
    """Word partitions of the ``chi`` components, bottom to top."""
    return tuple(partition_from_tree(d) for d in chi(tree))


def height_additivity_check(tree: LabeledKAryTree) -> bool | None:
    """Compare ``h(tree)`` with the slot-wise sum over ``chi`` components.

    Only applicable when consecutive labels are adjacent (label ``i+1``
    hangs directly below label ``i`` for every ``i``); returns ``None``
    otherwise.  For applicable trees the heights are additive.
    """
    for label in range(2, tree.n + 1):
        if tree.parent_slot[label][0] != label - 1:
            return None
    total = [0] * tree.n
    for component in chi(tree):
        for idx, value in enumerate(_binary_heights(component)):
            total[idx] += value
    return tuple(total) == height_sequence(tree).h


def _binary_heights(tree: LabeledBinaryTree) -> tuple[int, ...]:
    """Height sequence of a binary tree (arity-2 reading of the slots)."""
    as_kary = LabeledKAryTree.from_dict(
        2,
        {label: (right, left) for label, (left, right) in tree.children.items()},
    )
    return height_sequence(as_kary).h


# ---------------------------------------------------------------------------
# cover-inclusive Dyck tilings
# ---------------------------------------------------------------------------


Cell = tuple[int, int]


def _floor(x: int, q: int) -> int:
    """Lowest row usable in column ``x`` above the staircase ``(U D^q)^n``."""
    return x // q + 1


def _course(cells: frozenset[Cell]) -> tuple[Cell, ...]:
    """Order ribbon cells from the east end, stepping west or south."""
    start = max(cells, key=lambda c: (c[1], c[0]))
    out = [start]
    seen = {start}
    while len(out) < len(cells):
        x, y = out[-1]
        for step in ((x - 1, y), (x, y - 1)):
            if step in cells and step not in seen:
                out.append(step)
                seen.add(step)
                break
        else:
            raise ValueError(f"cells {sorted(cells)} do not form a ribbon")
    return tuple(out)


def _is_ribbon_tile(cells: frozenset[Cell], q: int) -> bool:
    """True when the cells trace out ``(W^q S)^s`` read from the east end."""
    try:
        course = _course(cells)
    except ValueError:
        return False
    moves = [
        "W" if b[0] == a[0] - 1 else "S"
        for a, b in zip(course, course[1:])
    ]
    if any(
        abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1 for a, b in zip(course, course[1:])
    ):
        return False
    pattern = ("W" * q + "S") * (len(moves) // (q + 1))
    return "".join(moves) == pattern and len(cells) % (q + 1) == 1


@dataclass(frozen=True)
class KDyckTiling:
    """A cover-inclusive tiling by ribbons above ``mu0 = (U D^k)^n``.

    Here ``k`` is the *tile parameter*: every tile of size ``s`` covers
    ``(k+1)s + 1`` cells whose centers trace a path with ``s`` up steps
    and ``ks`` down steps.  A tree of arity ``a`` corresponds to the
    tiling with parameter ``k = a - 1``.  Cells are addressed by their
    lower-left corner ``(x, y)`` with ``mu0`` starting at the origin.
    """

    k: int
    n: int
    tiles: tuple[frozenset[Cell], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "tiles",
            tuple(
                sorted(
                    (frozenset(t) for t in self.tiles),
                    key=lambda t: sorted(t),
                )
            ),
        )
        q = self.k
        if q < 1:
            raise ValueError("tile parameter must be at least 1")
        for tile in self.tiles:
            if not _is_ribbon_tile(tile, q):
                raise ValueError(f"invalid ribbon tile {sorted(tile)}")
        cells: set[Cell] = set()
        for tile in self.tiles:
            if cells & tile:
                raise ValueError("tiles overlap")
            cells |= tile
        columns: dict[int, list[int]] = {}
        for x, y in cells:
            columns.setdefault(x, []).append(y)
        top_profile = []
        for x in range(q * (self.n - 1)):
            ys = sorted(columns.get(x, []))
            base = _floor(x, q)
            if ys and ys != list(range(base, base + len(ys))):
                raise ValueError(f"column {x} is not filled from the floor")
            if ys and (ys[0] < base or ys[-1] >= self.n):
                raise ValueError(f"column {x} leaves the staircase band")
            top_profile.append(base + len(ys))
        if any(x < 0 or x >= q * (self.n - 1) for x, _ in cells):
            raise ValueError("cells outside the staircase band")
        for a, b in zip(top_profile, top_profile[1:]):
            if b < a:
                raise ValueError("upper boundary is not a lattice path")
        self._check_cover_inclusive()

    def _check_cover_inclusive(self) -> None:
        for tile in self.tiles:
            shifted = {(x + 1, y - 1) for x, y in tile}
            if any(shifted <= other for other in self.tiles):
                continue
            if all(y < _floor(x, self.k) for x, y in shifted):
                continue
            raise ValueError(
                f"tile {sorted(tile)} breaks cover-inclusiveness"
            )

    # -- structure -----------------------------------------------------

    @cached_property
    def cells(self) -> frozenset[Cell]:
        out: set[Cell] = set()
        for tile in self.tiles:
            out |= tile
        return frozenset(out)

    def size_of(self, tile: frozenset[Cell]) -> int:
        return (len(tile) - 1) // (self.k + 1)

    def count_nontrivial(self) -> int:
        return sum(1 for tile in self.tiles if self.size_of(tile) > 0)

    @cached_property
    def trajectories(self) -> dict[int, tuple[frozenset[Cell], ...]]:
        """Tiles grouped by the up step their glued ribbon lines reach.

        Each tile carries a line from its east edge to its south-most
        west edge; lines whose endpoints meet belong to one trajectory.
        The east end of a trajectory, translated southeast along the
        diagonal, lands on an up step of ``mu0``; that step indexes the
        trajectory.
        """
        q = self.k
        east_point: dict[frozenset[Cell], Cell] = {}
        west_point: dict[frozenset[Cell], Cell] = {}
        for tile in self.tiles:
            course = _course(tile)
            x0, y0 = course[0]
            x1, y1 = course[-1]
            east_point[tile] = (x0 + 1, y0)
            west_point[tile] = (x1, y1)
        by_east = {point: tile for tile, point in east_point.items()}
        successor: dict[frozenset[Cell], frozenset[Cell]] = {}
        has_predecessor: set[frozenset[Cell]] = set()
        for tile, point in west_point.items():
            nxt = by_east.get(point)
            if nxt is not None:
                successor[tile] = nxt
                has_predecessor.add(nxt)
        out: dict[int, list[frozenset[Cell]]] = {}
        for tile in self.tiles:
            if tile in has_predecessor:
                continue
            x, y = east_point[tile]
            numerator = x + y + 1 + q
            if numerator % (q + 1):
                raise ValueError(
                    f"trajectory east end {x, y} misses every up step"
                )
            i = numerator // (q + 1)
            p = y - i + 1
            if not (1 <= i <= self.n and p >= 0):
                raise ValueError(
                    f"trajectory east end {x, y} misses every up step"
                )
            chain = [tile]
            while chain[-1] in successor:
                chain.append(successor[chain[-1]])
            out.setdefault(i, []).extend(chain)
        return {i: tuple(tiles) for i, tiles in sorted(out.items())}

    def height(self) -> HeightSequence:
        q = self.k
        heights = [0] * self.n
        for i, tiles in self.trajectories.items():
            heights[i - 1] = sum(q * self.size_of(t) + 1 for t in tiles)
        return HeightSequence(tuple(heights), q + 1)

    # -- serialization -------------------------------------------------

    def to_ascii(self) -> str:
        """Rows from the top; tiles shown as letters, dots off-region."""
        q = self.k
        width = max(q * (self.n - 1), 1)
        symbol: dict[Cell, str] = {}
        alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
        for idx, tile in enumerate(self.tiles):
            mark = alphabet[idx % len(alphabet)]
            for cell in tile:
                symbol[cell] = mark
        rows = []
        for y in range(self.n - 1, 0, -1):
            row = "".join(symbol.get((x, y), ".") for x in range(width))
            rows.append(row)
        return "\n".join(rows)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "tiles": [sorted(tile) for tile in self.tiles],
        }

    @staticmethod
    def from_json(payload: str | dict) -> "KDyckTiling":
        data = json.loads(payload) if isinstance(payload, str) else payload
        return KDyckTiling(
            int(data["k"]),
            int(data["n"]),
            tuple(
                frozenset((int(x), int(y)) for x, y in tile)
                for tile in data["tiles"]
            ),
        )


def _enumerate_decompositions(
    region: frozenset[Cell], q: int
):
    """All partitions of ``region`` into ribbon tiles, via repeated peeling
    of the tile holding the top-right cell."""
    if not region:
        yield ()
        return
    anchor = max(region, key=lambda c: (c[1], c[0]))
    x, y = anchor
    tile = [anchor]
    while True:
        yield_tile = frozenset(tile)
        rest = region - yield_tile
        for tail in _enumerate_decompositions(rest, q):
            yield (yield_tile,) + tail
        # extend by one more (W^q S) block if it stays inside the region
        block = []
        cx, cy = tile[-1]
        ok = True
        for _ in range(q):
            cx -= 1
            if (cx, cy) not in region:
                ok = False
                break
            block.append((cx, cy))
        if ok:
            cy -= 1
            if (cx, cy) not in region:
                ok = False
            else:
                block.append((cx, cy))
        if not ok:
            return
        tile.extend(block)


@cache
def tiling_table(n: int, k: int) -> dict[tuple[int, ...], KDyckTiling]:
    """Every tiling of size ``n`` with tree arity ``k``, keyed by height.

    Exhaustively enumerates all cover-inclusive tilings above the
    staircase and certifies the bijection at build time: the number of
    tilings must equal the number of height sequences and no two
    tilings may share one.
    """
    if k < 2:
        raise ValueError("tree arity k must be at least 2")
    q = k - 1
    expected = count_labeled_kary_trees(n, k)
    if expected > MAX_TILING_TABLE:
        raise ValueError(f"tiling table for n={n}, k={k} is too large")
    width = q * (n - 1)
    table: dict[tuple[int, ...], KDyckTiling] = {}

    def columns(x: int, profile: tuple[int, ...]):
        if x == width:
            cells = frozenset(
                (cx, cy)
                for cx, top in enumerate(profile)
                for cy in range(_floor(cx, q), top)
            )
            for tiles in _enumerate_decompositions(cells, q):
                try:
                    tiling = KDyckTiling(q, n, tiles)
                except ValueError:
                    continue
                key = tiling.height().h
                if key in table:
                    raise AssertionError(
                        f"height {key} produced by two tilings"
                    )
                table[key] = tiling
            return
        lowest = max(_floor(x, q), profile[-1] if profile else 0)
        for top in range(lowest, n + 1):
            columns(x + 1, profile + (top,))

    columns(0, ())
    if len(table) != expected:
        raise AssertionError(
            f"enumerated {len(table)} tilings for n={n}, k={k}; "
            f"expected {expected}"
        )
    return table


def tiling_from_height(h, k: int | None = None) -> KDyckTiling:
    """The unique cover-inclusive tiling whose trajectory weights are ``h``."""
    if isinstance(h, HeightSequence):
        seq = h
    else:
        if k is None:
            raise ValueError("k is required when h is a plain sequence")
        seq = HeightSequence(tuple(h), k)
    return tiling_table(seq.n, seq.k)[seq.h]


def height_from_tiling(tiling: KDyckTiling) -> HeightSequence:
    """Trajectory weights of a tiling (inverse of ``tiling_from_height``)."""
    return tiling.height()


def has_nontrivial_tiles(h, k: int | None = None) -> bool:
    """True iff some consecutive heights satisfy ``h_i + (k-1) < h_{i+1}``.

    Agrees with directly inspecting the tiling for a tile of positive
    size.
    """
    if isinstance(h, HeightSequence):
        seq = h
    else:
        if k is None:
            raise ValueError("k is required when h is a plain sequence")
        seq = HeightSequence(tuple(h), k)
    return any(
        a + seq.k - 1 < b for a, b in zip(seq.h, seq.h[1:])
    )


# ---------------------------------------------------------------------------
# chains of partitions <-> tilings
# ---------------------------------------------------------------------------


def chain_to_tiling(chain) -> KDyckTiling:
    """Send a weakly increasing chain of ``m`` partitions to an m-Dyck tiling.

    The chain of ``m`` partitions on ``[n]`` is read as the image of a
    ``(m+1)``-ary tree: each partition becomes a binary tree, the k-ary
    tree is rebuilt, and its height sequence is realized as a tiling
    with tile parameter ``m``.  Raises ``ValueError`` when the
    partitions do not form a chain in the rotation order.
    """
    parts = tuple(chain)
    if not parts:
        raise ValueError("chain must contain at least one partition")
    n = parts[0].n
    if any(p.n != n for p in parts):
        raise ValueError("chain mixes ground set sizes")
    if n <= MAX_HASSE_N:
        for a, b in zip(parts, parts[1:]):
            if not leq(a, b):
                raise ValueError(f"{a} is not below {b}: not a chain")
    trees = [tree_from_partition(p) for p in parts]
    kary = chi_inv(trees)
    return tiling_from_height(height_sequence(kary))


def chain_from_tiling(tiling: KDyckTiling) -> tuple[Partition, ...]:
    """Inverse of ``chain_to_tiling``."""
    kary = tree_from_height(tiling.height())
    return chi_partition_chain(kary)
