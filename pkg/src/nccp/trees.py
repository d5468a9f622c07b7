"""Labeled binary trees and the two partition/tree bijections.

A labeled binary tree on n nodes carries the labels 1..n, each once, strictly
increasing from the root towards every leaf.  Reading the labels in in-order
(left subtree, node, right subtree) gives a permutation, hence a partition by
cutting at descents; that map is ``partition_from_tree`` and it is invertible.

A tree is *canonical* when for every i the node i+1 is weakly right of the
node i (a descendant, or on the right-hand side of their lowest common
ancestor).  Canonical trees are counted by the Catalan numbers and correspond
exactly to the 312-avoiding partitions.

The second bijection, ``right_chain_partition``, erases the left edges of a
canonical tree; the connected right chains, sorted so block minima increase
right to left, form a noncrossing canonical partition.

Text form: ``label(left,right)`` with ``·`` (or ``.``) for an absent child,
e.g. ``1(3(8,4(7,·)),2(5,6))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .partitions import Partition

__all__ = [
    "LabeledBinaryTree",
    "partition_from_tree",
    "tree_from_partition",
    "is_canonical_tree",
    "right_chain_partition",
    "tree_from_right_chains",
    "kreweras_image",
    "kreweras_preimage",
    "parse_tree",
    "tree_to_dot",
]

EMPTY_MARKS = {"·", "."}


@dataclass(frozen=True)
class LabeledBinaryTree:
    """Immutable labeled binary tree.

    ``nodes`` maps each label to a ``(left, right)`` pair of child labels,
    with None for an absent child.  Stored as a sorted tuple of
    ``(label, left, right)`` triples so instances hash.
    """

    entries: tuple[tuple[int, int | None, int | None], ...]

    # -- construction --------------------------------------------------

    @staticmethod
    def from_dict(children: dict[int, tuple[int | None, int | None]]) -> "LabeledBinaryTree":
        entries = tuple(
            (label, children[label][0], children[label][1])
            for label in sorted(children)
        )
        return LabeledBinaryTree(entries)

    def __post_init__(self) -> None:
        labels = [e[0] for e in self.entries]
        n = len(labels)
        if labels != list(range(1, n + 1)):
            raise ValueError("labels must be exactly 1..n")
        child_of: dict[int, int] = {}
        for label, left, right in self.entries:
            for child in (left, right):
                if child is None:
                    continue
                if child <= label:
                    raise ValueError(
                        f"label {child} below {label}: labels must increase downward"
                    )
                if child in child_of:
                    raise ValueError(f"node {child} has two parents")
                child_of[child] = label
        if n and 1 in child_of:
            raise ValueError("node 1 must be the root")
        # all nodes except the root must have a parent (connectivity)
        if len(child_of) != n - 1:
            raise ValueError("tree is not connected")

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def root(self) -> int:
        return 1

    @cached_property
    def children(self) -> dict[int, tuple[int | None, int | None]]:
        return {label: (left, right) for label, left, right in self.entries}

    @cached_property
    def parent(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for label, left, right in self.entries:
            for child in (left, right):
                if child is not None:
                    out[child] = label
        return out

    def left(self, label: int) -> int | None:
        return self.children[label][0]

    def right(self, label: int) -> int | None:
        return self.children[label][1]

    def is_left_child(self, label: int) -> bool:
        p = self.parent.get(label)
        return p is not None and self.left(p) == label

    def is_right_child(self, label: int) -> bool:
        p = self.parent.get(label)
        return p is not None and self.right(p) == label

    def path_to_root(self, label: int) -> tuple[int, ...]:
        """Node labels from ``label`` up to and including the root."""
        path = [label]
        while path[-1] in self.parent:
            path.append(self.parent[path[-1]])
        return tuple(path)

    def left_ancestors(self, label: int) -> tuple[int, ...]:
        """Ancestors entered through a left edge on the way up from ``label``.

        The first entry is the nearest such ancestor.
        """
        out = []
        node = label
        while node in self.parent:
            p = self.parent[node]
            if self.left(p) == node:
                out.append(p)
            node = p
        return tuple(out)

    def left_chain_below(self, label: int) -> tuple[int, ...]:
        """Maximal chain of left edges downward, excluding ``label`` itself."""
        out = []
        node = self.left(label)
        while node is not None:
            out.append(node)
            node = self.left(node)
        return tuple(out)

    def right_chain_below(self, label: int) -> tuple[int, ...]:
        """Maximal chain of right edges downward, including ``label`` itself."""
        out = [label]
        node = self.right(label)
        while node is not None:
            out.append(node)
            node = self.right(node)
        return tuple(out)

    def subtree_labels(self, label: int) -> frozenset[int]:
        stack, seen = [label], set()
        while stack:
            node = stack.pop()
            seen.add(node)
            stack.extend(c for c in self.children[node] if c is not None)
        return frozenset(seen)

    def in_order(self) -> tuple[int, ...]:
        out: list[int] = []

        def walk(node: int | None) -> None:
            if node is None:
                return
            walk(self.left(node))
            out.append(node)
            walk(self.right(node))

        walk(self.root)
        return tuple(out)

    def count_right_edges(self) -> int:
        return sum(1 for _, _, right in self.entries if right is not None)

    def weakly_right(self, small: int, large: int) -> bool:
        """Is the node ``large`` weakly right of the node ``small``?

        True when ``large`` is a descendant of ``small`` or when, at their
        lowest common ancestor, ``small`` sits in the left subtree and
        ``large`` in the right one.  Assumes ``small < large`` so ``large``
        is never an ancestor of ``small``.
        """
        path_small = self.path_to_root(small)
        path_large = self.path_to_root(large)
        if small in path_large:
            return True
        if large in path_small:
            return False
        meet = next(x for x in path_large if x in set(path_small))
        small_side = path_small[path_small.index(meet) - 1]
        large_side = path_large[path_large.index(meet) - 1]
        return self.left(meet) == small_side and self.right(meet) == large_side

    # -- serialization -------------------------------------------------

    def to_text(self) -> str:
        def render(node: int | None) -> str:
            if node is None:
                return "·"
            left, right = self.children[node]
            if left is None and right is None:
                return str(node)
            return f"{node}({render(left)},{render(right)})"

        return render(self.root)

    def __str__(self) -> str:
        return self.to_text()


def parse_tree(text: str) -> LabeledBinaryTree:
    """Inverse of ``to_text``: parse ``label(left,right)`` with ``·`` holes."""
    text = text.replace(" ", "")
    pos = 0

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
        left = right = None
        if pos < len(text) and text[pos] == "(":
            pos += 1
            left = parse_node()
            if text[pos] != ",":
                raise ValueError(f"expected ',' at position {pos} of {text!r}")
            pos += 1
            right = parse_node()
            if text[pos] != ")":
                raise ValueError(f"expected ')' at position {pos} of {text!r}")
            pos += 1
        children[label] = (left, right)
        return label

    children: dict[int, tuple[int | None, int | None]] = {}
    parse_node()
    if pos != len(text):
        raise ValueError(f"trailing text at position {pos} of {text!r}")
    return LabeledBinaryTree.from_dict(children)


def tree_to_dot(tree: LabeledBinaryTree, name: str = "tree") -> str:
    """DOT export: solid edges to right children, dashed to left children."""
    lines = [f"digraph {name} {{"]
    for label, _, _ in tree.entries:
        lines.append(f"  n{label} [label=\"{label}\"];")
    for label, left, right in tree.entries:
        if right is not None:
            lines.append(f"  n{label} -> n{right};")
        if left is not None:
            lines.append(f"  n{label} -> n{left} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the in-order bijection
# ---------------------------------------------------------------------------


def partition_from_tree(tree: LabeledBinaryTree) -> Partition:
    """Read the labels in in-order and cut the word at descents."""
    return Partition.from_permutation(tree.in_order())


def tree_from_partition(partition: Partition) -> LabeledBinaryTree:
    """Inverse of ``partition_from_tree``.

    Built by inserting n into the tree of the word with n removed: n becomes
    a right child of its left neighbour when that neighbour is larger than
    the right one, else a left child of its right neighbour; at either end of
    the word it hangs off the first/last letter.
    """
    word = partition.to_permutation()

    def build(letters: tuple[int, ...]) -> dict[int, tuple[int | None, int | None]]:
        if len(letters) == 1:
            return {letters[0]: (None, None)}
        n_val = max(letters)
        i = letters.index(n_val)
        rest = letters[:i] + letters[i + 1 :]
        children = build(rest)

        def set_child(parent: int, side: int) -> None:
            pair = list(children[parent])
            pair[side] = n_val
            children[parent] = (pair[0], pair[1])

        if i == 0:
            set_child(rest[0], 0)
        elif i == len(letters) - 1:
            set_child(rest[-1], 1)
        elif letters[i - 1] > letters[i + 1]:
            set_child(letters[i - 1], 1)
        else:
            set_child(letters[i + 1], 0)
        children[n_val] = (None, None)
        return children

    return LabeledBinaryTree.from_dict(build(word))


def is_canonical_tree(tree: LabeledBinaryTree) -> bool:
    """Every node i+1 weakly right of node i."""
    return all(tree.weakly_right(i, i + 1) for i in range(1, tree.n))


# ---------------------------------------------------------------------------
# right chains and the Kreweras image
# ---------------------------------------------------------------------------


def right_chain_partition(tree: LabeledBinaryTree) -> Partition:
    """Erase left edges; the right chains, canonically ordered, are the blocks.

    Requires a canonical tree; the image is then noncrossing and canonical.
    """
    if not is_canonical_tree(tree):
        raise ValueError("right_chain_partition requires a canonical tree")
    chain_heads = [
        label
        for label, _, _ in tree.entries
        if not tree.is_right_child(label)
    ]
    blocks = [tree.right_chain_below(head) for head in chain_heads]
    blocks.sort(key=lambda b: -b[0])
    return Partition(tree.n, tuple(blocks))


def tree_from_right_chains(partition: Partition) -> LabeledBinaryTree:
    """Inverse of ``right_chain_partition`` on noncrossing canonical input.

    Each block becomes a right chain.  Chains are glued in increasing order
    of their minima: each chain head hangs by a left edge below the largest
    label already placed that is smaller than the head.
    """
    if not (partition.is_noncrossing() and partition.is_canonical()):
        raise ValueError("input must be a noncrossing canonical partition")
    children: dict[int, list[int | None]] = {
        x: [None, None] for x in range(1, partition.n + 1)
    }
    for block in partition.blocks:
        for a, b in zip(block, block[1:]):
            children[a][1] = b
    placed: list[int] = list(partition.blocks[-1])
    for block in reversed(partition.blocks[:-1]):
        anchor = max(x for x in placed if x < block[0])
        children[anchor][0] = block[0]
        placed.extend(block)
    return LabeledBinaryTree.from_dict(
        {k: (v[0], v[1]) for k, v in children.items()}
    )


def kreweras_image(partition: Partition) -> Partition:
    """The order isomorphism from 312-avoiding partitions onto noncrossing
    canonical ones (right chains of the in-order tree)."""
    if not partition.avoids(312):
        raise ValueError(f"{partition} contains a 312 pattern")
    return right_chain_partition(tree_from_partition(partition))


def kreweras_preimage(partition: Partition) -> Partition:
    """Inverse of ``kreweras_image``."""
    return partition_from_tree(tree_from_right_chains(partition))
