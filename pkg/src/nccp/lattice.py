"""Cover relation by tree rotation and the graded lattice built on it.

The cover relation is defined through a rotation surgery on labeled binary
trees: a triplet (pivot, anchor, chain subset) selects how the pivot's left
chain is split and re-merged into the anchor's right chain.  Each rotation
adds exactly one right edge, so the number of right edges is a rank function.
Join and meet are the least upper / greatest lower common bound, with a
deterministic canonical choice on the few pairs where the order admits
several incomparable extremal bounds.
The noncrossing canonical elements carry a second (refinement) order whose
covers are merges of two blocks; the right-chain bijection is an isomorphism
between the 312-avoiding sublattice and that refinement order.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cache, cached_property
from itertools import combinations

from .partitions import Partition, enumerate_partitions
from .trees import (
    LabeledBinaryTree,
    kreweras_image,
    partition_from_tree,
    tree_from_partition,
)

MAX_HASSE_N = 7


@dataclass(frozen=True, order=True)
class RotationTriplet:
    """A choice of rotation: the pivot node (a left child), an admissible
    anchor from its left-ancestor set, and a subset of its left chain."""

    n_label: int
    a_label: int
    s_labels: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "s_labels", frozenset(self.s_labels))

    def sort_key(self):
        return (self.n_label, self.a_label, tuple(sorted(self.s_labels)))


def _strictly_right_of_path(
    tree: LabeledBinaryTree, node: int, other: int
) -> bool:
    """True when other's root path branches off to the right of node's path."""
    p1 = tree.path_to_root(node)
    p2 = tree.path_to_root(other)
    s1 = set(p1)
    if other in s1 or node in set(p2):
        return False
    meet = next(x for x in p2 if x in s1)
    node_side = p1[p1.index(meet) - 1]
    other_side = p2[p2.index(meet) - 1]
    return tree.left(meet) == node_side and tree.right(meet) == other_side


def admissible_anchors(tree: LabeledBinaryTree, node: int) -> tuple[int, ...]:
    """Anchor candidates for a pivot: its left-ancestor set, truncated at the
    branch point when some smaller label lies strictly right of its path."""
    if not tree.is_left_child(node):
        raise ValueError(f"node {node} is not a left child")
    ls = tree.left_ancestors(node)
    order = tree.in_order()
    pos = {lab: i for i, lab in enumerate(order)}
    right_smaller = [
        m
        for m in range(1, node)
        if _strictly_right_of_path(tree, node, m)
    ]
    if not right_smaller:
        return ls
    leftmost = min(right_smaller, key=pos.__getitem__)
    path_set = set(tree.path_to_root(node))
    branch = next(x for x in tree.path_to_root(leftmost) if x in path_set)
    # anchors strictly above the branch node are forbidden; labels grow
    # downward along the path, so keep anchors with label >= branch label
    return tuple(v for v in ls if v >= branch)


def valid_triplets(tree: LabeledBinaryTree) -> set[RotationTriplet]:
    out: set[RotationTriplet] = set()
    for node in range(1, tree.n + 1):
        if not tree.is_left_child(node):
            continue
        anchors = admissible_anchors(tree, node)
        chain = tree.left_chain_below(node)
        for a in anchors:
            for r in range(len(chain) + 1):
                for sub in combinations(chain, r):
                    out.add(RotationTriplet(node, a, frozenset(sub)))
    return out


def _rotate_unchecked(
    tree: LabeledBinaryTree, nu: RotationTriplet
) -> LabeledBinaryTree:
    node, anchor, chosen = nu.n_label, nu.a_label, nu.s_labels
    children = {
        v: [tree.left(v), tree.right(v)] for v in range(1, tree.n + 1)
    }
    parent0 = tree.parent[node]
    first_chain = [node, *sorted(chosen)]
    second_chain = [
        parent0,
        *(m for m in tree.left_chain_below(node) if m not in chosen),
    ]
    for seq in (first_chain, second_chain):
        for x, y in zip(seq, seq[1:]):
            children[x][0] = y
        children[seq[-1]][0] = None

    def right_chain(start: int) -> list[int]:
        out = [start]
        while children[out[-1]][1] is not None:
            out.append(children[out[-1]][1])
        return out

    merged = sorted(right_chain(node) + right_chain(anchor))
    for x, y in zip(merged, merged[1:]):
        children[x][1] = y
    children[merged[-1]][1] = None
    return LabeledBinaryTree.from_dict(
        {v: (l, r) for v, (l, r) in children.items()}
    )


def rotate(tree: LabeledBinaryTree, nu: RotationTriplet) -> LabeledBinaryTree:
    """Apply one rotation; the result has exactly one more right edge."""
    if not (1 <= nu.n_label <= tree.n) or not tree.is_left_child(nu.n_label):
        raise ValueError(f"invalid pivot {nu.n_label}")
    if nu.a_label not in admissible_anchors(tree, nu.n_label):
        raise ValueError(f"anchor {nu.a_label} not admissible for pivot {nu.n_label}")
    if not nu.s_labels <= set(tree.left_chain_below(nu.n_label)):
        raise ValueError("chain subset not inside the pivot's left chain")
    return _rotate_unchecked(tree, nu)


def covers_with_triplets(
    partition: Partition,
) -> dict[Partition, tuple[RotationTriplet, ...]]:
    """Upper covers keyed to every triplet that realizes them."""
    tree = tree_from_partition(partition)
    found: dict[Partition, list[RotationTriplet]] = {}
    for nu in valid_triplets(tree):
        found.setdefault(
            partition_from_tree(_rotate_unchecked(tree, nu)), []
        ).append(nu)
    return {
        p: tuple(sorted(nus, key=RotationTriplet.sort_key))
        for p, nus in found.items()
    }


def covers(partition: Partition) -> set[Partition]:
    """Distinct partitions reachable by one rotation."""
    return set(covers_with_triplets(partition))


@cache
def _cover_maps(
    n: int,
) -> tuple[dict[Partition, frozenset[Partition]], dict[Partition, frozenset[Partition]]]:
    """(upward, downward) cover adjacency over the whole rank ``n`` poset."""
    if n > MAX_HASSE_N:
        raise ValueError(f"cover maps supported for n <= {MAX_HASSE_N}")
    up: dict[Partition, set[Partition]] = {}
    down: dict[Partition, set[Partition]] = {}
    for p in enumerate_partitions(n):
        up.setdefault(p, set())
        down.setdefault(p, set())
    for p in up:
        for q in covers(p):
            up[p].add(q)
            down[q].add(p)
    return (
        {p: frozenset(s) for p, s in up.items()},
        {p: frozenset(s) for p, s in down.items()},
    )


def _reachable(start: Partition, adjacency) -> set[Partition]:
    seen = {start}
    queue = deque([start])
    while queue:
        for q in adjacency[queue.popleft()]:
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def leq(p1: Partition, p2: Partition) -> bool:
    """Order relation: reachability along rotation covers."""
    if p1.n != p2.n:
        raise ValueError("partitions must have the same ground set")
    if p1 == p2:
        return True
    if p1.rank() >= p2.rank():
        return False
    up, _ = _cover_maps(p1.n)
    seen = {p1}
    queue = deque([p1])
    target_rank = p2.rank()
    while queue:
        cur = queue.popleft()
        for q in up[cur]:
            if q == p2:
                return True
            if q.rank() < target_rank and q not in seen:
                seen.add(q)
                queue.append(q)
    return False


# --- profiles of larger letters to the left/right --------------------------


@dataclass(frozen=True)
class RLProfile:
    """For each letter i < n, the sets of larger letters appearing to its
    left and to its right in one-line notation."""

    n: int
    lefts: tuple[frozenset[int], ...]
    rights: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.lefts) != self.n - 1 or len(self.rights) != self.n - 1:
            raise ValueError("profile must cover letters 1..n-1")
        for i in range(1, self.n):
            left, right = self.lefts[i - 1], self.rights[i - 1]
            expected = set(range(i + 1, self.n + 1))
            if left & right or left | right != expected:
                raise ValueError(f"letter {i}: sets must partition {{{i+1}..n}}")

    def left(self, i: int) -> frozenset[int]:
        return self.lefts[i - 1]

    def right(self, i: int) -> frozenset[int]:
        return self.rights[i - 1]


def rl_profile(partition: Partition) -> RLProfile:
    word = partition.to_permutation()
    pos = {v: k for k, v in enumerate(word)}
    lefts = []
    rights = []
    for i in range(1, partition.n):
        larger = range(i + 1, partition.n + 1)
        lefts.append(frozenset(j for j in larger if pos[j] < pos[i]))
        rights.append(frozenset(j for j in larger if pos[j] > pos[i]))
    return RLProfile(partition.n, tuple(lefts), tuple(rights))


def tree_from_rl(profile: RLProfile) -> LabeledBinaryTree:
    """Rebuild the tree whose in-order word realizes the profile.

    Letters are inserted from n down to 1; at each step the letters meant to
    sit left of i must form a prefix of the word built so far.
    """
    word = [profile.n] if profile.n else []
    for i in range(profile.n - 1, 0, -1):
        left = profile.left(i)
        k = len(left)
        if set(word[:k]) != left:
            raise ValueError(f"inconsistent profile at letter {i}")
        word.insert(k, i)
    return tree_from_partition(Partition.from_permutation(word))


# --- join and meet ---------------------------------------------------------


@cache
def _order_ideals(
    n: int,
) -> tuple[dict[Partition, frozenset[Partition]], dict[Partition, frozenset[Partition]]]:
    """Inclusive up-set and down-set of every element of the rank ``n`` poset."""
    up, down = _cover_maps(n)
    upsets = {p: frozenset(_reachable(p, up)) for p in up}
    downsets = {p: frozenset(_reachable(p, down)) for p in down}
    return upsets, downsets


def _extremal_bound(p1: Partition, p2: Partition, upward: bool) -> Partition:
    """Least common upper bound / greatest common lower bound.

    A handful of pairs (two joins and two meets at n = 4, more for larger n)
    have several incomparable minimal upper bounds or maximal lower bounds,
    so no true least/greatest bound exists.  For those the extremal bound
    nearest in rank with the lexicographically least word is chosen, keeping
    the operation total, deterministic and commutative.
    """
    if p1.n != p2.n:
        raise ValueError("partitions must have the same ground set")
    upsets, downsets = _order_ideals(p1.n)
    bounds = upsets if upward else downsets
    common = bounds[p1] & bounds[p2]
    extremal = [
        z
        for z in common
        if not any(w != z and z in bounds[w] for w in common)
    ]
    if len(extremal) == 1:
        return extremal[0]
    sign = 1 if upward else -1
    return min(extremal, key=lambda q: (sign * q.rank(), q.to_permutation()))


def join(p1: Partition, p2: Partition) -> Partition:
    """Least upper bound (canonical minimal upper bound when not unique)."""
    return _extremal_bound(p1, p2, upward=True)


def meet(p1: Partition, p2: Partition) -> Partition:
    """Greatest lower bound (canonical maximal lower bound when not unique)."""
    return _extremal_bound(p1, p2, upward=False)


def bottom_element(n: int) -> Partition:
    return Partition.from_permutation(range(n, 0, -1))


def top_element(n: int) -> Partition:
    return Partition.from_permutation(range(1, n + 1))


# --- the assembled diagram -------------------------------------------------


@dataclass(frozen=True, eq=False)
class HasseDiagram:
    """Immutable cover diagram over an indexed element list.

    Elements are indexed in the lexicographic order of their one-line words;
    ``edge_triplets`` records every rotation realizing each edge and
    ``edge_labels`` is filled in by the labeling pass.
    """

    n: int
    restricted: bool
    elements: tuple[Partition, ...]
    cover_edges: tuple[tuple[int, int], ...]
    edge_triplets: dict[tuple[int, int], tuple[RotationTriplet, ...]]
    edge_labels: dict[tuple[int, int], "object"] | None = None

    @cached_property
    def index(self) -> dict[Partition, int]:
        return {p: i for i, p in enumerate(self.elements)}

    @cached_property
    def bottom(self) -> int:
        return self.index[bottom_element(self.n)]

    @cached_property
    def top(self) -> int:
        return self.index[top_element(self.n)]

    @cached_property
    def upper(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {i: [] for i in range(len(self.elements))}
        for lo, hi in self.cover_edges:
            adj[lo].append(hi)
        return {i: tuple(sorted(v)) for i, v in adj.items()}

    @cached_property
    def lower(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {i: [] for i in range(len(self.elements))}
        for lo, hi in self.cover_edges:
            adj[hi].append(lo)
        return {i: tuple(sorted(v)) for i, v in adj.items()}

    def rank(self, idx: int) -> int:
        return self.elements[idx].rank()

    @cached_property
    def ranks(self) -> tuple[tuple[int, ...], ...]:
        rows: list[list[int]] = [[] for _ in range(self.n)]
        for i, p in enumerate(self.elements):
            rows[p.rank()].append(i)
        return tuple(tuple(r) for r in rows)

    def leq_idx(self, lo: int, hi: int) -> bool:
        if lo == hi:
            return True
        seen = {lo}
        queue = deque([lo])
        hi_rank = self.rank(hi)
        while queue:
            for q in self.upper[queue.popleft()]:
                if q == hi:
                    return True
                if self.rank(q) < hi_rank and q not in seen:
                    seen.add(q)
                    queue.append(q)
        return False

    def interval(self, lo: int, hi: int) -> tuple[int, ...]:
        above = {i for i in range(len(self.elements)) if self.leq_idx(lo, i)}
        return tuple(
            sorted(i for i in above if self.leq_idx(i, hi))
        )


def build_hasse(n: int, restrict_312: bool = False) -> HasseDiagram:
    """Build the full cover diagram (or the 312-avoiding sub-diagram)."""
    if not 1 <= n <= MAX_HASSE_N:
        raise ValueError(f"n must be between 1 and {MAX_HASSE_N}")
    family = "NCCP312" if restrict_312 else "NCCP"
    elements = tuple(enumerate_partitions(n, family))
    index = {p: i for i, p in enumerate(elements)}
    edges: list[tuple[int, int]] = []
    triplets: dict[tuple[int, int], tuple[RotationTriplet, ...]] = {}
    for p in elements:
        lo = index[p]
        for q, nus in covers_with_triplets(p).items():
            if q not in index:
                continue
            edges.append((lo, index[q]))
            triplets[(lo, index[q])] = nus
    return HasseDiagram(
        n=n,
        restricted=restrict_312,
        elements=elements,
        cover_edges=tuple(sorted(edges)),
        edge_triplets=triplets,
    )


# --- refinement order on noncrossing canonical partitions ------------------


def _canonical_order(blocks: frozenset[tuple[int, ...]], n: int) -> Partition:
    ordered = tuple(sorted(blocks, key=lambda b: -b[0]))
    return Partition(n, ordered)


def refinement_covers(lam: Partition) -> set[Partition]:
    """Merges of two blocks that stay noncrossing: the covers of the
    refinement order on noncrossing canonical partitions."""
    if not (lam.is_noncrossing() and lam.is_canonical()):
        raise ValueError("input must be a noncrossing canonical partition")
    out: set[Partition] = set()
    blocks = lam.blocks
    for i, j in combinations(range(len(blocks)), 2):
        merged = tuple(sorted(set(blocks[i]) | set(blocks[j])))
        rest = [b for k, b in enumerate(blocks) if k not in (i, j)]
        candidate = _canonical_order(frozenset([*rest, merged]), lam.n)
        if candidate.is_noncrossing():
            out.add(candidate)
    return out


def kreweras_iso_check(n: int) -> bool:
    """True when the right-chain bijection carries the 312-avoiding cover
    digraph edge-for-edge onto the refinement cover digraph."""
    source = list(enumerate_partitions(n, "NCCP312"))
    image = {p: kreweras_image(p) for p in source}
    if set(image.values()) != set(enumerate_partitions(n, "NCP")):
        return False
    rotation_edges = {
        (image[p], image[q])
        for p in source
        for q in covers(p)
        if q.avoids(312)
    }
    refinement_edges = {
        (lam, mu)
        for lam in image.values()
        for mu in refinement_covers(lam)
    }
    return rotation_edges == refinement_edges


# --- exports ---------------------------------------------------------------


def hasse_to_dot(diagram: HasseDiagram, label_mode: str | None = None) -> str:
    """DOT text, edges drawn bottom-to-top; label_mode in {None, 'ltilde',
    'pair'} controls the edge annotation (requires attached labels)."""
    if label_mode not in (None, "ltilde", "pair"):
        raise ValueError("label_mode must be None, 'ltilde' or 'pair'")
    if label_mode and diagram.edge_labels is None:
        raise ValueError("diagram has no labels attached")
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i, p in enumerate(diagram.elements):
        lines.append(f'  e{i} [label="{p}"];')
    for lo, hi in diagram.cover_edges:
        suffix = ""
        if label_mode:
            lab = diagram.edge_labels[(lo, hi)]
            text = lab.ltilde if label_mode == "ltilde" else f"({lab.refined[0]},{lab.refined[1]})"
            suffix = f' [label="{text}"]'
        lines.append(f"  e{lo} -> e{hi}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_to_json(diagram: HasseDiagram) -> str:
    payload = {
        "n": diagram.n,
        "restricted": diagram.restricted,
        "elements": [str(p) for p in diagram.elements],
        "edges": [[lo, hi] for lo, hi in diagram.cover_edges],
    }
    if diagram.edge_labels is not None:
        payload["labels"] = {
            f"{lo},{hi}": {
                "ltilde": lab.ltilde,
                "el": lab.el,
                "refined": list(lab.refined),
            }
            for (lo, hi), lab in sorted(diagram.edge_labels.items())
        }
    return json.dumps(payload, indent=2)
