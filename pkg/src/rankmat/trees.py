"""Laminar trees, ternary encoding, subforests, orientations, and widths.

A laminar tree is a family of leaf subsets containing every singleton and
the full leaf set, any two members nested or disjoint.  By default every
internal node must have at least two children.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Optional, Sequence

from . import caps
from .structures import Structure, Vocabulary

__all__ = [
    "LaminarTree",
    "PartiallyOrderedTree",
    "LinearPreorder",
    "Block",
    "Orientation",
    "Obstruction",
    "Exceeded",
    "validate_tree",
    "ternary_encode",
    "ternary_decode",
    "subforests",
    "interesting_analysis",
    "min_boolean_combination",
    "group_orientation",
    "chosen_leaf",
    "document_preorder",
    "branching",
    "blocks",
    "rankwidth",
    "decomposition_width",
    "all_laminar_trees",
    "all_tree_shapes",
    "orientation_is_valid",
    "has_complete_binary_minor",
    "restrict_tree",
    "TERNARY",
]

TERNARY = Vocabulary((("T", 3),))


@dataclass(frozen=True)
class LaminarTree:
    leaves: frozenset
    nodes: frozenset  # frozenset of frozensets

    def children(self, node: frozenset) -> list:
        """Maximal proper subnodes, sorted by their sorted leaf lists."""
        proper = [x for x in self.nodes if x < node]
        out = [x for x in proper if not any(x < y for y in proper)]
        return sorted(out, key=lambda x: sorted(x))

    def internal_nodes(self) -> list:
        return sorted(
            (x for x in self.nodes if len(x) > 1), key=lambda x: (len(x), sorted(x))
        )

    def root(self) -> frozenset:
        return frozenset(self.leaves)

    def parent(self, node: frozenset) -> Optional[frozenset]:
        above = [x for x in self.nodes if node < x]
        if not above:
            return None
        return min(above, key=len)

    def least_node_containing(self, xs: Iterable) -> frozenset:
        xs = set(xs)
        candidates = [node for node in self.nodes if xs <= node]
        return min(candidates, key=len)


def validate_tree(family: Iterable[Iterable], leaves: Optional[Iterable] = None,
                  no_unary: bool = True) -> LaminarTree:
    nodes = frozenset(frozenset(x) for x in family)
    if leaves is None:
        leaves = frozenset().union(*nodes) if nodes else frozenset()
    leaves = frozenset(leaves)
    if not leaves:
        raise ValueError("tree must have at least one leaf")
    if leaves not in nodes:
        raise ValueError("full leaf set missing from the family")
    for leaf in leaves:
        if frozenset((leaf,)) not in nodes:
            raise ValueError(f"singleton {{{leaf!r}}} missing from the family")
    for node in nodes:
        if not node:
            raise ValueError("empty set is not a node")
        if not node <= leaves:
            raise ValueError(f"node {set(node)} contains non-leaves")
    for a, b in combinations(nodes, 2):
        if a & b and not (a <= b or b <= a):
            raise ValueError(f"crossing nodes {set(a)} and {set(b)}")
    tree = LaminarTree(leaves, nodes)
    if no_unary:
        for node in tree.internal_nodes():
            if len(tree.children(node)) < 2:
                raise ValueError(f"unary node {set(node)}")
    return tree


def ternary_encode(t: LaminarTree) -> Structure:
    """Structure with T(x,y,z) iff z lies in the least node containing x,y."""
    leaves = sorted(t.leaves)
    if leaves != list(range(len(leaves))):
        raise ValueError("ternary encoding needs leaves 0..n-1")
    rel = set()
    for x in leaves:
        for y in leaves:
            node = t.least_node_containing((x, y))
            for z in node:
                rel.add((x, y, z))
    return Structure.make(TERNARY, len(leaves), {"T": rel})


def ternary_decode(s: Structure) -> LaminarTree:
    if len(s.vocabulary.relations) != 1 or s.vocabulary.relations[0][1] != 3:
        raise ValueError("expected one ternary relation")
    name = s.vocabulary.relations[0][0]
    rel = s.relation(name)
    n = s.universe_size
    family = set()
    for x in range(n):
        for y in range(n):
            node = frozenset(z for z in range(n) if (x, y, z) in rel)
            if node:
                family.add(node)
    tree = validate_tree(family, leaves=range(n))
    if ternary_encode(tree).relation("T") != rel:
        raise ValueError("relation is not a ternary tree encoding")
    return tree


def subforests(t: LaminarTree) -> frozenset:
    """All nonempty unions of sibling subtrees, plus the full leaf set."""
    out = {t.root()}
    for node in t.internal_nodes():
        kids = t.children(node)
        for k in range(1, len(kids) + 1):
            for chosen in combinations(kids, k):
                out.add(frozenset().union(*chosen))
    return frozenset(out)


def _cuts(X: frozenset, Y: frozenset) -> bool:
    inter = X & Y
    return bool(inter) and inter != Y


def interesting_analysis(t: LaminarTree, X: Iterable):
    """Interesting nodes of X, the longest chain among them, and the
    maximum number of interesting children of a single node.

    A node Y is dull when it is a leaf, when X does not cut Y, or when
    some child Y' leaves X trivial on Y minus Y'; interesting otherwise.
    """
    X = frozenset(X)
    interesting = set()
    for node in t.nodes:
        if len(node) == 1:
            continue
        if not _cuts(X, node):
            continue
        dull = False
        for child in t.children(node):
            rest = node - child
            inter = X & rest
            if not inter or inter == rest:
                dull = True
                break
        if not dull:
            interesting.add(node)
    # longest chain under inclusion
    def chain_from(node):
        below = [x for x in interesting if x < node]
        return 1 + max((chain_from(x) for x in below), default=0)

    ell = max((chain_from(node) for node in interesting), default=0)
    d = 0
    for node in t.internal_nodes():
        kids = t.children(node)
        d = max(d, sum(1 for k in kids if k in interesting))
    return frozenset(interesting), ell, d


class Exceeded:
    """Sentinel: the boolean-combination search limit was exhausted."""

    def __repr__(self):
        return "Exceeded"

    def __eq__(self, other):
        return isinstance(other, Exceeded)

    def __hash__(self):
        return hash("Exceeded")


def min_boolean_combination(t: LaminarTree, X: Iterable, limit: int = 4):
    """Least number of subforests whose boolean combination is X; 0 for
    the empty set and the full leaf set; Exceeded past the limit."""
    caps.check("boolean_combination_limit", limit, "boolean combination limit")
    X = frozenset(X)
    if X == frozenset() or X == t.root():
        return 0
    forests = sorted(subforests(t), key=lambda f: (len(f), sorted(f)))
    leaves = sorted(t.leaves)
    for m in range(1, limit + 1):
        for chosen in combinations(forests, m):
            signatures: dict = {}
            ok = True
            for leaf in leaves:
                sig = tuple(leaf in f for f in chosen)
                member = leaf in X
                if sig in signatures and signatures[sig] != member:
                    ok = False
                    break
                signatures[sig] = member
            if ok:
                return m
    return Exceeded()


@dataclass(frozen=True)
class Orientation:
    modulus: int
    leaf_colours: tuple  # tuple of (leaf, colour)
    left_right: tuple  # tuple of (node, left child, right child)

    def colour(self, leaf):
        return dict(self.leaf_colours)[leaf]

    def left(self, node):
        for n, l, _ in self.left_right:
            if n == node:
                return l
        raise KeyError(node)

    def right(self, node):
        for n, _, r in self.left_right:
            if n == node:
                return r
        raise KeyError(node)


@dataclass(frozen=True)
class Obstruction:
    modulus: int
    node: frozenset


class _Blocked(Exception):
    def __init__(self, node):
        self.node = node


def group_orientation(t: LaminarTree, m: int = 4):
    """Colour leaves into Z_m so that at every internal node at least two
    children have subtree sums unique among the siblings; left/right are
    the first two unique-sum children ordered by sum.  Bottom-up dynamic
    programming over achievable sums; returns Obstruction at the lowest
    node admitting no valid colouring.
    """
    if m < 2:
        raise ValueError("group order must be >= 2")
    for node in t.internal_nodes():
        if len(t.children(node)) < 2:
            raise ValueError(f"unary node {set(node)}")

    achievable: dict = {}
    witness: dict = {}

    def compute(node) -> None:
        if len(node) == 1:
            achievable[node] = set(range(m))
            witness[node] = {s: None for s in range(m)}
            return
        kids = t.children(node)
        for kid in kids:
            compute(kid)
        sums: dict = {}
        for choice in product(*(sorted(achievable[k]) for k in kids)):
            counts: dict = {}
            for s in choice:
                counts[s] = counts.get(s, 0) + 1
            unique = sum(1 for s in choice if counts[s] == 1)
            if unique < 2:
                continue
            total = sum(choice) % m
            if total not in sums:
                sums[total] = choice
        achievable[node] = set(sums)
        witness[node] = sums
        if not sums:
            raise _Blocked(node)

    try:
        compute(t.root())
    except _Blocked as blocked:
        return Obstruction(m, blocked.node)

    leaf_colours: dict = {}
    left_right: dict = {}

    def assign(node, target: int) -> None:
        if len(node) == 1:
            (leaf,) = node
            leaf_colours[leaf] = target
            return
        kids = t.children(node)
        choice = witness[node][target]
        counts: dict = {}
        for s in choice:
            counts[s] = counts.get(s, 0) + 1
        unique_kids = [
            (s, kid) for s, kid in zip(choice, kids) if counts[s] == 1
        ]
        unique_kids.sort(key=lambda pair: pair[0])
        left_right[node] = (unique_kids[0][1], unique_kids[1][1])
        for s, kid in zip(choice, kids):
            assign(kid, s)

    root_target = min(achievable[t.root()])
    assign(t.root(), root_target)

    return Orientation(
        m,
        tuple(sorted(leaf_colours.items())),
        tuple(
            (node, lr[0], lr[1])
            for node, lr in sorted(left_right.items(), key=lambda kv: sorted(kv[0]))
        ),
    )


def orientation_is_valid(t: LaminarTree, o: Orientation) -> bool:
    """Post-hoc check: recompute sums and the uniqueness condition."""
    colours = dict(o.leaf_colours)

    def node_sum(node):
        return sum(colours[leaf] for leaf in node) % o.modulus

    for node in t.internal_nodes():
        kids = t.children(node)
        sums = [node_sum(k) for k in kids]
        unique = [k for k, s in zip(kids, sums) if sums.count(s) == 1]
        if len(unique) < 2:
            return False
        ordered = sorted(unique, key=node_sum)
        if o.left(node) != ordered[0] or o.right(node) != ordered[1]:
            return False
    return True


def chosen_leaf(t: LaminarTree, o: Orientation, node: frozenset):
    """Left child, then right children down to a leaf."""
    if len(node) == 1:
        raise ValueError("chosen_leaf needs a non-leaf node")
    current = o.left(node)
    while len(current) > 1:
        current = o.right(current)
    (leaf,) = current
    return leaf


@dataclass(frozen=True)
class PartiallyOrderedTree:
    tree: LaminarTree
    kinds: tuple  # tuple of (node, "ordered" | "unordered")
    orders: tuple  # tuple of (node, tuple of children in order), ordered nodes

    def __post_init__(self):
        kinds = dict(self.kinds)
        orders = dict(self.orders)
        for node in self.tree.internal_nodes():
            if node not in kinds:
                raise ValueError(f"missing kind for node {set(node)}")
            if kinds[node] == "ordered":
                order = orders.get(node)
                if order is None or sorted(order, key=lambda x: sorted(x)) != self.tree.children(node):
                    raise ValueError(f"bad child order at {set(node)}")

    def kind(self, node):
        return dict(self.kinds)[node]

    def order(self, node):
        return dict(self.orders)[node]


def document_preorder(pt: PartiallyOrderedTree) -> frozenset:
    """Pairs (x, y) with x <= y: reflexive pairs plus pairs whose least
    common ancestor is ordered with x's child before y's child."""
    t = pt.tree
    pairs = {(x, x) for x in t.leaves}
    for x in t.leaves:
        for y in t.leaves:
            if x == y:
                continue
            lca = t.least_node_containing((x, y))
            if pt.kind(lca) != "ordered":
                continue
            order = pt.order(lca)
            ix = next(i for i, c in enumerate(order) if x in c)
            iy = next(i for i, c in enumerate(order) if y in c)
            if ix < iy:
                pairs.add((x, y))
    return frozenset(pairs)


def branching(t: LaminarTree) -> int:
    """Largest k such that the complete binary tree of height k embeds as
    a leaf-restriction minor; Strahler-style dynamic programming."""

    def value(node) -> int:
        if len(node) == 1:
            return 0
        kids = [value(k) for k in t.children(node)]
        best = max(kids)
        if kids.count(best) >= 2:
            return best + 1
        return best

    return value(t.root())


def restrict_tree(t: LaminarTree, kept: Iterable) -> Optional[LaminarTree]:
    """Leaf-restriction minor: intersect nodes with the kept leaves and
    drop empties and duplicates."""
    kept = frozenset(kept)
    if not kept:
        return None
    family = {node & kept for node in t.nodes} - {frozenset()}
    return LaminarTree(kept, frozenset(family))


def has_complete_binary_minor(t: LaminarTree, k: int) -> bool:
    """Brute-force check used as the branching oracle on small trees."""

    def is_cbt(tree: LaminarTree, node: frozenset, height: int) -> bool:
        if height == 0:
            return len(node) == 1
        kids = tree.children(node)
        return len(kids) == 2 and all(is_cbt(tree, kid, height - 1) for kid in kids)

    if k == 0:
        return True
    leaves = sorted(t.leaves)
    for kept in combinations(leaves, 2**k):
        sub = restrict_tree(t, kept)
        if sub is not None and is_cbt(sub, sub.root(), k):
            return True
    return False


@dataclass(frozen=True)
class LinearPreorder:
    classes: tuple  # ordered tuple of frozensets

    def __post_init__(self):
        seen: set = set()
        for cls in self.classes:
            if not cls:
                raise ValueError("empty class")
            if cls & seen:
                raise ValueError("classes must be disjoint")
            seen |= cls

    @staticmethod
    def make(classes: Sequence[Iterable]) -> "LinearPreorder":
        return LinearPreorder(tuple(frozenset(c) for c in classes))

    def universe(self) -> frozenset:
        return frozenset().union(*self.classes)

    def class_index(self, x) -> int:
        for i, cls in enumerate(self.classes):
            if x in cls:
                return i
        raise KeyError(x)


@dataclass(frozen=True)
class Block:
    kind: str  # "full" | "empty" | "cut"
    start: int  # class index interval, inclusive
    end: int


def blocks(p: LinearPreorder, Y: Iterable) -> list:
    """Maximal full intervals, maximal empty intervals, and cut classes."""
    Y = frozenset(Y)
    statuses = []
    for cls in p.classes:
        inter = cls & Y
        if not inter:
            statuses.append("empty")
        elif inter == cls:
            statuses.append("full")
        else:
            statuses.append("cut")
    out = []
    i = 0
    while i < len(statuses):
        kind = statuses[i]
        if kind == "cut":
            out.append(Block("cut", i, i))
            i += 1
            continue
        j = i
        while j + 1 < len(statuses) and statuses[j + 1] == kind:
            j += 1
        out.append(Block(kind, i, j))
        i = j + 1
    return out


def all_laminar_trees(leaves: Sequence) -> Iterable[LaminarTree]:
    """All laminar trees (no unary nodes) on the given leaves, each once:
    the root's children are the blocks of a set partition, recursively."""
    leaves = sorted(leaves)

    def partitions(items: list) -> Iterable[list]:
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1:]
            yield [[first]] + part

    def trees(items: list) -> Iterable[frozenset]:
        if len(items) == 1:
            yield frozenset({frozenset(items)})
            return
        for part in partitions(items):
            if len(part) < 2:
                continue
            subtree_choices = [list(trees(block)) for block in part]
            for chosen in product(*subtree_choices):
                nodes = frozenset({frozenset(items)}).union(*chosen)
                yield nodes

    seen = set()
    for nodes in trees(list(leaves)):
        if nodes in seen:
            continue
        seen.add(nodes)
        yield LaminarTree(frozenset(leaves), nodes)


def all_tree_shapes(n: int) -> Iterable[LaminarTree]:
    """One laminar tree per unlabeled shape with exactly n leaves (no
    unary nodes); leaves are 0..n-1 assigned left to right."""

    def shapes(k: int):
        # multisets of child shapes, each child with >= 1 leaf, >= 2 children
        if k == 1:
            yield ("leaf",)
            return
        def multisets(total, min_key):
            # partitions of `total` leaves into >= 2 child shapes, each
            # child shape canonically keyed to avoid duplicates
            if total == 0:
                yield ()
                return
            # each child has at most k-1 leaves (at least two children)
            for size in range(1, min(total, k - 1) + 1):
                for child in shapes(size):
                    key = (size, child)
                    if key < min_key:
                        continue
                    for rest in multisets(total - size, key):
                        yield ((size, child),) + rest

        for ms in multisets(k, (0, ())):
            if len(ms) >= 2:
                yield ("node", ms)

    def realize(shape, start: int) -> tuple:
        if shape[0] == "leaf":
            leaf = frozenset((start,))
            return {leaf}, start + 1
        nodes: set = set()
        pos = start
        for size, child in shape[1]:
            sub, pos = realize(child, pos)
            nodes |= sub
        nodes.add(frozenset(range(start, pos)))
        return nodes, pos

    for shape in shapes(n):
        nodes, _ = realize(shape, 0)
        yield LaminarTree(frozenset(range(n)), frozenset(nodes))


def rankwidth(s, rank_fn: Callable, leaf_cap: Optional[int] = None):
    """Exhaustive minimum over laminar trees of the maximal node rank."""
    from .rank import Graph

    n = s.n if isinstance(s, Graph) else s.universe_size
    cap = leaf_cap if leaf_cap is not None else caps.get("rankwidth_universe")
    if n > cap:
        raise caps.CapExceeded(f"rankwidth universe {n} exceeds cap {cap}")
    best = None
    best_tree = None
    for tree in all_laminar_trees(range(n)):
        width = max(rank_fn(s, node) for node in tree.nodes)
        if best is None or width < best:
            best, best_tree = width, tree
    return best, best_tree


def decomposition_width(g, t: LaminarTree) -> int:
    """Maximal adhesion |{v outside X adjacent to X}| over nodes X."""
    from .rank import Graph

    if not isinstance(g, Graph):
        raise ValueError("decomposition_width expects a graph")
    if t.leaves != frozenset(range(g.n)):
        raise ValueError("tree leaves must equal the vertex set")
    width = 0
    for node in t.nodes:
        adhesion = {
            v
            for v in range(g.n)
            if v not in node and any(g.adjacent(u, v) for u in node)
        }
        width = max(width, len(adhesion))
    return width
