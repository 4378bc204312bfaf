"""Finite relational structures and quantifier-free types.

Elements are dense integer ids 0..n-1.  Partial tuples use ``None`` for
undefined coordinates.  A quantifier-free type records which coordinates
are defined, which are equal, and which atomic relation facts hold; two
tuples get equal types exactly when they satisfy the same quantifier-free
formulas.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from . import caps

__all__ = [
    "Vocabulary",
    "Structure",
    "QfType",
    "MonadicStructure",
    "LocalTypeIndex",
    "qf_type",
    "possible_type_count",
    "singleton_lifting",
    "induced_local_type",
    "local_type_index",
    "composition_tables",
    "compositionality_check",
    "all_partial_tuples",
]


@dataclass(frozen=True)
class Vocabulary:
    """Relation names with arities; max_arity is derived (0 when empty)."""

    relations: tuple

    def __post_init__(self):
        names = [name for name, _ in self.relations]
        if len(set(names)) != len(names):
            raise ValueError("duplicate relation names")
        for name, arity in self.relations:
            if arity < 1:
                raise ValueError(f"relation {name!r} has arity {arity} < 1")

    @property
    def max_arity(self) -> int:
        return max((arity for _, arity in self.relations), default=0)

    def arity(self, name: str) -> int:
        for rel, arity in self.relations:
            if rel == name:
                return arity
        raise KeyError(name)


@dataclass(frozen=True)
class Structure:
    vocabulary: Vocabulary
    universe_size: int
    interpretation: tuple  # tuple of (name, frozenset of tuples), vocab order

    def __post_init__(self):
        declared = dict(self.vocabulary.relations)
        seen = dict(self.interpretation)
        if set(seen) != set(declared):
            raise ValueError("interpretation must cover exactly the vocabulary")
        for name, tuples in self.interpretation:
            arity = declared[name]
            for t in tuples:
                if len(t) != arity:
                    raise ValueError(f"tuple {t} has wrong arity for {name}")
                if any(not (0 <= x < self.universe_size) for x in t):
                    raise ValueError(f"tuple {t} out of range in {name}")

    @staticmethod
    def make(vocabulary, universe_size, interpretation: dict) -> "Structure":
        items = tuple(
            (name, frozenset(map(tuple, interpretation.get(name, ()))))
            for name, _ in vocabulary.relations
        )
        return Structure(vocabulary, universe_size, items)

    def relation(self, name: str) -> frozenset:
        for rel, tuples in self.interpretation:
            if rel == name:
                return tuples
        raise KeyError(name)

    def universe(self) -> range:
        return range(self.universe_size)


@dataclass(frozen=True)
class QfType:
    """Canonical quantifier-free type of a partial tuple.

    ``mask`` marks defined coordinates; ``equality`` maps each defined
    coordinate to the least coordinate equal to it; ``facts`` holds the
    (relation, coordinate-index tuple) atoms that are true.
    """

    mask: tuple
    equality: tuple
    facts: frozenset

    def sort_key(self):
        return (self.mask, self.equality, tuple(sorted(self.facts)))


def qf_type(s: Structure, t: Sequence[Optional[int]]) -> QfType:
    k = len(t)
    for x in t:
        if x is not None and not (0 <= x < s.universe_size):
            raise ValueError(f"coordinate {x} out of range")
    mask = tuple(x is not None for x in t)
    equality = []
    for i in range(k):
        if t[i] is None:
            equality.append(None)
        else:
            equality.append(next(j for j in range(k) if t[j] == t[i]))
    defined = [i for i in range(k) if t[i] is not None]
    facts = set()
    for name, arity in s.vocabulary.relations:
        rel = s.relation(name)
        for idx in product(defined, repeat=arity):
            if tuple(t[i] for i in idx) in rel:
                facts.add((name, idx))
    return QfType(mask, tuple(equality), frozenset(facts))


def possible_type_count(vocabulary: Vocabulary, k: int) -> int:
    """Upper bound on distinct QfTypes of k-tuples: masks times equality
    partitions times fact subsets (a crude but finite syntactic count)."""
    bells = [1]
    triangle = [[1]]
    for i in range(1, k + 1):
        row = [triangle[-1][-1]]
        for x in triangle[-1]:
            row.append(row[-1] + x)
        triangle.append(row)
        bells.append(row[0])
    from math import comb

    total = 0

    for d in range(k + 1):  # number of defined coordinates
        masks = comb(k, d)
        partitions = bells[d]
        atoms = sum(d**arity for _, arity in vocabulary.relations)
        total += masks * partitions * (2**atoms)
    return total


@dataclass(frozen=True)
class MonadicStructure:
    """Structure whose relations take subset (bitmask) arguments."""

    universe_size: int
    relations: tuple  # tuple of (name, arity, frozenset of bitmask tuples)

    def __post_init__(self):
        caps.check("monadic_universe", self.universe_size, "monadic universe")
        full = (1 << self.universe_size) - 1
        names = [name for name, _, _ in self.relations]
        if len(set(names)) != len(names):
            raise ValueError("duplicate relation names")
        for name, arity, tuples in self.relations:
            for t in tuples:
                if len(t) != arity:
                    raise ValueError(f"bad arity in {name}")
                if any(m & ~full for m in t):
                    raise ValueError(f"bitmask out of range in {name}")

    def subsets(self) -> range:
        return range(1 << self.universe_size)


def singleton_lifting(s: Structure) -> MonadicStructure:
    rels = []
    for name, arity in s.vocabulary.relations:
        lifted = frozenset(
            tuple(1 << x for x in t) for t in s.relation(name)
        )
        rels.append((name, arity, lifted))
    return MonadicStructure(s.universe_size, tuple(rels))


def all_partial_tuples(elements: Sequence[int], k: int) -> Iterable[tuple]:
    """All partial k-tuples whose defined coordinates come from elements."""
    return product(tuple(elements) + (None,), repeat=k)


@dataclass(frozen=True)
class LocalTypeIndex:
    """Classes of partial k-tuples over X by behaviour inside the induced
    substructure: internal type plus the extended type-matrix row against
    every external parameter tuple of length 0..m."""

    X: frozenset
    k: int
    m: int
    classes: tuple  # tuple of (sorted tuple of member tuples), class id = index

    def class_of(self, t: tuple) -> int:
        for i, members in enumerate(self.classes):
            if t in members:
                return i
        raise KeyError(t)


def _external_tuples(s: Structure, X: frozenset, m: int) -> list:
    outside = sorted(set(s.universe()) - X)
    exts = []
    for ell in range(m + 1):
        exts.extend(product(outside, repeat=ell))
    return exts


def _local_key(s: Structure, t: tuple, exts: list):
    internal = qf_type(s, t).sort_key()
    row = tuple(qf_type(s, t + ext).sort_key() for ext in exts)
    return (internal, row)


def local_type_index(s: Structure, X: Iterable[int], k: int, m: int) -> LocalTypeIndex:
    X = frozenset(X)
    exts = _external_tuples(s, X, m)
    groups: dict = {}
    for t in all_partial_tuples(sorted(X), k):
        groups.setdefault(_local_key(s, t, exts), []).append(t)
    keyed = sorted(groups.items(), key=lambda item: item[0])
    classes = tuple(tuple(sorted(members, key=_tuple_sort_key)) for _, members in keyed)
    return LocalTypeIndex(X, k, m, classes)


def _tuple_sort_key(t: tuple):
    return tuple(-1 if x is None else x for x in t)


def induced_local_type(s: Structure, X: Iterable[int], t: Sequence[Optional[int]], m: Optional[int] = None) -> int:
    """Class id of the partial tuple t within the substructure induced on X."""
    X = frozenset(X)
    t = tuple(t)
    if m is None:
        m = max(s.vocabulary.max_arity, 1)
    if len(t) > m:
        raise ValueError("tuple longer than m")
    for x in t:
        if x is not None and x not in X:
            raise ValueError(f"coordinate {x} outside X")
    index = local_type_index(s, X, len(t), m)
    return index.class_of(t)


def _project(t: tuple, part: frozenset) -> tuple:
    return tuple(x if (x is not None and x in part) else None for x in t)


def _validate_partition(s: Structure, partition: Sequence[Iterable[int]]) -> list:
    parts = [frozenset(p) for p in partition]
    seen: set = set()
    for p in parts:
        if p & seen:
            raise ValueError("overlapping partition parts")
        seen |= p
    if seen != set(s.universe()):
        raise ValueError("partition does not cover the universe")
    return parts


def composition_tables(s: Structure, partition: Sequence[Iterable[int]], ell: int, m: int):
    """Per-part colourings of local types plus a composition table gamma.

    For every choice of ell distinct parts (in index order) and every
    partial m-tuple inside their union, gamma applied to the per-part
    projection colours reproduces the tuple's quantifier-free type.
    Returns (lambdas, gamma, colours) where lambdas[i] maps a local class
    id of part i to a globally unique colour.
    """
    parts = _validate_partition(s, partition)
    if ell < 1:
        raise ValueError("ell must be >= 1")
    indices = [local_type_index(s, p, m, m) for p in parts]
    lambdas = []
    colour = 0
    for i, idx in enumerate(indices):
        mapping = {}
        for class_id in range(len(idx.classes)):
            mapping[class_id] = colour
            colour += 1
        lambdas.append(mapping)
    colours = range(colour)

    from itertools import combinations

    gamma: dict = {}
    for chosen in combinations(range(len(parts)), ell):
        union = sorted(set().union(*(parts[i] for i in chosen)))
        for t in all_partial_tuples(union, m):
            key = tuple(
                lambdas[i][indices[i].class_of(_project(t, parts[i]))]
                for i in chosen
            )
            ty = qf_type(s, t)
            if key in gamma and gamma[key] != ty:
                raise AssertionError(
                    f"composition conflict at colours {key}: {t}"
                )
            gamma[key] = ty
    return lambdas, gamma, colours


def compositionality_check(s: Structure, partition: Sequence[Iterable[int]], m: int):
    """True iff the type of every partial m-tuple is determined by its
    per-part projected local types.  Returns (ok, counterexample)."""
    parts = _validate_partition(s, partition)
    indices = [local_type_index(s, p, m, m) for p in parts]
    seen: dict = {}
    for t in all_partial_tuples(range(s.universe_size), m):
        key = tuple(idx.class_of(_project(t, p)) for p, idx in zip(parts, indices))
        ty = qf_type(s, t)
        if key in seen and seen[key][0] != ty:
            return False, (seen[key][1], t)
        seen[key] = (ty, t)
    return True, None
