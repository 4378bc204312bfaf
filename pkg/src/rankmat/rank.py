"""Type matrices, rank variants, GF(2) graph cut-rank, and monadic d-types."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from . import caps
from .structures import MonadicStructure, Structure, qf_type

__all__ = [
    "TypeMatrix",
    "MonadicTypeMatrix",
    "Graph",
    "type_matrix",
    "matrix_ranks",
    "distinct_row_rank",
    "gf2_rank",
    "graph_cut_rank",
    "monadic_d_type",
    "element_d_type",
    "monadic_type_matrix",
    "monadic_matrix_distinct_rows",
    "reference_rank",
    "union_rank_table",
    "smallest_prime_at_least",
    "canonical_key",
    "generic_matrix_ranks",
]


@dataclass(frozen=True)
class TypeMatrix:
    X: frozenset
    m: int
    rows: tuple  # row index: tuples in X^m
    cols: tuple  # column index: tuples in complement^m
    table: tuple  # tuple of row tuples of value ids
    values: tuple  # value id -> QfType


def type_matrix(s: Structure, X: Iterable[int], m: int) -> TypeMatrix:
    if m < 1:
        raise ValueError("m must be >= 1")
    X = frozenset(X)
    inside = sorted(X)
    outside = sorted(set(s.universe()) - X)
    n_rows = len(inside) ** m
    n_cols = len(outside) ** m
    caps.check("matrix_cells", n_rows * n_cols, "type matrix")
    rows = tuple(product(inside, repeat=m))
    cols = tuple(product(outside, repeat=m))
    # two-pass canonical ids: collect, sort, assign
    cells = {}
    seen = set()
    for r in rows:
        for c in cols:
            ty = qf_type(s, r + c)
            cells[(r, c)] = ty
            seen.add(ty)
    ordered = sorted(seen, key=lambda ty: ty.sort_key())
    ids = {ty: i for i, ty in enumerate(ordered)}
    table = tuple(tuple(ids[cells[(r, c)]] for c in cols) for r in rows)
    return TypeMatrix(X, m, rows, cols, table, tuple(ordered))


def smallest_prime_at_least(n: int) -> int:
    candidate = max(n, 2)
    while True:
        if all(candidate % d for d in range(2, int(candidate**0.5) + 1)):
            return candidate
        candidate += 1


def _field_rank(table: Sequence[Sequence[int]], p: int) -> int:
    rows = [list(row) for row in table]
    if not rows or not rows[0]:
        return 0
    n_cols = len(rows[0])
    rank = 0
    col = 0
    r = 0
    while r < len(rows) and col < n_cols:
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            col += 1
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p:
                factor = rows[i][col]
                rows[i] = [(a - factor * b) % p for a, b in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        col += 1
    return rank


def matrix_ranks(M: TypeMatrix):
    """(distinct_rows, distinct_cols, field_rank over GF(p), p smallest
    prime >= number of distinct values)."""
    return generic_matrix_ranks(M.table, len(M.rows), len(M.cols), len(M.values))


def generic_matrix_ranks(table, n_rows: int, n_cols: int, n_values: int):
    distinct_rows = len({tuple(row) for row in table}) if n_rows else 0
    if n_rows and n_cols == 0:
        distinct_rows = 1
    cols = [tuple(table[r][c] for r in range(n_rows)) for c in range(n_cols)]
    distinct_cols = len(set(cols)) if n_cols else 0
    if n_cols and n_rows == 0:
        distinct_cols = 1
    p = smallest_prime_at_least(max(n_values, 1))
    field_rank = _field_rank(table, p)
    return distinct_rows, distinct_cols, field_rank


def distinct_row_rank(s: Structure, X: Iterable[int], m: int = 1) -> int:
    """Cut-rank of X as the number of distinct rows of its type matrix."""
    return matrix_ranks(type_matrix(s, X, m))[0]


@dataclass(frozen=True)
class Graph:
    """Simple undirected loop-free graph."""

    n: int
    edges: frozenset  # frozenset of frozenset pairs

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"edge {set(e)} is not a 2-set (loops/directed input rejected)")
            if any(not (0 <= v < self.n) for v in e):
                raise ValueError(f"edge {set(e)} out of range")

    @staticmethod
    def make(n: int, edges: Iterable) -> "Graph":
        return Graph(n, frozenset(frozenset(e) for e in edges))

    def adjacent(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges

    def to_structure(self) -> Structure:
        from .structures import Vocabulary

        rel = set()
        for e in self.edges:
            u, v = tuple(e)
            rel.add((u, v))
            rel.add((v, u))
        return Structure.make(Vocabulary((("E", 2),)), self.n, {"E": rel})


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of rows given as int bitsets."""
    rank = 0
    basis = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
            rank += 1
    return rank


def graph_cut_rank(g: Graph, X: Iterable[int]) -> int:
    X = frozenset(X)
    outside = sorted(set(range(g.n)) - X)
    rows = []
    for u in sorted(X):
        row = 0
        for j, v in enumerate(outside):
            if g.adjacent(u, v):
                row |= 1 << j
        rows.append(row)
    return gf2_rank(rows)


def _monadic_atomic(ms: MonadicStructure, subsets: tuple, residues: Sequence[int] = ()):
    facts = set()
    k = len(subsets)
    for name, arity, tuples in ms.relations:
        for idx in product(range(k), repeat=arity):
            if tuple(subsets[i] for i in idx) in tuples:
                facts.add(("rel", name, idx))
    for i in range(k):
        for j in range(k):
            if subsets[i] & ~subsets[j] == 0:
                facts.add(("subseteq", i, j))
            if subsets[i] == subsets[j]:
                facts.add(("eq", i, j))
    for q in residues:
        for i in range(k):
            facts.add(("residue", q, i, bin(subsets[i]).count("1") % q))
    return frozenset(facts)


def monadic_d_type(ms: MonadicStructure, subsets: Sequence[int], d: int, residues: Sequence[int] = ()):
    """Depth-d type of a tuple of subsets; hashable canonical value."""
    subsets = tuple(subsets)
    if d < 0:
        raise ValueError("d must be >= 0")
    if d == 0:
        return ("atoms", _monadic_atomic(ms, subsets, residues))
    below = monadic_d_type(ms, subsets, d - 1, residues)
    reachable = frozenset(
        monadic_d_type(ms, subsets + (z,), d - 1, residues) for z in ms.subsets()
    )
    return ("step", below, reachable)


def element_d_type(s: Structure, elements: Sequence[int], d: int, subsets: tuple = ()):
    """Depth-d type of an element tuple under set quantification.

    Coordinates are the original elements followed by set parameters; each
    depth extends by one arbitrary subset.  Atoms treat an element a and
    the singleton {a} interchangeably: relation facts fire on coordinates
    that denote single elements, and containment/equality facts compare
    coordinates as sets.
    """
    elements = tuple(elements)
    coords = [frozenset((a,)) for a in elements] + [
        frozenset(i for i in range(s.universe_size) if z >> i & 1) for z in subsets
    ]
    if d == 0:
        k = len(coords)
        facts = set()
        for name, arity in s.vocabulary.relations:
            rel = s.relation(name)
            for idx in product(range(k), repeat=arity):
                picked = [coords[i] for i in idx]
                if all(len(c) == 1 for c in picked):
                    t = tuple(next(iter(c)) for c in picked)
                    if t in rel:
                        facts.add(("rel", name, idx))
        for i in range(k):
            for j in range(k):
                if coords[i] <= coords[j]:
                    facts.add(("subseteq", i, j))
                if coords[i] == coords[j]:
                    facts.add(("eq", i, j))
        return ("atoms", frozenset(facts))
    below = element_d_type(s, elements, d - 1, subsets)
    reachable = frozenset(
        element_d_type(s, elements, d - 1, subsets + (z,))
        for z in range(1 << s.universe_size)
    )
    return ("step", below, reachable)


def canonical_key(value) -> str:
    """Deterministic, platform-stable sort key for nested type values."""
    if isinstance(value, frozenset):
        return "{" + ",".join(sorted(canonical_key(v) for v in value)) + "}"
    if isinstance(value, tuple):
        return "(" + ",".join(canonical_key(v) for v in value) + ")"
    if value is None:
        return "_"
    if isinstance(value, bool):
        return "#" + str(int(value))
    if isinstance(value, int):
        return "%020d" % value
    return "s" + str(value)


@dataclass(frozen=True)
class MonadicTypeMatrix:
    X: frozenset
    d: int
    m: int
    rows: tuple
    cols: tuple
    table: tuple
    values: tuple


def _subsets_of(mask_bits: Sequence[int]):
    bits = list(mask_bits)
    for choice in range(1 << len(bits)):
        sub = 0
        for i, b in enumerate(bits):
            if choice >> i & 1:
                sub |= 1 << b
        yield sub


def monadic_type_matrix(ms: MonadicStructure, X: Iterable[int], d: int, m: int,
                        residues: Sequence[int] = ()) -> MonadicTypeMatrix:
    X = frozenset(X)
    caps.check("monadic_matrix_mn", m * ms.universe_size, "monadic type matrix")
    inside = sorted(X)
    outside = sorted(set(range(ms.universe_size)) - X)
    rows = tuple(product(tuple(_subsets_of(inside)), repeat=m))
    cols = tuple(product(tuple(_subsets_of(outside)), repeat=m))
    cells = {}
    seen = set()
    for r in rows:
        for c in cols:
            union = tuple(a | b for a, b in zip(r, c))
            ty = monadic_d_type(ms, union, d, residues)
            cells[(r, c)] = ty
            seen.add(ty)
    ordered = sorted(seen, key=canonical_key)
    ids = {ty: i for i, ty in enumerate(ordered)}
    table = tuple(tuple(ids[cells[(r, c)]] for c in cols) for r in rows)
    return MonadicTypeMatrix(X, d, m, rows, cols, table, tuple(ordered))


def monadic_matrix_distinct_rows(M: MonadicTypeMatrix) -> int:
    if not M.rows:
        return 0
    if not M.cols:
        return 1
    return len({row for row in M.table})


def _validate_linear_order(s: Structure):
    if len(s.vocabulary.relations) != 1:
        raise ValueError("linear order must have exactly one binary relation")
    name, arity = s.vocabulary.relations[0]
    if arity != 2:
        raise ValueError("linear order relation must be binary")
    rel = s.relation(name)
    n = s.universe_size
    order = sorted(range(n), key=lambda x: sum((x, y) in rel for y in range(n)), reverse=True)
    expected = {(order[i], order[j]) for i in range(n) for j in range(i, n)}
    if rel != frozenset(expected):
        raise ValueError("relation is not a total order")
    return order


def _validate_equivalence(s: Structure):
    if len(s.vocabulary.relations) != 1:
        raise ValueError("equivalence must have exactly one binary relation")
    name, arity = s.vocabulary.relations[0]
    if arity != 2:
        raise ValueError("equivalence relation must be binary")
    rel = s.relation(name)
    n = s.universe_size
    for x in range(n):
        if (x, x) not in rel:
            raise ValueError("not reflexive")
    for x, y in rel:
        if (y, x) not in rel:
            raise ValueError("not symmetric")
    for x, y in rel:
        for z in range(n):
            if (y, z) in rel and (x, z) not in rel:
                raise ValueError("not transitive")
    classes = []
    seen = set()
    for x in range(n):
        if x not in seen:
            cls = frozenset(y for y in range(n) if (x, y) in rel)
            classes.append(cls)
            seen |= cls
    return classes


def reference_rank(kind: str, s, X: Iterable[int]) -> int:
    """Reference cut-rank oracle for special instance classes."""
    X = frozenset(X)
    if kind == "linear_order":
        order = _validate_linear_order(s)
        intervals = 0
        previous = False
        for x in order:
            inside = x in X
            if inside and not previous:
                intervals += 1
            previous = inside
        return intervals
    if kind == "equivalence":
        classes = _validate_equivalence(s)
        return sum(1 for c in classes if 0 < len(c & X) < len(c))
    if kind == "preorder_blocks":
        from .trees import blocks

        return len(blocks(s, X))
    if kind == "grid":
        n = s.n if isinstance(s, Graph) else s.universe_size
        return min(len(X), n - len(X))
    raise ValueError(f"unknown reference kind {kind!r}")


def union_rank_table(instances: Iterable, rank_cap: int,
                     rank_fn: Optional[Callable] = None, m: int = 1) -> dict:
    """Empirical map: max(rank X, rank Y) bucket -> max observed rank(X u Y).

    instances yields (structure, X, Y) triples.
    """
    if rank_fn is None:
        rank_fn = lambda s, X: distinct_row_rank(s, X, m)
    table: dict = {}
    for s, X, Y in instances:
        X, Y = frozenset(X), frozenset(Y)
        bucket = max(rank_fn(s, X), rank_fn(s, Y))
        if bucket > rank_cap:
            continue
        union_rank = rank_fn(s, X | Y)
        table[bucket] = max(table.get(bucket, 0), union_rank)
    return table
