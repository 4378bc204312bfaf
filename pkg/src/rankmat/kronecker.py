"""Matrices over finite semigroups, Kronecker products, normal forms,
finite-order detection, the 2x2 claim, and hypergraph Kronecker products."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from . import caps
from .semigroup import FiniteSemigroup

__all__ = [
    "SemigroupMatrix",
    "NormalForm",
    "Finite",
    "Unknown",
    "Hypergraph",
    "SemigroupHypergraph",
    "kronecker_product",
    "kronecker_power",
    "normal_form",
    "is_submatrix",
    "equivalent",
    "finite_order",
    "multiplication_matrix",
    "two_by_two_claim",
    "is_irredundant",
    "hypergraph_kron",
    "hypergraph_rank",
    "semigroup_hypergraph",
]


@dataclass(frozen=True)
class SemigroupMatrix:
    row_labels: tuple
    col_labels: tuple
    entries: tuple  # tuple of row tuples of element ids
    semigroup: Optional[FiniteSemigroup] = None

    def __post_init__(self):
        if len(self.entries) != len(self.row_labels):
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != len(self.col_labels):
                raise ValueError("column count mismatch")
            if self.semigroup is not None:
                for x in row:
                    if not (0 <= x < self.semigroup.size):
                        raise ValueError(f"entry {x} out of range")

    @staticmethod
    def make(entries: Sequence[Sequence[int]], semigroup: Optional[FiniteSemigroup] = None,
             row_labels: Optional[Sequence] = None,
             col_labels: Optional[Sequence] = None) -> "SemigroupMatrix":
        entries = tuple(tuple(row) for row in entries)
        rows = tuple(row_labels) if row_labels is not None else tuple(range(len(entries)))
        cols = (
            tuple(col_labels)
            if col_labels is not None
            else tuple(range(len(entries[0]) if entries else 0))
        )
        return SemigroupMatrix(rows, cols, entries, semigroup)

    def shape(self):
        return len(self.row_labels), len(self.col_labels)


def _same_domain(M: SemigroupMatrix, N: SemigroupMatrix) -> None:
    if M.semigroup != N.semigroup:
        raise ValueError("matrices over different semigroups are not comparable")


def kronecker_product(M1: SemigroupMatrix, M2: SemigroupMatrix) -> SemigroupMatrix:
    _same_domain(M1, M2)
    S = M1.semigroup
    if S is None:
        raise ValueError("Kronecker product needs a semigroup")
    rows = tuple(product(M1.row_labels, M2.row_labels))
    cols = tuple(product(M1.col_labels, M2.col_labels))
    entries = tuple(
        tuple(
            S.mult(M1.entries[r1][c1], M2.entries[r2][c2])
            for c1 in range(len(M1.col_labels))
            for c2 in range(len(M2.col_labels))
        )
        for r1 in range(len(M1.row_labels))
        for r2 in range(len(M2.row_labels))
    )
    return SemigroupMatrix(rows, cols, entries, S)


def kronecker_power(M: SemigroupMatrix, n: int) -> SemigroupMatrix:
    if n < 1:
        raise ValueError("power must be >= 1")
    out = M
    for _ in range(n - 1):
        out = kronecker_product(out, M)
    return out


@dataclass(frozen=True)
class NormalForm:
    matrix: SemigroupMatrix
    content_hash: str


def _dedup(entries: list) -> list:
    """Remove duplicate rows, then duplicate columns, to a fixpoint."""
    changed = True
    while changed:
        changed = False
        seen = set()
        rows = []
        for row in entries:
            key = tuple(row)
            if key in seen:
                changed = True
                continue
            seen.add(key)
            rows.append(list(row))
        entries = rows
        if entries:
            seen = set()
            keep = []
            for c in range(len(entries[0])):
                key = tuple(row[c] for row in entries)
                if key in seen:
                    changed = True
                    continue
                seen.add(key)
                keep.append(c)
            entries = [[row[c] for c in keep] for row in entries]
    return entries


def normal_form(M: SemigroupMatrix) -> NormalForm:
    entries = _dedup([list(row) for row in M.entries])
    # canonical order: sort rows by content, then columns, to a fixpoint
    changed = True
    while changed and entries:
        before = [tuple(row) for row in entries]
        entries = sorted(entries)
        cols = sorted(
            range(len(entries[0])), key=lambda c: tuple(row[c] for row in entries)
        )
        entries = [[row[c] for c in cols] for row in entries]
        changed = [tuple(row) for row in entries] != before
    entries = tuple(tuple(row) for row in entries)
    serial = ";".join(",".join(str(x) for x in row) for row in entries)
    import hashlib

    digest = hashlib.sha256(serial.encode()).hexdigest()
    matrix = SemigroupMatrix.make(entries, M.semigroup)
    return NormalForm(matrix, digest)


def is_submatrix(M: SemigroupMatrix, N: SemigroupMatrix) -> bool:
    """Injections of M's rows and columns into N preserving entries."""
    _same_domain(M, N)
    mr, mc = M.shape()
    nr, nc = N.shape()
    if mr > nr or mc > nc:
        return False

    def assign_rows(i: int, row_map: list, used: set) -> bool:
        if i == mr:
            return assign_cols(0, row_map, [], set())
        for r in range(nr):
            if r in used:
                continue
            row_map.append(r)
            used.add(r)
            if assign_rows(i + 1, row_map, used):
                return True
            row_map.pop()
            used.remove(r)
        return False

    def assign_cols(j: int, row_map: list, col_map: list, used: set) -> bool:
        if j == mc:
            return True
        for c in range(nc):
            if c in used:
                continue
            if all(M.entries[i][j] == N.entries[row_map[i]][c] for i in range(mr)):
                col_map.append(c)
                used.add(c)
                if assign_cols(j + 1, row_map, col_map, used):
                    return True
                col_map.pop()
                used.remove(c)
        return False

    return assign_rows(0, [], set())


def equivalent(M: SemigroupMatrix, N: SemigroupMatrix) -> bool:
    """Normal forms are isomorphic by entry-preserving bijections."""
    _same_domain(M, N)
    nm = normal_form(M).matrix
    nn = normal_form(N).matrix
    if nm.shape() != nn.shape():
        return False
    return is_submatrix(nm, nn)


@dataclass(frozen=True)
class Finite:
    index: int
    period: int


@dataclass(frozen=True)
class Unknown:
    row_counts: tuple  # distinct-row counts of the inspected powers


def finite_order(M: SemigroupMatrix, budget: int):
    """Iterate normal forms of Kronecker powers; a repeat certifies
    finite order, budget or size exhaustion yields Unknown."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    cap = caps.get("kronecker_normal_form")
    base = normal_form(M)
    history = [base]
    row_counts = [base.matrix.shape()[0]]
    for power in range(2, budget + 1):
        previous = history[-1]
        nr, nc = previous.matrix.shape()
        if max(nr, nc) > cap:
            return Unknown(tuple(row_counts))
        # dedup before multiplying keeps the powers small; duplicate rows
        # and columns of a factor stay duplicates of the product
        current = normal_form(kronecker_product(previous.matrix, base.matrix))
        row_counts.append(current.matrix.shape()[0])
        for j, past in enumerate(history):
            if past.matrix.shape() == current.matrix.shape() and (
                past.content_hash == current.content_hash
                or is_submatrix(past.matrix, current.matrix)
            ):
                return Finite(index=j + 1, period=power - (j + 1))
        history.append(current)
    return Unknown(tuple(row_counts))


def multiplication_matrix(S: FiniteSemigroup, B: Sequence[int], C: Sequence[int]) -> SemigroupMatrix:
    B, C = list(B), list(C)
    if not B or not C:
        raise ValueError("B and C must be nonempty")
    entries = tuple(tuple(S.mult(b, c) for c in C) for b in B)
    return SemigroupMatrix(tuple(B), tuple(C), entries, S)


def two_by_two_claim(S: FiniteSemigroup, b: int, c: int, d: int, budget: int = 5) -> dict:
    """Checks the finite-order consequence d = bc = cb on [[1,b],[c,d]] and
    the singleton-row growth witness when the equality fails."""
    if S.unit is None:
        raise ValueError("two_by_two_claim needs a monoid")
    one = S.unit
    M = SemigroupMatrix.make([[one, b], [c, d]], S)
    order = finite_order(M, budget)
    bc = S.mult(b, c)
    cb = S.mult(c, b)
    report = {
        "order": order,
        "bc": bc,
        "cb": cb,
        "d": d,
        "claim_holds": None,
        "growth_verified": None,
    }
    if isinstance(order, Finite):
        report["claim_holds"] = (d == bc and d == cb)
    if d != bc or d != cb:
        ok = True
        for n in range(1, budget + 2):
            rows = []
            for i in range(n):
                # row: up everywhere except down at position i
                row = []
                for col_bits in product((0, 1), repeat=n):
                    word = [
                        M.entries[1 if pos == i else 0][col_bits[pos]]
                        for pos in range(n)
                    ]
                    row.append(S.product(word))
                rows.append(tuple(row))
            if len(set(rows)) < n:
                ok = False
                break
        report["growth_verified"] = ok
    return report


def is_irredundant(M: SemigroupMatrix) -> bool:
    rows = [tuple(row) for row in M.entries]
    nr, nc = M.shape()
    cols = [tuple(M.entries[r][c] for r in range(nr)) for c in range(nc)]
    return len(set(rows)) == nr and len(set(cols)) == nc


@dataclass(frozen=True)
class Hypergraph:
    vertices: int
    colours: int
    table: tuple  # colour id per subset, bitmask ascending; length 2^V

    def __post_init__(self):
        caps.check("hypergraph_vertices", self.vertices, "hypergraph")
        if len(self.table) != 1 << self.vertices:
            raise ValueError("edge table must have an entry per subset")
        for c in self.table:
            if not (0 <= c < self.colours):
                raise ValueError(f"colour {c} out of range")

    def edge(self, subset: int) -> int:
        return self.table[subset]


def hypergraph_kron(G: Hypergraph, H: Hypergraph, M: Sequence[Sequence[int]],
                    colours: Optional[int] = None) -> Hypergraph:
    """Disjoint union of the vertices; edge(U) combines the two parts via
    the matrix M indexed by (colour in G, colour in H)."""
    V = G.vertices + H.vertices
    caps.check("hypergraph_vertices", V, "hypergraph Kronecker product")
    if colours is None:
        colours = max(max(row) for row in M) + 1
    mask_g = (1 << G.vertices) - 1
    table = []
    for U in range(1 << V):
        cg = G.edge(U & mask_g)
        ch = H.edge(U >> G.vertices)
        table.append(M[cg][ch])
    return Hypergraph(V, colours, tuple(table))


def hypergraph_rank(G: Hypergraph, X: int) -> int:
    """Distinct rows of the matrix (subsets of X) x (subsets of the
    complement) whose cell is the colour of the union."""
    full = (1 << G.vertices) - 1
    comp = full & ~X

    def subsets(mask: int):
        sub = mask
        out = [0]
        while sub:
            out.append(sub)
            sub = (sub - 1) & mask
        return sorted(set(out))

    rows = set()
    comp_subsets = subsets(comp)
    for r in subsets(X):
        rows.add(tuple(G.edge(r | c) for c in comp_subsets))
    return len(rows)


@dataclass(frozen=True)
class SemigroupHypergraph:
    """The S(n) construction: vertices 1..n, a hyperedge is an assignment
    of semigroup values to the vertices, its value is the word product."""

    semigroup: FiniteSemigroup
    n: int

    def evaluate(self, word: Sequence[int]) -> int:
        if len(word) != self.n:
            raise ValueError(f"word must have length {self.n}")
        return self.semigroup.product(word)


def semigroup_hypergraph(S: FiniteSemigroup, n: int) -> SemigroupHypergraph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return SemigroupHypergraph(S, n)
