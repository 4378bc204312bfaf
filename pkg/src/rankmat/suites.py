"""Verification suites: lemma-level checks over enumerated small instances.

Each suite returns a list of Report objects.  Pass results are aggregated
into one summary report per check; every failure gets its own report
carrying a replayable witness (instance serialization + parameters).
Report order is canonical (sorted by instance id) regardless of how the
per-instance work is scheduled, and every enumeration is deterministic.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .enumerate import (
    BINARY,
    associative_tables,
    binary_structures,
    chain_semilattice,
    clique_graph,
    curated_size4_semigroups,
    cyclic_group,
    edgeless_graph,
    grid_graph,
    left_zero,
    path_graph,
    word_monoid_1abab0,
)
from .kronecker import (
    Finite,
    SemigroupMatrix,
    equivalent,
    finite_order,
    kronecker_product,
    two_by_two_claim,
)
from .rank import (
    Graph,
    graph_cut_rank,
    matrix_ranks,
    monadic_matrix_distinct_rows,
    monadic_type_matrix,
    smallest_prime_at_least,
    type_matrix,
)
from .recovery import (
    rank_decreasing_report,
    recover_partition,
    recover_preorder,
    synth_oracle,
    validate_oracle,
)
from .semigroup import (
    Overflow,
    counts_non_increasing_after_repeat,
    finitary_generator_check,
    identity_suite,
    is_almost_commutative,
    syntactic_class_count,
    validate,
)
from .structures import (
    MonadicStructure,
    Structure,
    composition_tables,
    compositionality_check,
    qf_type,
)
from .trees import (
    Obstruction,
    Orientation,
    all_laminar_trees,
    all_tree_shapes,
    chosen_leaf,
    group_orientation,
    interesting_analysis,
    min_boolean_combination,
    orientation_is_valid,
    subforests,
    ternary_decode,
    ternary_encode,
)

__all__ = ["Report", "SUITES", "run_suite", "enumerate_instances"]


@dataclass(frozen=True)
class Report:
    check: str
    instance: str
    status: str  # "pass" | "fail" | "skip"
    data: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "data": self.data,
        }


def _summary(check: str, instances: int, failures: list, extra: dict = None) -> list:
    data = {"instances": instances, "failures": len(failures)}
    if extra:
        data.update(extra)
    status = "fail" if failures else "pass"
    return sorted(failures, key=lambda r: r.instance) + [
        Report(check, "summary", status, data)
    ]


def _fail(check: str, instance: str, witness: dict) -> Report:
    return Report(check, instance, "fail", witness)


# ---------------------------------------------------------------------------
# instance enumerators


def enumerate_instances(kind: str, bound: int, seed: int = 0) -> Iterator:
    """Deterministic instance streams at exactly the requested size.

    structures: all structures on `bound` elements over one binary
    relation, in relation-bitmask order.  trees: all laminar trees on
    leaves 0..bound-1, in generation order.  semigroups: all associative
    tables of size `bound` (size 4 falls back to the curated family).
    oracles: `bound` seeded random unordered oracle instances.
    """
    if kind == "structures":
        pairs = list(itertools.product(range(bound), repeat=2))
        for bits in range(1 << len(pairs)):
            rel = {pairs[i] for i in range(len(pairs)) if bits >> i & 1}
            yield Structure.make(BINARY, bound, {"E": rel})
    elif kind == "trees":
        yield from all_laminar_trees(range(bound))
    elif kind == "semigroups":
        if bound <= 3:
            yield from (s for s in associative_tables(bound) if s.size == bound)
        elif bound == 4:
            yield from curated_size4_semigroups()
        else:
            raise ValueError("semigroup enumeration is capped at size 4")
    elif kind == "oracles":
        rng = random.Random(seed)
        for _ in range(bound):
            sizes = [rng.randint(1, 4) for _ in range(rng.randint(2, 5))]
            hidden, start = [], 0
            for size in sizes:
                hidden.append(set(range(start, start + size)))
                start += size
            yield synth_oracle("unordered", hidden, 1)
    else:
        raise ValueError(f"unknown instance kind {kind!r}")


# ---------------------------------------------------------------------------
# the suites


def suite_path_bound() -> list:
    """Connected subsets of paths have GF(2) cut-rank at most 2, and the
    bound is attained from 4 vertices on."""
    failures = []
    instances = 0
    for n in range(1, 13):
        g = path_graph(n)
        best = 0
        for a in range(n):
            for b in range(a, n):
                X = set(range(a, b + 1))
                r = graph_cut_rank(g, X)
                best = max(best, r)
                instances += 1
                if r > 2:
                    failures.append(
                        _fail("path-bound", f"path{n}", {"subset": sorted(X), "rank": r})
                    )
        if n >= 4 and best != 2:
            failures.append(_fail("path-bound", f"path{n}", {"max_rank": best}))
    return _summary("path-bound", instances, failures)


def suite_clique_edgeless() -> list:
    failures = []
    instances = 0
    for n in range(1, 9):
        k, e = clique_graph(n), edgeless_graph(n)
        for bits in range(1 << n):
            X = {i for i in range(n) if bits >> i & 1}
            instances += 1
            if graph_cut_rank(k, X) > 1:
                failures.append(_fail("clique-edgeless", f"K{n}", {"subset": sorted(X)}))
            if graph_cut_rank(e, X) != 0:
                failures.append(_fail("clique-edgeless", f"E{n}", {"subset": sorted(X)}))
    return _summary("clique-edgeless", instances, failures)


def suite_grid_sandwich() -> list:
    """ceil(sqrt(|X|)) - 1 <= cut-rank <= |X| on square grids; violations
    of the tighter slack-free lower bound are reported, not failed."""
    failures = []
    instances = 0
    tighter_violations = 0
    for side in (3, 4):
        g = grid_graph(side, side)
        n = side * side
        for bits in range(1 << n):
            X = {i for i in range(n) if bits >> i & 1}
            if not X or len(X) > n // 2:
                continue
            r = graph_cut_rank(g, X)
            lo = math.ceil(math.sqrt(len(X))) - 1
            instances += 1
            if not lo <= r <= len(X):
                failures.append(
                    _fail("grid-sandwich", f"grid{side}x{side}",
                          {"subset": sorted(X), "rank": r})
                )
            if r < lo + 1:
                tighter_violations += 1
    return _summary("grid-sandwich", instances, failures,
                    {"tighter_violations": tighter_violations})


def _sandwich_checks(s: Structure, failures: list, label: str) -> int:
    n = s.universe_size
    checked = 0
    for bits in range(1 << n):
        X = {i for i in range(n) if bits >> i & 1}
        M = type_matrix(s, X, 1)
        dr, dc, fr = matrix_ranks(M)
        p = smallest_prime_at_least(max(len(M.values), 1))
        t = max(len(M.values), 1)
        ok = fr <= dr <= p**fr if dr else fr == 0
        ok = ok and dr <= t**dc and dc <= t**dr
        Mc = type_matrix(s, set(range(n)) - X, 1)
        drc, dcc, _ = matrix_ranks(Mc)
        ok = ok and dr == dcc and dc == drc
        checked += 1
        if not ok:
            failures.append(_fail("rank-sandwich", label, {
                "relation": sorted(map(list, s.relation("E"))),
                "subset": sorted(X),
                "ranks": [dr, dc, fr],
                "complement_ranks": [drc, dcc],
            }))
    return checked


def suite_rank_sandwich(n4_sample: int = 800) -> list:
    """Rank-variant inequalities and exact transposition duality on all
    binary structures with <= 3 elements plus a seeded n=4 sample (the
    exhaustive n=4 sweep exceeds the time budget)."""
    failures = []
    instances = 0
    for s in binary_structures(3):
        instances += _sandwich_checks(s, failures, f"n{s.universe_size}")
    rng = random.Random(4)
    pairs = list(itertools.product(range(4), repeat=2))
    for _ in range(n4_sample):
        bits = rng.getrandbits(16)
        rel = {pairs[i] for i in range(16) if bits >> i & 1}
        s = Structure.make(BINARY, 4, {"E": rel})
        instances += _sandwich_checks(s, failures, f"n4-bits{bits}")
    return _summary("rank-sandwich", instances, failures)


def _ef_checks(ms: MonadicStructure, subsets: Iterable, failures: list, label: str) -> int:
    checked = 0
    for X in subsets:
        for d in (0, 1):
            hi = monadic_matrix_distinct_rows(monadic_type_matrix(ms, X, d + 1, 1))
            lo = monadic_matrix_distinct_rows(monadic_type_matrix(ms, X, d, 2))
            checked += 1
            if hi > 2**lo:
                failures.append(_fail("ef-bound", label,
                                      {"subset": sorted(X), "d": d,
                                       "hi": hi, "lo": lo}))
    return checked


def suite_ef_bound() -> list:
    """distinct_rows(M_{d+1,1}) <= 2^distinct_rows(M_{d,2}) for d in {0,1}
    on monadic structures with one unary set relation: exhaustive principal
    interpretations for n <= 3 plus seeded interpretations and an n=4
    sample (full n=4 enumeration exceeds the time budget)."""
    failures = []
    instances = 0
    for n in (2, 3):
        all_X = [{i for i in range(n) if b >> i & 1} for b in range(1 << n)]
        for bits in range(1 << n):
            ms = MonadicStructure(n, (("U", 1, frozenset({(bits,)})),))
            instances += _ef_checks(ms, all_X, failures, f"n{n}-principal{bits}")
        rng = random.Random(5 + n)
        for trial in range(10):
            interp = frozenset(
                (b,) for b in range(1 << n) if rng.random() < 0.4
            )
            ms = MonadicStructure(n, (("U", 1, interp),))
            instances += _ef_checks(ms, all_X, failures, f"n{n}-random{trial}")
    rng = random.Random(9)
    for bits in range(16):
        ms = MonadicStructure(4, (("U", 1, frozenset({(bits,)})),))
        chosen = [
            {i for i in range(4) if b >> i & 1}
            for b in rng.sample(range(16), 4)
        ]
        instances += _ef_checks(ms, chosen, failures, f"n4-principal{bits}")
    return _summary("ef-bound", instances, failures)


def _tree_corpus(decode_leaves: int, full_leaves: int, shape_leaves: int):
    """(label, tree) pairs: all labeled trees up to full_leaves, shapes
    between full_leaves+1 and shape_leaves."""
    for n in range(1, full_leaves + 1):
        for i, t in enumerate(all_laminar_trees(range(n))):
            yield f"labeled{n}-{i}", t
    for n in range(full_leaves + 1, shape_leaves + 1):
        for i, t in enumerate(all_tree_shapes(n)):
            yield f"shape{n}-{i}", t


def suite_trees() -> list:
    """decode(encode) identity; ternary cut-rank >= the interesting-child
    count; min_boolean_combination = 1 exactly on subforests and their
    complements (complement is one of the allowed boolean operations).
    All labeled trees <= 6 leaves for the identity, <= 5 for the rank
    checks, plus all 6- and 7-leaf shapes (the full labeled 7-leaf sweep
    exceeds the time budget)."""
    from .rank import distinct_row_rank

    failures = []
    instances = 0
    for label, t in _tree_corpus(6, 6, 7):
        instances += 1
        if ternary_decode(ternary_encode(t)) != t:
            failures.append(_fail("trees", label,
                                  {"nodes": sorted(map(sorted, t.nodes))}))
    for label, t in _tree_corpus(5, 5, 7):
        n = len(t.leaves)
        enc = ternary_encode(t)
        sf = subforests(t)
        level1 = ({s for s in sf} | {t.root() - s for s in sf}) - {frozenset(), t.root()}
        for bits in range(1 << n):
            X = frozenset(i for i in range(n) if bits >> i & 1)
            _, _, d = interesting_analysis(t, X)
            instances += 1
            if distinct_row_rank(enc, X) < d:
                failures.append(_fail("trees", label,
                                      {"subset": sorted(X), "d": d,
                                       "nodes": sorted(map(sorted, t.nodes))}))
            one = min_boolean_combination(t, X, limit=1) == 1
            if one != (X in level1):
                failures.append(_fail("trees", label,
                                      {"subset": sorted(X), "bool_one": one,
                                       "nodes": sorted(map(sorted, t.nodes))}))
    return _summary("trees", instances, failures)


def suite_orientation() -> list:
    """group_orientation mod 4 succeeds and re-validates on all tree shapes
    <= 9 leaves (labeled 9-leaf trees number in the millions; the
    orientation conditions are label-invariant); mod 3 is obstructed on
    the two-star tree; chosen_leaf is injective wherever defined."""
    failures = []
    instances = 0
    for n in range(1, 10):
        for i, t in enumerate(all_tree_shapes(n)):
            label = f"shape{n}-{i}"
            instances += 1
            o = group_orientation(t, 4)
            if not isinstance(o, Orientation) or not orientation_is_valid(t, o):
                failures.append(_fail("orientation", label,
                                      {"nodes": sorted(map(sorted, t.nodes))}))
                continue
            internal = t.internal_nodes()
            chosen = [chosen_leaf(t, o, node) for node in internal]
            if len(chosen) != len(set(chosen)):
                failures.append(_fail("orientation", label,
                                      {"nodes": sorted(map(sorted, t.nodes)),
                                       "chosen": chosen}))
        for i, t in enumerate(all_tree_shapes(n)):
            res = group_orientation(t, 3)
            if isinstance(res, Orientation) and not orientation_is_valid(t, res):
                failures.append(_fail("orientation", f"shape{n}-{i}-mod3",
                                      {"nodes": sorted(map(sorted, t.nodes))}))
    from .trees import validate_tree

    two_star = validate_tree(
        [frozenset((i,)) for i in range(6)]
        + [frozenset({0, 1, 2}), frozenset({3, 4, 5}), frozenset(range(6))]
    )
    instances += 1
    if not isinstance(group_orientation(two_star, 3), Obstruction):
        failures.append(_fail("orientation", "two-star-mod3", {}))
    return _summary("orientation", instances, failures)


def _semigroup_corpus():
    for i, s in enumerate(associative_tables(3)):
        yield f"table{i}", s
    for i, s in enumerate(curated_size4_semigroups()):
        yield f"curated{i}", s


def suite_semigroups(cap: int = 20000) -> list:
    """Almost-commutative tables satisfy the identity suite and have
    syntactic class counts that never increase after the first repeat
    (k <= 4); the rest grow strictly or overflow the cap."""
    failures = []
    instances = 0
    ac_count = 0
    for label, S in _semigroup_corpus():
        instances += 1
        ac, _ = is_almost_commutative(S)
        counts = [syntactic_class_count(S, k, cap) for k in range(1, 5)]
        if ac:
            ac_count += 1
            numeric = all(isinstance(c, int) for c in counts)
            ok = (identity_suite(S).all_hold() and numeric
                  and counts_non_increasing_after_repeat(counts))
        else:
            numeric = [c for c in counts if isinstance(c, int)]
            strictly = all(a < b for a, b in zip(numeric, numeric[1:]))
            ok = strictly or any(isinstance(c, Overflow) for c in counts)
        if not ok:
            failures.append(_fail("semigroups", label,
                                  {"table": [list(r) for r in S.table],
                                   "almost_commutative": ac,
                                   "counts": [str(c) for c in counts]}))
    return _summary("semigroups", instances, failures,
                    {"almost_commutative": ac_count})


def suite_finitary_generator() -> list:
    """Where the whole semigroup is product-closed onto itself (A*A = A
    with Sigma = A), a finite multiplication-matrix order in either
    orientation implies almost-commutativity."""
    failures = []
    instances = 0
    for label, S in _semigroup_corpus():
        elems = list(S.elements())
        if {S.mult(a, b) for a in elems for b in elems} != set(elems):
            continue
        instances += 1
        result = finitary_generator_check(S, elems, budget=6)
        finite = isinstance(result["order_rows_S"], Finite) or isinstance(
            result["order_rows_sigma"], Finite
        )
        if finite and not (result["almost_commutative"] and result["generator_swap"]):
            failures.append(_fail("finitary-generator", label,
                                  {"table": [list(r) for r in S.table]}))
    return _summary("finitary-generator", instances, failures)


def suite_two_by_two() -> list:
    """On every monoid in the corpus and every (b, c, d): a certified
    finite order of [[1,b],[c,d]] forces d = bc = cb, and any mismatch
    yields n distinct singleton rows at Kronecker power n for n <= 6."""
    failures = []
    instances = 0
    for label, S in _semigroup_corpus():
        unit = next(
            (e for e in S.elements()
             if all(S.mult(e, a) == a and S.mult(a, e) == a for a in S.elements())),
            None,
        )
        if unit is None:
            continue
        M = validate([list(r) for r in S.table], unit=unit)
        for b, c, d in itertools.product(M.elements(), repeat=3):
            instances += 1
            report = two_by_two_claim(M, b, c, d, budget=5)
            witness = {"table": [list(r) for r in M.table], "b": b, "c": c, "d": d}
            if isinstance(report["order"], Finite) and not report["claim_holds"]:
                failures.append(_fail("two-by-two", label, dict(witness, kind="claim")))
            mismatch = d != report["bc"] or d != report["cb"]
            if mismatch and not report["growth_verified"]:
                failures.append(_fail("two-by-two", label, dict(witness, kind="growth")))
    return _summary("two-by-two", instances, failures)


def suite_kronecker_inequality(trials: int = 500) -> list:
    """distinct rows of a Kronecker product never exceed the product of
    the factors' distinct row counts; plus an equivalence-congruence
    spot-check on duplicated-row variants."""
    sgps = [cyclic_group(2), cyclic_group(3), left_zero(2),
            word_monoid_1abab0(), chain_semilattice(3)]
    rng = random.Random(11)
    failures = []
    instances = 0

    def distinct_rows(M):
        return len(set(M.entries))

    def random_matrix(S):
        r, c = rng.randint(1, 3), rng.randint(1, 3)
        return SemigroupMatrix.make(
            [[rng.randrange(S.size) for _ in range(c)] for _ in range(r)], S
        )

    for trial in range(trials):
        S = sgps[trial % len(sgps)]
        M1, M2 = random_matrix(S), random_matrix(S)
        P = kronecker_product(M1, M2)
        instances += 1
        if distinct_rows(P) > distinct_rows(M1) * distinct_rows(M2):
            failures.append(_fail("kronecker-inequality", f"trial{trial}",
                                  {"m1": [list(r) for r in M1.entries],
                                   "m2": [list(r) for r in M2.entries]}))

    def with_duplicate_row(M):
        rows = [list(r) for r in M.entries] + [list(M.entries[0])]
        return SemigroupMatrix.make(rows, M.semigroup)

    for trial in range(20):
        S = sgps[trial % len(sgps)]
        M1, M2 = random_matrix(S), random_matrix(S)
        D1, D2 = with_duplicate_row(M1), with_duplicate_row(M2)
        instances += 1
        congruent = (
            equivalent(M1, D1)
            and equivalent(M2, D2)
            and equivalent(kronecker_product(M1, M2), kronecker_product(D1, D2))
        )
        if not congruent:
            failures.append(_fail("kronecker-inequality", f"congruence{trial}",
                                  {"m1": [list(r) for r in M1.entries],
                                   "m2": [list(r) for r in M2.entries]}))
    return _summary("kronecker-inequality", instances, failures)


def suite_recovery(unordered_trials: int = 200, ordered_trials: int = 100) -> list:
    """Seeded synthesized oracles: recover_partition and recover_preorder
    return exactly the hidden structure on every validated instance.
    Unordered instances use k=1 to keep the counter semigroup at 8
    elements; ordered ones use k=2, d=2."""
    failures = []
    instances = 0
    rng = random.Random(12)
    for trial in range(unordered_trials):
        n_classes = rng.randint(2, 6)
        sizes = [rng.randint(1, 5) for _ in range(n_classes)]
        while sum(sizes) > 30:
            sizes[rng.randrange(n_classes)] = max(
                1, sizes[rng.randrange(n_classes)] - 1
            )
        hidden, start = [], 0
        for size in sizes:
            hidden.append(set(range(start, start + size)))
            start += size
        oracle = synth_oracle("unordered", hidden, 1)
        validate_oracle(oracle, samples=256)
        instances += 1
        if set(recover_partition(oracle)) != {frozenset(c) for c in hidden}:
            failures.append(_fail("recovery", f"unordered{trial}",
                                  {"sizes": sizes, "k": 1}))
    for trial in range(ordered_trials):
        n_classes = rng.randint(2, 12)
        sizes = [rng.randint(1, 3) for _ in range(n_classes)]
        hidden, start = [], 0
        for size in sizes:
            hidden.append(set(range(start, start + size)))
            start += size
        oracle = synth_oracle("ordered", hidden, 2)
        validate_oracle(oracle, samples=256)
        instances += 1
        recovered = recover_preorder(oracle, 2)
        if recovered.classes != tuple(frozenset(c) for c in hidden):
            failures.append(_fail("recovery", f"ordered{trial}",
                                  {"sizes": sizes, "k": 2, "d": 2}))
    return _summary("recovery", instances, failures)


def _set_partitions(items: list) -> Iterator[list]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _composition_exact(s: Structure, partition: list, m: int) -> bool:
    ok, _ = compositionality_check(s, partition, m)
    if not ok:
        return False
    from .structures import all_partial_tuples, _project

    parts = [frozenset(p) for p in partition]
    try:
        lambdas, gamma, _ = composition_tables(s, partition, len(parts), m)
    except AssertionError:
        return False
    from .structures import local_type_index

    indices = [local_type_index(s, p, m, m) for p in parts]
    for t in all_partial_tuples(range(s.universe_size), m):
        key = tuple(
            lambdas[i][indices[i].class_of(_project(t, parts[i]))]
            for i in range(len(parts))
        )
        if gamma[key] != qf_type(s, t):
            return False
    return True


def suite_compositionality(n4_sample: int = 40) -> list:
    """Reconstruction of quantifier-free types from per-part local type
    colours, exact on all (structure, partition) pairs for n <= 3 with
    m = 2, plus a seeded n=4 sample (the exhaustive n=4 sweep exceeds
    the time budget)."""
    failures = []
    instances = 0
    for n in (1, 2, 3):
        pairs = list(itertools.product(range(n), repeat=2))
        for bits in range(1 << len(pairs)):
            rel = {pairs[i] for i in range(len(pairs)) if bits >> i & 1}
            s = Structure.make(BINARY, n, {"E": rel})
            for partition in _set_partitions(list(range(n))):
                instances += 1
                if not _composition_exact(s, partition, 2):
                    failures.append(_fail(
                        "compositionality", f"n{n}-bits{bits}",
                        {"relation": sorted(map(list, rel)),
                         "partition": partition}))
    rng = random.Random(13)
    pairs4 = list(itertools.product(range(4), repeat=2))
    partitions4 = list(_set_partitions(list(range(4))))
    for _ in range(n4_sample):
        bits = rng.getrandbits(16)
        rel = {pairs4[i] for i in range(16) if bits >> i & 1}
        s = Structure.make(BINARY, 4, {"E": rel})
        for partition in partitions4:
            instances += 1
            if not _composition_exact(s, partition, 2):
                failures.append(_fail(
                    "compositionality", f"n4-bits{bits}",
                    {"relation": sorted(map(list, rel)),
                     "partition": partition}))
    return _summary("compositionality", instances, failures)


def suite_rank_decreasing() -> list:
    """Identity pairs yield a diagonal table; the K8 -> P8 edge-removal
    fixture has a subset whose rank grows from <= 1 to >= 2."""
    failures = []
    g = path_graph(4)
    report = rank_decreasing_report([(g, g)])
    diagonal = not report["flagged"] and all(
        r_out == r_in for r_in, r_out in report["tables"][0].items()
    )
    if not diagonal:
        failures.append(_fail("rank-decreasing", "identity-path4",
                              {"table": report["tables"][0]}))
    removal = rank_decreasing_report([(clique_graph(8), path_graph(8))])
    table = removal["tables"][0]
    if table.get(1, 0) < 2 or not removal["flagged"]:
        failures.append(_fail("rank-decreasing", "K8-to-P8",
                              {"table": {str(k): v for k, v in table.items()}}))
    return _summary("rank-decreasing", 2, failures,
                    {"k8_p8_table": {str(k): v for k, v in table.items()}})


SUITES = {
    "path-bound": suite_path_bound,
    "clique-edgeless": suite_clique_edgeless,
    "grid-sandwich": suite_grid_sandwich,
    "rank-sandwich": suite_rank_sandwich,
    "ef-bound": suite_ef_bound,
    "trees": suite_trees,
    "orientation": suite_orientation,
    "semigroups": suite_semigroups,
    "finitary-generator": suite_finitary_generator,
    "two-by-two": suite_two_by_two,
    "kronecker-inequality": suite_kronecker_inequality,
    "recovery": suite_recovery,
    "compositionality": suite_compositionality,
    "rank-decreasing": suite_rank_decreasing,
}


def run_suite(name: str) -> list:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key]())
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         + ", ".join(sorted(SUITES) + ["all"]))
    return SUITES[name]()
