import itertools

import pytest

from rankmat.enumerate import (
    BINARY,
    binary_structures,
    clique_graph,
    edgeless_graph,
    path_graph,
)
from rankmat.rank import Graph, distinct_row_rank
from rankmat.recovery import (
    OrderedOracle,
    Seed,
    UnorderedOracle,
    find_seed,
    informative_colouring,
    max_twin_independent_set,
    maximal_seed,
    rank_decreasing_report,
    recover_partition,
    recover_preorder,
    subforest_criterion,
    synth_oracle,
    twins,
    validate_oracle,
)
from rankmat.structures import Structure, qf_type
from rankmat.trees import all_laminar_trees, ternary_encode, validate_tree


def graph_struct(g):
    edges = {(a, b) for e in g.edges for a in e for b in e if a != b}
    return Structure.make(BINARY, g.n, {"E": edges})


P3 = graph_struct(path_graph(3))


def test_twins_edgeless_and_clique():
    for g in (edgeless_graph(4), clique_graph(4)):
        s = graph_struct(g)
        assert twins(s) == frozenset(
            (a, b) for a in range(4) for b in range(a + 1, 4)
        )
        assert len(max_twin_independent_set(s)) == 1


def test_twins_p3():
    assert twins(P3) == frozenset({(0, 2)})
    assert max_twin_independent_set(P3) == frozenset({0, 1})


def test_twins_symmetric_and_witnessed():
    # non-twin pairs always have a separating tuple avoiding both elements
    for s in itertools.islice(binary_structures(3), 0, 600, 7):
        n = s.universe_size
        pairs = twins(s)
        for a in range(n):
            for b in range(a + 1, n):
                others = [x for x in range(n) if x not in (a, b)]
                witnessed = any(
                    qf_type(s, (a,) + w) != qf_type(s, (b,) + w)
                    for w in itertools.product(others, repeat=1)
                )
                assert ((a, b) in pairs) == (not witnessed)


def test_informative_colouring_trivial():
    assert informative_colouring(graph_struct(edgeless_graph(4)), 4) == (0, 0, 0, 0)
    assert informative_colouring(graph_struct(clique_graph(4)), 4) == (0, 0, 0, 0)


def test_informative_colouring_p3():
    colours = informative_colouring(P3, 4)
    assert colours == (0, 1, 0)


def test_informative_colouring_verified_on_small_structures():
    from rankmat.recovery import _is_informative

    for s in itertools.islice(binary_structures(3), 0, 600, 13):
        colours = informative_colouring(s, s.universe_size)
        assert colours is not None
        assert _is_informative(s, colours)


def test_informative_colouring_respects_budget():
    # a directed path needs more than one colour
    s = Structure.make(BINARY, 3, {"E": {(0, 1), (1, 2)}})
    assert informative_colouring(s, 1) is None


def test_rank_decreasing_report_identity():
    g = path_graph(4)
    report = rank_decreasing_report([(g, g)])
    assert report["flagged"] == []
    for r_in, r_out in report["tables"][0].items():
        assert r_out == r_in


def test_rank_decreasing_report_edge_removal_growth():
    report = rank_decreasing_report([(clique_graph(8), path_graph(8))])
    table = report["tables"][0]
    assert table[1] >= 2
    assert report["flagged"] and report["flagged"][0][0] == 0


def test_rank_decreasing_report_edgeless_to_path():
    report = rank_decreasing_report([(edgeless_graph(4), path_graph(4))])
    assert report["tables"][0][0] >= 1
    assert report["flagged"]


def test_rank_decreasing_report_universe_mismatch():
    with pytest.raises(ValueError):
        rank_decreasing_report([(path_graph(3), path_graph(4))])


def test_subforest_criterion_edgeless_and_clique():
    for t in all_laminar_trees(range(4)):
        assert subforest_criterion([(t, edgeless_graph(4))]) == 0
        assert subforest_criterion([(t, clique_graph(4))]) <= 1


def test_subforest_criterion_own_encoding_bounded():
    best = 0
    for t in all_laminar_trees(range(4)):
        best = max(best, subforest_criterion([(t, ternary_encode(t))]))
    assert best <= 6


def test_subforest_criterion_leaf_mismatch():
    t = next(iter(all_laminar_trees(range(3))))
    with pytest.raises(ValueError):
        subforest_criterion([(t, edgeless_graph(4))])


# ---------------------------------------------------------------------------
# oracles


def test_synth_oracle_single_class():
    o = synth_oracle("unordered", [{0, 1}], 2)
    validate_oracle(o)
    assert o.phi(set()) and o.phi({0, 1})
    assert recover_partition(o) == (frozenset({0, 1}),)


def test_synth_oracle_validation_catches_bad_accept():
    o = synth_oracle("unordered", [{0, 1}, {2, 3}], 2)
    broken = UnorderedOracle(o.classes, o.semigroup, o.lam, frozenset(), o.k)
    with pytest.raises(ValueError, match="completeness"):
        validate_oracle(broken)


def test_synth_oracle_soundness():
    o = synth_oracle("unordered", [{0, 1}, {2, 3}, {4, 5}], 2)
    validate_oracle(o)
    assert not o.phi({0, 2})  # cuts two classes, k = 2
    assert o.phi({0})  # cuts one


def test_find_seed():
    o = synth_oracle("unordered", [{0, 1}, {2, 3}], 2)
    seed = find_seed(o)
    assert seed.subset == frozenset({0, 1})
    assert seed.is_seed() and seed.cut_classes == ()
    single = synth_oracle("unordered", [{0, 1}], 2)
    with pytest.raises(ValueError):
        find_seed(single)


def test_maximal_seed_cuts_up_to_k_minus_1():
    o = synth_oracle("unordered", [{0, 1}, {2, 3}, {4, 5}], 2)
    seed, special = maximal_seed(o)
    assert seed.is_seed()
    assert len(seed.cut_classes) == 1  # k - 1
    assert len(special) <= o.k + 2


def test_maximal_seed_special_count_homogeneous_4():
    o = synth_oracle("unordered", [{0}, {1, 2}, {3, 4}, {5, 6, 7}], 3)
    seed, special = maximal_seed(o)
    assert seed.is_seed()
    assert len(special) <= o.k + 2


def test_recover_partition_two_equal_classes():
    hidden = [{0, 1, 2}, {3, 4, 5}]
    o = synth_oracle("unordered", hidden, 2)
    validate_oracle(o)
    assert set(recover_partition(o)) == {frozenset(c) for c in hidden}


def test_recover_partition_five_classes_sizes_1_to_5():
    hidden = []
    start = 0
    for size in range(1, 6):
        hidden.append(set(range(start, start + size)))
        start += size
    o = synth_oracle("unordered", hidden, 3)
    validate_oracle(o)
    assert set(recover_partition(o)) == {frozenset(c) for c in hidden}


def test_recover_partition_random_instances():
    import random

    rng = random.Random(7)
    for _ in range(5):
        sizes = [rng.randint(1, 4) for _ in range(rng.randint(2, 5))]
        hidden = []
        start = 0
        for size in sizes:
            hidden.append(set(range(start, start + size)))
            start += size
        k = rng.randint(2, 3)
        o = synth_oracle("unordered", hidden, k)
        validate_oracle(o)
        assert set(recover_partition(o)) == {frozenset(c) for c in hidden}, (sizes, k)


def test_recover_partition_pre_grouping():
    hidden = [{0, 1}, {2, 3}, {4, 5}, {6, 7}]
    o = synth_oracle("unordered", hidden, 2, groups=[0, 0, 1, 1])
    with pytest.raises(ValueError):
        validate_oracle(o)
    validate_oracle(o, homogeneous=False)
    assert set(recover_partition(o)) == {frozenset(c) for c in hidden}


def test_recover_preorder_two_classes():
    o = synth_oracle("ordered", [{0, 1}, {2}], 2)
    validate_oracle(o)
    assert recover_preorder(o, 2).classes == o.classes


def test_recover_preorder_eight_classes():
    hidden = [{0}, {1}, {2}, {3}, {4, 5}, {6}, {7, 8}, {9}]
    o = synth_oracle("ordered", hidden, 2)
    validate_oracle(o)
    rec = recover_preorder(o, 2)
    assert rec.classes == tuple(frozenset(c) for c in hidden)


def test_recover_preorder_twelve_mixed_classes():
    hidden = []
    start = 0
    for size in [1, 3] * 6:
        hidden.append(set(range(start, start + size)))
        start += size
    o = synth_oracle("ordered", hidden, 2)
    validate_oracle(o)
    rec = recover_preorder(o, 2)
    assert rec.classes == tuple(frozenset(c) for c in hidden)


def test_recover_preorder_requires_d_at_least_k():
    o = synth_oracle("ordered", [{0}, {1}, {2}], 2)
    with pytest.raises(ValueError):
        recover_preorder(o, 1)


def test_ordered_oracle_interval_completeness():
    hidden = [{0}, {1, 2}, {3}, {4}]
    o = synth_oracle("ordered", hidden, 2)
    for i in range(4):
        for j in range(i, 4):
            Y = set().union(*hidden[i:j + 1])
            assert o.phi(Y)


def test_seed_flags_match_queries():
    o = synth_oracle("unordered", [{0, 1}, {2, 3}, {4}], 2)
    seed, _ = maximal_seed(o)
    assert seed.satisfies_phi == o.phi(seed.subset)
    assert seed.has_full == any(c <= seed.subset for c in o.classes)
    assert seed.has_empty == any(not (c & seed.subset) for c in o.classes)
