import pytest

from rankmat.enumerate import cyclic_group, word_monoid_1abab0
from rankmat.kronecker import (
    Finite,
    Hypergraph,
    SemigroupMatrix,
    Unknown,
    equivalent,
    finite_order,
    hypergraph_kron,
    hypergraph_rank,
    is_irredundant,
    is_submatrix,
    kronecker_power,
    kronecker_product,
    multiplication_matrix,
    normal_form,
    semigroup_hypergraph,
    two_by_two_claim,
)

Z2 = cyclic_group(2)
Z3 = cyclic_group(3)


def test_matrix_validation():
    with pytest.raises(ValueError, match="column count"):
        SemigroupMatrix.make([[0, 1], [0]], Z2)
    with pytest.raises(ValueError, match="out of range"):
        SemigroupMatrix.make([[0, 2]], Z2)


def test_kronecker_product_shape_and_entries():
    m = SemigroupMatrix.make([[0, 1], [1, 0]], Z2)
    p = kronecker_product(m, m)
    assert p.shape() == (4, 4)
    assert p.row_labels[0] == (0, 0)
    # entry at ((r1, r2), (c1, c2)) is m[r1][c1] + m[r2][c2] mod 2
    for i1 in range(2):
        for i2 in range(2):
            for j1 in range(2):
                for j2 in range(2):
                    assert (
                        p.entries[i1 * 2 + i2][j1 * 2 + j2]
                        == (m.entries[i1][j1] + m.entries[i2][j2]) % 2
                    )


def test_kronecker_product_rejects_mixed_semigroups():
    a = SemigroupMatrix.make([[0]], Z2)
    b = SemigroupMatrix.make([[0]], Z3)
    with pytest.raises(ValueError):
        kronecker_product(a, b)


def test_kronecker_power():
    m = SemigroupMatrix.make([[0, 1], [1, 0]], Z2)
    assert kronecker_power(m, 1) is m
    assert kronecker_power(m, 3).shape() == (8, 8)
    with pytest.raises(ValueError):
        kronecker_power(m, 0)


def test_normal_form_removes_duplicates():
    m = SemigroupMatrix.make([[0, 1, 1], [0, 1, 1], [1, 0, 0]], Z2)
    nf = normal_form(m)
    assert nf.matrix.shape() == (2, 2)
    assert is_irredundant(nf.matrix)


def test_normal_form_is_idempotent_and_permutation_invariant():
    m = SemigroupMatrix.make([[0, 1], [1, 1]], Z2)
    nf = normal_form(m)
    assert normal_form(nf.matrix).content_hash == nf.content_hash
    swapped = SemigroupMatrix.make([[1, 1], [1, 0]], Z2)
    assert normal_form(swapped).content_hash == nf.content_hash


def test_is_submatrix():
    big = SemigroupMatrix.make([[0, 1, 0], [1, 0, 1], [0, 0, 0]], Z2)
    small = SemigroupMatrix.make([[0, 1], [1, 0]], Z2)
    assert is_submatrix(small, big)
    missing = SemigroupMatrix.make([[1, 1], [1, 1]], Z2)
    assert not is_submatrix(missing, big)
    assert not is_submatrix(big, small)


def test_equivalent():
    m = SemigroupMatrix.make([[0, 1], [1, 0]], Z2)
    dup = SemigroupMatrix.make([[1, 0], [0, 1], [0, 1]], Z2)
    assert equivalent(m, dup)
    assert not equivalent(m, SemigroupMatrix.make([[0, 0], [0, 0]], Z2))


def test_finite_order_swap_matrix():
    m = SemigroupMatrix.make([[0, 1], [1, 0]], Z2)
    assert finite_order(m, 6) == Finite(index=1, period=1)


def test_finite_order_constant_matrix():
    m = SemigroupMatrix.make([[0]], Z2)
    assert finite_order(m, 4) == Finite(index=1, period=1)


def test_finite_order_word_monoid_unknown():
    w = word_monoid_1abab0()
    m = SemigroupMatrix.make([[0, 1], [2, 5]], w)  # [[1, a], [b, 0]]
    result = finite_order(m, 3)
    assert isinstance(result, Unknown)
    assert result.row_counts == (2, 4, 5)


def test_finite_order_budget_validation():
    m = SemigroupMatrix.make([[0]], Z2)
    with pytest.raises(ValueError):
        finite_order(m, 0)


def test_multiplication_matrix():
    m = multiplication_matrix(Z3, [0, 1], [0, 1, 2])
    assert m.entries == ((0, 1, 2), (1, 2, 0))
    with pytest.raises(ValueError):
        multiplication_matrix(Z3, [], [0])


def test_two_by_two_claim_finite_case():
    # [[0, 1], [1, 0]] over the 2-element group: d = bc = cb = 0
    report = two_by_two_claim(Z2, 1, 1, 0, budget=5)
    assert isinstance(report["order"], Finite)
    assert report["claim_holds"] is True
    assert report["growth_verified"] is None


def test_two_by_two_claim_growth_case():
    w = word_monoid_1abab0()
    report = two_by_two_claim(w, 1, 2, 5, budget=4)  # b=a, c=b, d=0
    assert isinstance(report["order"], Unknown)
    assert report["order"].row_counts == (2, 4, 5, 6)
    assert report["bc"] == 3 and report["cb"] == 4
    assert report["claim_holds"] is None
    assert report["growth_verified"] is True


def test_two_by_two_claim_one_sided_mismatch():
    # d = bc = ab but d != cb = ba: growth still verified
    w = word_monoid_1abab0()
    report = two_by_two_claim(w, 1, 2, 3, budget=4)
    assert report["growth_verified"] is True


def test_two_by_two_claim_needs_monoid():
    from rankmat.enumerate import left_zero

    with pytest.raises(ValueError):
        two_by_two_claim(left_zero(2), 0, 1, 0)


def test_is_irredundant():
    assert is_irredundant(SemigroupMatrix.make([[0, 1], [1, 0]], Z2))
    assert not is_irredundant(SemigroupMatrix.make([[0, 0], [1, 1]], Z2))


def test_hypergraph_validation():
    with pytest.raises(ValueError, match="entry per subset"):
        Hypergraph(2, 2, (0, 1))
    with pytest.raises(ValueError, match="out of range"):
        Hypergraph(1, 1, (0, 1))


def test_hypergraph_rank_pair_edge():
    # edge present only on the full pair {0, 1}
    g = Hypergraph(2, 2, (0, 0, 0, 1))
    assert hypergraph_rank(g, 0b01) == 2
    assert hypergraph_rank(g, 0b00) == 1
    # with X the full set the rows are the subsets of X over the single
    # empty-complement column, so distinct edge colours count
    assert hypergraph_rank(g, 0b11) == 2


def test_hypergraph_kron_and():
    v = Hypergraph(1, 2, (0, 1))
    combined = hypergraph_kron(v, v, [[0, 0], [0, 1]])
    assert combined.vertices == 2
    assert combined.table == (0, 0, 0, 1)


def test_hypergraph_kron_rank_bound():
    # rank of a cut in the product is at most the product of factor ranks
    g = Hypergraph(2, 2, (0, 1, 1, 0))
    h = Hypergraph(2, 2, (0, 0, 1, 1))
    m = [[0, 1], [1, 0]]
    p = hypergraph_kron(g, h, m)
    for xg in range(4):
        for xh in range(4):
            x = xg | (xh << 2)
            assert hypergraph_rank(p, x) <= hypergraph_rank(g, xg) * hypergraph_rank(h, xh)


def test_semigroup_hypergraph_parity():
    sh = semigroup_hypergraph(Z2, 3)
    assert sh.evaluate((1, 1, 0)) == 0
    assert sh.evaluate((1, 0, 0)) == 1
    with pytest.raises(ValueError):
        sh.evaluate((1, 1))
    with pytest.raises(ValueError):
        semigroup_hypergraph(Z2, 0)


def test_semigroup_hypergraph_word_monoid():
    w = word_monoid_1abab0()
    sh = semigroup_hypergraph(w, 3)
    assert sh.evaluate((1, 2, 0)) == 3  # a b 1 = ab
    assert sh.evaluate((1, 1, 2)) == 5  # a a b = 0
