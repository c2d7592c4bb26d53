import pytest
from hypothesis import given, settings, strategies as st

from affpieces import build_affine_cartan
from affpieces.cosets import (
    InfiniteParabolicError,
    ad_simple,
    ad_subset,
    coset_elements,
    enumerate_parabolic,
    is_finite_parabolic,
    is_min_double_rep,
    min_double,
    min_left,
    min_right,
)
from affpieces.polynomial import Poly, Q
from affpieces.weyl import WeylElement, ball_enumerate, from_word, identity
from oracles import WordOracle, matmul, parabolic_words, reflection_matrix, word_matrix

SPECS = [("A", 1), ("A", 2), ("C", 2), ("G", 2)]


def flat_of(m):
    return tuple(x for row in m for x in row)


def brute_lengths(spec, L=10):
    """Matrix -> word length from the word oracle."""
    oracle = WordOracle(spec.cartan, L)
    return {flat_of(word_matrix(spec.cartan, min(c))): k for k, c in oracle.elements()}


def brute_double_coset(spec, w, K, J):
    """All elements of W_K w W_J as flats (word-level matrices)."""
    left = parabolic_words(spec.cartan, K)
    right = parabolic_words(spec.cartan, J)
    wm = word_matrix(spec.cartan, w.reduced_word)
    return {flat_of(matmul(matmul(a, wm), b)) for a in left for b in right}


def brute_min(spec, flats, lengths):
    best = min(flats, key=lambda f: lengths[f])
    ties = [f for f in flats if lengths[f] == lengths[best]]
    assert len(ties) == 1, "minimal element is not unique"
    return best


def test_finite_parabolic_examples(A1, A2):
    assert is_finite_parabolic(A1, {0})
    assert not is_finite_parabolic(A2, {0, 1, 2})
    assert is_finite_parabolic(A2, {0, 1})
    assert enumerate_parabolic(A2, {0, 1}).order == 6


def test_infinite_parabolic_rejected(A2):
    with pytest.raises(InfiniteParabolicError):
        enumerate_parabolic(A2, {0, 1, 2})


def test_parabolic_tables(A1, A2, G2):
    t = enumerate_parabolic(A1, {0})
    assert t.order == 2 and t.n_positive == 1 and t.poincare == 1 + Q
    t = enumerate_parabolic(A2, {1, 2})
    assert t.order == 6 and t.n_positive == 3
    assert t.poincare == (1 + Q) * (1 + Q + Q * Q)
    t = enumerate_parabolic(G2, set())
    assert t.order == 1 and t.n_positive == 0 and t.poincare == Poly((1,))
    t = enumerate_parabolic(G2, {1, 2})
    assert t.order == 12 and t.n_positive == 6
    assert t.poincare == (1 + Q) * Poly((1, 1, 1, 1, 1, 1))


@pytest.mark.parametrize("sp", SPECS)
def test_parabolic_orders_match_closure(sp):
    spec = build_affine_cartan(*sp)
    for J in spec.proper_subsets():
        t = enumerate_parabolic(spec, J)
        brute = parabolic_words(spec.cartan, J)
        assert t.order == len(brute)
        assert t.n_positive == max(brute.values())
        assert t.poincare(1) == t.order


def test_min_right_examples(A1, A2):
    assert min_right(identity(A2), {0, 1}) == identity(A2)
    assert min_right(from_word(A1, [1, 0]), {0}) == from_word(A1, [1])


def test_min_double_example(A2):
    w = from_word(A2, [1, 2, 1])
    m = min_double(w, {1}, {2})
    # s1 (121) = 21 has no left descent 1 and no right descent 2
    lengths = brute_lengths(A2, 6)
    flats = brute_double_coset(A2, w, {1}, {2})
    assert m.flat == brute_min(A2, flats, lengths)
    assert m.reduced_word == (2, 1)


def test_min_double_rep_examples(A1, A2):
    assert is_min_double_rep(identity(A1), {0, 1}, {0, 1})
    assert is_min_double_rep(from_word(A1, [1]), {0}, {0})
    assert not is_min_double_rep(from_word(A1, [0]), {0}, set())
    assert not is_min_double_rep(from_word(A2, [1, 2]), {2}, {2})


@pytest.mark.parametrize("sp", SPECS)
def test_min_reps_match_brute_force(sp):
    spec = build_affine_cartan(*sp)
    lengths = brute_lengths(spec, 10)
    subsets = [J for J in spec.proper_subsets() if len(J) <= 2]
    for w in ball_enumerate(spec, 4):
        for J in subsets:
            r = min_right(w, J)
            coset = {flat_of(word_matrix(spec.cartan, w.reduced_word + y)) for y in _words(spec, J)}
            assert r.flat == brute_min(spec, coset, lengths)
            assert not (r.right_descents & J)
            l = min_left(w, J)
            lcoset = {flat_of(word_matrix(spec.cartan, y + w.reduced_word)) for y in _words(spec, J)}
            assert l.flat == brute_min(spec, lcoset, lengths)
        for K in subsets[:4]:
            for J in subsets[:4]:
                d = min_double(w, K, J)
                assert d.flat == brute_min(spec, brute_double_coset(spec, w, K, J), lengths)
                assert is_min_double_rep(d, K, J)


def _words(spec, J):
    """One word per element of W_J, by breadth-first search on matrices."""
    n = spec.size
    ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    seen = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for j in sorted(J):
                v = matmul(m, reflection_matrix(spec.cartan, j))
                if v not in seen:
                    seen[v] = seen[m] + (j,)
                    nxt.append(v)
        frontier = nxt
    return list(seen.values())


def test_ad_examples(A1, A2):
    for j in A2.nodes:
        assert ad_simple(identity(A2), j) == j
    assert ad_simple(from_word(A1, [1]), 0) is None
    w = from_word(A2, [1, 2, 1])
    assert ad_simple(w, 1) == 2
    assert ad_subset(identity(A2), {0, 2}) == {0, 2}
    assert ad_subset(from_word(A1, [1]), {0}) == frozenset()
    assert ad_subset(w, {1, 2}) == {1, 2}


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_ad_simple_is_conjugation(sp, data):
    # w s_j w^-1 = s_k exactly when ad_simple(w, j) == k
    spec = build_affine_cartan(*sp)
    w = from_word(spec, data.draw(st.lists(st.integers(0, spec.size - 1), max_size=8)))
    for j in spec.nodes:
        conj = w * from_word(spec, [j]) * w.inverse
        k = ad_simple(w, j)
        hits = [i for i in spec.nodes if from_word(spec, [i]) == conj]
        assert hits == ([] if k is None else [k])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_coset_factorization(sp, data):
    # w = min_right(w, J) * y with lengths adding
    spec = build_affine_cartan(*sp)
    w = from_word(spec, data.draw(st.lists(st.integers(0, spec.size - 1), max_size=8)))
    J = data.draw(st.sampled_from(spec.proper_subsets()))
    r = min_right(w, J)
    y = WeylElement(spec, (r.inverse * w).flat)
    assert y.length + r.length == w.length
    assert y in set(enumerate_parabolic(spec, J).elements)
    assert w in set(coset_elements(r, J))
