import pytest
from hypothesis import given, settings, strategies as st

from affpieces import bedard, build_affine_cartan
from affpieces.bedard import (
    BedardError,
    DiagramAut,
    bijection_check,
    enumerate_sequences,
    identity_aut,
    next_J,
    piece_descriptor,
    point_count,
    sequence_from_w,
    sequence_violations,
    validate_automorphism,
)
from affpieces.cosets import min_left, min_right
from affpieces.polynomial import Poly, Q
from affpieces.weyl import ball_enumerate, from_word, identity
from oracles import WordOracle, matmul, parabolic_words, reflection_matrix, word_matrix


def flat_of(m):
    return tuple(x for row in m for x in row)


class ChainOracle:
    """Sequences by brute force over word-level matrices and word lengths."""

    def __init__(self, spec, L):
        self.A = spec.cartan
        self.n = spec.size
        self.L = L
        words = WordOracle(self.A, L + 1)
        self.length = {}
        for k, cls in words.elements():
            self.length[word_matrix(self.A, min(cls))] = k
        self.ball = [m for m, k in self.length.items() if k <= L]
        self.refl = [reflection_matrix(self.A, i) for i in range(self.n)]

    def left_descents(self, m):
        k = self.length[m]
        return {i for i in range(self.n) if self.length.get(matmul(self.refl[i], m), k + 1) < k}

    def right_descents(self, m):
        k = self.length[m]
        return {i for i in range(self.n) if self.length.get(matmul(m, self.refl[i]), k + 1) < k}

    def ad(self, m, J):
        out = set()
        for j in J:
            col = [m[r][j] for r in range(self.n)]
            nz = [r for r in range(self.n) if col[r]]
            if len(nz) == 1 and abs(col[nz[0]]) == 1:
                out.add(nz[0])
        return out

    def sequences(self, J, perm):
        inv = {perm[i]: i for i in range(self.n)}
        img = lambda S: {perm[i] for i in S}
        out = set()

        def ok(m, Jn):
            return not (self.left_descents(m) & img(Jn)) and not (self.right_descents(m) & Jn)

        def grow(chain):
            Jn, m = chain[-1]
            Jnext = frozenset(Jn) & frozenset(inv[k] for k in self.ad(m, Jn))
            if Jnext == Jn:
                out.add(tuple((tuple(sorted(a)), flat_of(b)) for a, b in chain))
                return
            for y in parabolic_words(self.A, Jn):
                v = matmul(m, y)
                if self.length.get(v, self.L + 1) <= self.L and ok(v, Jnext):
                    grow(chain + [(Jnext, v)])

        J = frozenset(J)
        for m in self.ball:
            if ok(m, J):
                grow([(J, m)])
        return out


ROT = (1, 2, 0)
REFL = (0, 2, 1)


def test_validate_automorphism(A1, A2, G2):
    assert validate_automorphism(A2, (0, 1, 2)).is_identity()
    assert validate_automorphism(A2, ROT).order == 3
    assert validate_automorphism(A1, (1, 0)).order == 2
    for bad in [(0, 2, 2), (0, 1), (0, 1, 3)]:
        with pytest.raises((ValueError, BedardError)):
            validate_automorphism(A2, bad)
    with pytest.raises((ValueError, BedardError)):
        validate_automorphism(G2, (0, 2, 1))


def test_sequence_from_w_examples(A1, A2):
    tau = sequence_from_w(identity(A1), {0}, identity_aut(A1))
    assert [(set(J), w.reduced_word) for J, w in tau.stages] == [({0}, ())]
    tau = sequence_from_w(from_word(A1, [1, 0]), {0}, identity_aut(A1))
    assert [(set(J), w.reduced_word) for J, w in tau.stages] == [({0}, (1,)), (set(), (1, 0))]
    assert tau.J_inf == frozenset() and tau.w_inf.reduced_word == (1, 0)
    rot = validate_automorphism(A2, ROT)
    tau = sequence_from_w(identity(A2), {0}, rot)
    assert [(set(J), w.reduced_word) for J, w in tau.stages] == [({0}, ()), (set(), ())]


def test_sequence_from_w_rejects_bad_input(A1, A2):
    with pytest.raises(ValueError):
        sequence_from_w(from_word(A1, [0, 1]), {0}, identity_aut(A1))
    with pytest.raises(ValueError):
        sequence_from_w(identity(A2), {0, 1, 2}, identity_aut(A2))


def test_guard_aborts_instead_of_repairing(A1, monkeypatch):
    monkeypatch.setattr(bedard, "min_right", lambda w, J: w)
    with pytest.raises(BedardError):
        sequence_from_w(from_word(A1, [1, 0]), {0}, identity_aut(A1))


def test_enumerate_examples(A1, A2):
    e = identity_aut(A1)
    assert [t.w_inf.length for t in enumerate_sequences(A1, {0}, e, 0)] == [0]
    seqs = enumerate_sequences(A1, {0}, e, 3)
    assert [t.w_inf.reduced_word for t in seqs] == [(), (1,), (1, 0), (1, 0, 1)]
    seqs = enumerate_sequences(A2, {1, 2}, identity_aut(A2), 4)
    target = [w for w in ball_enumerate(A2, 4) if not (w.left_descents & {1, 2})]
    assert len(seqs) == len(target)


@pytest.mark.parametrize("sp,J,perm,L", [
    (("A", 1), {0}, (0, 1), 6),
    (("A", 1), {0}, (1, 0), 6),
    (("A", 2), {0}, ROT, 5),
    (("A", 2), {0, 1}, ROT, 5),
    (("A", 2), {1}, REFL, 5),
    (("A", 2), {1, 2}, (0, 1, 2), 5),
    (("C", 2), {0, 2}, (2, 1, 0), 5),
    (("G", 2), {1}, (0, 1, 2), 5),
    (("G", 2), {0, 1}, (0, 1, 2), 5),
])
def test_enumeration_matches_chain_oracle(sp, J, perm, L):
    spec = build_affine_cartan(*sp)
    got = {t.key() for t in enumerate_sequences(spec, J, validate_automorphism(spec, perm), L)}
    assert got == ChainOracle(spec, L).sequences(J, perm)


def test_bijection_examples(A1, A2):
    rep = bijection_check(A1, {0}, identity_aut(A1), 8)
    assert rep.passed and rep.n_sequences == 9
    assert bijection_check(A1, {0}, validate_automorphism(A1, (1, 0)), 6).passed
    assert bijection_check(A2, {0, 1}, validate_automorphism(A2, ROT), 6).passed


def test_bijection_report_lists_violations(A2):
    e = identity_aut(A2)
    good = enumerate_sequences(A2, {0}, e, 3)
    rep = bijection_check(A2, {0}, e, 3, sequences=good[:-1] + [good[0]])
    assert not rep.passed
    assert not rep.checks["injective"] and not rep.checks["surjective"]
    assert rep.violations
    d = rep.to_json()
    assert d["passed"] is False


def test_point_count_examples(A1):
    ds = [piece_descriptor(t) for t in enumerate_sequences(A1, {0}, identity_aut(A1), 2)]
    base = Q * Q - 1
    assert [point_count(d, 1) for d in ds] == [Q * base, Q ** 2 * base, Q ** 3 * base]
    assert point_count(ds[0]) == point_count(ds[0], 1)
    with pytest.raises(ValueError):
        point_count(ds[0], -1)


@pytest.mark.parametrize("sp,J,perm", [
    (("A", 2), {0}, (0, 1, 2)), (("A", 2), {1, 2}, REFL), (("G", 2), {1, 2}, (0, 1, 2)),
])
def test_point_counts_differ_by_length_factor(sp, J, perm):
    spec = build_affine_cartan(*sp)
    ds = [piece_descriptor(t) for t in enumerate_sequences(spec, J, validate_automorphism(spec, perm), 5)]
    base = point_count(ds[0])
    for d in ds:
        assert point_count(d) == base * Poly.monomial(d.w_inf_length - ds[0].w_inf_length)


@pytest.mark.parametrize("sp,J,perm", [
    (("A", 2), {1, 2}, (0, 1, 2)), (("A", 2), {1, 2}, REFL), (("A", 2), {0, 1}, ROT),
    (("C", 2), {0, 2}, (2, 1, 0)), (("G", 2), {1, 2}, (0, 1, 2)),
])
def test_twist_preserves_cartan_and_has_exact_order(sp, J, perm):
    spec = build_affine_cartan(*sp)
    A = spec.cartan
    for t in enumerate_sequences(spec, J, validate_automorphism(spec, perm), 6):
        d = piece_descriptor(t)
        tw = d.twist_map
        for a in tw:
            for b in tw:
                assert A[a][b] == A[tw[a]][tw[b]]
        k = d.twist_order
        for x in tw:
            y = x
            for _ in range(k):
                y = tw[y]
            assert y == x
        assert all(any(_power(tw, x, m) != x for x in tw) for m in range(1, k))


def _power(tw, x, m):
    for _ in range(m):
        x = tw[x]
    return x


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("A", 1), ("A", 2), ("C", 2), ("G", 2)]), st.data())
def test_greedy_inverse_on_random_targets(sp, data):
    spec = build_affine_cartan(*sp)
    J = data.draw(st.sampled_from([S for S in spec.proper_subsets() if S]))
    w = from_word(spec, data.draw(st.lists(st.integers(0, spec.size - 1), max_size=8)))
    w = min_left(w, J)
    tau = sequence_from_w(w, J, identity_aut(spec))
    assert tau.w_inf == w
    assert sequence_violations(tau) == []
    J_inf, w_inf = tau.stages[-1]
    assert next_J(J_inf, w_inf, identity_aut(spec)) == J_inf
    assert min_right(w_inf, J_inf) == w_inf


def test_json_shapes(A2):
    tau = enumerate_sequences(A2, {0}, validate_automorphism(A2, ROT), 2)[-1]
    d = tau.to_json()
    assert set(d) >= {"J", "delta", "stages", "J_inf", "w_inf", "w_inf_length"}
    p = piece_descriptor(tau).to_json()
    assert p["w_inf_length"] == tau.w_inf.length


def test_diagram_aut_helpers(A2):
    rot = validate_automorphism(A2, ROT)
    assert isinstance(rot, DiagramAut)
    assert rot.image({0}) == {1}
    assert rot.preimage({0}) == {2}
    assert rot.inverse_perm == (2, 0, 1)
