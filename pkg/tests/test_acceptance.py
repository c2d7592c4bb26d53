"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from affpieces import build_affine_cartan  # noqa: E402
from affpieces.bedard import (  # noqa: E402
    bijection_check,
    enumerate_sequences,
    next_J,
    sequence_from_w,
    validate_automorphism,
)
from affpieces.bitorsor import (  # noqa: E402
    BUILTIN_TORSORS,
    GroupError,
    build_component,
    check_automorphism,
    check_equivariance,
    sl2_group,
    tau_of,
    twisted_orbits,
)
from affpieces.cosets import min_right  # noqa: E402
from affpieces.sl2.model import Y0, Yprime, census, match_pieces, orbit_census  # noqa: E402
from affpieces.weyl import WeylElement, ball_layers, from_word  # noqa: E402
from oracles import WordOracle  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def _bijection_configs():
    A1 = build_affine_cartan("A", 1)
    A2 = build_affine_cartan("A", 2)
    G2 = build_affine_cartan("G", 2)
    out = []
    for perm in ((0, 1), (1, 0)):
        out.append((A1, frozenset({0}), perm))
    for J in A2.proper_subsets():
        if J:
            for perm in ((0, 1, 2), (1, 2, 0), (0, 2, 1)):
                out.append((A2, J, perm))
    for J in G2.proper_subsets():
        out.append((G2, J, (0, 1, 2)))
    return out


_SEQ_CACHE = {}


def _sequences(spec, J, perm, L=8):
    key = (spec.label, J, perm, L)
    if key not in _SEQ_CACHE:
        _SEQ_CACHE[key] = enumerate_sequences(spec, J, validate_automorphism(spec, perm), L)
    return _SEQ_CACHE[key]


def criterion_1():
    bad = []
    for q in (2, 3):
        c = census(q, 3)
        for r in c.rows:
            if r.count != r.formula_value:
                bad.append(f"q={q} {r.label}: {r.count} != {r.formula_value}")
        if not c.passed:
            bad.append(f"q={q}: partition or per-lattice split failed")
    return not bad, "; ".join(bad) or "14 exact counts over q in {2,3}, n <= 3"


def criterion_2():
    bad = []
    n_max = 3
    for q in (2, 3):
        rep = match_pieces(q, 2 * n_max)
        for m in rep.matches:
            if not m.match:
                bad.append(f"q={q} l={m.length}: {m.value} vs {m.census_count}")
        if not rep.passed:
            bad.append(f"q={q}: multiset mismatch")
    return not bad, "; ".join(bad) or "7 pieces per q, L = 6"


def criterion_3():
    bad = []
    total = 0
    for spec, J, perm in _bijection_configs():
        seqs = _sequences(spec, J, perm)
        total += len(seqs)
        rep = bijection_check(spec, J, validate_automorphism(spec, perm), 8, sequences=seqs)
        if not rep.passed:
            bad.append(f"{spec.label} J={sorted(J)} delta={perm}: {rep.violations[:2]}")
    n = len(_bijection_configs())
    return not bad, "; ".join(bad) or f"{n} configurations, {total} sequences at L = 8"


def criterion_4():
    bad = []
    for fam, rank in (("A", 1), ("A", 2), ("C", 2)):
        spec = build_affine_cartan(fam, rank)
        oracle = WordOracle(spec.cartan, 6)
        layers = ball_layers(spec, 6)
        if [len(x) for x in layers] != [len(x) for x in oracle.layers]:
            bad.append(f"{spec.label}: layer sizes differ")
            continue
        seen = {}
        engine = {w.flat for layer in layers for w in layer}
        for k, cls in oracle.elements():
            flats = {from_word(spec, w).flat for w in cls}
            if len(flats) != 1:
                bad.append(f"{spec.label}: equivalent words {min(cls)} give different matrices")
                continue
            flat = flats.pop()
            if flat in seen:
                bad.append(f"{spec.label}: collision {min(cls)} / {seen[flat]}")
            seen[flat] = min(cls)
            w = WeylElement(spec, flat)
            if (w.length, w.reduced_word) != (k, min(cls)):
                bad.append(f"{spec.label}: {min(cls)} length/word mismatch")
            if w.right_descents != WordOracle.right_descents(cls) or w.left_descents != WordOracle.left_descents(cls):
                bad.append(f"{spec.label}: {min(cls)} descent mismatch")
        if set(seen) != engine:
            bad.append(f"{spec.label}: ball differs from oracle")
    return not bad, "; ".join(bad[:3]) or "radius-6 balls of A1~, A2~, C2~ agree with the word oracle"


def criterion_5():
    bad = []
    for name in ("trivial", "s3_a3", "dihedral_z4"):
        t = BUILTIN_TORSORS[name]()
        for e in range(len(t.E)):
            try:
                check_automorphism(t.L, tau_of(t, e))
                build_component(t, e)
                if not check_equivariance(t, e):
                    bad.append(f"{name} e={e}: equivariance fails")
            except GroupError as exc:
                bad.append(f"{name} e={e}: {exc}")
    return not bad, "; ".join(bad) or "3 bitorsors, every base point"


def criterion_6():
    bad = []
    notes = []
    for q, label, want in ((3, Y0, 7), (3, Yprime(1), 2), (2, Yprime(1), 1)):
        o = orbit_census(q, label)
        if o.status != "stable":
            bad.append(f"q={q} {label}: inconclusive ({o.counts})")
            continue
        if label == Y0:
            G = sl2_group(q)
            predicted = len(twisted_orbits(G, tuple(range(G.order))))
        else:
            predicted = o.predicted
        if not (o.value == want == predicted):
            bad.append(f"q={q} {label}: orbits {o.value}, twisted classes {predicted}, expected {want}")
        notes.append(f"{label}@q={q}: {o.value} (stable at precision {o.counts[-1][0]})")
    return not bad, "; ".join(bad) or ", ".join(notes)


def criterion_7():
    bad = []
    count = 0
    for spec, J, perm in _bijection_configs():
        delta = validate_automorphism(spec, perm)
        for tau in _sequences(spec, J, perm):
            count += 1
            lengths = [w.length for _, w in tau.stages]
            Js = [Jn for Jn, _ in tau.stages]
            tag = f"{spec.label} J={sorted(J)} delta={perm} w={list(tau.w_inf.reduced_word)}"
            if lengths != sorted(lengths):
                bad.append(f"{tag}: lengths not monotone")
            if any(not b <= a for a, b in zip(Js, Js[1:])):
                bad.append(f"{tag}: J-chain not descending")
            J_inf, w_inf = tau.stages[-1]
            if next_J(J_inf, w_inf, delta) != J_inf or min_right(w_inf, J_inf) != w_inf:
                bad.append(f"{tag}: stable stage moves")
            if sequence_from_w(w_inf, J, delta).key() != tau.key():
                bad.append(f"{tag}: round trip differs")
    return not bad, "; ".join(bad[:3]) or f"{count} sequences checked"


CRITERIA = {
    1: ("census cardinalities", criterion_1),
    2: ("point counts match census", criterion_2),
    3: ("truncated bijection", criterion_3),
    4: ("Coxeter engine vs word oracle", criterion_4),
    5: ("bitorsor suite", criterion_5),
    6: ("orbit counts vs twisted classes", criterion_6),
    7: ("sequence properties", criterion_7),
}


def run_criterion(n):
    name, fn = CRITERIA[n]
    ok, detail = fn()
    RESULTS[n] = (ok, detail)
    return ok, detail


def format_line(n):
    ok, detail = RESULTS[n]
    return f"criterion {n} [{CRITERIA[n][0]}]: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = run_criterion(n)
    print(format_line(n))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, _ = run_criterion(n)
        failed += not ok
        print(format_line(n))
    sys.exit(1 if failed else 0)
