"""Pairs ``(cl', g)`` for SL_2 over ``F_q((eps))``, their pieces, and orbit counts.

A pair is a volume-one lattice ``cl'`` together with a determinant-one map
``g: cl / eps cl -> cl' / eps cl'`` written in the standard basis of cl and
the canonical basis of cl'. Level-0 pairs form Y0; at level n >= 1 a pair is
in Y'_n when g carries the boundary line of cl onto the boundary line of cl',
and in Y''_n otherwise.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache

from ..bedard import identity_aut, enumerate_sequences, piece_descriptor, point_count
from ..bitorsor import sl2_elements, sl2_group, twisted_orbits, units_group, power_map
from ..cartan import build_affine_cartan
from ..gf import field as gf_field
from . import laurent as lp
from .lattice import LatticeClass, boundary_lines, enumerate_lattices, lattice_count, truncation
from .module import rref

SCHEMA_VERSION = 1


@dataclass(frozen=True, order=True)
class PieceLabel:
    n: int
    kind: str  # "Y0", "Yprime" or "Ydoubleprime"

    def __post_init__(self):
        if self.kind == "Y0":
            if self.n != 0:
                raise ValueError("Y0 lives at level 0")
        elif self.kind in ("Yprime", "Ydoubleprime"):
            if self.n < 1:
                raise ValueError(f"{self.kind} needs n >= 1")
        else:
            raise ValueError(f"unknown piece kind {self.kind!r}")

    def __str__(self):
        if self.kind == "Y0":
            return "Y0"
        return ("Y'_" if self.kind == "Yprime" else "Y''_") + str(self.n)

    @classmethod
    def parse(cls, text: str) -> "PieceLabel":
        t = text.strip()
        if t == "Y0":
            return Y0
        for prefix, kind in (("Y''_", "Ydoubleprime"), ("Y'_", "Yprime")):
            if t.startswith(prefix):
                return cls(int(t[len(prefix):]), kind)
        raise ValueError(f"cannot parse piece label {text!r}")

    def formula(self, q: int) -> int:
        base = q * q - 1
        if self.kind == "Y0":
            return q * base
        if self.kind == "Yprime":
            return q ** (2 * self.n) * base
        return q ** (2 * self.n + 1) * base

    @property
    def length(self) -> int:
        """Length of ``w_inf`` for the matching piece of the affine A1 decomposition."""
        if self.kind == "Y0":
            return 0
        return 2 * self.n - 1 if self.kind == "Yprime" else 2 * self.n


Y0 = PieceLabel(0, "Y0")


def Yprime(n: int) -> PieceLabel:
    return PieceLabel(n, "Yprime")


def Ydoubleprime(n: int) -> PieceLabel:
    return PieceLabel(n, "Ydoubleprime")


def label_for_length(l: int) -> PieceLabel:
    if l < 0:
        raise ValueError("length must be non-negative")
    if l == 0:
        return Y0
    return Yprime((l + 1) // 2) if l % 2 else Ydoubleprime(l // 2)


def labels_up_to(n_max: int) -> list[PieceLabel]:
    out = [Y0]
    for n in range(1, n_max + 1):
        out += [Yprime(n), Ydoubleprime(n)]
    return out


@dataclass(frozen=True)
class PairPoint:
    lattice: LatticeClass
    g: tuple[int, int, int, int]

    def __post_init__(self):
        F = gf_field(self.lattice.q)
        a, b, c, d = self.g
        if F.sub(F.mul(a, d), F.mul(b, c)) != 1:
            raise ValueError(f"g = {self.g} does not have determinant 1")


def _normalize(F, v):
    return rref(F, [v], 2)[0]


def apply_line(F, g, line):
    a, b, c, d = g
    x, y = line
    return _normalize(F, (F.add(F.mul(a, x), F.mul(b, y)), F.add(F.mul(c, x), F.mul(d, y))))


def classify_pair(p: PairPoint) -> PieceLabel:
    n = p.lattice.level
    if n == 0:
        return Y0
    F = gf_field(p.lattice.q)
    l1, l2 = boundary_lines(p.lattice)
    return Yprime(n) if apply_line(F, p.g, l1) == l2 else Ydoubleprime(n)


def pair_points(q: int, n: int):
    """Every pair at level n, ordered by lattice word then by g."""
    G = sl2_elements(q)
    for lat in enumerate_lattices(q, n):
        for g in G:
            yield PairPoint(lat, g)


@dataclass(frozen=True)
class CensusRow:
    q: int
    n: int
    label: PieceLabel
    count: int

    @property
    def formula_value(self) -> int:
        return self.label.formula(self.q)

    @property
    def match(self) -> bool:
        return self.count == self.formula_value

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "label": str(self.label), "count": self.count,
                "formula_value": self.formula_value, "match": self.match}


CENSUS_COLUMNS = ("q", "n", "label", "count", "formula_value", "match")


@dataclass
class Census:
    q: int
    n_max: int
    rows: list[CensusRow]
    lattices: dict[int, int]
    points: int
    split_ok: bool  # every lattice splits q(q-1) / q^2(q-1)

    def count(self, label: PieceLabel) -> int:
        for r in self.rows:
            if r.label == label:
                return r.count
        raise KeyError(str(label))

    @property
    def passed(self) -> bool:
        lattices_ok = all(self.lattices[n] == lattice_count(self.q, n) for n in self.lattices)
        total_ok = sum(r.count for r in self.rows) == self.points
        return all(r.match for r in self.rows) and self.split_ok and lattices_ok and total_ok

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n_max": self.n_max,
            "rows": [r.to_json() for r in self.rows],
            "lattices": {str(n): c for n, c in sorted(self.lattices.items())},
            "points": self.points,
            "per_lattice_split": self.split_ok,
            "passed": self.passed,
        }


def census(q: int, n_max: int) -> Census:
    """Classify every pair at levels ``0..n_max`` exhaustively."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    F = gf_field(q)
    G = sl2_elements(q)
    rows = [CensusRow(q, 0, Y0, len(G))]
    lattices = {0: 1}
    points = len(G)
    split_ok = True
    want = (q * (q - 1), q * q * (q - 1))
    for n in range(1, n_max + 1):
        lats = enumerate_lattices(q, n)
        lattices[n] = len(lats)
        n1 = n2 = 0
        for lat in lats:
            l1, l2 = boundary_lines(lat)
            hit = sum(1 for g in G if apply_line(F, g, l1) == l2)
            split_ok &= (hit, len(G) - hit) == want
            n1 += hit
            n2 += len(G) - hit
            points += len(G)
        rows.append(CensusRow(q, n, Yprime(n), n1))
        rows.append(CensusRow(q, n, Ydoubleprime(n), n2))
    return Census(q, n_max, rows, lattices, points, split_ok)


def census_csv(tables) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CENSUS_COLUMNS)
    for t in tables:
        for r in t.rows:
            d = r.to_json()
            w.writerow([d[c] for c in CENSUS_COLUMNS])
    return buf.getvalue()


# -- comparison with the affine A1 pieces --

def affine_a1_pieces(L: int):
    """Descriptors for J = {0}, delta = id, ordered by length of ``w_inf``."""
    spec = build_affine_cartan("A", 1)
    seqs = enumerate_sequences(spec, frozenset({0}), identity_aut(spec), L)
    return [piece_descriptor(t) for t in seqs]


@dataclass(frozen=True)
class PieceMatch:
    length: int
    word: tuple[int, ...]
    label: PieceLabel
    polynomial: str
    value: int
    census_count: int | None
    derived_labels: tuple[PieceLabel, ...]

    @property
    def match(self) -> bool:
        return self.value == self.census_count and self.derived_labels == (self.label,)

    def to_json(self) -> dict:
        return {"length": self.length, "w_inf": list(self.word), "label": str(self.label),
                "polynomial": self.polynomial, "value": self.value,
                "census_count": self.census_count,
                "derived_labels": [str(x) for x in self.derived_labels], "match": self.match}


@dataclass
class MatchReport:
    q: int
    L: int
    matches: list[PieceMatch]
    multiset_ok: bool

    @property
    def passed(self) -> bool:
        return self.multiset_ok and all(m.match for m in self.matches)

    def to_json(self) -> dict:
        return {"q": self.q, "L": self.L, "multiset_ok": self.multiset_ok,
                "matches": [m.to_json() for m in self.matches], "passed": self.passed}


def match_pieces(q: int, L: int, table: Census | None = None) -> MatchReport:
    """Evaluate point counts of the affine A1 pieces at q and compare with the census.

    Besides the fixed length/label correspondence, every value is also matched
    to census labels by cardinality alone (``derived_labels``); the two must agree.
    """
    if L < 0:
        raise ValueError("L must be non-negative")
    n_max = (L + 1) // 2
    if table is None or table.q != q or table.n_max < n_max:
        table = census(q, n_max)
    labels = [label_for_length(l) for l in range(L + 1)]
    counts = {lab: table.count(lab) for lab in labels}
    out = []
    for d in affine_a1_pieces(L):
        poly = point_count(d)
        value = poly(q)
        lab = label_for_length(d.w_inf_length)
        derived = tuple(sorted(x for x, c in counts.items() if c == value))
        out.append(PieceMatch(d.w_inf_length, d.tau.w_inf.reduced_word, lab, str(poly),
                              value, counts.get(lab), derived))
    values = sorted(m.value for m in out)
    multiset_ok = values == sorted(counts.values())
    return MatchReport(q, L, out, multiset_ok)


# -- orbits --

def finite_sign(w) -> int:
    """Sign s with ``w(alpha_1) = s alpha_1`` modulo the null root (affine A1 only)."""
    c0, c1 = w.column(1)
    s = c1 - c0
    if s not in (1, -1):
        raise ValueError(f"unexpected image {(c0, c1)} of alpha_1")
    return s


def piece_for(label: PieceLabel):
    for d in affine_a1_pieces(label.length):
        if d.w_inf_length == label.length:
            return d
    raise LookupError(f"no affine A1 piece of length {label.length}")


@lru_cache(maxsize=None)
def predicted_orbits(q: int, label: PieceLabel) -> int:
    """Orbit count predicted by twisted classes of the Levi of ``J_inf``.

    For J_inf = {0} the Levi is SL_2 with the trivial twist (conjugacy
    classes); for J_inf empty it is the torus ``F_q^x`` twisted by ``x -> x^s``
    where s is the finite sign of ``w_inf``.
    """
    d = piece_for(label)
    if d.tau.J_inf:
        G = sl2_group(q)
        return len(twisted_orbits(G, tuple(range(G.order))))
    T = units_group(q)
    return len(twisted_orbits(T, power_map(T, finite_sign(d.tau.w_inf))))


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))
        self.components = n

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.components -= 1


def _generators(F, k):
    """Lifts ``x12(c eps^k)`` and ``x21(c eps^k)`` for c in an additive basis of F."""
    out = []
    for c in F.additive_basis():
        out.append(({0: 1}, {k: c}, {}, {0: 1}))
        out.append(({0: 1}, {}, {k: c}, {0: 1}))
    return out


def _mul_g(F, x, y):
    return (
        F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])),
        F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
        F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])),
        F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3])),
    )


def _inv_g(F, x):
    a, b, c, d = x
    return (d, F.neg(b), F.neg(c), a)


class PairAction:
    """Action of ``SL_2(F_q[[eps]])`` on level-n pairs by transport of structure.

    ``p`` sends ``(cl', g)`` to ``(p cl', M g p0^-1)`` where ``p0`` is p mod eps
    and M is the matrix of ``p: cl' -> p cl'`` in the canonical bases, mod eps.
    """

    def __init__(self, q: int, n: int):
        self.q, self.n = q, n
        self.F = gf_field(q)
        self.lattices = enumerate_lattices(q, n)
        self.T = truncation(q, n)
        self.index = {self.T.lattice(lat.basis): i for i, lat in enumerate(self.lattices)}
        self._cache = {}

    def lattice_step(self, i: int, p):
        key = (i, lp.freeze_mat(p))
        hit = self._cache.get(key)
        if hit is None:
            F = self.F
            pB = lp.mat_mul(F, p, self.lattices[i].basis)
            j = self.index.get(self.T.lattice(pB))
            if j is None:
                raise AssertionError("p moved a lattice off its level")
            M = lp.mat_mul(F, lp.adjugate(F, self.lattices[j].basis), pB)
            hit = (j, lp.reduce_mod_eps(M))
            self._cache[key] = hit
        return hit

    def act(self, p, i: int, g):
        j, m = self.lattice_step(i, p)
        p0 = lp.reduce_mod_eps(p)
        return j, _mul_g(self.F, _mul_g(self.F, m, g), _inv_g(self.F, p0))


@dataclass
class OrbitCensus:
    q: int
    label: PieceLabel
    counts: list[tuple[int, int]]  # (precision, orbit count)
    status: str  # "stable" or "inconclusive"
    certified: bool  # reached a precision where the congruence kernel acts trivially
    predicted: int

    @property
    def value(self) -> int | None:
        return self.counts[-1][1] if self.status == "stable" else None

    @property
    def passed(self) -> bool:
        return self.status == "stable" and self.value == self.predicted

    def to_json(self) -> dict:
        return {"q": self.q, "label": str(self.label), "status": self.status,
                "certified": self.certified, "value": self.value, "predicted": self.predicted,
                "counts": [{"precision": k, "orbits": c} for k, c in self.counts],
                "passed": self.passed}


def orbit_census(q: int, label: PieceLabel, max_precision: int = 6, window: int = 2) -> OrbitCensus:
    """Count orbits on one piece, raising the eps-precision of the acting generators.

    At precision k the acting group is generated by elementary matrices with
    entries ``c eps^j``, ``j < k``. Counts never increase with k; the run stops
    once ``window`` consecutive precisions agree and ``k >= 2n + 1`` (beyond
    which matrices congruent to 1 act trivially, so the count is exact). If the
    budget runs out first the status is "inconclusive" unless the last window
    agrees.
    """
    if max_precision < 1 or window < 1:
        raise ValueError("precision budget and window must be positive")
    n = label.n
    act = PairAction(q, n)
    G = sl2_elements(q)
    pts = []
    for i, lat in enumerate(act.lattices):
        for g in G:
            if classify_pair(PairPoint(lat, g)) == label:
                pts.append((i, g))
    where = {pt: k for k, pt in enumerate(pts)}
    dsu = _DSU(len(pts))
    counts = []
    exact_from = 2 * n + 1
    status = "inconclusive"
    for k in range(1, max_precision + 1):
        for p in _generators(act.F, k - 1):
            for idx, (i, g) in enumerate(pts):
                image = act.act(p, i, g)
                dsu.union(idx, where[image])
        counts.append((k, dsu.components))
        tail = [c for _, c in counts[-window:]]
        agree = len(tail) == window and len(set(tail)) == 1
        if agree and k >= exact_from:
            status = "stable"
            break
    else:
        tail = [c for _, c in counts[-window:]]
        if len(tail) == window and len(set(tail)) == 1:
            status = "stable"
    return OrbitCensus(q, label, counts, status, counts[-1][0] >= exact_from, predicted_orbits(q, label))
