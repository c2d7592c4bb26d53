"""Diagram automorphisms, Bedard sequences T(J, delta), piece descriptors and point counts.

A sequence is a finite list of stages ``(J_n, w_n)`` ending at the first
stable stage; the infinite tail repeats that stage. Conditions enforced on
every stage:

* ``J_0 = J`` and ``J_n = J_{n-1} & delta^{-1}(ad_subset(w_{n-1}, J_{n-1}))``;
* ``w_n`` has no left descents in ``delta(J_n)`` and no right descents in ``J_n``;
* ``w_n`` lies in ``w_{n-1} W_{J_{n-1}}``;
* at the last stage the update reproduces ``J_n``, and then
  ``ad_subset(w_inf, J_inf) == delta(J_inf)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm

from .cartan import CartanSpec
from .cosets import ad_simple, ad_subset, enumerate_parabolic, is_min_double_rep, min_right
from .polynomial import Poly, Q
from .weyl import WeylElement, ball_enumerate, nodeset


class BedardError(RuntimeError):
    """A sequence invariant failed while building a sequence from its limit."""


@dataclass(frozen=True)
class DiagramAut:
    spec: CartanSpec
    perm: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def image(self, J) -> frozenset:
        return frozenset(self.perm[j] for j in J)

    def preimage(self, J) -> frozenset:
        J = frozenset(J)
        return frozenset(i for i, p in enumerate(self.perm) if p in J)

    @cached_property
    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return tuple(inv)

    @cached_property
    def order(self) -> int:
        return _perm_order(dict(enumerate(self.perm)))

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))


def validate_automorphism(spec: CartanSpec, perm) -> DiagramAut:
    """Accept ``perm`` (``perm[i]`` is the image of node i) iff it preserves the Cartan matrix."""
    perm = tuple(int(p) for p in perm)
    n = spec.size
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{list(perm)} is not a permutation of I = {list(range(n))}")
    A = spec.cartan
    for i in range(n):
        for j in range(n):
            if A[perm[i]][perm[j]] != A[i][j]:
                raise ValueError(
                    f"{list(perm)} does not preserve the Cartan matrix: "
                    f"A[{perm[i]}][{perm[j]}] = {A[perm[i]][perm[j]]} but A[{i}][{j}] = {A[i][j]}"
                )
    return DiagramAut(spec, perm)


def identity_aut(spec: CartanSpec) -> DiagramAut:
    return DiagramAut(spec, tuple(range(spec.size)))


def next_J(Jn, wn: WeylElement, delta: DiagramAut) -> frozenset:
    """One step of the J-recursion."""
    return frozenset(Jn) & delta.preimage(ad_subset(wn, Jn))


@dataclass(frozen=True)
class BedardSequence:
    spec: CartanSpec
    J: frozenset
    delta: DiagramAut
    stages: tuple[tuple[frozenset, WeylElement], ...]

    @property
    def J_inf(self) -> frozenset:
        return self.stages[-1][0]

    @property
    def w_inf(self) -> WeylElement:
        return self.stages[-1][1]

    def stage(self, n: int) -> tuple[frozenset, WeylElement]:
        """Stage n of the infinite sequence (the tail repeats the last stage)."""
        return self.stages[min(n, len(self.stages) - 1)]

    def key(self):
        return tuple((tuple(sorted(Jn)), wn.flat) for Jn, wn in self.stages)

    def to_json(self) -> dict:
        return {
            "J": sorted(self.J),
            "delta": list(self.delta.perm),
            "stages": [{"J": sorted(Jn), "word": list(wn.reduced_word)} for Jn, wn in self.stages],
            "J_inf": sorted(self.J_inf),
            "w_inf": list(self.w_inf.reduced_word),
            "w_inf_length": self.w_inf.length,
        }


def sequence_violations(tau: BedardSequence) -> list[str]:
    """Every defining condition or structural property of ``tau`` that fails."""
    out = []
    delta = tau.delta
    stages = tau.stages
    if not stages:
        return ["empty sequence"]
    if stages[0][0] != tau.J:
        out.append("J_0 != J")
    for n, (Jn, wn) in enumerate(stages):
        if not is_min_double_rep(wn, delta.image(Jn), Jn):
            out.append(f"stage {n}: w_n not minimal in W_delta(J_n) w_n W_J_n")
        if n == 0:
            continue
        Jp, wp = stages[n - 1]
        if Jn != next_J(Jp, wp, delta):
            out.append(f"stage {n}: J_n does not follow the recursion")
        if not Jn < Jp:
            out.append(f"stage {n}: J-chain does not strictly drop before stability")
        if min_right(wn, Jp) != wp:
            out.append(f"stage {n}: w_n not in w_(n-1) W_J_(n-1)")
        if wn.length < wp.length:
            out.append(f"stage {n}: length decreased")
    J_inf, w_inf = stages[-1]
    if next_J(J_inf, w_inf, delta) != J_inf:
        out.append("last stage is not stable")
    elif min_right(w_inf, J_inf) != w_inf:
        out.append("stability step does not reproduce w_inf")
    if ad_subset(w_inf, J_inf) != delta.image(J_inf):
        out.append("Ad(w_inf) J_inf != delta(J_inf)")
    if len(stages) > len(tau.J) + 1:
        out.append("more strict J-drops than |J|")
    return out


def sequence_from_w(w: WeylElement, J, delta: DiagramAut) -> BedardSequence:
    """The sequence with limit ``w``, built greedily with ``w_n = min_right(w, J_n)``.

    Raises BedardError if any defining condition fails along the way; the
    construction never repairs a stage.
    """
    spec = w.spec
    J = nodeset(spec, J, proper=True)
    dJ = delta.image(J)
    if w.left_descents & dJ:
        raise ValueError(f"w has left descents {sorted(w.left_descents & dJ)} in delta(J)")
    stages = []
    Jn = J
    while True:
        wn = min_right(w, Jn)
        if not is_min_double_rep(wn, delta.image(Jn), Jn):
            raise BedardError(f"stage {len(stages)}: min_right(w, J_n) has a left descent in delta(J_n)")
        if stages:
            Jp, wp = stages[-1]
            if min_right(wn, Jp) != wp:
                raise BedardError(f"stage {len(stages)}: w_n left the coset w_(n-1) W_J_(n-1)")
        stages.append((Jn, wn))
        Jnext = next_J(Jn, wn, delta)
        if Jnext == Jn:
            break
        Jn = Jnext
    if stages[-1][1] != w:
        raise BedardError("stable stage does not reach w")
    tau = BedardSequence(spec, J, delta, tuple(stages))
    if ad_subset(tau.w_inf, tau.J_inf) != delta.image(tau.J_inf):
        raise BedardError("Ad(w_inf) J_inf != delta(J_inf)")
    return tau


def _sort_key(tau):
    return (tau.w_inf.length, tau.w_inf.reduced_word)


def enumerate_sequences(spec: CartanSpec, J, delta: DiagramAut, L: int) -> list[BedardSequence]:
    """All sequences with ``length(w_inf) <= L`` by direct staged search.

    Ordered by (length of w_inf, smallest reduced word of w_inf).
    """
    J = nodeset(spec, J, proper=True)
    ball = ball_enumerate(spec, L)
    out = []

    def extend(stages):
        Jn, wn = stages[-1]
        Jnext = next_J(Jn, wn, delta)
        if Jnext == Jn:
            out.append(BedardSequence(spec, J, delta, tuple(stages)))
            return
        K = delta.image(Jnext)
        for y in enumerate_parabolic(spec, Jn).elements:
            v = wn * y
            if v.length <= L and is_min_double_rep(v, K, Jnext):
                extend(stages + [(Jnext, v)])

    dJ = delta.image(J)
    for w0 in ball:
        if is_min_double_rep(w0, dJ, J):
            extend([(J, w0)])
    out.sort(key=_sort_key)
    return out


@dataclass
class BijectionReport:
    label: str
    J: frozenset
    delta: tuple[int, ...]
    L: int
    n_sequences: int
    n_targets: int
    checks: dict
    violations: list

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "type": self.label,
            "J": sorted(self.J),
            "delta": list(self.delta),
            "L": self.L,
            "n_sequences": self.n_sequences,
            "n_targets": self.n_targets,
            "checks": dict(self.checks),
            "violations": list(self.violations),
            "passed": self.passed,
        }


def bijection_check(spec: CartanSpec, J, delta: DiagramAut, L: int, sequences=None) -> BijectionReport:
    """Check that ``tau -> w_inf`` is a bijection onto the ``delta(J)``-left-reduced elements of length <= L."""
    J = nodeset(spec, J, proper=True)
    if sequences is None:
        sequences = enumerate_sequences(spec, J, delta, L)
    dJ = delta.image(J)
    targets = {w for w in ball_enumerate(spec, L) if not (w.left_descents & dJ)}
    violations = []

    in_target = True
    for tau in sequences:
        if tau.w_inf.left_descents & dJ:
            in_target = False
            violations.append(f"w_inf {list(tau.w_inf.reduced_word)} has a left descent in delta(J)")

    limits = [tau.w_inf for tau in sequences]
    injective = len(set(limits)) == len(limits)
    if not injective:
        violations.append("two sequences share the same w_inf")

    missed = targets - set(limits)
    surjective = not missed
    for w in sorted(missed, key=lambda v: (v.length, v.reduced_word)):
        violations.append(f"no sequence reaches {list(w.reduced_word)}")

    round_trip = True
    for tau in sequences:
        try:
            back = sequence_from_w(tau.w_inf, J, delta)
        except (BedardError, ValueError) as exc:
            round_trip = False
            violations.append(f"sequence_from_w failed on {list(tau.w_inf.reduced_word)}: {exc}")
            continue
        if back.key() != tau.key():
            round_trip = False
            violations.append(f"round trip changed the sequence for {list(tau.w_inf.reduced_word)}")

    structural = True
    for tau in sequences:
        bad = sequence_violations(tau)
        if bad:
            structural = False
            violations.extend(f"{list(tau.w_inf.reduced_word)}: {b}" for b in bad)

    return BijectionReport(
        label=spec.label,
        J=J,
        delta=delta.perm,
        L=L,
        n_sequences=len(sequences),
        n_targets=len(targets),
        checks={
            "limit_in_target": in_target,
            "injective": injective,
            "surjective": surjective,
            "round_trip": round_trip,
            "structural": structural,
        },
        violations=violations,
    )


def _perm_order(perm: dict) -> int:
    seen = set()
    order = 1
    for start in perm:
        if start in seen:
            continue
        k, x = 0, start
        while True:
            seen.add(x)
            x = perm[x]
            k += 1
            if x == start:
                break
        order = lcm(order, k)
    return order


@dataclass(frozen=True)
class PieceDescriptor:
    J: frozenset
    tau: BedardSequence
    twist: tuple[tuple[int, int], ...]

    @property
    def w_inf_length(self) -> int:
        return self.tau.w_inf.length

    @property
    def twist_map(self) -> dict:
        return dict(self.twist)

    @property
    def twist_order(self) -> int:
        return _perm_order(self.twist_map)

    def to_json(self) -> dict:
        return {
            "J": sorted(self.J),
            "J_inf": sorted(self.tau.J_inf),
            "w_inf": list(self.tau.w_inf.reduced_word),
            "w_inf_length": self.w_inf_length,
            "twist": {str(j): k for j, k in self.twist},
            "twist_order": self.twist_order,
        }


def piece_descriptor(tau: BedardSequence) -> PieceDescriptor:
    """Combinatorial data of the piece indexed by ``tau``.

    The twist sends ``j`` in ``J_inf`` to the node ``k`` with
    ``delta(k) = ad_simple(w_inf, j)``.
    """
    twist = []
    for j in sorted(tau.J_inf):
        img = ad_simple(tau.w_inf, j)
        if img is None:
            raise BedardError(f"w_inf does not send alpha_{j} to a simple root")
        twist.append((j, tau.delta.inverse_perm[img]))
    if sorted(k for _, k in twist) != sorted(tau.J_inf):
        raise BedardError("twist is not a permutation of J_inf")
    return PieceDescriptor(tau.J, tau, tuple(twist))


def point_count(descriptor: PieceDescriptor, rank: int | None = None) -> Poly:
    """``q^{N_J} (q-1)^r P_J(q) q^{l(w_inf)}``: the number of F_q-points of the piece.

    ``rank`` defaults to ``|I| - 1``.
    """
    spec = descriptor.tau.spec
    if rank is None:
        rank = spec.size - 1
    if rank < 0:
        raise ValueError("rank must be non-negative")
    table = enumerate_parabolic(spec, descriptor.J)
    levi = Poly.monomial(table.n_positive) * (Q - 1) ** rank * table.poincare
    return levi * Poly.monomial(descriptor.w_inf_length)
