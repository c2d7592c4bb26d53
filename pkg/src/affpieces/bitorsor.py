"""Finite bitorsors, the automorphisms ``tau_e`` and twisted conjugacy.

For a group L acting freely and transitively on E from both sides (the two
actions commuting), ``tau_e`` is defined by ``tau_e(l) e = e l``. Fixing
``e0`` and ``d`` with ``tau_e0^d = 1`` gives the semidirect product
``L x| <omega>`` with ``omega l omega^-1 = tau_e0(l)``, and the map
``l e0 -> l omega`` identifies E, with L acting by ``e -> l e l^-1``, with
the coset ``L omega`` under conjugation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Callable, Hashable, Sequence

from .gf import field as gf_field


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by element labels and a multiplication table of indices."""

    labels: tuple
    table: tuple[tuple[int, ...], ...]
    name: str = "group"

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.labels)}

    @property
    def order(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        raise GroupError(f"{self.name}: no identity element")

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        out = []
        for a in range(self.order):
            row = self.table[a]
            b = next((b for b in range(self.order) if row[b] == e), None)
            if b is None:
                raise GroupError(f"{self.name}: element {self.labels[a]!r} has no inverse")
            out.append(b)
        return tuple(out)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def check_axioms(self) -> None:
        n = self.order
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise GroupError(f"{self.name}: table is not closed")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise GroupError(f"{self.name}: not associative")
        self.inverses  # identity and inverses

    def power(self, a: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def conjugacy_classes(self) -> list[frozenset]:
        return twisted_orbits(self, tuple(range(self.order)))

    @classmethod
    def from_generators(cls, gens: Sequence[Hashable], mul: Callable, name="group") -> "FiniteGroup":
        """Close ``gens`` under ``mul``; labels are ordered by BFS from the first product found."""
        gens = list(gens)
        if not gens:
            raise GroupError("need at least one generator")
        elems = list(dict.fromkeys(gens))
        seen = set(elems)
        frontier = list(elems)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            elems.extend(nxt)
            frontier = nxt
        # identity first, then BFS order
        e = next(x for x in elems if all(mul(x, g) == g for g in gens))
        elems.remove(e)
        elems.insert(0, e)
        idx = {x: i for i, x in enumerate(elems)}
        table = tuple(tuple(idx[mul(a, b)] for b in elems) for a in elems)
        return cls(tuple(elems), table, name)

    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[int]], name="perm group") -> "FiniteGroup":
        """Permutations as image tuples; the product ``a*b`` applies b first."""
        gens = [tuple(g) for g in gens]
        n = len(gens[0])
        gens.append(tuple(range(n)))
        return cls.from_generators(gens, lambda a, b: tuple(a[b[i]] for i in range(n)), name)

    def subgroup_indices(self, gens: Sequence[int]) -> tuple[int, ...]:
        out = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(out))

    def subgroup(self, members: Sequence[int], name="subgroup") -> "FiniteGroup":
        members = list(members)
        pos = {m: i for i, m in enumerate(members)}
        try:
            table = tuple(tuple(pos[self.table[a][b]] for b in members) for a in members)
        except KeyError:
            raise GroupError("subset is not closed under multiplication") from None
        return FiniteGroup(tuple(self.labels[m] for m in members), table, name)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(range(n)), tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), f"Z/{n}")


def symmetric_group(n: int) -> FiniteGroup:
    gens = [tuple(p) for p in permutations(range(n)) if p != tuple(range(n))]
    return FiniteGroup.from_permutations(gens, f"S{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon (order 2n) as permutations of its vertices."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, ref], f"D{2 * n}")


def _mat_mul(F, a, b):
    return (
        F.add(F.mul(a[0], b[0]), F.mul(a[1], b[2])),
        F.add(F.mul(a[0], b[1]), F.mul(a[1], b[3])),
        F.add(F.mul(a[2], b[0]), F.mul(a[3], b[2])),
        F.add(F.mul(a[2], b[1]), F.mul(a[3], b[3])),
    )


def sl2_elements(q: int) -> list[tuple[int, int, int, int]]:
    """SL_2(F_q) as row-major 4-tuples, in lexicographic order."""
    F = gf_field(q)
    out = []
    for a in F.elements:
        for b in F.elements:
            for c in F.elements:
                for d in F.elements:
                    if F.sub(F.mul(a, d), F.mul(b, c)) == 1:
                        out.append((a, b, c, d))
    return out


def sl2_group(q: int) -> FiniteGroup:
    F = gf_field(q)
    elems = sl2_elements(q)
    idx = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(idx[_mat_mul(F, a, b)] for b in elems) for a in elems)
    return FiniteGroup(tuple(elems), table, f"SL2(F{q})")


def units_group(q: int) -> FiniteGroup:
    """The multiplicative group of F_q."""
    F = gf_field(q)
    elems = tuple(F.units)
    idx = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(idx[F.mul(a, b)] for b in elems) for a in elems)
    return FiniteGroup(elems, table, f"F{q}^x")


@dataclass(frozen=True, eq=False)
class BiTorsor:
    """``left[l][e]`` is ``l.e`` and ``right[e][l]`` is ``e.l`` (indices)."""

    L: FiniteGroup
    E: tuple
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    name: str = "bitorsor"

    def __post_init__(self):
        n, m = self.L.order, len(self.E)
        if n != m:
            raise GroupError(f"{self.name}: |E| = {m} differs from |L| = {n}")
        for l in range(n):
            if sorted(self.left[l]) != list(range(m)):
                raise GroupError(f"{self.name}: left action of {self.L.labels[l]!r} is not a bijection")
        for e in range(m):
            if sorted(self.left[l][e] for l in range(n)) != list(range(m)):
                raise GroupError(f"{self.name}: left action is not free and transitive")
            if sorted(self.right[e]) != list(range(m)):
                raise GroupError(f"{self.name}: right action is not free and transitive")
        t = self.L.table
        for a in range(n):
            for b in range(n):
                for e in range(m):
                    if self.left[t[a][b]][e] != self.left[a][self.left[b][e]]:
                        raise GroupError(f"{self.name}: left action is not an action")
                    if self.right[e][t[a][b]] != self.right[self.right[e][a]][b]:
                        raise GroupError(f"{self.name}: right action is not an action")
                    if self.right[self.left[a][e]][b] != self.left[a][self.right[e][b]]:
                        raise GroupError(f"{self.name}: (l e) l' != l (e l')")

    @classmethod
    def trivial(cls, L: FiniteGroup) -> "BiTorsor":
        """E = L with both actions by multiplication."""
        t = L.table
        n = L.order
        left = tuple(tuple(t[l][e] for e in range(n)) for l in range(n))
        right = tuple(tuple(t[e][l] for l in range(n)) for e in range(n))
        return cls(L, L.labels, left, right, f"trivial({L.name})")

    @classmethod
    def from_coset(cls, G: FiniteGroup, members: Sequence[int], rep: int, name=None) -> "BiTorsor":
        """E = ``rep * L`` inside G for a subgroup L (given by member indices) normalized by ``rep``."""
        members = list(members)
        L = G.subgroup(members, name="L")
        coset = sorted({G.mul(rep, m) for m in members})
        if sorted({G.mul(m, rep) for m in members}) != coset:
            raise GroupError("rep does not normalize L; left and right cosets differ")
        pos = {x: i for i, x in enumerate(coset)}
        left = tuple(tuple(pos[G.mul(l, x)] for x in coset) for l in members)
        right = tuple(tuple(pos[G.mul(x, l)] for l in members) for x in coset)
        return cls(L, tuple(G.labels[x] for x in coset), left, right, name or f"coset in {G.name}")

    def solve_left(self, e: int, target: int) -> int:
        """The unique ``l`` with ``l.e = target``."""
        for l in range(self.L.order):
            if self.left[l][e] == target:
                return l
        raise GroupError("left action is not transitive")

    def conjugate(self, l: int, e: int) -> int:
        """``l . e . l^-1``"""
        return self.left[l][self.right[e][self.L.inv(l)]]


def tau_of(t: BiTorsor, e: int) -> tuple[int, ...]:
    """``tau_e`` as a tuple of indices: ``tau_e(l) . e = e . l``; checked to be an automorphism."""
    theta = tuple(t.solve_left(e, t.right[e][l]) for l in range(t.L.order))
    check_automorphism(t.L, theta)
    return theta


def check_automorphism(L: FiniteGroup, theta: Sequence[int]) -> None:
    if sorted(theta) != list(range(L.order)):
        raise GroupError("map is not a bijection")
    tab = L.table
    for a in range(L.order):
        for b in range(L.order):
            if theta[tab[a][b]] != tab[theta[a]][theta[b]]:
                raise GroupError("map is not multiplicative")


def _compose(f, g):
    return tuple(f[g[i]] for i in range(len(g)))


def automorphism_order(theta: Sequence[int]) -> int:
    ident = tuple(range(len(theta)))
    cur, k = tuple(theta), 1
    while cur != ident:
        cur = _compose(theta, cur)
        k += 1
    return k


@dataclass(frozen=True, eq=False)
class TwistedComponent:
    L: FiniteGroup
    theta: tuple[int, ...]
    d: int

    def __post_init__(self):
        check_automorphism(self.L, self.theta)
        if self.d < 1:
            raise GroupError("d must be positive")
        if self.d % automorphism_order(self.theta):
            raise GroupError(f"theta^{self.d} is not the identity")

    @cached_property
    def semidirect(self) -> FiniteGroup:
        """``L x| <omega>`` with labels ``(l, k)`` meaning ``l omega^k``."""
        L, d = self.L, self.d
        powers = [tuple(range(L.order))]
        for _ in range(d - 1):
            powers.append(_compose(self.theta, powers[-1]))
        elems = [(l, k) for k in range(d) for l in range(L.order)]
        idx = {x: i for i, x in enumerate(elems)}
        table = tuple(
            tuple(idx[(L.table[l1][powers[k1][l2]], (k1 + k2) % d)] for (l2, k2) in elems)
            for (l1, k1) in elems
        )
        return FiniteGroup(tuple(elems), table, f"{L.name} x| C{d}")

    def embed(self, l: int) -> int:
        return self.semidirect.index[(l, 0)]

    def coset_element(self, l: int) -> int:
        """Index of ``l omega`` in the semidirect product."""
        return self.semidirect.index[(l, 1 % self.d)]


@dataclass(frozen=True, eq=False)
class Component:
    torsor: BiTorsor
    e0: int
    twisted: TwistedComponent
    f: tuple[int, ...] = field(repr=False)

    def to_json(self) -> dict:
        return {
            "torsor": self.torsor.name,
            "order_L": self.torsor.L.order,
            "e0": repr(self.torsor.E[self.e0]),
            "d": self.twisted.d,
            "semidirect_order": self.twisted.semidirect.order,
        }


def build_component(t: BiTorsor, e0: int, d: int | None = None) -> Component:
    """Semidirect product for ``tau_e0`` and the bijection ``f: l.e0 -> l omega``."""
    theta = tau_of(t, e0)
    order = automorphism_order(theta)
    if d is None:
        d = order
    comp = TwistedComponent(t.L, theta, d)
    f = [None] * len(t.E)
    for l in range(t.L.order):
        f[t.left[l][e0]] = comp.coset_element(l)
    if any(x is None for x in f) or len(set(f)) != len(f):
        raise GroupError("f is not a bijection onto L omega")
    return Component(t, e0, comp, tuple(f))


def check_equivariance(t: BiTorsor, e0: int, d: int | None = None) -> bool:
    """``f(l e l^-1) == l f(e) l^-1`` for every l in L and e in E."""
    c = build_component(t, e0, d)
    S = c.twisted.semidirect
    for l in range(t.L.order):
        el = c.twisted.embed(l)
        el_inv = S.inv(el)
        for e in range(len(t.E)):
            if c.f[t.conjugate(l, e)] != S.mul(S.mul(el, c.f[e]), el_inv):
                return False
    return True


def twisted_orbits(L: FiniteGroup, theta: Sequence[int]) -> list[frozenset]:
    """Orbits of ``x -> l x theta(l)^-1``, ordered by smallest member."""
    n = L.order
    tab = L.table
    inv = L.inverses
    seen = [False] * n
    out = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = {tab[tab[l][x]][inv[theta[l]]] for l in range(n)}
        for y in orbit:
            seen[y] = True
        out.append(frozenset(orbit))
    return out


def twisted_classes(c: TwistedComponent) -> list[frozenset]:
    return twisted_orbits(c.L, c.theta)


def conjugation_orbits(t: BiTorsor) -> list[frozenset]:
    """Orbits of ``e -> l e l^-1`` on E, computed directly on the torsor."""
    seen = set()
    out = []
    for e in range(len(t.E)):
        if e in seen:
            continue
        orbit = frozenset(t.conjugate(l, e) for l in range(t.L.order))
        seen |= orbit
        out.append(orbit)
    return out


def inner_twist(L: FiniteGroup, theta: Sequence[int], l: int) -> tuple[int, ...]:
    """``Ad(l) o theta``"""
    inv = L.inv(l)
    return tuple(L.table[L.table[l][theta[x]]][inv] for x in range(L.order))


def power_map(L: FiniteGroup, k: int) -> tuple[int, ...]:
    """``x -> x^k`` as an index tuple (an automorphism only when L is abelian and k is prime to |L|)."""
    if k < 0:
        return tuple(L.inv(L.power(x, -k)) for x in range(L.order))
    return tuple(L.power(x, k) for x in range(L.order))


def s3_a3_torsor() -> BiTorsor:
    """L = A3 inside S3, E = the odd coset."""
    S3 = symmetric_group(3)
    a3 = tuple(i for i, p in enumerate(S3.labels) if _perm_sign(p) == 1)
    odd = next(i for i, p in enumerate(S3.labels) if _perm_sign(p) == -1)
    return BiTorsor.from_coset(S3, a3, odd, name="S3/A3")


def dihedral_z4_torsor() -> BiTorsor:
    """L = rotations Z/4 inside the dihedral group of order 8, E = the reflections."""
    D8 = dihedral_group(4)
    rot = next(i for i, p in enumerate(D8.labels) if p == (1, 2, 3, 0))
    members = D8.subgroup_indices([rot])
    ref = next(i for i in range(D8.order) if i not in members)
    return BiTorsor.from_coset(D8, members, ref, name="D8/Z4")


def trivial_torsor(L: FiniteGroup | None = None) -> BiTorsor:
    return BiTorsor.trivial(L or symmetric_group(3))


def _perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


BUILTIN_TORSORS = {
    "trivial": trivial_torsor,
    "s3_a3": s3_a3_torsor,
    "dihedral_z4": dihedral_z4_torsor,
}


def torsor_from_json(data: dict) -> BiTorsor:
    """Build a torsor from JSON.

    Two forms: ``{"ambient": [perm, ...], "subgroup": [perm, ...], "coset": perm}``
    (permutation generators) or ``{"table": [[...]], "left": [[...]], "right": [[...]]}``.
    """
    name = data.get("name", "user torsor")
    if "ambient" in data:
        G = FiniteGroup.from_permutations(data["ambient"], name=name)
        sub = G.subgroup_indices([G.index[tuple(p)] for p in data["subgroup"]])
        rep = G.index[tuple(data["coset"])]
        return BiTorsor.from_coset(G, sub, rep, name=name)
    if "table" in data:
        table = tuple(tuple(r) for r in data["table"])
        L = FiniteGroup(tuple(data.get("labels", range(len(table)))), table, name)
        L.check_axioms()
        E = tuple(data.get("E", range(len(data["left"][0]))))
        return BiTorsor(L, E, tuple(tuple(r) for r in data["left"]), tuple(tuple(r) for r in data["right"]), name)
    raise GroupError("torsor JSON needs either 'ambient'/'subgroup'/'coset' or 'table'/'left'/'right'")


@dataclass
class SuiteResult:
    name: str
    order: int
    rows: list  # per e: (label, tau order, automorphism ok, component ok, equivariant)
    conjugation_orbits: int
    twisted_classes: int

    @property
    def passed(self) -> bool:
        rows_ok = all(a and b and c for _, _, a, b, c in self.rows)
        return rows_ok and self.conjugation_orbits == self.twisted_classes

    def to_json(self) -> dict:
        return {
            "torsor": self.name,
            "order_L": self.order,
            "elements": [
                {"e": lab, "tau_order": k, "automorphism": a, "component": b, "equivariant": c}
                for lab, k, a, b, c in self.rows
            ],
            "conjugation_orbits": self.conjugation_orbits,
            "twisted_classes": self.twisted_classes,
            "passed": self.passed,
        }


def run_suite(t: BiTorsor) -> SuiteResult:
    """Check every base point of ``t``: tau_e, the semidirect component and equivariance of f."""
    rows = []
    for e in range(len(t.E)):
        k, auto, comp, equi = 0, True, True, False
        try:
            theta = tau_of(t, e)
            k = automorphism_order(theta)
        except GroupError:
            auto = False
        try:
            build_component(t, e)
            equi = check_equivariance(t, e)
        except GroupError:
            comp = False
        rows.append((repr(t.E[e]), k, auto, comp, equi))
    n_twisted = len(twisted_orbits(t.L, tau_of(t, 0))) if rows[0][2] else -1
    return SuiteResult(t.name, t.L.order, rows, len(conjugation_orbits(t)), n_twisted)
