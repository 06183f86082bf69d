"""Finite groups as dense Cayley tables, with homomorphisms and actions.

Elements are the integers ``0..order-1``.  Every operation accepts either
Python/numpy integers or numpy index arrays, so axiom checks can be run over
whole quantifier grids at once by broadcasting.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .report import Report

MAX_ORDER = 5000
ASSOCIATIVITY_CHECK_LIMIT = 64
_SAMPLED_TRIPLES = 20000


class GroupError(ValueError):
    """Raised when a table, map or action violates its defining invariants."""


class GroupSizeError(GroupError):
    pass


class FiniteGroup:
    """A finite group stored as an ``order x order`` Cayley table.

    ``table[a, b]`` is the index of the product ``a*b``.
    """

    def __init__(self, table, name: str = "", *, check: bool = True,
                 assoc_limit: int = ASSOCIATIVITY_CHECK_LIMIT):
        table = np.asarray(table, dtype=np.intp)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("Cayley table must be a non-empty square array")
        n = table.shape[0]
        if n > MAX_ORDER:
            raise GroupSizeError(f"group order {n} exceeds MAX_ORDER={MAX_ORDER}")
        self.table = table
        self.table.setflags(write=False)
        self.order = n
        self.name = name or f"G{n}"
        ident = np.flatnonzero((table == np.arange(n)).all(axis=1))
        if len(ident) == 0:
            raise GroupError(f"{self.name}: no left identity")
        self.identity = int(ident[0])
        is_e = table == self.identity
        if not (is_e.sum(axis=1) == 1).all():
            raise GroupError(f"{self.name}: some element has no inverse")
        self.inverse = np.argmax(is_e, axis=1).astype(np.intp)
        self.inverse.setflags(write=False)
        if check:
            self._validate(assoc_limit)

    def _validate(self, assoc_limit: int) -> None:
        n, t = self.order, self.table
        ar = np.arange(n)
        if not ((np.sort(t, axis=0) == ar[:, None]).all() and (np.sort(t, axis=1) == ar).all()):
            raise GroupError(f"{self.name}: table is not a Latin square")
        e = self.identity
        if not ((t[e] == ar).all() and (t[:, e] == ar).all()):
            raise GroupError(f"{self.name}: identity is not two-sided")
        if not (t[ar, self.inverse] == e).all():
            raise GroupError(f"{self.name}: inverse table is wrong")
        if n <= assoc_limit:
            a, b, c = np.ix_(ar, ar, ar)
            ok = t[t[a, b], c] == t[a, t[b, c]]
            if not ok.all():
                bad = tuple(int(x) for x in np.argwhere(~ok)[0])
                raise GroupError(f"{self.name}: associativity fails at {bad}")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, _SAMPLED_TRIPLES))
            if not (t[t[a, b], c] == t[a, t[b, c]]).all():
                raise GroupError(f"{self.name}: associativity fails on a sampled triple")

    # -- arithmetic (broadcasts over index arrays) -----------------------
    def mul(self, a, b):
        return self.table[a, b]

    def prod(self, *xs):
        if not xs:
            return self.identity
        acc = xs[0]
        for x in xs[1:]:
            acc = self.table[acc, x]
        return acc

    def inv(self, a):
        return self.inverse[a]

    def conj(self, a, x):
        """``a x a^-1``"""
        return self.table[self.table[a, x], self.inverse[a]]

    def commutator(self, a, b):
        """``a b a^-1 b^-1``"""
        return self.prod(a, b, self.inverse[a], self.inverse[b])

    def power(self, a: int, k: int) -> int:
        x = self.identity
        for _ in range(k):
            x = int(self.table[x, a])
        return x

    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    def element_order(self, a: int) -> int:
        k, x = 1, int(a)
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def is_trivial(self) -> bool:
        return self.order == 1

    def subgroup_closure(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted element indices of the subgroup generated by ``gens``."""
        seen = {self.identity}
        frontier = deque([self.identity])
        gens = [int(g) for g in gens]
        while frontier:
            x = frontier.popleft()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return np.array(sorted(seen), dtype=np.intp)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


# ---------------------------------------------------------------------------
# constructors

def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    if n > MAX_ORDER:
        raise GroupSizeError(f"Z_{n} exceeds MAX_ORDER")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, name=f"Z{n}")


def trivial_group() -> FiniteGroup:
    return make_cyclic(1)


def make_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``.

    Index ``e*n + k`` stands for ``r^k s^e``; rotations come first.
    """
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")
    if 2 * n > MAX_ORDER:
        raise GroupSizeError(f"D_{n} exceeds MAX_ORDER")
    size = 2 * n
    idx = np.arange(size)
    e, k = idx // n, idx % n
    # (r^a s^e)(r^b s^f) = r^(a + (-1)^e b) s^(e+f)
    sign = np.where(e == 0, 1, -1)
    rot = (k[:, None] + sign[:, None] * k[None, :]) % n
    ref = (e[:, None] + e[None, :]) % 2
    return FiniteGroup(ref * n + rot, name=f"D{n}")


def _perm_group(perms: Sequence[tuple[int, ...]], name: str) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((len(perms), len(perms)), dtype=np.intp)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            # (p*q)(x) = p(q(x)): apply q first
            table[i, j] = index[tuple(p[x] for x in q)]
    return FiniteGroup(table, name=name)


def make_symmetric(n: int) -> FiniteGroup:
    """Symmetric group on ``n`` points, permutations in lexicographic order."""
    if n < 1:
        raise GroupError("symmetric group needs n >= 1")
    if n > 5:
        raise GroupSizeError("make_symmetric supports n <= 5")
    return _perm_group(list(itertools.permutations(range(n))), name=f"S{n}")


def cycles_to_perm(cycles: Sequence[Sequence[int]], degree: int) -> tuple[int, ...]:
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            if not (0 <= a < degree and 0 <= b < degree):
                raise GroupError(f"cycle entry out of range for degree {degree}")
            img[a] = b
    if sorted(img) != list(range(degree)):
        raise GroupError("cycles do not describe a permutation")
    return tuple(img)


def from_permutations(generators: Sequence[Sequence[Sequence[int]]], degree: int,
                      name: str = "") -> FiniteGroup:
    """Group generated by permutations given in (0-based) cycle notation."""
    gens = [cycles_to_perm(g, degree) for g in generators]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = deque([ident])
    while frontier:
        p = frontier.popleft()
        for g in gens:
            q = tuple(p[x] for x in g)
            if q not in seen:
                if len(seen) >= MAX_ORDER:
                    raise GroupSizeError("generated permutation group exceeds MAX_ORDER")
                seen.add(q)
                frontier.append(q)
    return _perm_group(sorted(seen), name=name or f"Perm{degree}[{len(seen)}]")


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str = "") -> FiniteGroup:
    """``A x B`` with row-major indexing: ``(a, b) -> a*|B| + b``."""
    if A.order * B.order > MAX_ORDER:
        raise GroupSizeError(f"|{A.name} x {B.name}| exceeds MAX_ORDER")
    nb = B.order
    idx = np.arange(A.order * nb)
    a, b = idx // nb, idx % nb
    table = A.table[a[:, None], a[None, :]] * nb + B.table[b[:, None], b[None, :]]
    return FiniteGroup(table, name=name or f"{A.name}x{B.name}")


def pair_index(B: FiniteGroup, a, b):
    """Index of ``(a, b)`` in ``direct_product(A, B)``."""
    return a * B.order + b


def split_index(B: FiniteGroup, x):
    """Inverse of :func:`pair_index`."""
    return x // B.order, x % B.order


def is_normal(G: FiniteGroup, subset) -> bool:
    sub = np.zeros(G.order, dtype=bool)
    sub[np.asarray(subset)] = True
    conj = G.conj(G.elements()[:, None], np.flatnonzero(sub)[None, :])
    return bool(sub[conj].all())


def subgroup(G: FiniteGroup, elements, name: str = "") -> FiniteGroup:
    """The subgroup on ``elements`` (sorted), reindexed ``0..k-1`` in that order."""
    elems = np.unique(np.asarray(elements, dtype=np.intp))
    pos = np.full(G.order, -1, dtype=np.intp)
    pos[elems] = np.arange(len(elems))
    table = pos[G.table[np.ix_(elems, elems)]]
    if (table < 0).any():
        raise GroupError(f"{name or 'subset'} is not closed under multiplication")
    return FiniteGroup(table, name=name or f"{G.name}[{len(elems)}]", check=False)

# ---------------------------------------------------------------------------
# homomorphisms and actions

class GroupHom:
    """A total map ``source -> target`` stored as an index array."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, mapping, *,
                 check: bool = True, name: str = ""):
        self.source, self.target = source, target
        self.map = np.asarray(mapping, dtype=np.intp)
        self.map.setflags(write=False)
        self.name = name
        if self.map.shape != (source.order,):
            raise GroupError("hom table length must equal the source order")
        if self.map.size and (self.map.min() < 0 or self.map.max() >= target.order):
            raise GroupError("hom table has values outside the target")
        if check:
            rep = check_hom(self)
            if not rep.ok:
                raise GroupError(f"not a homomorphism: {rep.violations[0]}")

    def __call__(self, x):
        return self.map[x]

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self o inner``"""
        return GroupHom(inner.source, self.target, self.map[inner.map], check=False)

    def is_trivial(self) -> bool:
        return bool((self.map == self.target.identity).all())

    def kernel(self) -> np.ndarray:
        return np.flatnonzero(self.map == self.target.identity)

    def image(self) -> np.ndarray:
        return np.unique(self.map)

    @classmethod
    def identity(cls, G: FiniteGroup) -> "GroupHom":
        return cls(G, G, np.arange(G.order), check=False)

    @classmethod
    def trivial(cls, source: FiniteGroup, target: FiniteGroup) -> "GroupHom":
        return cls(source, target, np.full(source.order, target.identity), check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupHom) and self.source == other.source
                and self.target == other.target and np.array_equal(self.map, other.map))

    def __repr__(self) -> str:
        return f"GroupHom({self.source.name} -> {self.target.name})"


class GroupAction:
    """Left action of ``actor`` on ``space`` by automorphisms.

    ``table[a, x]`` is ``a . x``.
    """

    def __init__(self, actor: FiniteGroup, space: FiniteGroup, table, *,
                 check: bool = True, name: str = ""):
        self.actor, self.space = actor, space
        self.table = np.asarray(table, dtype=np.intp)
        self.table.setflags(write=False)
        self.name = name
        if self.table.shape != (actor.order, space.order):
            raise GroupError("action table must have shape (|actor|, |space|)")
        if self.table.size and (self.table.min() < 0 or self.table.max() >= space.order):
            raise GroupError("action table has values outside the space")
        if check:
            rep = check_action(self)
            if not rep.ok:
                raise GroupError(f"not an action by automorphisms: {rep.violations[0]}")

    def __call__(self, a, x):
        return self.table[a, x]

    def is_trivial(self) -> bool:
        return bool((self.table == np.arange(self.space.order)[None, :]).all())

    @classmethod
    def trivial(cls, actor: FiniteGroup, space: FiniteGroup) -> "GroupAction":
        return cls(actor, space, np.tile(np.arange(space.order), (actor.order, 1)), check=False)

    @classmethod
    def via(cls, hom: GroupHom, action: "GroupAction") -> "GroupAction":
        """Pull an action back along ``hom``: ``a . x = hom(a) . x``."""
        return cls(hom.source, action.space, action.table[hom.map], check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupAction) and self.actor == other.actor
                and self.space == other.space and np.array_equal(self.table, other.table))

    def __repr__(self) -> str:
        return f"GroupAction({self.actor.name} on {self.space.name})"


def conjugation_action(G: FiniteGroup) -> GroupAction:
    ar = G.elements()
    return GroupAction(G, G, G.conj(ar[:, None], ar[None, :]), check=False, name="conj")


def check_hom(f: GroupHom) -> Report:
    src, tgt = f.source, f.target
    if f.map.shape != (src.order,):
        raise GroupError("hom does not match its source group")
    rep = Report()
    x, y = np.ix_(src.elements(), src.elements())
    bad = f.map[src.mul(x, y)] != tgt.mul(f.map[x], f.map[y])
    if bad.any():
        w = tuple(int(v) for v in np.argwhere(bad)[0])
        rep.add("f(xy) = f(x)f(y)", w, int(bad.sum()))
    if f.map[src.identity] != tgt.identity:
        rep.add("f(e) = e", (src.identity,))
    return rep


def check_action(act: GroupAction) -> Report:
    A, X = act.actor, act.space
    if act.table.shape != (A.order, X.order):
        raise GroupError("action does not match its groups")
    rep = Report()
    t = act.table
    not_bij = np.flatnonzero((np.sort(t, axis=1) != X.elements()[None, :]).any(axis=1))
    if len(not_bij):
        rep.add("a.- bijective", (int(not_bij[0]),), len(not_bij))
    a, x, y = np.ix_(A.elements(), X.elements(), X.elements())
    bad = t[a, X.mul(x, y)] != X.mul(t[a, x], t[a, y])
    if bad.any():
        rep.add("a.(xy) = (a.x)(a.y)", tuple(int(v) for v in np.argwhere(bad)[0]), int(bad.sum()))
    a, b, x = np.ix_(A.elements(), A.elements(), X.elements())
    bad = t[A.mul(a, b), x] != t[a, t[b, x]]
    if bad.any():
        rep.add("(ab).x = a.(b.x)", tuple(int(v) for v in np.argwhere(bad)[0]), int(bad.sum()))
    bad = t[A.identity] != X.elements()
    if bad.any():
        rep.add("e.x = x", (int(np.flatnonzero(bad)[0]),), int(bad.sum()))
    return rep


# ---------------------------------------------------------------------------
# small enumeration helpers (used by the structure searches)

def generators(G: FiniteGroup) -> list[int]:
    """A small generating set, chosen greedily by element index."""
    gens: list[int] = []
    span = G.subgroup_closure([])
    for x in range(G.order):
        if x not in span:
            gens.append(x)
            span = G.subgroup_closure(gens)
            if len(span) == G.order:
                break
    return gens


def all_homomorphisms(A: FiniteGroup, B: FiniteGroup) -> list[GroupHom]:
    """Every homomorphism ``A -> B`` (brute force over images of generators)."""
    gens = generators(A)
    words = _words_for(A, gens)
    out = []
    for imgs in itertools.product(range(B.order), repeat=len(gens)):
        mapping = np.empty(A.order, dtype=np.intp)
        for x, word in words.items():
            mapping[x] = B.prod(*[imgs[i] for i in word]) if word else B.identity
        f = GroupHom(A, B, mapping, check=False)
        if check_hom(f).ok:
            out.append(f)
    return out


def automorphisms(G: FiniteGroup) -> list[np.ndarray]:
    return [f.map for f in all_homomorphisms(G, G) if len(np.unique(f.map)) == G.order]


def all_actions(A: FiniteGroup, X: FiniteGroup) -> list[GroupAction]:
    """Every action of ``A`` on ``X`` by automorphisms."""
    auts = automorphisms(X)
    aut_index = {a.tobytes(): i for i, a in enumerate(auts)}
    n = len(auts)
    comp = np.empty((n, n), dtype=np.intp)
    for i, p in enumerate(auts):
        for j, q in enumerate(auts):
            comp[i, j] = aut_index[p[q].tobytes()]
    aut_group = FiniteGroup(comp, name=f"Aut({X.name})", check=False)
    return [GroupAction(A, X, np.stack([auts[k] for k in f.map]), check=False)
            for f in all_homomorphisms(A, aut_group)]


def _words_for(G: FiniteGroup, gens: list[int]) -> dict[int, tuple[int, ...]]:
    words = {G.identity: ()}
    frontier = deque([G.identity])
    while frontier:
        x = frontier.popleft()
        for i, g in enumerate(gens):
            y = int(G.mul(x, g))
            if y not in words:
                words[y] = words[x] + (i,)
                frontier.append(y)
    return words
