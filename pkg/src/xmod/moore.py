"""Truncated simplicial groups, their Moore complexes and the 3-crossed module they carry.

A truncated simplicial group stores groups ``X_0..X_top`` (``top`` is 4, or 3
when only the lifting words are wanted) with every face ``d^n_i`` and
degeneracy ``s^n_i`` as a :class:`GroupHom` table.  The Moore complex is

    N_3 / d_4(N_4) -> N_2 -> N_1 -> N_0,    N_n = meet of Ker d^n_i for i < n,

and the actions and liftings of the resulting 3-crossed module are fixed
words in degeneracy images, evaluated over whole argument grids.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .crossed import ThreeCrossedModule
from .groups import (FiniteGroup, GroupAction, GroupError, GroupHom, direct_product,
                     make_cyclic, subgroup, trivial_group)
from .report import Report
from .simplicial import all_operators, compose, degeneracy, face, identity_instances

TOP = 4


class SimplicialGroupError(GroupError):
    """Structural failure: broken identities, a word leaving its subgroup, a bad quotient."""

    def __init__(self, message: str, witness=None, report: Report | None = None):
        super().__init__(message if witness is None else f"{message} (witness {witness})")
        self.witness = witness
        self.report = report


def _as_hom(f, src: FiniteGroup, tgt: FiniteGroup, check: bool, name: str) -> GroupHom:
    if isinstance(f, GroupHom):
        if f.source != src or f.target != tgt:
            raise SimplicialGroupError(f"{name} has the wrong source or target")
        return f
    return GroupHom(src, tgt, f, check=check, name=name)


class TruncatedSimplicialGroup:
    """Groups ``X_0..X_top`` with faces and degeneracies.

    ``faces[(n, i)]`` is ``d^n_i : X_n -> X_{n-1}`` (``1 <= n <= top``) and
    ``degeneracies[(n, i)]`` is ``s^n_i : X_n -> X_{n+1}`` (``n < top``),
    both for ``0 <= i <= n``.  Values may be GroupHoms or plain index arrays.
    """

    def __init__(self, groups: Sequence[FiniteGroup], faces: Mapping, degeneracies: Mapping,
                 name: str = "", *, check: bool = True):
        self.groups = tuple(groups)
        self.top = len(self.groups) - 1
        if self.top not in (3, TOP):
            raise SimplicialGroupError("need groups X_0..X_3 or X_0..X_4")
        self.name = name or "X"
        X = self.groups
        self.faces: dict[tuple[int, int], GroupHom] = {}
        self.degeneracies: dict[tuple[int, int], GroupHom] = {}
        for n in range(1, self.top + 1):
            for i in range(n + 1):
                if (n, i) not in faces:
                    raise SimplicialGroupError(f"missing face d^{n}_{i}")
                self.faces[n, i] = _as_hom(faces[n, i], X[n], X[n - 1], check, f"d^{n}_{i}")
        for n in range(self.top):
            for i in range(n + 1):
                if (n, i) not in degeneracies:
                    raise SimplicialGroupError(f"missing degeneracy s^{n}_{i}")
                self.degeneracies[n, i] = _as_hom(degeneracies[n, i], X[n], X[n + 1], check,
                                                  f"s^{n}_{i}")

    def d(self, n: int, i: int) -> np.ndarray:
        return self.faces[n, i].map

    def s(self, n: int, i: int) -> np.ndarray:
        return self.degeneracies[n, i].map

    def orders(self) -> tuple[int, ...]:
        return tuple(g.order for g in self.groups)

    def replace_face(self, n: int, i: int, mapping) -> "TruncatedSimplicialGroup":
        """Copy with one face table swapped (unchecked; used for mutation tests)."""
        faces = dict(self.faces)
        faces[n, i] = GroupHom(self.groups[n], self.groups[n - 1], mapping, check=False)
        return TruncatedSimplicialGroup(self.groups, faces, self.degeneracies,
                                        name=f"{self.name}*", check=False)

    def __repr__(self) -> str:
        return f"TruncatedSimplicialGroup({self.name!r}, orders={self.orders()})"


# ---------------------------------------------------------------------------
# simplicial identities

def _word_map(X: TruncatedSimplicialGroup, word) -> tuple[int, np.ndarray] | None:
    """The map ``X_a -> X_b`` of a left-to-right operator word, or None off the truncation.

    Operators act contravariantly, so the leftmost operator is applied first.
    """
    if word and word[0] == "id":
        n = word[1]
        return (n, np.arange(X.groups[n].order)) if n <= X.top else None
    kind, n, _ = word[0]
    level = n
    if level > X.top:
        return None
    start = level
    out = np.arange(X.groups[level].order)
    for kind, n, i in word:
        if kind == "d":
            if n != level:
                raise SimplicialGroupError(f"face d^{n}_{i} applied at level {level}")
            out = X.d(n, i)[out]
            level -= 1
        else:
            if n != level or n + 1 > X.top:
                return None
            out = X.s(n, i)[out]
            level += 1
    return start, out


def check_simplicial_group(X: TruncatedSimplicialGroup) -> Report:
    """Every instance of the five identity families that stays within ``X_0..X_top``."""
    rep = Report()
    for fam, label, lhs, rhs in identity_instances(X.top):
        a, b = _word_map(X, lhs), _word_map(X, rhs)
        if a is None or b is None:
            continue
        if a[0] != b[0]:
            raise SimplicialGroupError(f"level mismatch in family {fam} {label}")
        bad = np.flatnonzero(a[1] != b[1])
        if len(bad):
            rep.add(f"family {fam}", (label, int(bad[0])), len(bad),
                    detail=f"{lhs} vs {rhs} on X_{a[0]}")
    return rep


# ---------------------------------------------------------------------------
# built-in simplicial groups

def _power(G: FiniteGroup, k: int) -> tuple[FiniteGroup, np.ndarray]:
    """``G^k`` (row-major) and the coordinate array of every element."""
    if k == 0:
        return trivial_group(), np.zeros((1, 0), dtype=np.intp)
    P = functools.reduce(lambda A, B: direct_product(A, B, name=f"{A.name}x{B.name}"),
                         [G] * (k - 1), G)
    P.name = f"{G.name}^{k}"
    coords = np.array(list(itertools.product(range(G.order), repeat=k)), dtype=np.intp)
    return P, coords.reshape(-1, k)


def _encode(coords: np.ndarray, base: int) -> np.ndarray:
    out = np.zeros(len(coords), dtype=np.intp)
    for j in range(coords.shape[1]):
        out = out * base + coords[:, j]
    return out


def constant_simplicial_group(G: FiniteGroup, top: int = TOP) -> TruncatedSimplicialGroup:
    """``K(G)``: every level is ``G`` and every map is the identity."""
    ident = np.arange(G.order)
    faces = {(n, i): ident for n in range(1, top + 1) for i in range(n + 1)}
    degs = {(n, i): ident for n in range(top) for i in range(n + 1)}
    return TruncatedSimplicialGroup([G] * (top + 1), faces, degs, name=f"K({G.name})",
                                    check=False)


def product_simplicial_group(G: FiniteGroup, top: int = TOP) -> TruncatedSimplicialGroup:
    """``E(G)``: ``X_n = G^{n+1}``, faces delete a coordinate, degeneracies repeat one."""
    levels = [_power(G, n + 1) for n in range(top + 1)]
    q = G.order
    faces, degs = {}, {}
    for n in range(1, top + 1):
        c = levels[n][1]
        for i in range(n + 1):
            faces[n, i] = _encode(np.delete(c, i, axis=1), q)
    for n in range(top):
        c = levels[n][1]
        for i in range(n + 1):
            degs[n, i] = _encode(np.insert(c, i, c[:, i], axis=1), q)
    return TruncatedSimplicialGroup([lv[0] for lv in levels], faces, degs, name=f"E({G.name})",
                                    check=False)


def crossed_module_nerve(d: GroupHom, action: GroupAction, top: int = TOP,
                         name: str = "") -> TruncatedSimplicialGroup:
    """Nerve of the group-groupoid of a crossed module ``d : H -> G``.

    Arrows are ``(h, g) : g -> d(h) g`` in ``H x| G``; an ``n``-simplex is a
    string of ``n`` composable arrows, stored as ``(h_1, ..., h_n, g_0)``
    with row-major index.  Multiplication is arrow-wise, faces drop an end
    arrow or compose two neighbours, degeneracies insert an identity arrow.
    """
    H, G = d.source, d.target
    nh, ng = H.order, G.order
    a_gh = action.table
    groups, coords = [], []
    for n in range(top + 1):
        c = np.array(list(itertools.product(*([range(nh)] * n + [range(ng)]))), dtype=np.intp)
        coords.append(c.reshape(-1, n + 1))

    def bases(c):
        n = c.shape[1] - 1
        g = [c[:, n]]
        for k in range(n):
            g.append(G.mul(d.map[c[:, k]], g[-1]))
        return g

    def encode(c):
        out = np.zeros(len(c), dtype=np.intp)
        n = c.shape[1] - 1
        for k in range(n):
            out = out * nh + c[:, k]
        return out * ng + c[:, n]

    for n in range(top + 1):
        c = coords[n]
        x, y = np.meshgrid(np.arange(len(c)), np.arange(len(c)), indexing="ij")
        gx = bases(c)
        prod = np.empty(x.shape + (n + 1,), dtype=np.intp)
        for k in range(n):
            prod[..., k] = H.mul(c[x, k], a_gh[gx[k][x], c[y, k]])
        prod[..., n] = G.mul(c[x, n], c[y, n])
        table = encode(prod.reshape(-1, n + 1)).reshape(x.shape)
        groups.append(FiniteGroup(table, name=f"N{n}", check=False))
    faces, degs = {}, {}
    for n in range(1, top + 1):
        c = coords[n]
        g = bases(c)
        for i in range(n + 1):
            if i == 0:
                out = np.concatenate([c[:, 1:n], g[1][:, None]], axis=1)
            elif i == n:
                out = np.concatenate([c[:, :n - 1], c[:, n:]], axis=1)
            else:
                merged = H.mul(c[:, i], c[:, i - 1])[:, None]
                out = np.concatenate([c[:, :i - 1], merged, c[:, i + 1:]], axis=1)
            faces[n, i] = encode(out)
    for n in range(top):
        c = coords[n]
        for i in range(n + 1):
            ins = np.full((len(c), 1), H.identity, dtype=np.intp)
            degs[n, i] = encode(np.concatenate([c[:, :i], ins, c[:, i:]], axis=1))
    return TruncatedSimplicialGroup(groups, faces, degs, check=False,
                                    name=name or f"Nerve({H.name}->{G.name})")


def sphere_module(p: int, k: int, top: int = TOP) -> TruncatedSimplicialGroup:
    """Free ``Z_p``-module on the simplicial sphere ``Delta^k / boundary``.

    The basis of level ``n`` is the base point plus every surjection
    ``[n] -> [k]``; a face or degeneracy that stops being surjective lands on
    the base point.  The Moore complex has ``Z_p`` in degrees 0 and ``k``.
    """
    Zp = make_cyclic(p)
    bases = [["*"] + [op for op in all_operators(n, k) if op.is_surjective()]
             for n in range(top + 1)]
    levels = [_power(Zp, len(b)) for b in bases]

    def linear(n_src, n_tgt, theta):
        src, tgt = bases[n_src], bases[n_tgt]
        where = {b: j for j, b in enumerate(tgt)}
        img = []
        for b in src:
            if b == "*":
                img.append(0)
            else:
                c = compose(b, theta)
                img.append(where[c] if c.is_surjective() else 0)
        coords = levels[n_src][1]
        out = np.zeros((len(coords), len(tgt)), dtype=np.intp)
        for j, t in enumerate(img):
            out[:, t] = (out[:, t] + coords[:, j]) % p
        return _encode(out, p)

    faces = {(n, i): linear(n, n - 1, face(n, i)) for n in range(1, top + 1) for i in range(n + 1)}
    degs = {(n, i): linear(n, n + 1, degeneracy(n, i)) for n in range(top) for i in range(n + 1)}
    return TruncatedSimplicialGroup([lv[0] for lv in levels], faces, degs,
                                    name=f"Z{p}[S{k}]", check=False)


# ---------------------------------------------------------------------------
# Moore complex

def kernel_intersection(X: TruncatedSimplicialGroup, n: int) -> np.ndarray:
    """Sorted indices of ``N_n`` inside ``X_n``."""
    mask = np.ones(X.groups[n].order, dtype=bool)
    for i in range(n):
        mask &= X.d(n, i) == X.groups[n - 1].identity
    return np.flatnonzero(mask)


@dataclass(frozen=True)
class MooreData:
    """``N_0..N_3`` (indices into ``X_n``), ``image4 = d_4(N_4)`` and the quotient ``M``.

    ``coset[x]`` is the M-index of ``x`` in ``X_3`` (``-1`` outside ``N_3``);
    ``reps[m]`` is the minimal ``X_3`` index in coset ``m``.
    """

    X: TruncatedSimplicialGroup
    N: tuple
    N4: np.ndarray
    image4: np.ndarray
    reps: np.ndarray
    coset: np.ndarray
    G: FiniteGroup
    H: FiniteGroup
    L: FiniteGroup
    M: FiniteGroup
    d_hg: GroupHom
    d_lh: GroupHom
    d_ml: GroupHom

    def orders(self) -> tuple[int, ...]:
        return tuple(len(n) for n in self.N)

    def position(self, n: int) -> np.ndarray:
        """``X_n`` index -> ``N_n`` index, ``-1`` outside."""
        pos = np.full(self.X.groups[n].order, -1, dtype=np.intp)
        pos[self.N[n]] = np.arange(len(self.N[n]))
        return pos

    def project(self, x):
        """``N_3 -> M``."""
        return self.coset[x]


def _require(values: np.ndarray, what: str, grid_names: Sequence[str]) -> np.ndarray:
    bad = np.argwhere(values < 0)
    if len(bad):
        witness = dict(zip(grid_names, (int(v) for v in bad[0])))
        raise SimplicialGroupError(f"{what} leaves its subgroup", witness)
    return values


def moore_complex(X: TruncatedSimplicialGroup, *, check: bool = True) -> MooreData:
    if X.top < TOP:
        raise SimplicialGroupError("the Moore quotient needs X_4")
    if check:
        rep = check_simplicial_group(X)
        if not rep.ok:
            raise SimplicialGroupError("not a simplicial group", report=rep)
    N = tuple(kernel_intersection(X, n) for n in range(TOP))
    N4 = kernel_intersection(X, TOP)
    X3 = X.groups[3]
    image4 = np.unique(X.d(4, 4)[N4])
    in_n3 = np.zeros(X3.order, dtype=bool)
    in_n3[N[3]] = True
    if not in_n3[image4].all():
        raise SimplicialGroupError("d_4(N_4) is not inside N_3", int(image4[~in_n3[image4]][0]))
    in_im = np.zeros(X3.order, dtype=bool)
    in_im[image4] = True
    conj = X3.conj(N[3][:, None], image4[None, :])
    if not in_im[conj].all():
        a, b = np.argwhere(~in_im[conj])[0]
        raise SimplicialGroupError("d_4(N_4) is not normal in N_3", (int(N[3][a]), int(image4[b])))
    # cosets x.image4, named by their minimal element
    rep_of = X3.mul(N[3][:, None], image4[None, :]).min(axis=1)
    reps = np.unique(rep_of)
    coset = np.full(X3.order, -1, dtype=np.intp)
    coset[N[3]] = np.searchsorted(reps, rep_of)
    mt = coset[X3.mul(reps[:, None], reps[None, :])]
    M = FiniteGroup(mt, name=f"N3/Im({X.name})", check=False)
    G = subgroup(X.groups[0], N[0], name="N0")
    H = subgroup(X.groups[1], N[1], name="N1")
    L = subgroup(X.groups[2], N[2], name="N2")
    pos = []
    for n in range(TOP):
        p = np.full(X.groups[n].order, -1, dtype=np.intp)
        p[N[n]] = np.arange(len(N[n]))
        pos.append(p)
    d_hg = _require(pos[0][X.d(1, 1)[N[1]]], "d_1 on N_1", ["h"])
    d_lh = _require(pos[1][X.d(2, 2)[N[2]]], "d_2 on N_2", ["l"])
    d3 = X.d(3, 3)
    if (d3[image4] != X.groups[2].identity).any():
        raise SimplicialGroupError("d_3 is not constant on cosets of d_4(N_4)")
    d_ml = _require(pos[2][d3[reps]], "d_3 on N_3", ["m"])
    if (d_hg[d_lh] != G.identity).any() or (d_lh[d_ml] != H.identity).any():
        raise SimplicialGroupError("the Moore boundaries do not square to zero")
    return MooreData(X, N, N4, image4, reps, coset, G, H, L, M,
                     GroupHom(H, G, d_hg, check=check), GroupHom(L, H, d_lh, check=check),
                     GroupHom(M, L, d_ml, check=check))


# ---------------------------------------------------------------------------
# lifting words
#
# A token "22.10:h1-" reads s^2_2 s^1_0 (h1^-1): the degeneracies are listed
# outermost first, as composed, and a trailing "-" inverts the argument.

PEIFFER_WORD = "11:h1 11:h2 11:h1- 10:h1 11:h2- 10:h1-"
LL_WORD = "22:l1 22:l2 22:l1- 21:l1 22:l2- 21:l1-"
HL_WORD = "22:l1 21:l1- 22.11:h1 21:l1 20:l1- 22.11:h1- 20:l1 22.11:h1 22:l1- 22.11:h1-"
HL_PRIME_WORD = ("22.11:h1 22:l1 21:l1- 22.11:h1- 22.10:h1 21:l1 22.10:h1- "
                 "21.10:h1 22:l1- 21.10:h1-")
LEFT_HOMANIAN_WORD = (
    "22.11:h1 22.11:h2 22.11:h3 22.11:h2- 22.11:h1- 22.10:h1 22.10:h2 22.11:h3- "
    "22.10:h2- 21.10:h2 22.11:h3 21.10:h2- 22.10:h1- 22.11:h1 21.10:h2 22.11:h3- "
    "21.10:h2- 22.10:h2 22.11:h3 22.10:h2- 22.11:h2 22.11:h3- 22.11:h2- 22.11:h1-")
RIGHT_HOMANIAN_WORD = (
    "22.11:h1 22.11:h2 22.11:h3 22.11:h1- 22.10:h1 22.11:h3- 22.11:h2- 22.10:h1- "
    "21.10:h1 22.11:h2 21.10:h1- 22.10:h1 22.11:h3 22.10:h1- 22.11:h1 22.11:h3- "
    "22.11:h1- 21.10:h1 22.11:h2- 21.10:h1- 22.10:h1 22.11:h2 22.10:h1- 22.11:h1 "
    "22.11:h2- 22.11:h1-")

# name -> (word, argument names in table order, level of the result)
LIFTING_WORDS = {
    "peiffer": (PEIFFER_WORD, ("h1", "h2"), 2),
    "left_homanian": (LEFT_HOMANIAN_WORD, ("h1", "h2", "h3"), 3),
    "right_homanian": (RIGHT_HOMANIAN_WORD, ("h1", "h2", "h3"), 3),
    "hl": (HL_WORD, ("h1", "l1"), 3),
    "hl_prime": (HL_PRIME_WORD, ("h1", "l1"), 3),
    "ll": (LL_WORD, ("l1", "l2"), 3),
}


def parse_word(word: str) -> list[tuple[tuple[tuple[int, int], ...], str, bool]]:
    """Tokens ``(degeneracies applied innermost first, variable, inverted)``."""
    out = []
    for tok in word.split():
        ops, var = tok.split(":")
        inv = var.endswith("-")
        var = var.rstrip("-")
        path = tuple((int(o[0]), int(o[1])) for o in reversed(ops.split(".")))
        for (n0, _), (n1, _) in zip(path, path[1:]):
            if n1 != n0 + 1:
                raise ValueError(f"degeneracies in {tok!r} do not compose")
        out.append((path, var, inv))
    return out


def evaluate_word(X: TruncatedSimplicialGroup, word: str, values: Mapping[str, np.ndarray]):
    """Evaluate ``word`` with ``values[var]`` (broadcastable ``X``-index arrays)."""
    acc, level = None, None
    for path, var, inv in parse_word(word):
        n0 = path[0][0]
        x = values[var]
        if inv:
            x = X.groups[n0].inv(x)
        for n, i in path:
            x = X.s(n, i)[x]
        lv = path[-1][0] + 1
        if level is None:
            acc, level = x, lv
        else:
            if lv != level:
                raise ValueError(f"word mixes levels {level} and {lv}")
            acc = X.groups[level].mul(acc, x)
    return acc, level


def _grid(N: Sequence[np.ndarray], args: Sequence[str]) -> dict[str, np.ndarray]:
    arrays = [N[1] if a.startswith("h") else N[2] for a in args]
    return dict(zip(args, np.ix_(*arrays)))


def check_lifting_words(X: TruncatedSimplicialGroup) -> Report:
    """Each lifting word must land in ``N_2`` (Peiffer) or ``N_3`` (the rest).

    Works on 3-truncated groups too, where ``N_2`` and ``N_3`` are computed
    without the level-4 quotient.
    """
    N = [kernel_intersection(X, n) for n in range(4)]
    rep = Report()
    for name, (word, args, level) in LIFTING_WORDS.items():
        vals, lv = evaluate_word(X, word, _grid(N, args))
        assert lv == level
        inside = np.zeros(X.groups[level].order, dtype=bool)
        inside[N[level]] = True
        bad = np.argwhere(~inside[vals])
        if len(bad):
            rep.add(name, tuple(int(v) for v in bad[0]), len(bad),
                    detail=f"value outside N_{level}")
    return rep


def three_crossed_from_moore(X, *, check: bool = True) -> ThreeCrossedModule:
    """Package ``N_3/d_4(N_4) -> N_2 -> N_1 -> N_0`` as a 3-crossed module.

    Actions are conjugations by degeneracy images; liftings are the words
    above, with arguments stored in the order they appear in the word.
    """
    D = X if isinstance(X, MooreData) else moore_complex(X, check=check)
    X = D.X
    N = D.N
    X1, X2, X3 = X.groups[1], X.groups[2], X.groups[3]
    p1, p2 = D.position(1), D.position(2)
    proj = D.coset
    s00, s11, s22 = X.s(0, 0), X.s(1, 1), X.s(2, 2)
    g, h, l_, m = N[0], N[1], N[2], D.reps

    def act(space_pos, grp, actor_img, space, what):
        vals = space_pos[grp.conj(actor_img[:, None], space[None, :])]
        return _require(vals, what, ["actor", "x"])

    a_gh = act(p1, X1, s00[g], h, "G on H")
    a_gl = act(p2, X2, s11[s00[g]], l_, "G on L")
    a_gm = act(proj, X3, s22[s11[s00[g]]], m, "G on M")
    a_hl = act(p2, X2, s11[h], l_, "H on L")
    a_hm = act(proj, X3, s22[s11[h]], m, "H on M")
    a_lm = act(proj, X3, s22[l_], m, "L on M")
    lifts = {}
    for name, (word, args, level) in LIFTING_WORDS.items():
        vals, _ = evaluate_word(X, word, _grid(N, args))
        target = p2 if level == 2 else proj
        lifts[name] = _require(target[vals], name, args)
    G, H, L, M = D.G, D.H, D.L, D.M
    return ThreeCrossedModule(
        M, L, H, G, D.d_ml, D.d_lh, D.d_hg,
        GroupAction(G, H, a_gh, check=check), GroupAction(G, L, a_gl, check=check),
        GroupAction(G, M, a_gm, check=check), GroupAction(H, L, a_hl, check=check),
        GroupAction(H, M, a_hm, check=check), GroupAction(L, M, a_lm, check=check),
        lifts["peiffer"], lifts["left_homanian"], lifts["right_homanian"],
        lifts["hl"], lifts["hl_prime"], lifts["ll"], name=f"moore({X.name})")


def check_property18(X) -> Report:
    """``^{dh} m = ^{h} m {h, d(m^-1)}'_HL`` for every ``(h, m)``, reproduced in ``X_4``.

    Builds ``A = s2 s1 s0(h) s3(m) s2 s1 s0(h^-1)`` and the matching ``B``,
    checks ``d_i A = d_i B`` for ``i < 4`` (so ``A B^-1`` lies in ``N_4``),
    that ``d_4 A`` and ``d_4 B`` are the two sides, and that the sides agree
    in the quotient.
    """
    D = X if isinstance(X, MooreData) else moore_complex(X)
    X = D.X
    X3, X4 = X.groups[3], X.groups[4]
    h, m = np.ix_(D.N[1], D.reps)
    hi, mi = X.groups[1].inv(h), X3.inv(m)
    s = X.s

    def up(x, *path):
        for n, i in path:
            x = s(n, i)[x]
        return x

    t3 = lambda x: up(x, (3, 3))
    t2 = lambda x: up(x, (3, 2))
    t1 = lambda x: up(x, (3, 1))
    h221 = lambda x: up(x, (1, 1), (2, 2), (3, 3))
    h220 = lambda x: up(x, (1, 0), (2, 2), (3, 3))
    h210 = lambda x: up(x, (1, 0), (2, 1), (3, 3))
    A = X4.prod(up(h, (1, 0), (2, 1), (3, 2)), t3(m), up(hi, (1, 0), (2, 1), (3, 2)))
    B = X4.prod(h221(h), t3(m), h221(hi), h221(h), t2(mi), t1(m), h221(hi),
                h220(h), t1(mi), h220(hi), h210(h), t2(m), h210(hi))
    rep = Report()
    for i in range(4):
        bad = np.argwhere(X.d(4, i)[A] != X.d(4, i)[B])
        if len(bad):
            rep.add(f"d_{i} A = d_{i} B", tuple(int(v) for v in bad[0]), len(bad))
    T = three_crossed_from_moore(D, check=False)
    hl, ml = np.ix_(np.arange(T.H.order), np.arange(T.M.order))
    lhs = T.a_gm[T.dh[hl], ml]
    rhs = T.M.mul(T.a_hm[hl, ml], T.hl_prime[hl, T.dm[T.M.inv(ml)]])
    for label, word, want in (("d_4 A = ^{dh} m", A, lhs), ("d_4 B = ^h m {h, dm^-1}'", B, rhs)):
        off = np.argwhere(D.coset[X.d(4, 4)[word]] != want)
        if len(off):
            rep.add(label, tuple(int(v) for v in off[0]))
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        rep.add("^{dh} m = ^h m {h, dm^-1}'", tuple(int(v) for v in bad[0]), len(bad))
    return rep


BUILTINS = {
    "K(Z2)": lambda: constant_simplicial_group(make_cyclic(2)),
    "K(Z3)": lambda: constant_simplicial_group(make_cyclic(3)),
    "E(Z2)": lambda: product_simplicial_group(make_cyclic(2)),
    "E(Z3)": lambda: product_simplicial_group(make_cyclic(3)),
    "Z2[S2]": lambda: sphere_module(2, 2),
    "Z2[S3]": lambda: sphere_module(2, 3),
    "Z3[S3]": lambda: sphere_module(3, 3),
}
