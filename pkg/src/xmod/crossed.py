"""2-crossed and 3-crossed modules over finite groups.

A structure only records tables.  Nothing here checks the axioms; that is the
job of :mod:`xmod.axioms`, so that deliberately broken candidates can be built
and fed to the verifiers.  Self-actions (G on G, H on H, L on L) are never
stored: they are always conjugation.
"""

from __future__ import annotations

import numpy as np

from .groups import FiniteGroup, GroupAction, GroupError, GroupHom, trivial_group


def _lifting(table, shape, target: FiniteGroup, what: str) -> np.ndarray:
    arr = np.asarray(table, dtype=np.intp)
    if arr.shape != shape:
        raise GroupError(f"{what}: expected shape {shape}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= target.order):
        raise GroupError(f"{what}: values outside {target.name}")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def _hom(f, src: FiniteGroup, tgt: FiniteGroup, what: str) -> GroupHom:
    if not isinstance(f, GroupHom):
        f = GroupHom(src, tgt, f, check=False)
    if f.source != src or f.target != tgt:
        raise GroupError(f"{what}: boundary has the wrong source or target")
    return f


def _act(a, actor: FiniteGroup, space: FiniteGroup, what: str) -> GroupAction:
    if not isinstance(a, GroupAction):
        a = GroupAction(actor, space, a, check=False)
    if a.actor != actor or a.space != space:
        raise GroupError(f"{what}: action has the wrong groups")
    return a


class _Structure:
    _homs: tuple = ()
    _acts: tuple = ()
    _lifts: tuple = ()

    def replace(self, **changes):
        """Copy with some components swapped out (tables or objects)."""
        kw = {k: getattr(self, k) for k in self._init_fields}
        kw.update(changes)
        return type(self)(**kw)

    def mutate(self, field: str, index, value: int):
        """Copy with a single table entry changed.  Used for mutation tests."""
        obj = getattr(self, field)
        if isinstance(obj, GroupHom):
            arr = obj.map.copy()
        elif isinstance(obj, GroupAction):
            arr = obj.table.copy()
        else:
            arr = np.array(obj)
        arr[index] = value
        if isinstance(obj, GroupHom):
            arr = GroupHom(obj.source, obj.target, arr, check=False)
        elif isinstance(obj, GroupAction):
            arr = GroupAction(obj.actor, obj.space, arr, check=False)
        return self.replace(**{field: arr})

    def tables(self) -> dict[str, np.ndarray]:
        out = {}
        for k in self._homs:
            out[k] = getattr(self, k).map
        for k in self._acts:
            out[k] = getattr(self, k).table
        for k in self._lifts:
            out[k] = getattr(self, k)
        return out

    def __eq__(self, other) -> bool:
        if type(self) is not type(other):
            return False
        if any(getattr(self, g) != getattr(other, g) for g in self._groups):
            return False
        a, b = self.tables(), other.tables()
        return all(np.array_equal(a[k], b[k]) for k in a)

    __hash__ = None


class TwoCrossedModule(_Structure):
    """``L -> H -> G`` with actions of G on H and L, of H on L, and a Peiffer lifting."""

    _groups = ("L", "H", "G")
    _homs = ("d_lh", "d_hg")
    _acts = ("act_gh", "act_gl", "act_hl")
    _lifts = ("peiffer",)
    _init_fields = _groups + _homs + _acts + _lifts + ("name",)

    def __init__(self, L: FiniteGroup, H: FiniteGroup, G: FiniteGroup, d_lh, d_hg,
                 act_gh, act_gl, act_hl, peiffer, name: str = ""):
        self.L, self.H, self.G = L, H, G
        self.name = name
        self.d_lh = _hom(d_lh, L, H, "d_lh")
        self.d_hg = _hom(d_hg, H, G, "d_hg")
        self.act_gh = _act(act_gh, G, H, "act_gh")
        self.act_gl = _act(act_gl, G, L, "act_gl")
        self.act_hl = _act(act_hl, H, L, "act_hl")
        self.peiffer = _lifting(peiffer, (H.order, H.order), L, "peiffer")
        # short aliases used by the axiom code
        self.dl, self.dh = self.d_lh.map, self.d_hg.map
        self.a_gh, self.a_gl, self.a_hl = self.act_gh.table, self.act_gl.table, self.act_hl.table
        self.pf = self.peiffer

    def orders(self) -> tuple[int, int, int]:
        return self.L.order, self.H.order, self.G.order

    def __repr__(self) -> str:
        return f"TwoCrossedModule({self.name!r}: {self.L.name} -> {self.H.name} -> {self.G.name})"


class ThreeCrossedModule(_Structure):
    """``M -> L -> H -> G`` with six actions and six liftings.

    Lifting tables are indexed by their arguments in the order they are
    written: ``peiffer[h2, h1]``, ``left_homanian[h3, h2, h1]``,
    ``right_homanian[h3, h2, h1]``, ``hl[h, l]``, ``hl_prime[h, l]`` and
    ``ll[l2, l1]``.
    """

    _groups = ("M", "L", "H", "G")
    _homs = ("d_ml", "d_lh", "d_hg")
    _acts = ("act_gh", "act_gl", "act_gm", "act_hl", "act_hm", "act_lm")
    _lifts = ("peiffer", "left_homanian", "right_homanian", "hl", "hl_prime", "ll")
    _init_fields = _groups + _homs + _acts + _lifts + ("name",)

    def __init__(self, M: FiniteGroup, L: FiniteGroup, H: FiniteGroup, G: FiniteGroup,
                 d_ml, d_lh, d_hg, act_gh, act_gl, act_gm, act_hl, act_hm, act_lm,
                 peiffer, left_homanian, right_homanian, hl, hl_prime, ll, name: str = ""):
        self.M, self.L, self.H, self.G = M, L, H, G
        self.name = name
        self.d_ml = _hom(d_ml, M, L, "d_ml")
        self.d_lh = _hom(d_lh, L, H, "d_lh")
        self.d_hg = _hom(d_hg, H, G, "d_hg")
        self.act_gh = _act(act_gh, G, H, "act_gh")
        self.act_gl = _act(act_gl, G, L, "act_gl")
        self.act_gm = _act(act_gm, G, M, "act_gm")
        self.act_hl = _act(act_hl, H, L, "act_hl")
        self.act_hm = _act(act_hm, H, M, "act_hm")
        self.act_lm = _act(act_lm, L, M, "act_lm")
        self.a_gh, self.a_gl, self.a_gm = self.act_gh.table, self.act_gl.table, self.act_gm.table
        self.a_hl, self.a_hm, self.a_lm = self.act_hl.table, self.act_hm.table, self.act_lm.table
        nh, nl = H.order, L.order
        self.peiffer = _lifting(peiffer, (nh, nh), L, "peiffer")
        self.left_homanian = _lifting(left_homanian, (nh, nh, nh), M, "left_homanian")
        self.right_homanian = _lifting(right_homanian, (nh, nh, nh), M, "right_homanian")
        self.hl = _lifting(hl, (nh, nl), M, "hl")
        self.hl_prime = _lifting(hl_prime, (nh, nl), M, "hl_prime")
        self.ll = _lifting(ll, (nl, nl), M, "ll")

    # aliases kept short on purpose: the axiom transcriptions read like formulas
    @property
    def dm(self):
        return self.d_ml.map

    @property
    def dl(self):
        return self.d_lh.map

    @property
    def dh(self):
        return self.d_hg.map

    def orders(self) -> tuple[int, int, int, int]:
        return self.M.order, self.L.order, self.H.order, self.G.order

    def __repr__(self) -> str:
        return (f"ThreeCrossedModule({self.name!r}: {self.M.name} -> {self.L.name} -> "
                f"{self.H.name} -> {self.G.name})")


# ---------------------------------------------------------------------------
# small constructors

def trivial_two_crossed(G: FiniteGroup | None = None) -> TwoCrossedModule:
    """``1 -> 1 -> G`` with everything trivial."""
    G = G or trivial_group()
    one = trivial_group()
    return TwoCrossedModule(
        one, one, G, GroupHom.trivial(one, one), GroupHom.trivial(one, G),
        GroupAction.trivial(G, one), GroupAction.trivial(G, one), GroupAction.trivial(one, one),
        np.zeros((1, 1), dtype=np.intp), name=f"1->1->{G.name}")


def trivial_three_crossed(G: FiniteGroup | None = None) -> ThreeCrossedModule:
    """``1 -> 1 -> 1 -> G`` with everything trivial."""
    G = G or trivial_group()
    one = trivial_group()
    z2, z3 = np.zeros((1, 1), dtype=np.intp), np.zeros((1, 1, 1), dtype=np.intp)
    triv = GroupAction.trivial
    return ThreeCrossedModule(
        one, one, one, G,
        GroupHom.trivial(one, one), GroupHom.trivial(one, one), GroupHom.trivial(one, G),
        triv(G, one), triv(G, one), triv(G, one), triv(one, one), triv(one, one), triv(one, one),
        z2, z3, z3, z2, z2, z2, name=f"1->1->1->{G.name}")


def zero_three_crossed(M: FiniteGroup, L: FiniteGroup, H: FiniteGroup,
                       G: FiniteGroup) -> ThreeCrossedModule:
    """All boundaries, actions and liftings trivial.

    Only a 3-crossed module when every group is abelian (conjugation must
    agree with the trivial actions through the boundaries).
    """
    triv = GroupAction.trivial
    nm, nl, nh = M.order, L.order, H.order
    e = M.identity
    return ThreeCrossedModule(
        M, L, H, G,
        GroupHom.trivial(M, L), GroupHom.trivial(L, H), GroupHom.trivial(H, G),
        triv(G, H), triv(G, L), triv(G, M), triv(H, L), triv(H, M), triv(L, M),
        np.full((nh, nh), L.identity), np.full((nh, nh, nh), e), np.full((nh, nh, nh), e),
        np.full((nh, nl), e), np.full((nh, nl), e), np.full((nl, nl), e),
        name=f"zero({M.name},{L.name},{H.name},{G.name})")


def ll_two_crossed_view(T: ThreeCrossedModule) -> TwoCrossedModule:
    """The complex ``M -> L -> H`` with the LL lifting as its Peiffer lifting.

    This is only a candidate: whether it verifies is for the caller to find out.
    """
    return TwoCrossedModule(
        T.M, T.L, T.H, T.d_ml, T.d_lh, T.act_hl, T.act_hm, T.act_lm, T.ll,
        name=f"ll-view({T.name})")


_LAZY = {"verify_two_crossed": "axioms", "verify_three_crossed": "axioms",
         "verify_unit_lemma": "axioms", "search_three_crossed": "search"}


def __getattr__(name):
    # the verifier and the search import this module, so re-export them lazily
    if name in _LAZY:
        import importlib
        return getattr(importlib.import_module(f".{_LAZY[name]}", __package__), name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
