"""Exhaustive search for 3-crossed module liftings over fixed group data.

The boundaries and actions are given; the six lifting tables are searched.
Entries with a unit argument are forced to the unit, the boundary of every
M-valued lifting is pinned by axioms 11, 12, 15, 19 and 20, and each table is
first filtered by the axioms that mention only it (and the Peiffer lifting)
before whole candidates go through the full verifier.
"""

from __future__ import annotations

import itertools
import warnings
from typing import Iterator

import numpy as np

from .axioms import DEFAULT_AXIOM24_VARIANT, check_components, verify_three_crossed
from .crossed import ThreeCrossedModule
from .from2cm import InvalidStructure
from .groups import FiniteGroup, GroupAction, GroupHom

DEFAULT_SEARCH_CAP = 10**5

# axioms that only involve the named tables (besides boundaries and actions)
_STAGE_IDS = {
    "peiffer": (6,),
    "ll": (8, 9, 15, 16, 17, 31),
    "hl": (11, 14),
    "hl_prime": (12, 18),
    "left_homanian": (19, 25),
    "right_homanian": (20, 26),
}


class _Budget:
    def __init__(self, cap: int):
        self.cap, self.used, self.hit = cap, 0, False

    def take(self) -> bool:
        if self.used >= self.cap:
            if not self.hit:
                self.hit = True
                warnings.warn(f"search cap {self.cap} reached, the stream is partial",
                              RuntimeWarning, stacklevel=4)
            return False
        self.used += 1
        return True


def _fill(shape, unit, cells, values) -> np.ndarray:
    t = np.full(shape, unit, dtype=np.intp)
    for c, v in zip(cells, values):
        t[c] = v
    return t


def _fibers(d: np.ndarray, targets) -> list[np.ndarray] | None:
    out = []
    for t in targets:
        f = np.flatnonzero(d == t)
        if len(f) == 0:
            return None
        out.append(f)
    return out


def search_three_crossed(M: FiniteGroup, L: FiniteGroup, H: FiniteGroup, G: FiniteGroup,
                         d_ml: GroupHom, d_lh: GroupHom, d_hg: GroupHom,
                         act_gh: GroupAction, act_gl: GroupAction, act_gm: GroupAction,
                         act_hl: GroupAction, act_hm: GroupAction, act_lm: GroupAction, *,
                         cap: int = DEFAULT_SEARCH_CAP,
                         axiom24_variant: str = DEFAULT_AXIOM24_VARIANT,
                         name: str = "") -> Iterator[ThreeCrossedModule]:
    """Yield every lifting choice that makes the data a 3-crossed module.

    ``cap`` bounds the total number of candidate tables examined; when it is
    reached a RuntimeWarning is issued and the stream stops early.
    """
    nh, nl = H.order, L.order
    eH, eL, eM = H.identity, L.identity, M.identity
    dm, dl, dh = d_ml.map, d_lh.map, d_hg.map
    a_gh, a_hl = act_gh.table, act_hl.table
    budget = _Budget(cap)

    units = dict(peiffer=np.full((nh, nh), eL), left_homanian=np.full((nh,) * 3, eM),
                 right_homanian=np.full((nh,) * 3, eM), hl=np.full((nh, nl), eM),
                 hl_prime=np.full((nh, nl), eM), ll=np.full((nl, nl), eM))
    data = (M, L, H, G, d_ml, d_lh, d_hg, act_gh, act_gl, act_gm, act_hl, act_hm, act_lm)
    probe = ThreeCrossedModule(*data, *units.values(), name="probe")
    comp = check_components(probe)
    if not comp.ok:
        raise InvalidStructure(f"search data is invalid: {comp.violations[0]}", comp)

    def build(**tables) -> ThreeCrossedModule:
        t = dict(units)
        t.update(tables)
        return ThreeCrossedModule(*data, t["peiffer"], t["left_homanian"], t["right_homanian"],
                                  t["hl"], t["hl_prime"], t["ll"], name=name or "search")

    def passes(T, ids) -> bool:
        return verify_three_crossed(T, ids=set(ids), fail_fast=True, components=False,
                                    axiom24_variant=axiom24_variant).ok

    def stage(key, shape, cells, fibers, context):
        out = []
        for choice in itertools.product(*fibers):
            if not budget.take():
                break
            tab = _fill(shape, units[key][(0,) * len(shape)], cells, choice)
            if passes(build(**{**context, key: tab}), _STAGE_IDS[key]):
                out.append(tab)
        return out

    h_cells = [(a, b) for a in range(nh) for b in range(nh) if eH not in (a, b)]
    hhh = [c for c in itertools.product(range(nh), repeat=3) if eH not in c]
    hl_cells = [(h, l) for h in range(nh) for l in range(nl) if h != eH and l != eL]
    ll_cells = [(a, b) for a in range(nl) for b in range(nl) if eL not in (a, b)]

    ll_targets = [L.mul(L.conj(a, b), L.inv(act_hl.table[dl[a], b])) for a, b in ll_cells]
    ll_fib = _fibers(dm, ll_targets)
    if ll_fib is None:
        return
    lls = stage("ll", (nl, nl), ll_cells, ll_fib, {})
    if not lls:
        return

    for pf in stage("peiffer", (nh, nh), h_cells, [np.arange(nl)] * len(h_cells), {}):
        lh_t = [L.mul(pf[H.mul(a, b), c], L.inv(L.mul(a_hl[a, pf[b, c]], pf[a, a_gh[dh[b], c]])))
                for a, b, c in hhh]
        rh_t = [L.mul(pf[a, H.mul(b, c)],
                      L.inv(L.mul(pf[a, b], a_hl[a_gh[dh[a], b], pf[a, c]]))) for a, b, c in hhh]
        hl_t = [L.mul(L.prod(l, pf[dl[L.inv(l)], h]), L.inv(a_hl[h, l])) for h, l in hl_cells]
        hlp_t = [L.mul(L.mul(a_hl[h, l], pf[h, dl[L.inv(l)]]),
                       L.inv(act_gl.table[dh[h], l])) for h, l in hl_cells]
        fibs = [_fibers(dm, t) for t in (lh_t, rh_t, hl_t, hlp_t)]
        if any(f is None for f in fibs):
            continue
        ctx = {"peiffer": pf}
        lhs = stage("left_homanian", (nh,) * 3, hhh, fibs[0], ctx)
        rhs = stage("right_homanian", (nh,) * 3, hhh, fibs[1], ctx)
        hls = stage("hl", (nh, nl), hl_cells, fibs[2], ctx)
        hlps = stage("hl_prime", (nh, nl), hl_cells, fibs[3], ctx)
        for ll, lh, rh, hl, hlp in itertools.product(lls, lhs, rhs, hls, hlps):
            if not budget.take():
                return
            T = build(peiffer=pf, ll=ll, left_homanian=lh, right_homanian=rh, hl=hl,
                      hl_prime=hlp)
            if passes(T, range(1, 32)):
                yield T
        if budget.hit:
            return
