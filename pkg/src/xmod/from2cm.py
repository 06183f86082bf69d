"""3-crossed modules built from 2-crossed modules, and small 2-crossed module feeders.

Given ``C -> B -> A`` the construction uses ``G = A``, ``H = B x A``,
``L = C x B`` and ``M = C``.  Product elements are indexed row-major, so
``(b, a)`` in ``H`` has index ``b*|A| + a`` and ``(c, b)`` in ``L`` has index
``c*|B| + b``.
"""

from __future__ import annotations

import itertools
import warnings
from typing import Iterator

import numpy as np

from .axioms import check_components, verify_two_crossed
from .crossed import ThreeCrossedModule, TwoCrossedModule
from .groups import (FiniteGroup, GroupAction, GroupError, GroupHom, check_action, check_hom,
                     conjugation_action, direct_product, trivial_group)

DEFAULT_SEARCH_CAP = 10**6


class InvalidStructure(GroupError):
    """A construction received an input that fails its own axioms."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


PEIFFER_READINGS = ("first", "second")


def three_crossed_from_two(W: TwoCrossedModule, *, check: bool = True,
                           peiffer_reading: str = "first") -> ThreeCrossedModule:
    """Package ``C -> B -> A`` as the 3-crossed module ``C -> CxB -> BxA -> A``.

    ``peiffer_reading`` picks whose A-component acts in the B-part of the
    Peiffer lifting: ``"first"`` gives ``b2 b1 b2^-1 ^{a2}b1^-1`` (the default,
    and the one that passes the axioms); ``"second"`` uses ``a1`` instead.
    """
    if peiffer_reading not in PEIFFER_READINGS:
        raise ValueError(f"peiffer_reading must be one of {PEIFFER_READINGS}")
    if check:
        rep = verify_two_crossed(W)
        if not rep.ok:
            raise InvalidStructure(f"input is not a 2-crossed module: {rep.summary()}", rep)
    A, B, C = W.G, W.H, W.L
    H = direct_product(B, A, name=f"{B.name}x{A.name}")
    L = direct_product(C, B, name=f"{C.name}x{B.name}")
    M, G = C, A
    na, nb = A.order, B.order
    pf, dB, dC = W.pf, W.dh, W.dl         # {,}_B : B x B -> C, d: B -> A, d: C -> B
    a_ab, a_ac, a_bc = W.a_gh, W.a_gl, W.a_hl

    # element coordinates
    hb, ha = np.divmod(np.arange(H.order), na)
    lc, lb = np.divmod(np.arange(L.order), nb)

    def h_idx(b, a):
        return b * na + a

    def l_idx(c, b):
        return c * nb + b

    d_ml = l_idx(np.arange(C.order), B.identity)
    d_lh = h_idx(lb, A.identity)
    d_hg = ha

    act_gh = h_idx(a_ab[:, hb], A.conj(np.arange(na)[:, None], ha[None, :]))
    act_gl = l_idx(a_ac[:, lc], a_ab[:, lb])
    act_gm = a_ac
    # ^h l = (^{b_h} c_l, ^{b_h} b_l): B acts on its own factor by conjugation
    act_hl = l_idx(a_bc[hb[:, None], lc[None, :]], B.conj(hb[:, None], lb[None, :]))
    act_hm = a_bc[hb]
    act_lm = C.conj(lc[:, None], np.arange(C.order)[None, :])

    # Peiffer: ({b2,b1}_B, b2 b1 b2^-1 ^{a2} b1^-1).  The action is by the first
    # argument's A-component, as in ^{d h2}h1; acting by a1 breaks {e,h} = e.
    b2, b1 = hb[:, None], hb[None, :]
    a2 = ha[:, None] if peiffer_reading == "first" else ha[None, :]
    peiffer = l_idx(pf[b2, b1], B.prod(b2, b1, B.inv(b2), B.inv(a_ab[a2, b1])))

    b3 = hb[:, None, None]
    b2_, a2_ = hb[None, :, None], ha[None, :, None]
    b1_ = hb[None, None, :]
    a3 = ha[:, None, None]
    left = C.prod(pf[B.mul(b3, b2_), b1_], C.inv(pf[b3, a_ab[a2_, b1_]]),
                  C.inv(a_bc[b3, pf[b2_, b1_]]))
    right = C.prod(pf[b3, B.mul(b2_, b1_)], C.inv(a_bc[a_ab[a3, b2_], pf[b3, b1_]]),
                   C.inv(pf[b3, b2_]))

    # HL(h2, l1) = c1 {b1^-1, b2}_B ^{b2} c1^-1 ; HL'(h2, l1) = ^{b2}c1 {b2, b1^-1}_B ^{a2} c1^-1
    bh, ah = hb[:, None], ha[:, None]
    c1, bl = lc[None, :], lb[None, :]
    hl = C.prod(c1, pf[B.inv(bl), bh], C.inv(a_bc[bh, c1]))
    hl_prime = C.prod(a_bc[bh, c1], pf[bh, B.inv(bl)], C.inv(a_ac[ah, c1]))

    # LL(l2, l1) = c2 c1 c2^-1 ^{b2} c1^-1
    c2, bb2 = lc[:, None], lb[:, None]
    ll = C.prod(c2, c1, C.inv(c2), C.inv(a_bc[bb2, c1]))

    return ThreeCrossedModule(
        M, L, H, G,
        GroupHom(M, L, d_ml, check=False), GroupHom(L, H, d_lh, check=False),
        GroupHom(H, G, d_hg, check=False),
        GroupAction(G, H, act_gh, check=False), GroupAction(G, L, act_gl, check=False),
        GroupAction(G, M, act_gm, check=False), GroupAction(H, L, act_hl, check=False),
        GroupAction(H, M, act_hm, check=False), GroupAction(L, M, act_lm, check=False),
        peiffer, left, right, hl, hl_prime, ll,
        name=f"from2cm({W.name})")


def crossed_to_two_crossed(d: GroupHom, action: GroupAction, name: str = "") -> TwoCrossedModule:
    """``1 -> H -> G`` from a crossed module ``d: H -> G`` with trivial Peiffer lifting."""
    H, G = d.source, d.target
    if action.actor != G or action.space != H:
        raise GroupError("action must be G acting on H")
    rep = check_hom(d)
    rep.extend(check_action(action))
    if not rep.ok:
        raise InvalidStructure(f"not a crossed module: {rep.violations[0]}", rep)
    g, h = np.ix_(G.elements(), H.elements())
    bad = d.map[action.table[g, h]] != G.conj(g, d.map[h])
    if bad.any():
        w = tuple(int(x) for x in np.argwhere(bad)[0])
        raise InvalidStructure(f"equivariance d(^g h) = g d(h) g^-1 fails at (g, h) = {w}")
    h2, h1 = np.ix_(H.elements(), H.elements())
    bad = action.table[d.map[h2], h1] != H.conj(h2, h1)
    if bad.any():
        w = tuple(int(x) for x in np.argwhere(bad)[0])
        raise InvalidStructure(f"Peiffer identity ^(d h2)h1 = h2 h1 h2^-1 fails at {w}")
    one = trivial_group()
    W = TwoCrossedModule(
        one, H, G, GroupHom.trivial(one, H), d, action,
        GroupAction.trivial(G, one), GroupAction.trivial(H, one),
        np.zeros((H.order, H.order), dtype=np.intp),
        name=name or f"1->{H.name}->{G.name}")
    return W


def normal_inclusion(G: FiniteGroup, subset, name: str = "") -> tuple[GroupHom, GroupAction]:
    """Inclusion of a subgroup ``N`` of ``G`` with ``G`` acting by conjugation.

    Fails if the subset is not closed under conjugation, since then the
    conjugation action does not land in ``N``.
    """
    elems = np.array(sorted(int(x) for x in subset), dtype=np.intp)
    pos = {int(x): i for i, x in enumerate(elems)}
    try:
        table = np.vectorize(lambda x: pos[int(x)])(G.table[np.ix_(elems, elems)])
    except KeyError:
        raise GroupError("subset is not closed under multiplication") from None
    N = FiniteGroup(table, name=name or f"N{len(elems)}")
    conj = G.conj(G.elements()[:, None], elems[None, :])
    if not np.isin(conj, elems).all():
        g, n = (int(v) for v in np.argwhere(~np.isin(conj, elems))[0])
        raise GroupError(f"subgroup not normal: conjugating element {int(elems[n])} "
                         f"by {g} leaves it")
    act = np.vectorize(lambda x: pos[int(x)])(conj)
    return GroupHom(N, G, elems), GroupAction(G, N, act, check=False)


def inner_two_crossed(B: FiniteGroup, name: str = "") -> TwoCrossedModule:
    """``B -> B -> 1`` with identity boundary, conjugation and commutator lifting.

    The lifting is ``{b2, b1} = b2 b1 b2^-1 b1^-1``, which makes axiom 4 hold
    on the nose since the G-action is trivial.
    """
    one = trivial_group()
    e = B.elements()
    return TwoCrossedModule(
        B, B, one, GroupHom.identity(B), GroupHom.trivial(B, one),
        GroupAction.trivial(one, B), GroupAction.trivial(one, B), conjugation_action(B),
        B.commutator(e[:, None], e[None, :]), name=name or f"{B.name}->{B.name}->1")


# ---------------------------------------------------------------------------
# search

def _lifting_candidates(fibers: list[np.ndarray], cap: int):
    sizes = [len(f) for f in fibers]
    total = int(np.prod(sizes, dtype=object)) if sizes else 1
    truncated = total > cap
    if truncated:
        warnings.warn(f"search space has {total} candidates, stopping after {cap}",
                      RuntimeWarning, stacklevel=3)
    for n, choice in enumerate(itertools.product(*fibers)):
        if n >= cap:
            return
        yield choice


def search_two_crossed(L: FiniteGroup, H: FiniteGroup, G: FiniteGroup, d_lh: GroupHom,
                       d_hg: GroupHom, act_gh: GroupAction, act_gl: GroupAction,
                       act_hl: GroupAction, *, cap: int = DEFAULT_SEARCH_CAP,
                       name: str = "") -> Iterator[TwoCrossedModule]:
    """Every Peiffer lifting making the given data a 2-crossed module.

    Entries with a unit argument are forced to the unit.  Every other entry
    ranges over the fibre of ``d`` above the value required by axiom 4;
    candidates are then filtered through the full verifier.
    """
    eH = H.identity
    a_gh, dh, dl = act_gh.table, d_hg.map, d_lh.map
    cells = [(h2, h1) for h2 in range(H.order) for h1 in range(H.order) if eH not in (h2, h1)]
    fibers = []
    for h2, h1 in cells:
        target = H.prod(h2, h1, H.inv(h2), H.inv(a_gh[dh[h2], h1]))
        fib = np.flatnonzero(dl == target)
        if len(fib) == 0:
            return
        fibers.append(fib)
    probe = TwoCrossedModule(L, H, G, d_lh, d_hg, act_gh, act_gl, act_hl,
                             np.full((H.order, H.order), L.identity, dtype=np.intp))
    comp = check_components(probe)
    if not comp.ok:
        raise InvalidStructure(f"search data is invalid: {comp.violations[0]}", comp)
    base = probe.peiffer.copy()
    for n, choice in enumerate(_lifting_candidates(fibers, cap)):
        pf = base.copy()
        for (h2, h1), v in zip(cells, choice):
            pf[h2, h1] = v
        W = TwoCrossedModule(L, H, G, d_lh, d_hg, act_gh, act_gl, act_hl, pf,
                             name=f"{name or 'search'}#{n}")
        if verify_two_crossed(W, fail_fast=True, components=False).ok:
            yield W
