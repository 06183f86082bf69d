"""Colored simplices: labelings of the vertex tuples of ``[n]`` by a 2- or 3-crossed module.

A simplex of dimension ``n`` carries ``g`` labels on pairs, ``h`` on triples,
``l`` on quadruples and (3-crossed level) ``m`` on quintuples.  Only strictly
increasing tuples are stored; a tuple with a repeated vertex always carries
the unit, which is how the degeneracy conditions are enforced.

Most work happens on :class:`SimplexBatch`, a stack of simplices of one
dimension stored as integer arrays with one column per tuple (in
``itertools.combinations`` order).  :class:`ColoredSimplex` is the single
simplex view used by the public API.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .crossed import ThreeCrossedModule, TwoCrossedModule
from .report import Report
from .simplicial import SimplicialOperator

LEVEL_NAMES = {2: "g", 3: "h", 4: "l", 5: "m"}
NAME_LEVELS = {v: k for k, v in LEVEL_NAMES.items()}
COND_ARITY = {"a": 3, "b": 4, "c": 5, "d": 6}
COND_LETTERS = {"a": "ijk", "b": "ijkp", "c": "ijkpq", "d": "ijkpqx"}
DEFAULT_BUDGET = 1 << 22


class ColoringError(ValueError):
    pass


class LevelMismatch(ColoringError):
    pass


# ---------------------------------------------------------------------------
# readings of the printed conditions

@dataclass(frozen=True)
class Reading:
    """Which reading of the printed conditions (c) and (d) to evaluate.

    The defaults are the corrected readings; :data:`PRINTED` reproduces the
    formulas symbol for symbol.  ``binding`` says how the named left/right
    term lists are matched to the slots of the 5-simplex equation:
    ``"positional"`` takes them in listed order, ``"reversed"`` in reverse.

    * ``c_path``: ``"kp"`` acts on ``h_ijk`` by ``g_pq g_kp``; ``"kq"`` by ``g_pq g_kq``.
    * ``lf_vertex``: the H-label acting in ``L_F`` (``"ikx"`` or ``"ikq"``).
    * ``ln_path``: middle edge of the G-path in ``L_N`` (``"pq"`` or ``"px"``).
    * ``mx_vertex``: the inner H-label in ``M'_x`` (``"ijp"`` or ``"ijq"``).
    * ``mjp_edge``: the edge transporting ``h_ijk`` in ``M'_jp`` (``"kx"`` or ``"px"``).
    * ``d_form``: ``"repaired"`` acts by ``h_ijx`` on ``m_jkpqx``, by ``h_ipx`` on
      ``M'_7`` and by ``l_ijkx h_ikx`` on ``M'_jp``, and inverts ``M'_x``;
      ``"printed"`` takes these terms as written.
    """

    c_path: str = "kp"
    lf_vertex: str = "ikx"
    ln_path: str = "pq"
    mx_vertex: str = "ijp"
    mjp_edge: str = "kx"
    binding: str = "positional"
    d_form: str = "repaired"

    _CHOICES = {"c_path": ("kp", "kq"), "lf_vertex": ("ikx", "ikq"), "ln_path": ("pq", "px"),
                "mx_vertex": ("ijp", "ijq"), "mjp_edge": ("kx", "px"),
                "binding": ("positional", "reversed"), "d_form": ("repaired", "printed")}

    def __post_init__(self):
        for k, allowed in self._CHOICES.items():
            if getattr(self, k) not in allowed:
                raise ColoringError(f"{k} must be one of {allowed}")

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self._CHOICES}


DEFAULT_READING = Reading()
PRINTED = Reading(c_path="kq", lf_vertex="ikq", ln_path="px", mx_vertex="ijq", mjp_edge="px",
                  d_form="printed")


class Coloring:
    """The tables of a structure, flattened for the condition evaluators."""

    def __init__(self, structure, reading: Reading | None = None):
        self.structure = structure
        self.reading = reading or DEFAULT_READING
        if isinstance(structure, ThreeCrossedModule):
            self.level, self.top = "3cm", 5
            T = structure
            self.M = T.M
            self.d_ml = T.dm
            self.a_gm, self.a_hm, self.a_lm = T.a_gm, T.a_hm, T.a_lm
            self.lh, self.rh = T.left_homanian, T.right_homanian
            self.hl, self.hlp, self.ll = T.hl, T.hl_prime, T.ll
        elif isinstance(structure, TwoCrossedModule):
            self.level, self.top = "2cm", 4
            self.M = None
        else:
            raise ColoringError(f"not a crossed structure: {type(structure).__name__}")
        S = structure
        self.G, self.H, self.L = S.G, S.H, S.L
        self.d_hg, self.d_lh = S.dh, S.dl
        self.a_gh, self.a_gl, self.a_hl = S.a_gh, S.a_gl, S.a_hl
        self.pf = S.peiffer
        self.groups = {2: self.G, 3: self.H, 4: self.L}
        if self.M is not None:
            self.groups[5] = self.M
        self.conditions = ("a", "b", "c", "d") if self.top == 5 else ("a", "b", "c")

    def units(self) -> dict[int, int]:
        return {k: grp.identity for k, grp in self.groups.items()}

    def levels(self, n: int) -> list[int]:
        """Label levels 2..top.  Levels longer than ``n+1`` have no columns but
        are kept so that degenerate lookups always find a unit."""
        return list(range(2, self.top + 1))

    def same_structure(self, other: "Coloring") -> bool:
        return self.structure is other.structure or self.structure == other.structure


def as_coloring(obj, reading: Reading | None = None) -> Coloring:
    if isinstance(obj, Coloring):
        if reading is not None and reading != obj.reading:
            return Coloring(obj.structure, reading)
        return obj
    return Coloring(obj, reading)


# ---------------------------------------------------------------------------
# tuple bookkeeping

@lru_cache(maxsize=None)
def tuples(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing ``k``-tuples in ``[n]`` in storage order."""
    return tuple(itertools.combinations(range(n + 1), k))


@lru_cache(maxsize=None)
def tuple_positions(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {t: i for i, t in enumerate(tuples(n, k))}


@lru_cache(maxsize=None)
def lookup(n: int, k: int) -> np.ndarray:
    """Index array over ``[n]^k``: column of a strictly increasing tuple, the
    unit column ``C(n+1, k)`` for a weakly increasing tuple with a repeat, and
    ``-1`` for anything out of order."""
    arr = np.full((n + 1,) * k, -1, dtype=np.intp)
    unit = math.comb(n + 1, k)
    for t in itertools.combinations_with_replacement(range(n + 1), k):
        arr[t] = unit
    for i, t in enumerate(tuples(n, k)):
        arr[t] = i
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _instances_by_support(n: int, arity: int):
    """Weakly increasing ``arity``-tuples grouped by their vertex set."""
    groups: dict[tuple[int, ...], list] = {}
    for t in itertools.combinations_with_replacement(range(n + 1), arity):
        groups.setdefault(tuple(sorted(set(t))), []).append(t)
    return {s: np.array(ts, dtype=np.intp) for s, ts in groups.items()}


@lru_cache(maxsize=None)
def _support_columns(n: int, support: tuple[int, ...], levels: tuple[int, ...]):
    out = {}
    for k in levels:
        pos = tuple_positions(n, k)
        out[k] = np.array([pos[t] for t in itertools.combinations(support, k)], dtype=np.intp)
    return out


def in_horn(t, n: int, j: int) -> bool:
    """Whether the vertex tuple ``t`` lies in the horn ``Lambda^n_j``."""
    return not (set(range(n + 1)) - {j}) <= set(t)


# ---------------------------------------------------------------------------
# batches

class SimplexBatch:
    """``size`` simplices of dimension ``n``; ``labels[k]`` has shape ``(size, C(n+1,k))``."""

    def __init__(self, coloring, n: int, labels: dict[int, np.ndarray]):
        self.coloring = as_coloring(coloring)
        self.n = int(n)
        lv = self.coloring.levels(self.n)
        size = None
        self.labels = {}
        for k in lv:
            arr = np.asarray(labels[k], dtype=np.intp)
            want = math.comb(self.n + 1, k)
            if arr.ndim != 2 or arr.shape[1] != want:
                raise ColoringError(f"level {k}: expected {want} columns, got shape {arr.shape}")
            if size is None:
                size = arr.shape[0]
            elif arr.shape[0] != size:
                raise ColoringError("levels have different batch sizes")
            self.labels[k] = arr
        self.size = size if size is not None else int(labels.get("size", 1))

    @classmethod
    def units(cls, coloring, n: int, size: int = 1) -> "SimplexBatch":
        c = as_coloring(coloring)
        return cls(c, n, {k: np.full((size, math.comb(n + 1, k)), c.groups[k].identity,
                                     dtype=np.intp) for k in c.levels(n)} | {"size": size})

    def padded(self) -> dict[int, np.ndarray]:
        c = self.coloring
        return {k: np.concatenate(
            [a, np.full((a.shape[0], 1), c.groups[k].identity, dtype=np.intp)], axis=1)
            for k, a in self.labels.items()}

    def take(self, rows) -> "SimplexBatch":
        rows = np.asarray(rows)
        sub = {k: a[rows] for k, a in self.labels.items()}
        if not sub:
            sub["size"] = int(rows.sum()) if rows.dtype == bool else len(rows)
        return SimplexBatch(self.coloring, self.n, sub)

    def copy(self) -> "SimplexBatch":
        return SimplexBatch(self.coloring, self.n,
                            {k: a.copy() for k, a in self.labels.items()} | {"size": self.size})

    def __len__(self) -> int:
        return self.size

    def row(self, i: int) -> "ColoredSimplex":
        return ColoredSimplex(self.coloring, self.n,
                              {k: tuple(int(v) for v in a[i]) for k, a in self.labels.items()})

    def __iter__(self) -> Iterator["ColoredSimplex"]:
        for i in range(self.size):
            yield self.row(i)

    def keys(self) -> np.ndarray:
        """One row of all labels per simplex, for set comparisons."""
        if not self.labels:
            return np.zeros((self.size, 0), dtype=np.intp)
        return np.concatenate([self.labels[k] for k in sorted(self.labels)], axis=1)

    @staticmethod
    def concat(batches: list["SimplexBatch"]) -> "SimplexBatch":
        first = batches[0]
        labels = {k: np.concatenate([b.labels[k] for b in batches]) for k in first.labels}
        labels["size"] = sum(b.size for b in batches)
        return SimplexBatch(first.coloring, first.n, labels)


# ---------------------------------------------------------------------------
# condition evaluation

class _View:
    """Label access by vertex names on a set of condition instances."""

    def __init__(self, padded, n, inst: np.ndarray, letters: str):
        self.p, self.n, self.inst = padded, n, inst
        self.pos = {c: i for i, c in enumerate(letters)}

    def _get(self, k: int, s: str):
        idx = lookup(self.n, k)[tuple(self.inst[:, self.pos[c]] for c in s)]
        return self.p[k][:, idx]

    def g(self, s):
        return self._get(2, s)

    def h(self, s):
        return self._get(3, s)

    def l(self, s):
        return self._get(4, s)

    def m(self, s):
        return self._get(5, s)


def _cond_a(c: Coloring, v: _View):
    G = c.G
    return v.g("ik"), G.prod(c.d_hg[v.h("ijk")], v.g("jk"), v.g("ij"))


def _cond_b(c: Coloring, v: _View):
    H = c.H
    lhs = H.prod(c.d_lh[v.l("ijkp")], v.h("ikp"), c.a_gh[v.g("kp"), v.h("ijk")])
    return lhs, H.mul(v.h("ijp"), v.h("jkp"))


def _cond_c(c: Coloring, v: _View):
    L, G = c.L, c.G
    hl, gl, gh = c.a_hl, c.a_gl, c.a_gh
    path = G.mul(v.g("pq"), v.g("kp" if c.reading.c_path == "kp" else "kq"))
    lhs = [hl[v.h("ijq"), v.l("jkpq")], v.l("ijpq"), hl[v.h("ipq"), gl[v.g("pq"), v.l("ijkp")]]]
    if c.top == 5:
        lhs.insert(0, c.d_ml[v.m("ijkpq")])
    rhs = L.prod(v.l("ijkq"), hl[v.h("ikq"), L.inv(c.pf[v.h("kpq"), gh[path, v.h("ijk")]])],
                 v.l("ikpq"))
    return L.prod(*lhs), rhs


def d_factors(c: Coloring, v: _View):
    """The factors of both sides of the 5-simplex equation at ``(i, j, k, p, q, x)``,
    each with its L-action already applied, in the order they are multiplied."""
    G, H, L, M = c.G, c.H, c.L, c.M
    gh, gl, gm, hl, hm, lm = c.a_gh, c.a_gl, c.a_gm, c.a_hl, c.a_hm, c.a_lm
    pf, LH, RH, HL, HLp, LL = c.pf, c.lh, c.rh, c.hl, c.hlp, c.ll
    dl = c.d_lh
    rd = c.reading
    g, h, l, m = v.g, v.h, v.l, v.m
    Li, Mi = L.inv, M.inv

    def gg(*edges):
        return G.prod(*[g(e) for e in edges])

    def pfi(a, b):
        return Li(pf[a, b])

    hijk = h("ijk")
    t_k = gh[gg("qx", "pq", "kp"), hijk]        # h_ijk carried to x along k->p->q->x
    t_jkp = gh[gg("qx", "pq"), h("jkp")]
    t_ijp = gh[gg("qx", "pq"), h("ijp")]
    t_ikp = gh[gg("qx", "pq"), h("ikp")]
    hkpq = gh[g("qx"), h("kpq")]
    pk_kqx = pfi(h("kqx"), gh[gg("qx", "kq"), hijk])

    # left-hand side
    LA = hl[H.mul(h("ijx"), h("jkx")), l("kpqx")]
    LB = hl[h("ijx"), l("jkqx")]
    LC = l("ijqx")
    LD = l("ijkx")
    LE = hl[H.mul(h("ikx"), gh[g("kx"), hijk]), l("kpqx")]
    LF = hl[h(rd.lf_vertex), pk_kqx]
    lefts = [
        hm[h("iqx"), gm[g("qx"), m("ijkpq")]],
        m("ijkqx"),
        LL[LD, LE],
        Mi(LL[l("ikqx"), hl[H.mul(h("iqx"), gh[g("qx"), h("ikq")]), pf[hkpq, t_k]]]),
        hm[h("ikx"), lm[L.mul(pk_kqx, hl[h("kqx"), pfi(hkpq, t_k)]),
                        Mi(LH[h("kqx"), hkpq, t_k])]],
    ]
    # right-hand side
    LG = hl[h("ijx"), l("jkpx")]
    LH_ = hl[H.mul(h("ijx"), h("jpx")), pfi(h("pqx"), t_jkp)]
    LI = l("ijpx")
    LJ = hl[h("ipx"), pfi(h("pqx"), t_ijp)]
    LK = l("ijkx")
    LL_ = hl[h("ikx"), pfi(h("kpx"), gh[gg("px", "kp"), hijk])]
    LM = l("ikpx")
    LN = hl[h("ikx"), pfi(H.mul(h("kpx"), h("pqx")), gh[gg("qx", rd.ln_path, "kp"), hijk])]

    u = gh[gg("qx", "pq"), H.mul(h("ikp"), gh[g("kp"), hijk])]
    lt = gl[gg("qx", "pq"), l("ijkp")]
    X7 = L.mul(gl[g("px"), l("ijkp")], pfi(h("pqx"), u))
    m7 = M.prod(lm[X7, lm[hl[h("pqx"), lt], LH[h("pqx"), dl[lt], u]]],
                lm[X7, HLp[h("pqx"), Li(lt)]],
                LL[gl[g("px"), l("ijkp")], pfi(h("pqx"), u)])

    w = gh[g(rd.mjp_edge), hijk]
    hk = H.mul(h("kqx"), hkpq)
    lk = l("kpqx")
    wl = hl[w, lk]
    Y = L.prod(wl, pfi(hk, t_k), Li(lk))
    m13 = M.mul(lm[Y, LH[dl[lk], hk, t_k]],
                lm[wl, M.mul(lm[Li(lk), LL[lk, pf[hk, t_k]]], HL[gh[g("kx"), hijk], Li(lk)])])

    m_front = m("jkpqx")
    m_x_act = H.mul(h("ipx"), gh[g("px"), h(rd.mx_vertex)])
    if rd.d_form == "repaired":
        m_x = LL[l("ijpx"), hl[m_x_act, pfi(h("pqx"), t_jkp)]]
    else:
        m_x = LL[l("ijpx"), hl[m_x_act, pf[h("pqx"), t_jkp]]]
    if rd.d_form == "repaired":
        m_front = hm[h("ijx"), m_front]
        m7 = hm[h("ipx"), m7]
        m13 = lm[l("ijkx"), hm[h("ikx"), m13]]

    rights = [
        Mi(LL[l("ijqx"), hl[H.mul(h("iqx"), gh[g("qx"), h("ijq")]), gl[g("qx"), l("jkpq")]]]),
        m_front,
        m("ijpqx"),
        Mi(LL[l("ipqx"), hl[H.mul(h("iqx"), gh[g("qx"), h("ipq")]), lt]]),
        m_x,
        hm[h("ipx"), lm[L.mul(hl[gh[g("px"), h("ijp")], pfi(h("pqx"), t_jkp)],
                              pfi(h("pqx"), t_ijp)),
                        Mi(RH[h("pqx"), t_ijp, t_jkp])]],
        m7,
        m("ijkpx"),
        hm[h("ipx"), lm[L.mul(hl[gh[g("px"), h("ikp")], pfi(h("pqx"), t_k)],
                              pfi(h("pqx"), t_ikp)),
                        RH[h("pqx"), t_ikp, t_k]]],
        Mi(LL[l("ikpx"), hl[H.mul(h("ipx"), gh[g("px"), h("ikp")]), pfi(h("pqx"), t_k)]]),
        hm[h("ikx"), lm[L.mul(pfi(h("kpx"), gh[gg("px", "kp"), hijk]),
                              hl[h("kpx"), pfi(h("pqx"), t_k)]),
                        Mi(LH[h("kpx"), h("pqx"), t_k])]],
        Mi(m("ikpqx")),
        m13,
    ]
    if rd.binding == "reversed":
        lefts, rights = lefts[::-1], rights[::-1]
    M1, M2, M3, M4, M5 = lefts
    R = rights
    lhs = [lm[L.mul(LD, LE), M5], lm[L.prod(LD, LE, LF), M4], M3, lm[LA, M2],
           lm[L.prod(LA, LB, LC), M1]]
    rhs = [R[12], lm[L.mul(LK, LN), R[11]], lm[LK, R[10]], lm[L.mul(LK, LL_), R[9]],
           lm[L.prod(LK, LL_, LM), R[8]], R[7], lm[L.mul(LG, LI), R[6]],
           lm[L.mul(LG, LI), R[5]], lm[LG, R[4]], lm[L.prod(LG, LH_, LI, LJ), R[3]],
           lm[L.mul(LG, LH_), R[2]], R[1], lm[L.mul(LA, LB), R[0]]]
    return lhs, rhs


def _cond_d(c: Coloring, v: _View):
    lhs, rhs = d_factors(c, v)
    return c.M.prod(*lhs), c.M.prod(*rhs)


_EVAL = {"a": _cond_a, "b": _cond_b, "c": _cond_c, "d": _cond_d}


def evaluate(c: Coloring, cond: str, padded, n: int, inst: np.ndarray):
    """``(lhs, rhs)`` of a condition at instances ``inst`` (shape ``(N, arity)``)."""
    return _EVAL[cond](c, _View(padded, n, inst, COND_LETTERS[cond]))


def _unique_rows(batch: SimplexBatch, cols: dict[int, np.ndarray]):
    parts = [batch.labels[k][:, cc] for k, cc in cols.items() if len(cc)]
    if not parts:
        return np.zeros(1, dtype=np.intp), np.zeros(batch.size, dtype=np.intp)
    block = np.concatenate(parts, axis=1)
    orders = np.concatenate([np.full(len(cc), batch.coloring.groups[k].order)
                             for k, cc in cols.items() if len(cc)])
    bits = float(np.log2(orders).sum())
    if bits < 62:
        key = np.zeros(batch.size, dtype=np.int64)
        for col, o in zip(block.T, orders):
            key = key * int(o) + col
        _, first, inv = np.unique(key, return_index=True, return_inverse=True)
    else:
        _, first, inv = np.unique(block, axis=0, return_index=True, return_inverse=True)
    return first, inv.reshape(-1)


def condition_failures(batch: SimplexBatch, conditions=None, where=None, dedupe: bool = True):
    """Yield ``(cond, instances, fail)`` where ``fail[r, t]`` marks a violated instance.

    Instances are all weakly increasing vertex tuples, optionally filtered by
    ``where(support)``.  Instances sharing a vertex set are evaluated once per
    distinct labeling of that sub-simplex.
    """
    c = batch.coloring
    n = batch.n
    conds = conditions or c.conditions
    if batch.size == 0:
        return
    padded = batch.padded()
    levels = tuple(batch.labels)
    for cond in conds:
        if cond not in c.conditions:
            raise LevelMismatch(f"condition ({cond}) needs a 3-crossed module")
        arity = COND_ARITY[cond]
        for support, inst in _instances_by_support(n, arity).items():
            if where is not None and not where(support):
                continue
            if dedupe and len(support) < n + 1 and batch.size > 1:
                first, inv = _unique_rows(batch, _support_columns(n, support, levels))
                sub = {k: a[first] for k, a in padded.items()}
                lhs, rhs = evaluate(c, cond, sub, n, inst)
                fail = (lhs != rhs)[inv]
            else:
                lhs, rhs = evaluate(c, cond, padded, n, inst)
                fail = lhs != rhs
            yield cond, inst, fail


def batch_valid(batch: SimplexBatch, conditions=None, where=None) -> np.ndarray:
    ok = np.ones(batch.size, dtype=bool)
    for _, _, fail in condition_failures(batch, conditions, where):
        ok &= ~fail.any(axis=1)
    return ok


def first_failures(batch: SimplexBatch, conditions=None, where=None) -> list:
    """Per row: ``None`` or ``(cond, tuple)`` of the first violated instance."""
    out = [None] * batch.size
    for cond, inst, fail in condition_failures(batch, conditions, where):
        bad = fail.any(axis=1)
        for r in np.flatnonzero(bad):
            if out[r] is None:
                out[r] = (cond, tuple(int(x) for x in inst[np.argmax(fail[r])]))
    return out


# ---------------------------------------------------------------------------
# solving a single unknown label

def solve_label(batch: SimplexBatch, level: int, tup: tuple[int, ...], cond: str,
                at: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Solve the condition instance ``at`` for the label of ``tup``, row by row.

    Tries every group element.  Returns ``(value, count)``; ``count`` is the
    number of solutions per row (``value`` is the smallest one, or the unit).
    """
    c = batch.coloring
    grp = c.groups[level]
    col = tuple_positions(batch.n, level)[tup]
    padded = batch.padded()
    inst = np.array([at], dtype=np.intp)
    count = np.zeros(batch.size, dtype=np.intp)
    value = np.full(batch.size, grp.identity, dtype=np.intp)
    for x in range(grp.order):
        padded[level][:, col] = x
        lhs, rhs = evaluate(c, cond, padded, batch.n, inst)
        hit = lhs[:, 0] == rhs[:, 0]
        value[hit & (count == 0)] = x
        count += hit
    return value, count


# ---------------------------------------------------------------------------
# single simplices

class ColoredSimplex:
    """One labeled simplex.  Immutable; labels are tuples in storage order."""

    __slots__ = ("coloring", "n", "labels")

    def __init__(self, coloring, n: int, labels: dict[int, tuple[int, ...]]):
        c = as_coloring(coloring)
        object.__setattr__(self, "coloring", c)
        object.__setattr__(self, "n", int(n))
        lab = {}
        for k in c.levels(n):
            vals = tuple(int(x) for x in labels[k])
            if len(vals) != math.comb(n + 1, k):
                raise ColoringError(f"level {k}: wrong number of labels")
            grp = c.groups[k]
            if any(not 0 <= x < grp.order for x in vals):
                raise ColoringError(f"level {k}: label outside {grp.name}")
            lab[k] = vals
        object.__setattr__(self, "labels", lab)

    def __setattr__(self, *_):
        raise AttributeError("ColoredSimplex is immutable")

    @classmethod
    def from_labels(cls, structure, n: int, g=None, h=None, l=None, m=None,
                    reading: Reading | None = None) -> "ColoredSimplex":
        """Build from sparse maps ``{(i, j): value}``; missing tuples get the unit."""
        c = as_coloring(structure, reading)
        given = {2: g or {}, 3: h or {}, 4: l or {}, 5: m or {}}
        labels = {}
        for k in range(2, 6):
            if k not in c.levels(n):
                if given[k]:
                    raise LevelMismatch(f"{LEVEL_NAMES[k]} labels do not exist here")
                continue
            unit = c.groups[k].identity
            pos = tuple_positions(n, k)
            vals = [unit] * len(pos)
            for t, x in given[k].items():
                t = _parse_tuple(t)
                if len(t) != k or any(a > b for a, b in zip(t, t[1:])) or t[-1] > n or t[0] < 0:
                    raise ColoringError(f"{t} is not a weakly increasing {k}-tuple in [{n}]")
                if t not in pos:
                    if x != unit:
                        raise ColoringError(f"degenerate tuple {t} must carry the unit")
                    continue
                vals[pos[t]] = int(x)
            labels[k] = vals
        return cls(c, n, labels)

    @classmethod
    def units(cls, structure, n: int) -> "ColoredSimplex":
        return cls.from_labels(structure, n)

    @property
    def structure(self):
        return self.coloring.structure

    @property
    def level(self) -> str:
        return self.coloring.level

    def label(self, t) -> int:
        t = _parse_tuple(t)
        k = len(t)
        if k not in self.labels:
            raise ColoringError(f"no labels on {k}-tuples")
        col = lookup(self.n, k)[t]
        if col < 0:
            raise ColoringError(f"{t} is not weakly increasing in [{self.n}]")
        if col == len(self.labels[k]):
            return self.coloring.groups[k].identity
        return self.labels[k][col]

    def g(self, *t):
        return self.label(t)

    def h(self, *t):
        return self.label(t)

    def l(self, *t):
        return self.label(t)

    def m(self, *t):
        return self.label(t)

    def batch(self) -> SimplexBatch:
        return SimplexBatch(self.coloring, self.n,
                            {k: np.array([v], dtype=np.intp) for k, v in self.labels.items()}
                            | {"size": 1})

    def to_dict(self) -> dict:
        out = {"n": self.n, "level": self.level, "labels": {}}
        for k, vals in self.labels.items():
            out["labels"][LEVEL_NAMES[k]] = {",".join(map(str, t)): v
                                             for t, v in zip(tuples(self.n, k), vals)}
        return out

    @classmethod
    def from_dict(cls, structure, d: dict, reading: Reading | None = None) -> "ColoredSimplex":
        c = as_coloring(structure, reading)
        if d.get("level", c.level) != c.level:
            raise LevelMismatch(f"simplex is {d['level']}, structure is {c.level}")
        maps = {name: d.get("labels", {}).get(name, {}) for name in "ghlm"}
        return cls.from_labels(c, int(d["n"]), **maps)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ColoredSimplex) and self.n == other.n
                and self.labels == other.labels and self.coloring.same_structure(other.coloring))

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.labels.items()))))

    def __repr__(self) -> str:
        parts = []
        for k, vals in self.labels.items():
            nz = {t: v for t, v in zip(tuples(self.n, k), vals)
                  if v != self.coloring.groups[k].identity}
            if nz:
                parts.append(f"{LEVEL_NAMES[k]}={nz}")
        return f"ColoredSimplex(n={self.n}, {', '.join(parts) or 'units'})"


def _parse_tuple(t) -> tuple[int, ...]:
    if isinstance(t, str):
        return tuple(int(x) for x in t.split(","))
    return tuple(int(x) for x in t)


def check_colored(sx: ColoredSimplex, structure=None) -> Report:
    """Every violated condition instance of ``sx``, keyed by its vertex tuple."""
    if structure is not None and not as_coloring(structure).same_structure(sx.coloring):
        raise LevelMismatch("simplex was built over a different structure")
    rep = Report()
    for cond, inst, fail in condition_failures(sx.batch(), dedupe=False):
        for t in np.flatnonzero(fail[0]):
            rep.add(f"condition ({cond})", tuple(int(x) for x in inst[t]))
    return rep


# ---------------------------------------------------------------------------
# simplicial operators

def apply_batch(op: SimplicialOperator, batch: SimplexBatch) -> SimplexBatch:
    """Reindex every simplex of ``batch`` along ``op : [m] -> [n]``."""
    if op.target_dim != batch.n:
        raise ColoringError(f"operator lands in [{op.target_dim}], simplex has dim {batch.n}")
    m = op.source_dim
    vals = op.as_array()
    padded = batch.padded()
    out = {}
    for k in batch.coloring.levels(m):
        src = np.array(tuples(m, k), dtype=np.intp).reshape(-1, k)
        cols = lookup(batch.n, k)[tuple(vals[src[:, i]] for i in range(k))]
        out[k] = padded[k][:, cols]
    out["size"] = batch.size
    return SimplexBatch(batch.coloring, m, out)


def apply_operator(op: SimplicialOperator, sx: ColoredSimplex) -> ColoredSimplex:
    """``M(op)(sx)``: the label of a tuple ``t`` is the label of ``op(t)``."""
    return apply_batch(op, sx.batch()).row(0)


# ---------------------------------------------------------------------------
# enumeration

@dataclass
class SimplexStream:
    """Enumerated simplices.  ``partial`` is set when a budget cut the search."""

    batch: SimplexBatch
    partial: bool = False
    mode: str = "structured"
    considered: int = 0

    def __iter__(self):
        return iter(self.batch)

    def __len__(self) -> int:
        return self.batch.size


def _decode(index: np.ndarray, orders: list[int]) -> np.ndarray:
    out = np.empty((len(index), len(orders)), dtype=np.intp)
    rest = index.astype(np.int64)
    for i in range(len(orders) - 1, -1, -1):
        rest, out[:, i] = np.divmod(rest, orders[i])
    return out


def rejection_space(coloring, n: int) -> int:
    c = as_coloring(coloring)
    return math.prod(c.groups[k].order ** math.comb(n + 1, k) for k in c.levels(n))


def enumerate_rejection(structure, n: int, budget: int = DEFAULT_BUDGET,
                        chunk: int = 1 << 18) -> SimplexStream:
    """All label assignments, kept when every condition holds."""
    c = as_coloring(structure)
    levels = c.levels(n)
    orders = [c.groups[k].order for k in levels for _ in range(math.comb(n + 1, k))]
    total = rejection_space(c, n)
    stop = min(total, budget)
    partial = stop < total
    if partial:
        warnings.warn(f"rejection space {total} exceeds budget {budget}", RuntimeWarning,
                      stacklevel=2)
    kept = []
    for start in range(0, stop, chunk):
        idx = np.arange(start, min(stop, start + chunk), dtype=np.int64)
        flat = _decode(idx, orders)
        labels, pos = {"size": len(idx)}, 0
        for k in levels:
            w = math.comb(n + 1, k)
            labels[k] = flat[:, pos:pos + w]
            pos += w
        b = SimplexBatch(c, n, labels)
        kept.append(b.take(batch_valid(b)))
    if not kept:
        kept = [SimplexBatch.units(c, n, 0)]
    return SimplexStream(SimplexBatch.concat(kept), partial, "rejection", stop)


def _extend(batch: SimplexBatch) -> SimplexBatch:
    """Embed dim-``n`` simplices as the front face of dim ``n+1`` ones (new labels = unit)."""
    c, n = batch.coloring, batch.n
    out = {"size": batch.size}
    for k in c.levels(n + 1):
        arr = np.full((batch.size, math.comb(n + 2, k)), c.groups[k].identity, dtype=np.intp)
        if k in batch.labels:
            pos = tuple_positions(n + 1, k)
            cols = [pos[t] for t in tuples(n, k)]
            arr[:, cols] = batch.labels[k]
        out[k] = arr
    return SimplexBatch(c, n + 1, out)


def step_tuples(c: Coloring, v: int):
    """Tuples ending at the new vertex ``v``: the free ones (through ``v-1``) and the
    solved ones with the condition instance that determines each."""
    free, solved = [], []
    for k in c.levels(v):
        for t in itertools.combinations(range(v + 1), k):
            if t[-1] != v:
                continue
            if k >= 2 and t[-2] == v - 1:
                free.append((k, t))
            else:
                at = t[:-1] + (v - 1, v)
                cond = "abcd"[k - 2]
                solved.append((k, t, cond, at))
    return free, solved


def _expand_free(batch: SimplexBatch, free, budget_left: int):
    c = batch.coloring
    orders = [c.groups[k].order for k, _ in free]
    combos = math.prod(orders)
    rows = batch.size * combos
    partial = rows > budget_left
    if partial:
        keep = max(0, budget_left // max(combos, 1))
        batch = batch.take(np.arange(min(keep, batch.size)))
        rows = batch.size * combos
    rep = {k: np.repeat(a, combos, axis=0) for k, a in batch.labels.items()}
    choice = _decode(np.tile(np.arange(combos, dtype=np.int64), batch.size), orders) \
        if combos > 1 else np.zeros((rows, len(free)), dtype=np.intp)
    pos = {k: tuple_positions(batch.n, k) for k in rep}
    for i, (k, t) in enumerate(free):
        rep[k][:, pos[k][t]] = choice[:, i]
    rep["size"] = rows
    return SimplexBatch(c, batch.n, rep), partial


def _solve_step(batch: SimplexBatch, solved, m_source: str = "d"):
    ok = np.ones(batch.size, dtype=bool)
    for k, t, cond, at in solved:
        if cond == "d" and m_source == "c":
            cond, at = "c", t
        value, count = solve_label(batch, k, t, cond, at)
        batch.labels[k][:, tuple_positions(batch.n, k)[t]] = value
        ok &= count == 1
    return ok


def enumerate_structured(structure, n: int, budget: int = DEFAULT_BUDGET,
                         m_source: str = "d", conditions=None) -> SimplexStream:
    """Vertex by vertex: choose labels on tuples through the last edge freely,
    solve the rest from the conditions, then reject anything still failing."""
    c = as_coloring(structure)
    batch = SimplexBatch.units(c, 0, 1)
    partial = False
    considered = 1
    for v in range(1, n + 1):
        batch = _extend(batch)
        free, solved = step_tuples(c, v)
        batch, cut = _expand_free(batch, free, budget)
        partial |= cut
        considered = batch.size
        ok = _solve_step(batch, solved, m_source)
        batch = batch.take(ok)
        batch = batch.take(batch_valid(batch, conditions,
                                       where=lambda s, v=v: v in s))
    return SimplexStream(batch, partial, "structured", considered)


def enumerate_simplices(structure, n: int, budget: int = DEFAULT_BUDGET,
                        mode: str = "structured") -> SimplexStream:
    """All simplices of dimension ``n`` (``mode`` is ``"structured"`` or ``"rejection"``)."""
    if n < 0:
        raise ColoringError("dimension must be >= 0")
    if mode == "structured":
        return enumerate_structured(structure, n, budget)
    if mode == "rejection":
        return enumerate_rejection(structure, n, budget)
    raise ColoringError(f"unknown mode {mode!r}")


def count_colorings(structure, n: int, budget: int = DEFAULT_BUDGET,
                    mode: str = "structured") -> int:
    stream = enumerate_simplices(structure, n, budget, mode)
    if stream.partial:
        raise ColoringError("budget exceeded: count would be partial")
    return len(stream)


def sample_structured(structure, n: int, size: int, seed: int = 0,
                      m_source: str = "d", conditions=None) -> SimplexBatch:
    """Random simplices built like :func:`enumerate_structured` with random free labels.

    Rows that fail a condition are dropped, so fewer than ``size`` may come back.
    """
    c = as_coloring(structure)
    rng = np.random.default_rng(seed)
    batch = SimplexBatch.units(c, 0, size)
    for v in range(1, n + 1):
        batch = _extend(batch)
        free, solved = step_tuples(c, v)
        pos = {k: tuple_positions(batch.n, k) for k in batch.labels}
        for k, t in free:
            batch.labels[k][:, pos[k][t]] = rng.integers(0, c.groups[k].order, batch.size)
        ok = _solve_step(batch, solved, m_source)
        batch = batch.take(ok)
        batch = batch.take(batch_valid(batch, conditions, where=lambda s, v=v: v in s))
    return batch


__all__ = [
    "Reading", "DEFAULT_READING", "PRINTED", "Coloring", "SimplexBatch", "ColoredSimplex",
    "SimplexStream", "check_colored", "apply_operator", "apply_batch", "enumerate_simplices",
    "enumerate_rejection", "enumerate_structured", "count_colorings", "sample_structured",
    "batch_valid", "first_failures", "condition_failures", "solve_label", "tuples", "lookup",
    "in_horn", "ColoringError", "LevelMismatch",
]
