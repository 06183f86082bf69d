"""Inner horns, their fillers, and desk-scale quasi-category certification.

A horn ``Lambda^n_j`` is stored as a dimension-``n`` labeling in which exactly
two tuples are unknown: the face ``[n] - {j}`` and the body ``[n]``.  Filling
sets the body to the unit and solves the condition at ``(0, ..., n)`` for the
face label, which appears there exactly once.  Above the top label level both
tuples carry no label and the horn is copied as is.

Certification manufactures horns by gluing valid ``(n-1)``-simplices along
shared faces, either exhaustively or by seeded random gluing.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .colored import (COND_ARITY, DEFAULT_BUDGET, ColoredSimplex, ColoringError, SimplexBatch,
                      as_coloring, batch_valid, check_colored, condition_failures,
                      enumerate_structured, first_failures, in_horn, solve_label, tuple_positions,
                      tuples)
from .report import Report
from .simplicial import face

EXHAUSTIVE_MAX = 4
DEFAULT_SAMPLES = 1000


class HornError(ColoringError):
    """An inconsistent horn; ``report`` holds the violated conditions."""

    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------------------
# tuple bookkeeping

def missing_tuples(n: int, j: int) -> list[tuple[int, tuple[int, ...]]]:
    """``(level, tuple)`` of the face opposite ``j`` and of the body."""
    face_t = tuple(v for v in range(n + 1) if v != j)
    return [(n, face_t), (n + 1, tuple(range(n + 1)))]


def fill_condition(coloring, n: int) -> str | None:
    """The condition solved at ``(0, ..., n)``, or None above the top level."""
    c = as_coloring(coloring)
    for cond in c.conditions:
        if COND_ARITY[cond] == n + 1:
            return cond
    return None


def _check_inner(n: int, j: int):
    if not 0 < j < n:
        raise HornError(f"Lambda^{n}_{j} is not an inner horn (need 0 < j < n)")


def _missing_columns(c, n: int, j: int) -> dict[int, int]:
    out = {}
    for k, t in missing_tuples(n, j):
        if k in c.groups and k <= n + 1:
            out[k] = tuple_positions(n, k)[t]
    return out


@dataclass(frozen=True)
class Horn:
    """A labeling of every tuple of ``[n]`` lying in ``Lambda^n_j``.

    ``labels`` maps a level (2..5) to ``{vertex tuple: element}`` for the
    strictly increasing tuples in the horn.
    """

    coloring: object
    n: int
    j: int
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coloring", as_coloring(self.coloring))
        _check_inner(self.n, self.j)
        c = self.coloring
        clean = {}
        for k in c.levels(self.n):
            given = {tuple(int(v) for v in t): int(x)
                     for t, x in (self.labels.get(k) or {}).items()}
            for t in given:
                if len(t) != k or list(t) != sorted(set(t)) or t[-1] > self.n:
                    raise HornError(f"{t} is not a strictly increasing {k}-tuple in [{self.n}]")
                if not in_horn(t, self.n, self.j):
                    raise HornError(f"{t} does not lie in Lambda^{self.n}_{self.j}")
            clean[k] = given
        object.__setattr__(self, "labels", clean)

    @property
    def structure(self):
        return self.coloring.structure

    @property
    def level(self) -> str:
        return self.coloring.level

    @classmethod
    def from_simplex(cls, sx: ColoredSimplex, j: int) -> "Horn":
        """Restrict a simplex to ``Lambda^n_j``."""
        labels = {}
        for k, vals in sx.labels.items():
            labels[k] = {t: v for t, v in zip(tuples(sx.n, k), vals)
                         if in_horn(t, sx.n, j)}
        return cls(sx.coloring, sx.n, j, labels)

    @classmethod
    def from_faces(cls, structure, n: int, j: int, faces: dict[int, ColoredSimplex]) -> "Horn":
        """Glue the faces ``d_i`` (``i != j``), checking that shared tuples agree."""
        _check_inner(n, j)
        c = as_coloring(structure)
        want = set(range(n + 1)) - {j}
        if set(faces) != want:
            raise HornError(f"need exactly the faces {sorted(want)}")
        labels: dict[int, dict] = {k: {} for k in c.levels(n)}
        for i, sx in sorted(faces.items()):
            if sx.n != n - 1:
                raise HornError(f"face {i} has dimension {sx.n}, expected {n - 1}")
            d = face(n, i)
            for k, vals in sx.labels.items():
                for u, x in zip(tuples(n - 1, k), vals):
                    t = tuple(d(v) for v in u)
                    old = labels[k].setdefault(t, x)
                    if old != x:
                        raise HornError(f"faces disagree at {t}: {old} vs {x}")
        return cls(c, n, j, labels)

    def batch(self) -> SimplexBatch:
        """The horn as a one-row batch, unknown tuples set to the unit."""
        c = self.coloring
        lab = {}
        for k in c.levels(self.n):
            row = np.full((1, math.comb(self.n + 1, k)), c.groups[k].identity, dtype=np.intp)
            pos = tuple_positions(self.n, k)
            for t, x in self.labels[k].items():
                row[0, pos[t]] = x
            lab[k] = row
        return SimplexBatch(c, self.n, lab)

    def label(self, t) -> int:
        t = tuple(t)
        k = len(t)
        if len(set(t)) < k:
            return self.coloring.groups[k].identity
        return self.labels[k][t]

    def to_dict(self) -> dict:
        return {"n": self.n, "j": self.j,
                "labels": {str(k): {",".join(map(str, t)): x for t, x in sorted(m.items())}
                           for k, m in self.labels.items() if m}}


def check_horn(h: Horn) -> Report:
    """Every tuple of the horn is labeled and every condition inside the horn holds."""
    rep = Report()
    c, n, j = h.coloring, h.n, h.j
    for k in c.levels(n):
        for t in tuples(n, k):
            if in_horn(t, n, j) and t not in h.labels[k]:
                rep.add("horn coverage", t, detail=f"level {k} label missing")
    if not rep.ok:
        return rep
    for k, m in h.labels.items():
        grp = c.groups[k]
        for t, x in m.items():
            if not 0 <= x < grp.order:
                rep.add("label range", t, detail=f"{x} not in a group of order {grp.order}")
    if not rep.ok:
        return rep
    b = h.batch()
    for cond, inst, fail in condition_failures(b, where=lambda s: in_horn(s, n, j)):
        for t in inst[fail[0]]:
            rep.add(f"condition ({cond})", tuple(int(v) for v in t))
    return rep


# ---------------------------------------------------------------------------
# filling

def fill_batch(batch: SimplexBatch, j: int) -> tuple[SimplexBatch, np.ndarray]:
    """Fill a batch of horns (stored as ``n``-simplices whose missing tuples are ignored).

    Returns the filled batch and, per row, whether the solved label was the
    unique solution.  Rows without a unique solution keep the smallest one.
    """
    n = batch.n
    _check_inner(n, j)
    c = batch.coloring
    out = batch.copy()
    cols = _missing_columns(c, n, j)
    for k, col in cols.items():
        out.labels[k][:, col] = c.groups[k].identity
    cond = fill_condition(c, n)
    unique = np.ones(out.size, dtype=bool)
    face_t = tuple(v for v in range(n + 1) if v != j)
    if cond is not None and n in cols:
        value, count = solve_label(out, n, face_t, cond, tuple(range(n + 1)))
        out.labels[n][:, cols[n]] = value
        unique = count == 1
    return out, unique


def fill_inner_horn(h: Horn) -> ColoredSimplex:
    """Extend a valid inner horn to a full simplex.

    The body label is the unit and the face label is the unique solution of
    the condition at ``(0, ..., n)``.  An inconsistent horn raises
    :class:`HornError` carrying the violation report.
    """
    rep = check_horn(h)
    if not rep.ok:
        raise HornError(f"inconsistent horn: {rep.violations[0]}", rep)
    filled, unique = fill_batch(h.batch(), h.j)
    if not unique[0]:
        raise HornError(f"the filling equation for Lambda^{h.n}_{h.j} has no unique solution")
    return filled.row(0)


def verify_filler(h: Horn, sx: ColoredSimplex) -> Report:
    """Check that ``sx`` restricts to ``h`` and satisfies every condition."""
    rep = Report()
    if sx.n != h.n:
        rep.add("dimension", (sx.n,), detail=f"expected {h.n}")
        return rep
    if not sx.coloring.same_structure(h.coloring):
        rep.add("structure", (), detail="filler and horn use different structures")
        return rep
    for k, m in h.labels.items():
        for t, x in m.items():
            if sx.label(t) != x:
                rep.add("face mismatch", t, detail=f"horn has {x}, filler has {sx.label(t)}")
    rep.extend(check_colored(sx))
    return rep


def _verify_batch(horns: SimplexBatch, filled: SimplexBatch, j: int) -> tuple[np.ndarray, list]:
    n = horns.n
    ok = np.ones(horns.size, dtype=bool)
    for k in horns.labels:
        keep = [i for i, t in enumerate(tuples(n, k)) if in_horn(t, n, j)]
        if keep:
            ok &= (horns.labels[k][:, keep] == filled.labels[k][:, keep]).all(axis=1)
    ok &= batch_valid(filled)
    return ok, first_failures(filled.take(~ok)) if not ok.all() else []


# ---------------------------------------------------------------------------
# closed forms from the filler construction, used as cross-checks

def h013_closed_form(h: Horn) -> int:
    """``Lambda^3_2``: ``h_013 = h_023 . ^{g_23}h_012 . h_123^-1``."""
    if (h.n, h.j) != (3, 2):
        raise HornError("closed form is for Lambda^3_2")
    c = h.coloring
    H = c.H
    return int(H.prod(h.label((0, 2, 3)), c.a_gh[h.label((2, 3)), h.label((0, 1, 2))],
                      H.inv(h.label((1, 2, 3)))))


def l0124_closed_form(h: Horn) -> int:
    """``Lambda^4_3``: ``l_0124`` from condition (c) at ``(0,1,2,3,4)`` with ``m = e``.

    ``^{h014}l1234 . l0134 . ^{h034}(^{g34}l0123) . l0234^-1 . ^{h024}{h234, ^{g34 g23}h012}``.
    """
    if (h.n, h.j) != (4, 3):
        raise HornError("closed form is for Lambda^4_3")
    c = h.coloring
    G, L = c.G, c.L
    lab = h.label
    g = G.mul(lab((3, 4)), lab((2, 3)))
    return int(L.prod(
        c.a_hl[lab((0, 1, 4)), lab((1, 2, 3, 4))],
        lab((0, 1, 3, 4)),
        c.a_hl[lab((0, 3, 4)), c.a_gl[lab((3, 4)), lab((0, 1, 2, 3))]],
        L.inv(lab((0, 2, 3, 4))),
        c.a_hl[lab((0, 2, 4)), c.pf[lab((2, 3, 4)), c.a_gh[g, lab((0, 1, 2))]]],
    ))


# ---------------------------------------------------------------------------
# horn assembly

def _face_columns(n: int, i: int, levels) -> dict[int, np.ndarray]:
    """Columns of the ``n``-simplex read by its ``i``-th face, per level."""
    d = face(n, i)
    out = {}
    for k in levels:
        pos = tuple_positions(n, k)
        out[k] = np.array([pos[tuple(d(v) for v in u)] for u in tuples(n - 1, k)],
                          dtype=np.intp)
    return out


def _keys(block: np.ndarray, orders: np.ndarray) -> np.ndarray:
    """Collision-free integer keys for rows of ``block`` (or row-unique ids)."""
    if block.shape[1] == 0:
        return np.zeros(block.shape[0], dtype=np.int64)
    if float(np.log2(orders.astype(float)).sum()) < 62:
        key = np.zeros(block.shape[0], dtype=np.int64)
        for col, o in zip(block.T, orders):
            key = key * int(o) + col
        return key
    _, inv = np.unique(block, axis=0, return_inverse=True)
    return inv.reshape(-1).astype(np.int64)


class _Gluer:
    """Shared state for gluing faces ``i != j`` of a dimension-``n`` horn."""

    def __init__(self, c, n: int, j: int, faces: SimplexBatch):
        self.c, self.n, self.j = c, n, j
        self.levels = list(faces.labels)
        self.faces = faces
        self.order = [i for i in range(n + 1) if i != j]
        self.cols = {i: _face_columns(n, i, self.levels) for i in self.order}
        self.face_flat = np.concatenate([faces.labels[k] for k in self.levels], axis=1) \
            if self.levels else np.zeros((faces.size, 0), dtype=np.intp)
        self.widths = [math.comb(n + 1, k) for k in self.levels]
        self.offsets = np.concatenate([[0], np.cumsum(self.widths)])
        self.grp_orders = np.concatenate(
            [np.full(math.comb(n, k), c.groups[k].order) for k in self.levels]) \
            if self.levels else np.zeros(0, dtype=np.intp)

    def flat_cols(self, i: int) -> np.ndarray:
        """Horn columns (in the flattened layout) written by face ``i``."""
        return np.concatenate([self.offsets[a] + self.cols[i][k]
                               for a, k in enumerate(self.levels)]) \
            if self.levels else np.zeros(0, dtype=np.intp)

    def shared(self, step: int):
        """For the ``step``-th face: which of its columns were written earlier."""
        i = self.order[step]
        mine = self.flat_cols(i)
        before = set()
        for p in self.order[:step]:
            before.update(self.flat_cols(p).tolist())
        known = np.array([c in before for c in mine.tolist()], dtype=bool)
        return i, mine, known

    def index(self, known: np.ndarray):
        key = _keys(self.face_flat[:, known], self.grp_orders[known])
        order = np.argsort(key, kind="stable")
        return key, order, key[order]

    def unflatten(self, flat: np.ndarray) -> SimplexBatch:
        labels = {k: flat[:, self.offsets[a]:self.offsets[a + 1]]
                  for a, k in enumerate(self.levels)}
        labels["size"] = flat.shape[0]
        return SimplexBatch(self.c, self.n, labels)

    def blank(self, rows: int) -> np.ndarray:
        units = np.concatenate([np.full(w, self.c.groups[k].identity)
                                for k, w in zip(self.levels, self.widths)]) \
            if self.levels else np.zeros(0, dtype=np.intp)
        return np.tile(units.astype(np.intp), (rows, 1))


def assemble_horns(structure, n: int, j: int, budget: int = DEFAULT_BUDGET,
                   faces: SimplexBatch | None = None) -> tuple[SimplexBatch, bool]:
    """Every ``Lambda^n_j`` horn, glued from valid ``(n-1)``-simplices.

    Returns ``(horns, partial)``; ``partial`` is set when a budget cut either
    the face enumeration or the gluing.
    """
    _check_inner(n, j)
    c = as_coloring(structure)
    partial = False
    if faces is None:
        stream = enumerate_structured(c, n - 1, budget)
        faces, partial = stream.batch, stream.partial
    gl = _Gluer(c, n, j, faces)
    flat = gl.blank(faces.size)
    i0 = gl.order[0]
    flat[:, gl.flat_cols(i0)] = gl.face_flat
    for step in range(1, len(gl.order)):
        i, mine, known = gl.shared(step)
        _, order, skey = gl.index(known)
        hkey = _keys(flat[:, mine[known]], gl.grp_orders[known])
        lo = np.searchsorted(skey, hkey, side="left")
        hi = np.searchsorted(skey, hkey, side="right")
        cnt = hi - lo
        total = int(cnt.sum())
        if total > budget:
            partial = True
            keep = np.cumsum(cnt) <= budget
            flat, lo, cnt = flat[keep], lo[keep], cnt[keep]
            total = int(cnt.sum())
        rows = np.repeat(np.arange(flat.shape[0]), cnt)
        starts = np.repeat(lo - np.concatenate([[0], np.cumsum(cnt)[:-1]]), cnt)
        pick = order[starts + np.arange(total)] if total else np.zeros(0, dtype=np.intp)
        new = flat[rows]
        new[:, mine[~known]] = gl.face_flat[pick][:, ~known]
        flat = new
    return gl.unflatten(flat), partial


def sample_horns(structure, n: int, j: int, size: int, seed=0,
                 budget: int = DEFAULT_BUDGET, faces: SimplexBatch | None = None,
                 max_rounds: int = 50) -> tuple[SimplexBatch, bool]:
    """``size`` random ``Lambda^n_j`` horns by random gluing of valid faces.

    Each row picks its faces one at a time uniformly among those compatible
    with what is already glued; dead ends are redrawn.  ``partial`` is set
    if the face enumeration was cut or fewer than ``size`` horns were found.
    """
    _check_inner(n, j)
    c = as_coloring(structure)
    rng = np.random.default_rng(list(seed) if isinstance(seed, tuple) else seed)
    partial = False
    if faces is None:
        stream = enumerate_structured(c, n - 1, budget)
        faces, partial = stream.batch, stream.partial
    gl = _Gluer(c, n, j, faces)
    steps = [gl.shared(s) for s in range(1, len(gl.order))]
    indexes = [gl.index(known) for _, _, known in steps]
    i0 = gl.order[0]
    found = []
    need = size
    for _ in range(max_rounds):
        if need <= 0 or faces.size == 0:
            break
        flat = gl.blank(need)
        flat[:, gl.flat_cols(i0)] = gl.face_flat[rng.integers(0, faces.size, need)]
        alive = np.ones(need, dtype=bool)
        for (i, mine, known), (_, order, skey) in zip(steps, indexes):
            hkey = _keys(flat[:, mine[known]], gl.grp_orders[known])
            lo = np.searchsorted(skey, hkey, side="left")
            hi = np.searchsorted(skey, hkey, side="right")
            alive &= hi > lo
            off = np.floor(rng.random(need) * np.maximum(hi - lo, 1)).astype(np.intp)
            pick = order[np.minimum(lo + off, len(order) - 1)]
            flat[np.ix_(alive, mine[~known])] = gl.face_flat[pick[alive]][:, ~known]
        found.append(flat[alive])
        need -= int(alive.sum())
    flat = np.concatenate(found) if found else gl.blank(0)
    if flat.shape[0] < size:
        partial = True
    return gl.unflatten(flat[:size]), partial


# ---------------------------------------------------------------------------
# certification

@dataclass
class HornCount:
    n: int
    j: int
    mode: str
    horns: int = 0
    filled: int = 0
    verified: int = 0
    partial: bool = False
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.horns == self.filled == self.verified and not self.failures

    def to_dict(self) -> dict:
        return {"n": self.n, "j": self.j, "mode": self.mode, "horns": self.horns,
                "filled": self.filled, "verified": self.verified, "partial": self.partial,
                "failures": [list(map(str, f)) for f in self.failures[:10]]}


@dataclass
class CertReport:
    """Per-``(n, j)`` horn counts; ``certified`` means complete and without failures."""

    structure: str
    n_max: int
    seed: int
    entries: list = field(default_factory=list)

    @property
    def partial(self) -> bool:
        return any(e.partial for e in self.entries)

    @property
    def certified(self) -> bool:
        return all(e.ok for e in self.entries) and not self.partial

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_dict(self) -> dict:
        return {"structure": self.structure, "n_max": self.n_max, "seed": self.seed,
                "certified": self.certified, "partial": self.partial,
                "entries": [e.to_dict() for e in self.entries]}

    def summary(self) -> str:
        lines = [f"{self.structure}: {'certified' if self.certified else 'NOT certified'}"
                 + (" (partial)" if self.partial else "")]
        for e in self.entries:
            lines.append(f"  n={e.n} j={e.j} {e.mode}: {e.horns} horns, {e.filled} filled, "
                         f"{e.verified} verified" + (" partial" if e.partial else ""))
        return "\n".join(lines)


def certify_horns(horns: SimplexBatch, j: int, entry: HornCount) -> HornCount:
    """Fill and verify a batch of horns, accumulating into ``entry``."""
    filled, unique = fill_batch(horns, j)
    ok, fails = _verify_batch(horns, filled, j)
    entry.horns += horns.size
    entry.filled += int(unique.sum())
    entry.verified += int((ok & unique).sum())
    if not unique.all():
        entry.failures.append(("no unique solution", int(np.argmin(unique))))
    entry.failures.extend(f for f in fails if f is not None)
    return entry


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("XMOD_THREADS", "1")))
    except ValueError:
        return 1


def certify_quasi_category(structure, n_max: int = EXHAUSTIVE_MAX,
                           budget: int = DEFAULT_BUDGET, sample: int | None = None,
                           seed: int = 0, exhaustive_max: int = EXHAUSTIVE_MAX) -> CertReport:
    """Fill every inner horn up to dimension ``n_max``.

    Dimensions ``<= exhaustive_max`` (or all of them when ``sample`` is None)
    are assembled exhaustively; higher ones use ``sample`` seeded random horns
    per ``(n, j)``.  Budget cuts are reported as partial, never as success.
    """
    c = as_coloring(structure)
    name = getattr(c.structure, "name", "") or type(c.structure).__name__
    rep = CertReport(name, n_max, seed)
    for n in range(2, n_max + 1):
        stream = enumerate_structured(c, n - 1, budget)
        faces = stream.batch
        sampled = sample is not None and n > exhaustive_max

        def run(j, n=n, faces=faces, cut=stream.partial, sampled=sampled):
            entry = HornCount(n, j, "sampled" if sampled else "exhaustive")
            if sampled:
                horns, part = sample_horns(c, n, j, sample, seed=(seed, n, j),
                                           budget=budget, faces=faces)
            else:
                horns, part = assemble_horns(c, n, j, budget, faces=faces)
            entry.partial = part or cut
            chunk = max(1, budget // 4)
            for start in range(0, horns.size, chunk):
                certify_horns(horns.take(np.arange(start, min(horns.size, start + chunk))),
                              j, entry)
            return entry

        js = list(range(1, n))
        workers = min(_threads(), len(js))
        if workers > 1:
            with ThreadPoolExecutor(workers) as ex:
                rep.entries.extend(ex.map(run, js))
        else:
            rep.entries.extend(run(j) for j in js)
    return rep


__all__ = [
    "Horn", "HornError", "HornCount", "CertReport", "check_horn", "fill_inner_horn",
    "fill_batch", "verify_filler", "assemble_horns", "sample_horns", "certify_horns",
    "certify_quasi_category", "h013_closed_form", "l0124_closed_form", "missing_tuples",
    "fill_condition",
]
