"""Axiom registries and exhaustive verifiers for 2- and 3-crossed modules.

Each axiom is a list of clauses.  A clause names its quantified variables and
the group each ranges over, and maps index arrays to a pair ``(lhs, rhs)`` of
element-index arrays.  The verifier builds the full broadcast grid of
variable values, compares, counts mismatches and reports the first failing
tuple in lexicographic order.

Notation in the ``text`` fields: ``^x y`` is the action of ``x`` on ``y``,
``{a,b}`` the Peiffer lifting, ``{a,b,c}`` / ``{a,b,c}'`` the left / right
Homanians, ``{h,l}_HL`` / ``{h,l}'_HL`` the HL liftings, ``{l,l'}_LL`` the LL
lifting and ``d`` any boundary map.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .crossed import ThreeCrossedModule, TwoCrossedModule
from .groups import GroupAction, GroupHom, check_action, check_hom
from .report import Report, _plain

DEFAULT_BUDGET = 10**8
SAMPLE_SIZE = 10**6
CHUNK = 1 << 21
AXIOM24_VARIANTS = ("verbatim", "swapped")
DEFAULT_AXIOM24_VARIANT = "swapped"
AXIOM_TABLE_VERSION = "1"


@dataclass(frozen=True)
class Clause:
    label: str
    variables: tuple[tuple[str, str], ...]
    fn: Callable
    variant: str | None = None


@dataclass
class Axiom:
    id: int
    name: str
    text: str
    clauses: list[Clause] = field(default_factory=list)


@dataclass
class AxiomResult:
    id: int
    name: str
    text: str
    ok: bool
    count: int = 0
    checked: int = 0
    witness: dict | None = None
    clause: str | None = None
    sampled: bool = False

    def to_dict(self) -> dict:
        return {"id": self.id, "name": self.name, "status": "pass" if self.ok else "fail",
                "count": int(self.count), "checked": int(self.checked),
                "witness": _plain(self.witness), "clause": self.clause,
                "sampled": self.sampled}


@dataclass
class AxiomReport:
    kind: str
    results: list[AxiomResult]
    components: Report = field(default_factory=Report)
    variant: str | None = None

    @property
    def ok(self) -> bool:
        return self.components.ok and all(r.ok for r in self.results)

    def failed_ids(self) -> list[int]:
        return [r.id for r in self.results if not r.ok]

    def result(self, axiom_id: int) -> AxiomResult:
        for r in self.results:
            if r.id == axiom_id:
                return r
        raise KeyError(axiom_id)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "ok": self.ok, "axiom_table_version": AXIOM_TABLE_VERSION,
               "axioms": [r.to_dict() for r in self.results],
               "components": self.components.to_dict()}
        if self.variant is not None:
            out["axiom24_variant"] = self.variant
        return out

    def summary(self) -> str:
        bad = self.failed_ids()
        head = f"{self.kind}: {len(self.results) - len(bad)}/{len(self.results)} axioms pass"
        if not self.components.ok:
            head += f"; component checks failed: {', '.join(self.components.checks())}"
        return head if not bad else head + f"; failing ids {bad}"


class _Registry:
    def __init__(self, kind: str):
        self.kind = kind
        self.axioms: dict[int, Axiom] = {}

    def declare(self, axiom_id: int, name: str, text: str) -> None:
        self.axioms[axiom_id] = Axiom(axiom_id, name, text)

    def clause(self, axiom_id: int, variables: str, label: str = "", variant: str | None = None):
        vs = tuple(tuple(v.split(":")) for v in variables.split())

        def deco(fn):
            ax = self.axioms[axiom_id]
            ax.clauses.append(Clause(label or str(len(ax.clauses) + 1), vs, fn, variant))
            return fn
        return deco

    def table(self) -> list[tuple[int, str, str]]:
        return [(a.id, a.name, a.text) for a in sorted(self.axioms.values(), key=lambda a: a.id)]


TWO = _Registry("2cm")
THREE = _Registry("3cm")


# ---------------------------------------------------------------------------
# the verifier engine

def _domain_sizes(S) -> dict[str, int]:
    return {k: getattr(S, k).order for k in S._groups}


def _eval_clause(S, cl: Clause, budget: int, seed: int):
    sizes = [_domain_sizes(S)[d] for _, d in cl.variables]
    total = int(np.prod(sizes, dtype=object))
    k = len(sizes)
    if total > budget:
        rng = np.random.default_rng(seed)
        n = min(SAMPLE_SIZE, budget)
        draws = [rng.integers(0, s, size=n) for s in sizes]
        lhs, rhs = cl.fn(S, *draws)
        bad = np.broadcast_to(np.asarray(lhs) != np.asarray(rhs), (n,))
        idx = np.flatnonzero(bad)
        if len(idx) == 0:
            return 0, n, None, True
        tuples = sorted(tuple(int(d[i]) for d in draws) for i in idx)
        return len(idx), n, tuples[0], True
    # exhaustive, chunked along the first variable
    rest = total // sizes[0] if k else 1
    step = max(1, CHUNK // max(rest, 1))
    count, first = 0, None
    for start in range(0, sizes[0] if k else 1, step):
        stop = min(sizes[0], start + step) if k else 1
        grids = []
        for i, s in enumerate(sizes):
            shape = [1] * k
            shape[i] = -1
            rng_i = np.arange(start, stop) if i == 0 else np.arange(s)
            grids.append(rng_i.reshape(shape))
        lhs, rhs = cl.fn(S, *grids)
        full = [stop - start] + sizes[1:]
        bad = np.broadcast_to(np.asarray(lhs) != np.asarray(rhs), full)
        c = int(bad.sum())
        if c and first is None:
            w = np.argwhere(bad)[0]
            first = (int(w[0]) + start,) + tuple(int(x) for x in w[1:])
        count += c
    return count, total, first, False


def _run(S, registry: _Registry, ids, variant, budget: int, seed: int, fail_fast: bool):
    results = []
    for ax in sorted(registry.axioms.values(), key=lambda a: a.id):
        if ids is not None and ax.id not in ids:
            continue
        res = AxiomResult(ax.id, ax.name, ax.text, True)
        for cl in ax.clauses:
            if cl.variant is not None and cl.variant != variant:
                continue
            count, checked, first, sampled = _eval_clause(S, cl, budget, seed)
            res.checked += checked
            res.sampled |= sampled
            if sampled:
                warnings.warn(f"{registry.kind} axiom {ax.id} clause {cl.label}: "
                              f"quantifier range exceeds budget {budget}, sampled {checked} tuples",
                              RuntimeWarning, stacklevel=3)
            if count:
                res.count += count
                if res.ok:
                    res.ok = False
                    res.clause = cl.label
                    res.witness = {name: v for (name, _), v in zip(cl.variables, first)}
        results.append(res)
        if fail_fast and not res.ok:
            break
    return results


def check_components(S) -> Report:
    """Each stored boundary is a homomorphism and each action is by automorphisms."""
    rep = Report()
    for k in S._homs:
        rep.extend(check_hom(getattr(S, k)), prefix=f"{k}: ")
    for k in S._acts:
        rep.extend(check_action(getattr(S, k)), prefix=f"{k}: ")
    return rep


def verify_two_crossed(W: TwoCrossedModule, *, ids=None, budget: int = DEFAULT_BUDGET,
                       seed: int = 0, fail_fast: bool = False,
                       components: bool = True) -> AxiomReport:
    if not isinstance(W, TwoCrossedModule):
        raise TypeError("verify_two_crossed expects a TwoCrossedModule")
    comp = check_components(W) if components else Report()
    return AxiomReport("2cm", _run(W, TWO, ids, None, budget, seed, fail_fast), comp)


def verify_three_crossed(T: ThreeCrossedModule, *, ids=None, budget: int = DEFAULT_BUDGET,
                         seed: int = 0, axiom24_variant: str = DEFAULT_AXIOM24_VARIANT,
                         fail_fast: bool = False, components: bool = True) -> AxiomReport:
    if not isinstance(T, ThreeCrossedModule):
        raise TypeError("verify_three_crossed expects a ThreeCrossedModule")
    if axiom24_variant not in AXIOM24_VARIANTS:
        raise ValueError(f"axiom24_variant must be one of {AXIOM24_VARIANTS}")
    comp = check_components(T) if components else Report()
    results = _run(T, THREE, ids, axiom24_variant, budget, seed, fail_fast)
    return AxiomReport("3cm", results, comp, variant=axiom24_variant)


def axiom_table(kind: str = "3cm") -> list[tuple[int, str, str]]:
    return (THREE if kind == "3cm" else TWO).table()


# ---------------------------------------------------------------------------
# 2-crossed module axioms

TWO.declare(1, "dd=0", "d(d(l)) = e")
TWO.declare(2, "equivariance", "d(^g h) = ^g d(h);  d(^g l) = ^g d(l);  d(^h l) = ^h d(l)")
TWO.declare(3, "G-equivariant lifting", "^g {h2,h1} = {^g h2, ^g h1}")
TWO.declare(4, "boundary of lifting", "d{h2,h1} = h2 h1 h2^-1 ^(d h2)h1^-1")
TWO.declare(5, "lifting of boundaries", "{d l2, d l1} = l2 l1 l2^-1 l1^-1")
TWO.declare(6, "left lifting rule", "{h3 h2, h1} = ^h3{h2,h1} {h3, ^(d h2)h1}")
TWO.declare(7, "right lifting rule", "{h3, h2 h1} = {h3,h2} ^(^(d h3)h2){h3,h1}")
TWO.declare(8, "H-action via lifting", "^h l = l {d l^-1, h}")
TWO.declare(9, "G-action via lifting", "^(d h)l = ^h l {h, d l^-1}")
TWO.declare(10, "action difference", "l^-1 ^(d h)l = {d l^-1, h} {h, d l^-1}")


@TWO.clause(1, "l:L")
def _w1(W, l):
    return W.dh[W.dl[l]], np.full_like(l, W.G.identity)


@TWO.clause(2, "g:G h:H", "G on H")
def _w2a(W, g, h):
    return W.dh[W.a_gh[g, h]], W.G.conj(g, W.dh[h])


@TWO.clause(2, "g:G l:L", "G on L")
def _w2b(W, g, l):
    return W.dl[W.a_gl[g, l]], W.a_gh[g, W.dl[l]]


@TWO.clause(2, "h:H l:L", "H on L")
def _w2c(W, h, l):
    return W.dl[W.a_hl[h, l]], W.H.conj(h, W.dl[l])


@TWO.clause(3, "g:G h2:H h1:H")
def _w3(W, g, h2, h1):
    return W.a_gl[g, W.pf[h2, h1]], W.pf[W.a_gh[g, h2], W.a_gh[g, h1]]


@TWO.clause(4, "h2:H h1:H")
def _w4(W, h2, h1):
    H = W.H
    return W.dl[W.pf[h2, h1]], H.prod(h2, h1, H.inv(h2), H.inv(W.a_gh[W.dh[h2], h1]))


@TWO.clause(5, "l2:L l1:L")
def _w5(W, l2, l1):
    return W.pf[W.dl[l2], W.dl[l1]], W.L.commutator(l2, l1)


@TWO.clause(6, "h3:H h2:H h1:H")
def _w6(W, h3, h2, h1):
    lhs = W.pf[W.H.mul(h3, h2), h1]
    rhs = W.L.mul(W.a_hl[h3, W.pf[h2, h1]], W.pf[h3, W.a_gh[W.dh[h2], h1]])
    return lhs, rhs


@TWO.clause(7, "h3:H h2:H h1:H")
def _w7(W, h3, h2, h1):
    lhs = W.pf[h3, W.H.mul(h2, h1)]
    rhs = W.L.mul(W.pf[h3, h2], W.a_hl[W.a_gh[W.dh[h3], h2], W.pf[h3, h1]])
    return lhs, rhs


@TWO.clause(8, "h:H l:L")
def _w8(W, h, l):
    return W.a_hl[h, l], W.L.mul(l, W.pf[W.dl[W.L.inv(l)], h])


@TWO.clause(9, "h:H l:L")
def _w9(W, h, l):
    return W.a_gl[W.dh[h], l], W.L.mul(W.a_hl[h, l], W.pf[h, W.dl[W.L.inv(l)]])


@TWO.clause(10, "h:H l:L")
def _w10(W, h, l):
    L = W.L
    dli = W.dl[L.inv(l)]
    return L.mul(L.inv(l), W.a_gl[W.dh[h], l]), L.mul(W.pf[dli, h], W.pf[h, dli])


# ---------------------------------------------------------------------------
# 3-crossed module axioms

THREE.declare(1, "boundaries are homomorphisms", "d(xy) = d(x) d(y) for d: M->L, L->H, H->G")
THREE.declare(2, "dd=0", "d(d(m)) = e;  d(d(l)) = e")
THREE.declare(3, "G-equivariance of boundaries",
              "d(^g h) = ^g d(h);  d(^g l) = ^g d(l);  d(^g m) = ^g d(m)")
THREE.declare(4, "H-equivariance of boundaries", "d(^h l) = ^h d(l);  d(^h m) = ^h d(m)")
THREE.declare(5, "L-equivariance of boundary", "d(^l m) = ^l d(m)")
THREE.declare(6, "G-equivariant Peiffer lifting", "^g {h2,h1} = {^g h2, ^g h1}")
THREE.declare(7, "G-equivariant Homanians",
              "^g {h3,h2,h1} = {^g h3, ^g h2, ^g h1};  ^g {h3,h2,h1}' = {^g h3, ^g h2, ^g h1}'")
THREE.declare(8, "G-equivariant LL lifting", "^g {l2,l1}_LL = {^g l2, ^g l1}_LL")
THREE.declare(9, "H-equivariant LL lifting", "^h {l2,l1}_LL = {^h l2, ^h l1}_LL")
THREE.declare(10, "M boundary acts by conjugation", "^(d m)m' = m m' m^-1")
THREE.declare(11, "boundary of HL lifting", "d{h,l}_HL ^h l = l {d l^-1, h}")
THREE.declare(12, "boundary of HL' lifting", "d{h,l}'_HL ^(d h)l = ^h l {h, d l^-1}")
THREE.declare(13, "G-equivariant HL liftings",
              "^g {h,l}_HL = {^g h, ^g l}_HL;  ^g {h,l}'_HL = {^g h, ^g l}'_HL")
THREE.declare(14, "H-action on M via HL", "^h m = m {h, d m^-1}_HL")
THREE.declare(15, "boundary of LL lifting", "d{l,l'}_LL ^(d l)l' = l l' l^-1")
THREE.declare(16, "left LL lifting rule", "{l3 l2, l1}_LL = ^l3{l2,l1}_LL {l3, ^(d l2)l1}_LL")
THREE.declare(17, "right LL lifting rule",
              "{l3, l2 l1}_LL = {l3,l2}_LL ^(^(d l3)l2){l3,l1}_LL")
THREE.declare(18, "G-action on M via HL'", "^(d h)m = ^h m {h, d m^-1}'_HL")
THREE.declare(19, "left Homanian", "{h3 h2, h1} = d{h3,h2,h1} ^h3{h2,h1} {h3, ^(d h2)h1}")
THREE.declare(20, "right Homanian", "{h3, h2 h1} = d{h3,h2,h1}' {h3,h2} ^(^(d h3)h2){h3,h1}")
THREE.declare(21, "HL lifting, product in H",
              "{h2 h1, l}_HL = ^l{d l^-1, h2, h1}' {h2,l}_HL ^h2{h1,l}_HL")
THREE.declare(22, "HL lifting, product in L",
              "{h, l2 l1}_HL = ^(l2 l1){d l1^-1, d l2^-1, h} (^(l2 l1){l1^-1, {d l2^-1, h}}_LL)^-1 "
              "{h,l2}_HL ^(^h l2){h,l1}_HL")
THREE.declare(23, "HL' lifting, product in H",
              "{h2 h1, l}'_HL = ^(^(h2 h1)l){h2, h1, d l^-1} ^h2{h1,l}'_HL {h2, ^(d h1)l}'_HL")
THREE.declare(24, "HL' lifting, product in L",
              "{h, l2 l1}'_HL = ^(^h(l2 l1)){h, d l1^-1, d l2^-1}' ^(^h l2){h,l1}'_HL "
              "(^(^h l2 ^(d h)l1){^(d h)l1^-1, {h, d l2^-1}}_LL)^-1 {h,l1}'_HL  "
              "[variant 'swapped': last factor {h,l2}'_HL]")
THREE.declare(25, "left Homanian cocycle",
              "{h4 h3, h2, h1} ^(^(h4 h3){h2,h1}){h4, h3, ^(d h2)h1} = {h4, h3 h2, h1} ^h4{h3,h2,h1}")
THREE.declare(26, "right Homanian cocycle",
              "{h4, h3 h2, h1}' {h4,h3,h2}' = {h4, h3, h2 h1}' ^{h4,h3}(^(^(d h4)h3){h4,h2,h1}')")
THREE.declare(27, "mixed Homanian cocycle",
              "{h4,h3,h2 h1} ^(^h4{h3,h2 h1}){h4, ^(d h3)h2, ^(d h3)h1}' ^h4{h3,h2,h1}' = "
              "{h4 h3,h2,h1}' ^{h4 h3,h2}(^(^(d(h4 h3))h2){h4,h3,h1}) {h4,h3,h2} "
              "^(^h4{h3,h2}){{h4, ^(d h3)h2}, ^((^(d(h4 h3))h2) h4){h3,h1}}_LL")
THREE.declare(28, "Homanian-lifting compatibility",
              "^(^h3{h2,h1})({h3, ^(d h2)h1, h2}'^-1 {h3, d{h2,h1}^-1, h2 h1}') {h3,{h2,h1}}'_HL "
              "{^(d h3){h2,h1}, ^(d(^(d h3){h2,h1}^-1)){h3, h2 h1}}_LL {h3,h2,h1}' = "
              "{h3,h2,h1}^-1 ^{h3 h2,h1}({^(d(h3 h2))h1, {h3,h2}}_HL^-1) "
              "{{h3,h2}, ^(d{h3,h2}^-1){h3 h2,h1}}_LL^-1 "
              "^{h3,h2}({d{h3,h2}^-1, h3 h2, h1}^-1 {^(d h3)h2, h3, h1})")
THREE.declare(29, "LL and HL liftings",
              "^l{d l', l^-1}_HL ^(l l' l^-1 l'^-1){l',l}_LL = ^(^(d l)l'){d l, l'^-1}'_HL {l,l'}_LL^-1")
THREE.declare(30, "liftings on boundaries",
              "{d m, l}_LL {l, d m}_LL = {d l, d m}_HL = ({d l, d m}'_HL)^-1")
THREE.declare(31, "LL lifting of boundaries", "{d m, d m'}_LL = m m' m^-1 m'^-1")


@THREE.clause(1, "x:M y:M", "M->L")
def _t1a(T, x, y):
    return T.dm[T.M.mul(x, y)], T.L.mul(T.dm[x], T.dm[y])


@THREE.clause(1, "x:L y:L", "L->H")
def _t1b(T, x, y):
    return T.dl[T.L.mul(x, y)], T.H.mul(T.dl[x], T.dl[y])


@THREE.clause(1, "x:H y:H", "H->G")
def _t1c(T, x, y):
    return T.dh[T.H.mul(x, y)], T.G.mul(T.dh[x], T.dh[y])


@THREE.clause(2, "m:M", "M->H")
def _t2a(T, m):
    return T.dl[T.dm[m]], np.full_like(m, T.H.identity)


@THREE.clause(2, "l:L", "L->G")
def _t2b(T, l):
    return T.dh[T.dl[l]], np.full_like(l, T.G.identity)


@THREE.clause(3, "g:G h:H", "H")
def _t3a(T, g, h):
    return T.dh[T.a_gh[g, h]], T.G.conj(g, T.dh[h])


@THREE.clause(3, "g:G l:L", "L")
def _t3b(T, g, l):
    return T.dl[T.a_gl[g, l]], T.a_gh[g, T.dl[l]]


@THREE.clause(3, "g:G m:M", "M")
def _t3c(T, g, m):
    return T.dm[T.a_gm[g, m]], T.a_gl[g, T.dm[m]]


@THREE.clause(4, "h:H l:L", "L")
def _t4a(T, h, l):
    return T.dl[T.a_hl[h, l]], T.H.conj(h, T.dl[l])


@THREE.clause(4, "h:H m:M", "M")
def _t4b(T, h, m):
    return T.dm[T.a_hm[h, m]], T.a_hl[h, T.dm[m]]


@THREE.clause(5, "l:L m:M")
def _t5(T, l, m):
    return T.dm[T.a_lm[l, m]], T.L.conj(l, T.dm[m])


@THREE.clause(6, "g:G h2:H h1:H")
def _t6(T, g, h2, h1):
    return T.a_gl[g, T.peiffer[h2, h1]], T.peiffer[T.a_gh[g, h2], T.a_gh[g, h1]]


@THREE.clause(7, "g:G h3:H h2:H h1:H", "left")
def _t7a(T, g, h3, h2, h1):
    a = T.a_gh
    return T.a_gm[g, T.left_homanian[h3, h2, h1]], T.left_homanian[a[g, h3], a[g, h2], a[g, h1]]


@THREE.clause(7, "g:G h3:H h2:H h1:H", "right")
def _t7b(T, g, h3, h2, h1):
    a = T.a_gh
    return T.a_gm[g, T.right_homanian[h3, h2, h1]], T.right_homanian[a[g, h3], a[g, h2], a[g, h1]]


@THREE.clause(8, "g:G l2:L l1:L")
def _t8(T, g, l2, l1):
    return T.a_gm[g, T.ll[l2, l1]], T.ll[T.a_gl[g, l2], T.a_gl[g, l1]]


@THREE.clause(9, "h:H l2:L l1:L")
def _t9(T, h, l2, l1):
    return T.a_hm[h, T.ll[l2, l1]], T.ll[T.a_hl[h, l2], T.a_hl[h, l1]]


@THREE.clause(10, "m:M n:M")
def _t10(T, m, n):
    return T.a_lm[T.dm[m], n], T.M.conj(m, n)


@THREE.clause(11, "h:H l:L")
def _t11(T, h, l):
    L = T.L
    return L.mul(T.dm[T.hl[h, l]], T.a_hl[h, l]), L.mul(l, T.peiffer[T.dl[L.inv(l)], h])


@THREE.clause(12, "h:H l:L")
def _t12(T, h, l):
    L = T.L
    lhs = L.mul(T.dm[T.hl_prime[h, l]], T.a_gl[T.dh[h], l])
    rhs = L.mul(T.a_hl[h, l], T.peiffer[h, T.dl[L.inv(l)]])
    return lhs, rhs


@THREE.clause(13, "g:G h:H l:L", "HL")
def _t13a(T, g, h, l):
    return T.a_gm[g, T.hl[h, l]], T.hl[T.a_gh[g, h], T.a_gl[g, l]]


@THREE.clause(13, "g:G h:H l:L", "HL'")
def _t13b(T, g, h, l):
    return T.a_gm[g, T.hl_prime[h, l]], T.hl_prime[T.a_gh[g, h], T.a_gl[g, l]]


@THREE.clause(14, "h:H m:M")
def _t14(T, h, m):
    return T.a_hm[h, m], T.M.mul(m, T.hl[h, T.dm[T.M.inv(m)]])


@THREE.clause(15, "l:L k:L")
def _t15(T, l, k):
    L = T.L
    return L.mul(T.dm[T.ll[l, k]], T.a_hl[T.dl[l], k]), L.conj(l, k)


@THREE.clause(16, "l3:L l2:L l1:L")
def _t16(T, l3, l2, l1):
    lhs = T.ll[T.L.mul(l3, l2), l1]
    rhs = T.M.mul(T.a_lm[l3, T.ll[l2, l1]], T.ll[l3, T.a_hl[T.dl[l2], l1]])
    return lhs, rhs


@THREE.clause(17, "l3:L l2:L l1:L")
def _t17(T, l3, l2, l1):
    lhs = T.ll[l3, T.L.mul(l2, l1)]
    rhs = T.M.mul(T.ll[l3, l2], T.a_lm[T.a_hl[T.dl[l3], l2], T.ll[l3, l1]])
    return lhs, rhs


@THREE.clause(18, "h:H m:M")
def _t18(T, h, m):
    return T.a_gm[T.dh[h], m], T.M.mul(T.a_hm[h, m], T.hl_prime[h, T.dm[T.M.inv(m)]])


@THREE.clause(19, "h3:H h2:H h1:H")
def _t19(T, h3, h2, h1):
    pf = T.peiffer
    lhs = pf[T.H.mul(h3, h2), h1]
    rhs = T.L.prod(T.dm[T.left_homanian[h3, h2, h1]], T.a_hl[h3, pf[h2, h1]],
                   pf[h3, T.a_gh[T.dh[h2], h1]])
    return lhs, rhs


@THREE.clause(20, "h3:H h2:H h1:H")
def _t20(T, h3, h2, h1):
    pf = T.peiffer
    lhs = pf[h3, T.H.mul(h2, h1)]
    rhs = T.L.prod(T.dm[T.right_homanian[h3, h2, h1]], pf[h3, h2],
                   T.a_hl[T.a_gh[T.dh[h3], h2], pf[h3, h1]])
    return lhs, rhs


@THREE.clause(21, "h2:H h1:H l:L")
def _t21(T, h2, h1, l):
    lhs = T.hl[T.H.mul(h2, h1), l]
    dli = T.dl[T.L.inv(l)]
    rhs = T.M.prod(T.a_lm[l, T.right_homanian[dli, h2, h1]], T.hl[h2, l],
                   T.a_hm[h2, T.hl[h1, l]])
    return lhs, rhs


@THREE.clause(22, "h:H l2:L l1:L")
def _t22(T, h, l2, l1):
    L, M = T.L, T.M
    l21 = L.mul(l2, l1)
    d1i, d2i = T.dl[L.inv(l1)], T.dl[L.inv(l2)]
    lhs = T.hl[h, l21]
    rhs = M.prod(T.a_lm[l21, T.left_homanian[d1i, d2i, h]],
                 M.inv(T.a_lm[l21, T.ll[L.inv(l1), T.peiffer[d2i, h]]]),
                 T.hl[h, l2],
                 T.a_lm[T.a_hl[h, l2], T.hl[h, l1]])
    return lhs, rhs


@THREE.clause(23, "h2:H h1:H l:L")
def _t23(T, h2, h1, l):
    h21 = T.H.mul(h2, h1)
    lhs = T.hl_prime[h21, l]
    rhs = T.M.prod(T.a_lm[T.a_hl[h21, l], T.left_homanian[h2, h1, T.dl[T.L.inv(l)]]],
                   T.a_hm[h2, T.hl_prime[h1, l]],
                   T.hl_prime[h2, T.a_gl[T.dh[h1], l]])
    return lhs, rhs


def _t24(T, h, l2, l1, last):
    L, M = T.L, T.M
    d1i, d2i = T.dl[L.inv(l1)], T.dl[L.inv(l2)]
    hl2 = T.a_hl[h, l2]
    gl1 = T.a_gl[T.dh[h], l1]
    lhs = T.hl_prime[h, L.mul(l2, l1)]
    rhs = M.prod(T.a_lm[T.a_hl[h, L.mul(l2, l1)], T.right_homanian[h, d1i, d2i]],
                 T.a_lm[hl2, T.hl_prime[h, l1]],
                 M.inv(T.a_lm[L.mul(hl2, gl1), T.ll[L.inv(gl1), T.peiffer[h, d2i]]]),
                 T.hl_prime[h, last])
    return lhs, rhs


@THREE.clause(24, "h:H l2:L l1:L", "verbatim", variant="verbatim")
def _t24v(T, h, l2, l1):
    return _t24(T, h, l2, l1, l1)


@THREE.clause(24, "h:H l2:L l1:L", "swapped", variant="swapped")
def _t24s(T, h, l2, l1):
    return _t24(T, h, l2, l1, l2)


@THREE.clause(25, "h4:H h3:H h2:H h1:H")
def _t25(T, h4, h3, h2, h1):
    H, M, lh = T.H, T.M, T.left_homanian
    h43 = H.mul(h4, h3)
    lhs = M.mul(lh[h43, h2, h1],
                T.a_lm[T.a_hl[h43, T.peiffer[h2, h1]], lh[h4, h3, T.a_gh[T.dh[h2], h1]]])
    rhs = M.mul(lh[h4, H.mul(h3, h2), h1], T.a_hm[h4, lh[h3, h2, h1]])
    return lhs, rhs


@THREE.clause(26, "h4:H h3:H h2:H h1:H")
def _t26(T, h4, h3, h2, h1):
    H, M, rh = T.H, T.M, T.right_homanian
    lhs = M.mul(rh[h4, H.mul(h3, h2), h1], rh[h4, h3, h2])
    inner = T.a_hm[T.a_gh[T.dh[h4], h3], rh[h4, h2, h1]]
    rhs = M.mul(rh[h4, h3, H.mul(h2, h1)], T.a_lm[T.peiffer[h4, h3], inner])
    return lhs, rhs


@THREE.clause(27, "h4:H h3:H h2:H h1:H")
def _t27(T, h4, h3, h2, h1):
    H, M, pf = T.H, T.M, T.peiffer
    lh, rh = T.left_homanian, T.right_homanian
    h43, h21 = H.mul(h4, h3), H.mul(h2, h1)
    g3 = T.dh[h3]
    lhs = M.prod(lh[h4, h3, h21],
                 T.a_lm[T.a_hl[h4, pf[h3, h21]], rh[h4, T.a_gh[g3, h2], T.a_gh[g3, h1]]],
                 T.a_hm[h4, rh[h3, h2, h1]])
    x = T.a_gh[T.dh[h43], h2]
    rhs = M.prod(rh[h43, h2, h1],
                 T.a_lm[pf[h43, h2], T.a_hm[x, lh[h4, h3, h1]]],
                 lh[h4, h3, h2],
                 T.a_lm[T.a_hl[h4, pf[h3, h2]],
                        T.ll[pf[h4, T.a_gh[g3, h2]], T.a_hl[H.mul(x, h4), pf[h3, h1]]]])
    return lhs, rhs


@THREE.clause(28, "h3:H h2:H h1:H")
def _t28(T, h3, h2, h1):
    H, L, M, pf = T.H, T.L, T.M, T.peiffer
    lh, rh = T.left_homanian, T.right_homanian
    p21 = pf[h2, h1]
    h21 = H.mul(h2, h1)
    q = T.a_gl[T.dh[h3], p21]
    lhs = M.prod(
        T.a_lm[T.a_hl[h3, p21],
               M.mul(M.inv(rh[h3, T.a_gh[T.dh[h2], h1], h2]),
                     rh[h3, H.inv(T.dl[p21]), h21])],
        T.hl_prime[h3, p21],
        T.ll[q, T.a_hl[T.dl[L.inv(q)], pf[h3, h21]]],
        rh[h3, h2, h1])
    h32 = H.mul(h3, h2)
    p32 = pf[h3, h2]
    p321 = pf[h32, h1]
    rhs = M.prod(
        M.inv(lh[h3, h2, h1]),
        T.a_lm[p321, M.inv(T.hl[T.a_gh[T.dh[h32], h1], p32])],
        M.inv(T.ll[p32, T.a_hl[H.inv(T.dl[p32]), p321]]),
        T.a_lm[p32, M.mul(M.inv(lh[H.inv(T.dl[p32]), h32, h1]),
                          lh[T.a_gh[T.dh[h3], h2], h3, h1])])
    return lhs, rhs


@THREE.clause(29, "l:L k:L")
def _t29(T, l, k):
    L, M = T.L, T.M
    lhs = M.mul(T.a_lm[l, T.hl[T.dl[k], L.inv(l)]],
                T.a_lm[L.commutator(l, k), T.ll[k, l]])
    rhs = M.mul(T.a_lm[T.a_hl[T.dl[l], k], T.hl_prime[T.dl[l], L.inv(k)]],
                M.inv(T.ll[l, k]))
    return lhs, rhs


@THREE.clause(30, "l:L m:M", "LL = HL")
def _t30a(T, l, m):
    dm = T.dm[m]
    return T.M.mul(T.ll[dm, l], T.ll[l, dm]), T.hl[T.dl[l], dm]


@THREE.clause(30, "l:L m:M", "HL = HL'^-1")
def _t30b(T, l, m):
    dm = T.dm[m]
    return T.hl[T.dl[l], dm], T.M.inv(T.hl_prime[T.dl[l], dm])


@THREE.clause(31, "m:M n:M")
def _t31(T, m, n):
    return T.ll[T.dm[m], T.dm[n]], T.M.commutator(m, n)


# ---------------------------------------------------------------------------
# unit-element equations of the six liftings

def verify_unit_lemma(T: ThreeCrossedModule) -> Report:
    """Every lifting is the unit as soon as one argument is the unit."""
    rep = Report()
    eH, eL, eM = T.H.identity, T.L.identity, T.M.identity

    def expect(name, values, unit, coords):
        bad = np.flatnonzero(np.asarray(values) != unit)
        if len(bad):
            rep.add(name, coords(int(bad[0])), len(bad))

    expect("{e,h} = e", T.peiffer[eH, :], eL, lambda i: (eH, i))
    expect("{h,e} = e", T.peiffer[:, eH], eL, lambda i: (i, eH))
    expect("{e,l}_LL = e", T.ll[eL, :], eM, lambda i: (eL, i))
    expect("{l,e}_LL = e", T.ll[:, eL], eM, lambda i: (i, eL))
    n = T.H.order
    for name, tab in (("{}", T.left_homanian), ("{}'", T.right_homanian)):
        for pos in range(3):
            sl = [slice(None)] * 3
            sl[pos] = eH
            vals = tab[tuple(sl)].ravel()

            def coords(i, pos=pos):
                rest = list(divmod(i, n))
                rest.insert(pos, eH)
                return tuple(rest)
            args = ["h3", "h2", "h1"]
            args[pos] = "e"
            expect(name[0] + ",".join(args) + name[1:] + " = e", vals, eM, coords)
    for name, tab in (("{e,l}_HL = e", T.hl), ("{e,l}'_HL = e", T.hl_prime)):
        expect(name, tab[eH, :], eM, lambda i: (eH, i))
    for name, tab in (("{h,e}_HL = e", T.hl), ("{h,e}'_HL = e", T.hl_prime)):
        expect(name, tab[:, eL], eM, lambda i: (i, eL))
    return rep


def unit_lemma_checks() -> list[str]:
    """Names of every equation checked by :func:`verify_unit_lemma`."""
    names = ["{e,h} = e", "{h,e} = e", "{e,l}_LL = e", "{l,e}_LL = e"]
    for br in ("{}", "{}'"):
        for pos in range(3):
            args = ["h3", "h2", "h1"]
            args[pos] = "e"
            names.append(br[0] + ",".join(args) + br[1:] + " = e")
    names += ["{e,l}_HL = e", "{e,l}'_HL = e", "{h,e}_HL = e", "{h,e}'_HL = e"]
    return names
