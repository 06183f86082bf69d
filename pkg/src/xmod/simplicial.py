"""Simplicial operators: weakly monotone maps ``[m] -> [n]``.

Operators compose like functions, ``compose(f, g) = f o g`` (``g`` first).  A
simplicial object acts contravariantly, so ``X(f o g) = X(g) o X(f)``.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from .report import Report

MAX_IDENTITY_DIM = 8


class OperatorError(ValueError):
    pass


class SimplicialOperator:
    """``values[i]`` is the image of vertex ``i``; ``source_dim = len(values) - 1``."""

    __slots__ = ("values", "target_dim")

    def __init__(self, values: Sequence[int], target_dim: int):
        vals = tuple(int(v) for v in values)
        if not vals:
            raise OperatorError("an operator needs at least one vertex")
        if target_dim < 0:
            raise OperatorError("target dimension must be >= 0")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise OperatorError(f"{vals} is not weakly monotone")
        if vals[0] < 0 or vals[-1] > target_dim:
            raise OperatorError(f"{vals} leaves [0, {target_dim}]")
        self.values = vals
        self.target_dim = int(target_dim)

    @property
    def source_dim(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.intp)

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target_dim + 1))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SimplicialOperator) and self.values == other.values
                and self.target_dim == other.target_dim)

    def __hash__(self) -> int:
        return hash((self.values, self.target_dim))

    def __repr__(self) -> str:
        return f"<{','.join(map(str, self.values))}>:[{self.source_dim}]->[{self.target_dim}]"


def identity(n: int) -> SimplicialOperator:
    return SimplicialOperator(range(n + 1), n)


def face(n: int, i: int) -> SimplicialOperator:
    """``d^n_i : [n-1] -> [n]``, the injection skipping ``i``."""
    if n < 1 or not 0 <= i <= n:
        raise OperatorError(f"face d^{n}_{i} does not exist")
    return SimplicialOperator([v for v in range(n + 1) if v != i], n)


def degeneracy(n: int, i: int) -> SimplicialOperator:
    """``s^n_i : [n+1] -> [n]``, the surjection hitting ``i`` twice."""
    if n < 0 or not 0 <= i <= n:
        raise OperatorError(f"degeneracy s^{n}_{i} does not exist")
    return SimplicialOperator([v if v <= i else v - 1 for v in range(n + 2)], n)


def compose(f: SimplicialOperator, g: SimplicialOperator) -> SimplicialOperator:
    """``f o g``: first ``g``, then ``f``."""
    if g.target_dim != f.source_dim:
        raise OperatorError(f"cannot compose {f} after {g}")
    return SimplicialOperator([f.values[v] for v in g.values], f.target_dim)


def all_operators(m: int, n: int) -> Iterator[SimplicialOperator]:
    """Every weakly monotone map ``[m] -> [n]``."""
    for vals in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield SimplicialOperator(vals, n)


def decompose(op: SimplicialOperator) -> list[tuple[str, int, int]]:
    """Normal form ``d_{i_r} ... d_{i_1} s_{j_1} ... s_{j_t}`` of ``op``.

    ``i_1 < ... < i_r`` are the values missed by ``op`` and ``j_1 < ... < j_t``
    the positions with ``op(j) = op(j + 1)``.  Triples ``(kind, n, i)`` are
    listed left to right, so the last one is applied first.  The identity
    decomposes to an empty list.
    """
    vals, n, m = op.values, op.target_dim, op.source_dim
    missed = [v for v in range(n + 1) if v not in vals]
    repeats = [j for j in range(m) if vals[j] == vals[j + 1]]
    k = m - len(repeats)
    faces = [("d", k + r + 1, i) for r, i in enumerate(missed)]
    degs = [("s", k + r, j) for r, j in enumerate(repeats)]
    return list(reversed(faces)) + degs


def word(ops: Sequence[tuple[str, int, int]]) -> SimplicialOperator:
    """Evaluate a composite written left to right (rightmost applied first)."""
    mats = [face(n, i) if k == "d" else degeneracy(n, i) for k, n, i in ops]
    if not mats:
        raise OperatorError("empty word")
    out = mats[-1]
    for f in reversed(mats[:-1]):
        out = compose(f, out)
    return out


# ---------------------------------------------------------------------------
# the five identity families

def identity_instances(n_max: int):
    """Every instance of the five identity families with all operators into ``[<= n_max]``.

    Yields ``(family, label, lhs_word, rhs_word)``; an empty word stands for an
    identity map and is paired with its dimension via ``label``.
    """
    for n in range(1, n_max):
        # 1: d^{n+1}_j d^n_i = d^{n+1}_i d^n_{j-1}, i < j
        for j in range(n + 2):
            for i in range(j):
                yield (1, f"n={n} i={i} j={j}",
                       (("d", n + 1, j), ("d", n, i)), (("d", n + 1, i), ("d", n, j - 1)))
    for n in range(0, n_max - 1):
        # 2: s^n_j s^{n+1}_i = s^n_i s^{n+1}_{j+1}, i <= j
        for j in range(n + 1):
            for i in range(j + 1):
                yield (2, f"n={n} i={i} j={j}",
                       (("s", n, j), ("s", n + 1, i)), (("s", n, i), ("s", n + 1, j + 1)))
    for n in range(0, n_max):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = (("s", n, j), ("d", n + 1, i))
                if i in (j, j + 1):
                    yield (3, f"n={n} i={i} j={j}", lhs, ("id", n))
                elif i < j:
                    yield (4, f"n={n} i={i} j={j}", lhs, (("d", n, i), ("s", n - 1, j - 1)))
                else:
                    yield (5, f"n={n} i={i} j={j}", lhs, (("d", n, i - 1), ("s", n - 1, j)))


def _eval_word(w) -> SimplicialOperator:
    if w and w[0] == "id":
        return identity(w[1])
    return word(w)


def check_simplicial_identities(n_max: int = MAX_IDENTITY_DIM) -> Report:
    """Evaluate both sides of every identity instance pointwise."""
    if n_max > MAX_IDENTITY_DIM:
        raise OperatorError(f"n_max must be <= {MAX_IDENTITY_DIM}")
    rep = Report()
    for fam, label, lhs, rhs in identity_instances(n_max):
        a, b = _eval_word(lhs), _eval_word(rhs)
        if a != b:
            rep.add(f"family {fam}", label, detail=f"{a} != {b}")
    return rep


_COLORED = ("ColoredSimplex", "check_colored", "apply_operator", "enumerate_simplices",
            "count_colorings")


def __getattr__(name):
    # colored simplices live in xmod.colored, which imports this module
    if name in _COLORED:
        from . import colored
        return getattr(colored, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
