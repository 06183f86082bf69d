"""Named built-in structures used by the tests, demos and the CLI.

Names are stable; the CLI accepts them as ``builtin:NAME`` wherever a file
is expected.
"""

from __future__ import annotations

from typing import Callable

from .crossed import ThreeCrossedModule, TwoCrossedModule, trivial_three_crossed, \
    trivial_two_crossed, zero_three_crossed
from .from2cm import crossed_to_two_crossed, inner_two_crossed, normal_inclusion, \
    three_crossed_from_two
from .groups import GroupAction, GroupHom, conjugation_action, direct_product, make_cyclic, \
    make_symmetric
from .moore import constant_simplicial_group, crossed_module_nerve, product_simplicial_group, \
    sphere_module, three_crossed_from_moore

Z2, Z3, Z4 = make_cyclic(2), make_cyclic(3), make_cyclic(4)
S3 = make_symmetric(3)
V4 = direct_product(Z2, Z2, name="V4")


def _identity_xmod(G):
    return crossed_to_two_crossed(GroupHom.identity(G), conjugation_action(G))


def _inclusion_xmod(G, elems):
    d, act = normal_inclusion(G, elems)
    return crossed_to_two_crossed(d, act)


def _a3():
    return [x for x in range(S3.order) if S3.element_order(x) in (1, 3)]


TWO_CROSSED: dict[str, Callable[[], TwoCrossedModule]] = {
    "1->1->1": trivial_two_crossed,
    "1->1->Z2": lambda: trivial_two_crossed(Z2),
    "1->Z2->Z2": lambda: _identity_xmod(Z2),
    "1->Z2->Z4": lambda: _inclusion_xmod(Z4, [0, 2]),
    "1->V4->V4": lambda: _identity_xmod(V4),
    "Z2->Z2->1": lambda: inner_two_crossed(Z2),
    "Z3->Z3->1": lambda: inner_two_crossed(Z3),
    "1->S3->S3": lambda: _identity_xmod(S3),
    "1->A3->S3": lambda: _inclusion_xmod(S3, _a3()),
    "S3->S3->1": lambda: inner_two_crossed(S3),
}


def _from2(name):
    return lambda: three_crossed_from_two(TWO_CROSSED[name]())


THREE_CROSSED: dict[str, Callable[[], ThreeCrossedModule]] = {
    "1->1->1->1": trivial_three_crossed,
    "1->1->1->Z2": lambda: trivial_three_crossed(Z2),
    "zero(Z2,Z2,Z2,Z2)": lambda: zero_three_crossed(Z2, Z2, Z2, Z2),
    **{f"from2cm({k})": _from2(k) for k in TWO_CROSSED},
}

SIMPLICIAL_GROUPS = {
    "K(Z2)": lambda: constant_simplicial_group(Z2),
    "K(Z3)": lambda: constant_simplicial_group(Z3),
    "K(S3)": lambda: constant_simplicial_group(S3),
    "E(Z2)": lambda: product_simplicial_group(Z2),
    "E(Z3)": lambda: product_simplicial_group(Z3),
    "E(V4)": lambda: product_simplicial_group(V4),
    "Nerve(Z2->Z2)": lambda: crossed_module_nerve(GroupHom.identity(Z2),
                                                  GroupAction.trivial(Z2, Z2)),
    "Nerve(A3->S3)": lambda: crossed_module_nerve(*normal_inclusion(S3, _a3())),
    "Z2[S2]": lambda: sphere_module(2, 2),
    "Z2[S3]": lambda: sphere_module(2, 3),
    "Z3[S3]": lambda: sphere_module(3, 3),
}

for _k in SIMPLICIAL_GROUPS:
    THREE_CROSSED[f"moore({_k})"] = (lambda k: lambda: three_crossed_from_moore(
        SIMPLICIAL_GROUPS[k]()))(_k)

KINDS = {"xmod2": TWO_CROSSED, "xmod3": THREE_CROSSED, "sgroup": SIMPLICIAL_GROUPS}


def names(kind: str | None = None) -> list[str]:
    if kind is None:
        return [n for table in KINDS.values() for n in table]
    return list(KINDS[kind])


def get(name: str, kind: str | None = None):
    """Build the structure called ``name``; ``kind`` restricts the lookup."""
    for k, table in KINDS.items():
        if kind in (None, k) and name in table:
            obj = table[name]()
            obj.name = name
            return obj
    raise KeyError(f"no built-in {kind or 'structure'} named {name!r}")


def kind_of(obj) -> str:
    if isinstance(obj, ThreeCrossedModule):
        return "xmod3"
    if isinstance(obj, TwoCrossedModule):
        return "xmod2"
    return "sgroup"
