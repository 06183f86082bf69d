import itertools
import time

import numpy as np
import pytest

from xmod import catalog
from xmod.axioms import (AXIOM24_VARIANTS, DEFAULT_AXIOM24_VARIANT, axiom_table,
                         unit_lemma_checks, verify_three_crossed, verify_two_crossed,
                         verify_unit_lemma)
from xmod.crossed import ll_two_crossed_view, trivial_three_crossed, zero_three_crossed
from xmod.groups import make_cyclic

TWO_CM = catalog.names("xmod2")
THREE_CM = catalog.names("xmod3")


def scalar_two_crossed_failures(W):
    """Axioms of a 2-crossed module checked one element at a time, straight from the statements."""
    L, H, G = W.L, W.H, W.G
    dl, dh, pf = W.dl, W.dh, W.peiffer
    gh, gl, hl = W.a_gh, W.a_gl, W.a_hl
    Ls, Hs, Gs = range(L.order), range(H.order), range(G.order)
    bad = set()
    for l in Ls:
        if dh[dl[l]] != G.identity:
            bad.add(1)
    for g, h in itertools.product(Gs, Hs):
        if dh[gh[g, h]] != G.conj(g, dh[h]):
            bad.add(2)
    for g, l in itertools.product(Gs, Ls):
        if dl[gl[g, l]] != gh[g, dl[l]]:
            bad.add(2)
    for h, l in itertools.product(Hs, Ls):
        if dl[hl[h, l]] != H.conj(h, dl[l]):
            bad.add(2)
    for g, h2, h1 in itertools.product(Gs, Hs, Hs):
        if gl[g, pf[h2, h1]] != pf[gh[g, h2], gh[g, h1]]:
            bad.add(3)
    for h2, h1 in itertools.product(Hs, Hs):
        if dl[pf[h2, h1]] != H.prod(h2, h1, H.inv(h2), H.inv(gh[dh[h2], h1])):
            bad.add(4)
    for l2, l1 in itertools.product(Ls, Ls):
        if pf[dl[l2], dl[l1]] != L.prod(l2, l1, L.inv(l2), L.inv(l1)):
            bad.add(5)
    for h3, h2, h1 in itertools.product(Hs, Hs, Hs):
        if pf[H.mul(h3, h2), h1] != L.mul(hl[h3, pf[h2, h1]], pf[h3, gh[dh[h2], h1]]):
            bad.add(6)
        if pf[h3, H.mul(h2, h1)] != L.mul(pf[h3, h2], hl[gh[dh[h3], h2], pf[h3, h1]]):
            bad.add(7)
    for h, l in itertools.product(Hs, Ls):
        dli = dl[L.inv(l)]
        if hl[h, l] != L.mul(l, pf[dli, h]):
            bad.add(8)
        if gl[dh[h], l] != L.mul(hl[h, l], pf[h, dli]):
            bad.add(9)
        if L.mul(L.inv(l), gl[dh[h], l]) != L.mul(pf[dli, h], pf[h, dli]):
            bad.add(10)
    return bad


# (structure, field, index, value) -> failing ids; each row makes its id fail
TWO_MUTATIONS = {
    1: ("1->Z2->Z2", "d_hg", (0,), 1, (1,)),
    2: ("1->Z2->Z4", "act_gh", (1, 0), 1, (2,)),
    3: ("Z2->Z2->1", "act_gl", (0, 0), 1, (2, 3, 9, 10)),
    4: ("Z2->Z2->1", "d_lh", (0,), 1, (4,)),
    5: ("Z2->Z2->1", "peiffer", (1, 1), 1, (4, 5, 8, 9)),
    6: ("Z2->Z2->1", "act_hl", (0, 0), 1, (2, 6, 7, 8, 9)),
    7: ("Z2->Z2->1", "act_hl", (0, 0), 1, (2, 6, 7, 8, 9)),
    8: ("Z2->Z2->1", "act_hl", (0, 1), 0, (2, 8, 9)),
    9: ("Z2->Z2->1", "act_gl", (0, 1), 0, (2, 9, 10)),
    10: ("Z2->Z2->1", "act_gl", (0, 1), 0, (2, 9, 10)),
}

F2 = "from2cm(Z2->Z2->1)"
ZERO = "zero(Z2,Z2,Z2,Z2)"
# "search#k" is the k-th lifting found over the all-trivial Z2^4 data
THREE_MUTATIONS = {
    1: (F2, "d_lh", (1,), 0, (1,)),
    2: (F2, "d_ml", (1,), 1, (2,)),
    3: (ZERO, "act_gh", (0, 0), 1, (3,)),
    4: (F2, "act_hm", (0, 1), 0, (4, 14, 18)),
    5: (F2, "act_lm", (1, 1), 0, (5,)),
    6: (ZERO, "act_gl", (1, 0), 1, (3, 6)),
    7: ("search#5", "act_gh", (1, 1), 0, (7, 13)),
    8: ("search#17", "act_gl", (1, 1), 0, (8, 13)),
    9: ("search#17", "act_hl", (1, 1), 0, (9, 11, 12)),
    10: (ZERO, "act_lm", (0, 1), 0, (10,)),
    11: (ZERO, "peiffer", (0, 1), 1, (11, 19)),
    12: (ZERO, "act_gl", (0, 1), 0, (12,)),
    13: ("search#1", "act_gh", (0, 1), 0, (13,)),
    14: (ZERO, "act_hm", (0, 1), 0, (14, 18)),
    15: (F2, "ll", (1, 1), 1, (15, 16, 17)),
    16: (ZERO, "ll", (0, 1), 1, (16, 29, 30)),
    17: (F2, "ll", (1, 1), 1, (15, 16, 17)),
    18: (ZERO, "act_gm", (0, 1), 0, (18,)),
    19: (ZERO, "peiffer", (0, 1), 1, (11, 19)),
    20: (ZERO, "peiffer", (1, 0), 1, (12, 20)),
    21: (ZERO, "right_homanian", (0, 1, 1), 1, (21, 27)),
    22: (ZERO, "left_homanian", (0, 0, 1), 1, (22, 25, 28)),
    23: (ZERO, "left_homanian", (1, 1, 0), 1, (23, 27)),
    24: ("search#1", "act_lm", (1, 1), 0, (24,)),
    25: (ZERO, "left_homanian", (0, 1, 1), 1, (25,)),
    26: (ZERO, "right_homanian", (1, 0, 1), 1, (26,)),
    27: ("search#39", "ll", (1, 1), 1, (27,)),
    28: ("search#1", "peiffer", (1, 1), 1, (28,)),
    29: ("search#1", "d_lh", (1,), 1, (29,)),
    30: (ZERO, "ll", (0, 1), 1, (16, 29, 30)),
    31: (F2, "ll", (2, 2), 1, (15, 16, 17, 31)),
}


def three_base(name, zero_search):
    if name.startswith("search#"):
        return zero_search[int(name[7:])]
    return catalog.get(name)


def test_axiom_tables_have_one_check_per_item():
    two, three = axiom_table("2cm"), axiom_table("3cm")
    assert [i for i, _, _ in two] == list(range(1, 11))
    assert [i for i, _, _ in three] == list(range(1, 32))
    assert all(text for _, _, text in two + three)


def test_axiom_docs_table_matches_registry():
    from pathlib import Path
    doc = (Path(__file__).parents[1] / "docs" / "axioms.md").read_text()
    for kind in ("2cm", "3cm"):
        for i, name, _ in axiom_table(kind):
            assert f"| {kind} | {i} | {name} |" in doc


@pytest.mark.parametrize("name", TWO_CM)
def test_builtin_two_crossed_verify(name):
    W = catalog.get(name)
    assert verify_two_crossed(W).ok
    assert scalar_two_crossed_failures(W) == set()


@pytest.mark.parametrize("name", THREE_CM)
def test_builtin_three_crossed_verify(name):
    T = catalog.get(name)
    rep = verify_three_crossed(T)
    assert rep.ok, rep.summary()
    assert verify_unit_lemma(T).ok


@pytest.mark.parametrize("aid", sorted(TWO_MUTATIONS))
def test_two_crossed_mutation(aid):
    name, field, idx, value, failing = TWO_MUTATIONS[aid]
    W = catalog.get(name).mutate(field, idx, value)
    rep = verify_two_crossed(W)
    assert aid in rep.failed_ids()
    assert tuple(rep.failed_ids()) == failing
    # the scalar transcription agrees on every mutated input
    assert scalar_two_crossed_failures(W) == set(failing)


@pytest.mark.parametrize("aid", sorted(THREE_MUTATIONS))
def test_three_crossed_mutation(aid, zero_search):
    name, field, idx, value, failing = THREE_MUTATIONS[aid]
    base = three_base(name, zero_search)
    assert verify_three_crossed(base).ok
    rep = verify_three_crossed(base.mutate(field, idx, value))
    assert aid in rep.failed_ids()
    assert tuple(rep.failed_ids()) == failing


def test_every_two_crossed_single_entry_mutation_agrees_with_scalar_oracle():
    for name in ("Z2->Z2->1", "1->Z2->Z4", "1->Z2->Z2"):
        W = catalog.get(name)
        for field, arr in W.tables().items():
            top = {"d_lh": W.H, "d_hg": W.G, "act_gh": W.H, "act_gl": W.L, "act_hl": W.L,
                   "peiffer": W.L}[field].order
            for idx in np.ndindex(arr.shape):
                for v in range(top):
                    if v != arr[idx]:
                        M = W.mutate(field, idx, v)
                        assert set(verify_two_crossed(M).failed_ids()) == \
                            scalar_two_crossed_failures(M), (name, field, idx, v)


def test_fail_fast_and_ids_filter():
    T = catalog.get(ZERO).mutate("ll", (0, 1), 1)
    assert verify_three_crossed(T, ids={16}).failed_ids() == [16]
    assert verify_three_crossed(T, fail_fast=True).failed_ids() == [16]
    assert verify_three_crossed(T, ids={1, 2}).ok


def test_report_witness_and_dict():
    T = catalog.get(ZERO).mutate("ll", (0, 1), 1)
    rep = verify_three_crossed(T)
    r = rep.result(16)
    assert not r.ok and r.count > 0 and r.witness
    d = rep.to_dict()
    assert d["ok"] is False and d["axiom24_variant"] == DEFAULT_AXIOM24_VARIANT
    assert "failing ids [16, 29, 30]" in rep.summary()


def test_components_are_checked():
    T = catalog.get(ZERO).mutate("d_ml", (0,), 1)
    rep = verify_three_crossed(T)
    assert not rep.components.ok and not rep.ok


def test_axiom24_variants_agree_when_hl_prime_is_trivial():
    assert DEFAULT_AXIOM24_VARIANT == "swapped"
    for name in ("from2cm(1->Z2->Z2)", ZERO, "moore(E(Z2))"):
        T = catalog.get(name)
        for v in AXIOM24_VARIANTS:
            assert verify_three_crossed(T, axiom24_variant=v).ok


def test_axiom24_verbatim_reading_fails_on_inner_s3():
    T = catalog.get("from2cm(S3->S3->1)")
    assert verify_three_crossed(T).ok
    rep = verify_three_crossed(T, axiom24_variant="verbatim")
    assert rep.failed_ids() == [24]


def test_unit_lemma_reports_mutation():
    assert len(unit_lemma_checks()) == 14
    T = catalog.get(ZERO).mutate("hl", (0, 1), 1)
    rep = verify_unit_lemma(T)
    assert rep.checks() == ["{e,l}_HL = e"]


def test_ll_view_is_two_crossed_on_builtins():
    for name in THREE_CM:
        T = catalog.get(name)
        assert verify_two_crossed(ll_two_crossed_view(T)).ok, name


def test_trivial_structures():
    assert verify_three_crossed(trivial_three_crossed()).ok
    assert verify_three_crossed(trivial_three_crossed(make_cyclic(3))).ok
    Z2 = make_cyclic(2)
    assert verify_three_crossed(zero_three_crossed(Z2, Z2, Z2, Z2)).ok


def test_sampling_warns_and_stays_honest():
    T = catalog.get("from2cm(S3->S3->1)")
    with pytest.warns(RuntimeWarning, match="sampled"):
        rep = verify_three_crossed(T, ids={25}, budget=100)
    assert rep.results[0].sampled


def test_order_four_runtime():
    t = time.perf_counter()
    for name in ("1->V4->V4", "1->Z2->Z4"):
        assert verify_three_crossed(catalog.get(f"from2cm({name})")).ok
    assert time.perf_counter() - t < 60
