import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xmod import catalog
from xmod.colored import (DEFAULT_READING, PRINTED, ColoredSimplex, ColoringError, LevelMismatch,
                          Reading, SimplexBatch, apply_batch, apply_operator, as_coloring,
                          batch_valid, check_colored, count_colorings, enumerate_rejection,
                          enumerate_simplices, enumerate_structured, rejection_space,
                          sample_structured, tuples)
from xmod.simplicial import all_operators, compose, degeneracy, face, identity

# small enough for the rejection oracle at n <= 3 in well under a second each
SMALL = ["1->1->Z2", "1->Z2->Z2", "Z2->Z2->1", "Z3->Z3->1", "S3->S3->1", "zero(Z2,Z2,Z2,Z2)",
         "from2cm(1->Z2->Z2)", "from2cm(Z2->Z2->1)", "moore(K(Z3))", "moore(E(Z2))",
         "moore(Z2[S2])"]


def free_count(S, n):
    """Labels on tuples through the last edge are free and determine the rest."""
    c = as_coloring(S)
    return math.prod(g.order ** math.comb(n, k - 1) for k, g in c.groups.items())


@pytest.mark.parametrize("name", SMALL)
def test_structured_equals_rejection(name):
    S = catalog.get(name)
    for n in range(4):
        rej = enumerate_rejection(S, n)
        st_ = enumerate_structured(S, n)
        assert not rej.partial and not st_.partial
        a = {r.tobytes() for r in rej.batch.keys()}
        b = {r.tobytes() for r in st_.batch.keys()}
        assert a == b
        assert len(a) == len(rej) == len(st_) == free_count(S, n)


def test_nerve_of_a_group():
    for G in ("Z2", "Z3"):
        S = catalog.get(f"1->1->{G}") if G == "Z2" else catalog.get("moore(K(Z3))")
        order = S.G.order
        assert [count_colorings(S, n) for n in range(5)] == [order ** n for n in range(5)]


def test_count_refuses_partial():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        with pytest.raises(ColoringError):
            count_colorings(catalog.get("S3->S3->1"), 3, budget=10)
        with pytest.warns(RuntimeWarning):
            assert enumerate_rejection(catalog.get("S3->S3->1"), 3, budget=100).partial


def test_enumerate_modes():
    S = catalog.get("Z2->Z2->1")
    assert enumerate_simplices(S, 2, mode="rejection").mode == "rejection"
    with pytest.raises(ColoringError):
        enumerate_simplices(S, 2, mode="guess")
    with pytest.raises(ColoringError):
        enumerate_simplices(S, -1)


def test_rejection_space():
    S = catalog.get("1->Z2->Z4")
    assert rejection_space(S, 3) == 4 ** 6 * 2 ** 4


@pytest.mark.parametrize("name", ["S3->S3->1", "from2cm(Z2->Z2->1)", "moore(E(Z2))"])
def test_functoriality(name):
    S = catalog.get(name)
    for n in range(4):
        X = enumerate_structured(S, n).batch
        assert np.array_equal(apply_batch(identity(n), X).keys(), X.keys())
        images = {f: apply_batch(f, X) for k in range(5) for f in all_operators(k, n)}
        for f, Y in images.items():
            assert batch_valid(Y).all()
            for m in range(5):
                for g in all_operators(m, f.source_dim):
                    assert np.array_equal(apply_batch(g, Y).keys(),
                                          images[compose(f, g)].keys())


def test_apply_operator_reads_tuples():
    S = catalog.get("1->Z2->Z2")
    sx = next(iter(enumerate_structured(S, 2)))
    d = apply_operator(face(2, 1), sx)
    assert d.g(0, 1) == sx.g(0, 2)
    s = apply_operator(degeneracy(2, 0), sx)
    assert s.g(0, 1) == S.G.identity and s.g(1, 3) == sx.g(0, 2)
    with pytest.raises(ColoringError):
        apply_operator(face(3, 0), sx)


def test_check_colored_flags_a_broken_label():
    S = catalog.get("S3->S3->1")
    sx = list(enumerate_structured(S, 3))[7]
    assert check_colored(sx).ok
    labels = dict(sx.labels)
    l = list(labels[4])
    l[0] = (l[0] + 1) % S.L.order
    labels[4] = tuple(l)
    broken = ColoredSimplex(sx.coloring, 3, labels)
    rep = check_colored(broken)
    assert not rep.ok
    assert any(c.startswith("condition") for c in rep.checks())


def test_from_labels_and_dict_round_trip():
    S = catalog.get("1->Z2->Z2")
    sx = ColoredSimplex.from_labels(S, 2, g={(0, 1): 1, (1, 2): 1}, h={(0, 1, 2): 1})
    assert sx.g(0, 2) == 0 and sx.h(0, 1, 2) == 1
    assert sx.g(1, 1) == S.G.identity
    assert ColoredSimplex.from_dict(S, sx.to_dict()) == sx
    with pytest.raises(ColoringError):
        ColoredSimplex.from_labels(S, 2, g={(1, 1): 1})
    with pytest.raises(AttributeError):
        sx.n = 3


def test_level_mismatch():
    W, T = catalog.get("1->Z2->Z2"), catalog.get("from2cm(1->Z2->Z2)")
    with pytest.raises(LevelMismatch):
        ColoredSimplex.from_labels(W, 4, m={(0, 1, 2, 3, 4): 0})
    sx = ColoredSimplex.units(W, 2)
    with pytest.raises(LevelMismatch):
        check_colored(sx, T)


def test_units_are_simplices():
    for name in SMALL:
        S = catalog.get(name)
        for n in range(5):
            assert check_colored(ColoredSimplex.units(S, n)).ok


@settings(max_examples=25)
@given(st.sampled_from(["S3->S3->1", "from2cm(S3->S3->1)", "1->A3->S3"]),
       st.integers(0, 2**16))
def test_samples_satisfy_conditions(name, seed):
    S = catalog.get(name)
    b = sample_structured(S, 4, 20, seed=seed)
    assert b.size == 20
    assert batch_valid(b).all()


def test_readings():
    assert DEFAULT_READING.c_path == "kp" and PRINTED.c_path == "kq"
    with pytest.raises(ColoringError):
        Reading(c_path="pq")
    assert Reading().to_dict()["d_form"] == "repaired"


def test_tuples_order():
    assert tuples(3, 2) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert SimplexBatch.units(catalog.get("1->Z2->Z2"), 2, 3).size == 3


@pytest.mark.parametrize("name", ["from2cm(Z3->Z3->1)", "from2cm(1->S3->S3)"])
def test_condition_d_consistent_in_dimension_5(name):
    assert sample_structured(catalog.get(name), 5, 100, seed=3).size == 100


@pytest.mark.xfail(strict=True, reason="repaired (d) still rejects some simplices on the "
                                       "nonabelian inner module")
def test_condition_d_on_inner_s3():
    assert sample_structured(catalog.get("from2cm(S3->S3->1)"), 5, 100, seed=3).size == 100
