import numpy as np
import pytest
from hypothesis import given, strategies as st

from roughif import (
    SCALE, CrispSet, CutParams, IFSet, Kind, Mode, Side, alpha_cut, classify, classify_crisp,
    classify_fuzzy, comparable, crisp, cut, embed_crisp, embed_fuzzy, included, lower_if,
    side_verdict, upper_if,
)
from roughif.equality import classify_batch, kinds_from_flags
from roughif.oracle import oracle_verdict
from conftest import worlds
from golden import EX521_CUTS, EX521_VERDICT, EX522_CUTS, EX522_VERDICT

P = CutParams.of("0.1", "0.8")


@pytest.mark.parametrize("name", sorted(EX521_CUTS))
def test_example_one_cuts(ex521, name):
    side, set_name = name.split()
    op = lower_if if side == "lower" else upper_if
    assert list(cut(op(ex521.partition, ex521.get(set_name)), P)) == EX521_CUTS[name]


@pytest.mark.parametrize("name", sorted(EX522_CUTS))
def test_example_two_cuts(ex522, name):
    side, set_name = name.split()
    op = lower_if if side == "lower" else upper_if
    assert list(cut(op(ex522.partition, ex522.get(set_name)), P)) == EX522_CUTS[name]


def test_cut_at_alpha_one_is_empty(ex521):
    assert cut(ex521.get("X"), CutParams.of(1, 0)).is_empty


def test_alpha_cut():
    assert alpha_cut({"a": "0.5", "b": "0.5"}, "0.5").is_empty
    assert alpha_cut({"a": "0.5", "b": "0.6"}, "0.5") == {"b"}
    assert alpha_cut({"a": "0", "b": "0.3"}, 0) == {"b"}


def test_side_verdicts(ex521, ex522):
    t1 = side_verdict(ex521.get("X"), ex521.get("Y"), ex521.partition, P, Side.TOP)
    assert t1.equal and t1.equivalent and t1.left_cut.is_full
    t2 = side_verdict(ex522.get("X"), ex522.get("Y"), ex522.partition, P, "top")
    assert not t2.equal and t2.equivalent
    assert list(t2.left_cut) == ["x3", "x4", "x5", "x6", "x7", "x8"]


def test_classify_examples(ex521, ex522):
    v1 = classify(ex521.get("X"), ex521.get("Y"), ex521.partition, P)
    assert v1.as_tuple() == EX521_VERDICT
    assert v1[Kind.APPROXIMATE_ROUGH_EQUIVALENCE] and not v1["rough_equality"]
    v2 = classify(ex522.get("X"), ex522.get("Y"), ex522.partition, P)
    assert v2.as_tuple() == EX522_VERDICT


def test_inclusion_examples(ex522):
    x, y, r = ex522.get("X"), ex522.get("Y"), ex522.partition
    assert included(x, y, r, P, Mode.BOTTOM)
    assert not included(x, y, r, P, "top")
    assert not included(x, y, r, P)
    assert comparable(x, y, r, P, "bottom")
    assert not comparable(x, y, r, P, "top")
    for mode in Mode:
        assert included(x, x, r, P, mode) and comparable(x, x, r, P, mode)


def test_kind_table_cells():
    k = kinds_from_flags(True, True, False, True)
    assert k == {Kind.ROUGH_EQUALITY: False, Kind.APPROXIMATE_ROUGH_EQUALITY: True,
                 Kind.APPROXIMATE_ROUGH_EQUIVALENCE: False, Kind.ROUGH_EQUIVALENCE: True}
    k = kinds_from_flags(False, True, True, True)
    assert k[Kind.APPROXIMATE_ROUGH_EQUIVALENCE] and not k[Kind.APPROXIMATE_ROUGH_EQUALITY]


@given(worlds(sets=1))
def test_reflexive(w):
    r, (x,), p = w
    assert classify(x, x, r, p).as_tuple() == (True,) * 4


@given(worlds(sets=2))
def test_symmetric(w):
    r, (x, y), p = w
    assert classify(x, y, r, p).as_tuple() == classify(y, x, r, p).as_tuple()


@given(worlds(sets=3))
def test_equal_is_transitive(w):
    r, (x, y, z), p = w
    a, b = classify(x, y, r, p), classify(y, z, r, p)
    c = classify(x, z, r, p)
    if a.bottom.equal and b.bottom.equal:
        assert c.bottom.equal
    if a.top.equal and b.top.equal:
        assert c.top.equal


@given(worlds(sets=2))
def test_lattice(w):
    r, (x, y), p = w
    v = classify(x, y, r, p).kinds
    if v[Kind.ROUGH_EQUALITY]:
        assert v[Kind.APPROXIMATE_ROUGH_EQUALITY] and v[Kind.APPROXIMATE_ROUGH_EQUIVALENCE]
    if v[Kind.APPROXIMATE_ROUGH_EQUALITY] or v[Kind.APPROXIMATE_ROUGH_EQUIVALENCE]:
        assert v[Kind.ROUGH_EQUIVALENCE]


@given(worlds(sets=1), st.integers(0, 10), st.integers(0, 10))
def test_cut_monotone(w, da, db):
    _, (x,), p = w
    a2 = min(p.alpha + da * 500, SCALE)
    b2 = max(min(p.beta - db * 500, SCALE - a2), 0)
    assert cut(x, CutParams(a2, b2)) <= cut(x, p)


@given(worlds(sets=2))
def test_cut_respects_order(w):
    _, (x, y), p = w
    assert cut(x & y, p) <= cut(x, p) <= cut(x | y, p)


@given(worlds(sets=2))
def test_matches_oracle(w):
    r, (x, y), p = w
    v = classify(x, y, r, p)
    o = oracle_verdict(x, y, r, p)
    assert (v.bottom.equal, v.bottom.equivalent, v.top.equal, v.top.equivalent) == (
        o["bottom_equal"], o["bottom_equivalent"], o["top_equal"], o["top_equivalent"])


@given(worlds(sets=2))
def test_batch_matches_scalar(w):
    r, (x, y), p = w
    b = classify_batch(x.mu, x.nu, y.mu, y.nu, r, p.alpha, p.beta)
    v = classify(x, y, r, p)
    assert bool(b.bottom_equal[0]) == v.bottom.equal
    assert bool(b.top_equivalent[0]) == v.top.equivalent
    assert bool(b.bottom_included[0]) == included(x, y, r, p, "bottom")
    assert bool(b.top_included_rev[0]) == included(y, x, r, p, "top")


@given(worlds(sets=2), st.integers(0, 9999))
def test_fuzzy_reduction(w, alpha):
    r, (x, y), _ = w
    fx = embed_fuzzy({e: str(t / SCALE) for e, t in zip(r.universe, x.mu.tolist())}, r.universe)
    fy = embed_fuzzy({e: str(t / SCALE) for e, t in zip(r.universe, y.mu.tolist())}, r.universe)
    want = classify_fuzzy(fx, fy, r, alpha)
    assert classify(fx, fy, r, CutParams(alpha, SCALE - alpha)).as_tuple() == want.as_tuple()


@pytest.mark.parametrize("beta", ["0.5", "0.9999"])
@given(w=worlds(sets=2))
def test_crisp_reduction(w, beta):
    r, (x, y), _ = w
    sx = CrispSet.from_mask(r.universe, x.mu >= 5000)
    sy = CrispSet.from_mask(r.universe, y.mu >= 5000)
    got = classify(embed_crisp(sx), embed_crisp(sy), r, CutParams.of(0, beta))
    assert got.as_tuple() == classify_crisp(sx, sy, r).as_tuple()
