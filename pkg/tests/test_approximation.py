import numpy as np
import pytest
from hypothesis import given

from roughif import (
    CrispSet, IFSet, KindMismatch, Partition, Universe, approximate, block_values,
    boundary_crisp, crisp, embed_crisp, embed_fuzzy, is_definable, lower_crisp, lower_fuzzy,
    lower_if, upper_crisp, upper_fuzzy, upper_if,
)
from roughif.errors import UniverseMismatch
from roughif.oracle import oracle_approx
from conftest import worlds
from golden import EX521, EX522, EX53_LOWER_UNION, compute, table


@pytest.mark.parametrize("name", sorted(EX521))
def test_example_one_tables(ex521, name):
    assert compute(ex521, name) == table(ex521.universe, EX521[name])


@pytest.mark.parametrize("name", sorted(EX522))
def test_example_two_tables(ex522, name):
    assert compute(ex522, name) == table(ex522.universe, EX522[name])


def test_lower_of_union(ex53):
    x, y = ex53.get("X"), ex53.get("Y")
    assert lower_if(ex53.partition, x | y) == table(ex53.universe, EX53_LOWER_UNION)


def test_block_values(ex521):
    b = block_values(ex521.partition, ex521.get("X"), "lower")
    assert b.values() == [("0.2", "0.7"), ("0", "0.8"), ("0.7", "0.2")]
    assert b.lift() == lower_if(ex521.partition, ex521.get("X"))
    pair = approximate(ex521.partition, ex521.get("X"))
    assert pair.upper == upper_if(ex521.partition, ex521.get("X"))


def test_single_block_and_singletons():
    u = Universe.of_size(3)
    x = IFSet.from_mapping(u, {"x1": ("0.1", "0.5"), "x2": ("0.4", "0.2"), "x3": ("0", "1")})
    assert lower_if(Partition.discrete(u), x) == x == upper_if(Partition.discrete(u), x)
    lo = lower_if(Partition.indiscrete(u), x)
    assert lo.mu.tolist() == [0] * 3 and lo.nu.tolist() == [10000] * 3
    up = upper_if(Partition.indiscrete(u), x)
    assert up.mu.tolist() == [4000] * 3 and up.nu.tolist() == [2000] * 3


def test_universe_mismatch():
    u = Universe.of_size(2)
    with pytest.raises(UniverseMismatch):
        lower_if(Partition.discrete(Universe.of_size(3)), IFSet.empty(u))


def test_crisp():
    u = Universe.of_size(5)
    r = Partition(u, [["x1", "x2"], ["x3"], ["x4", "x5"]])
    x = crisp(u, ["x1", "x2", "x4"])
    assert lower_crisp(r, x) == {"x1", "x2"}
    assert upper_crisp(r, x) == {"x1", "x2", "x4", "x5"}
    assert boundary_crisp(r, x) == {"x4", "x5"}
    aligned = crisp(u, ["x3", "x4", "x5"])
    assert is_definable(r, aligned) and lower_crisp(r, aligned) == aligned == upper_crisp(r, aligned)


def test_fuzzy():
    u = Universe.of_size(3)
    r = Partition(u, [["x1", "x2"], ["x3"]])
    m = {"x1": "0.3", "x2": "0.8", "x3": "0.5"}
    lo, up = lower_fuzzy(r, m), upper_fuzzy(r, m)
    assert lo.is_fuzzy and up.is_fuzzy
    assert lo.mu.tolist() == [3000, 3000, 5000] and up.mu.tolist() == [8000, 8000, 5000]
    with pytest.raises(KindMismatch):
        lower_fuzzy(r, IFSet.empty(u) | IFSet.from_mapping(u, {e: ("0", "0") for e in u}))


@given(worlds(sets=1))
def test_sandwich(w):
    r, (x,), _ = w
    lo, up = lower_if(r, x), upper_if(r, x)
    assert lo <= x <= up


@given(worlds(sets=1))
def test_block_constant(w):
    r, (x,), _ = w
    for a in (lower_if(r, x), upper_if(r, x)):
        for j in range(len(r)):
            members = r.labels == j
            assert len(set(a.mu[members])) == 1 and len(set(a.nu[members])) == 1


@given(worlds(sets=1))
def test_duality(w):
    r, (x,), _ = w
    assert lower_if(r, ~x) == ~upper_if(r, x)
    assert upper_if(r, ~x) == ~lower_if(r, x)


@given(worlds(sets=1))
def test_idempotent(w):
    r, (x,), _ = w
    lo, up = lower_if(r, x), upper_if(r, x)
    assert lower_if(r, lo) == lo == upper_if(r, lo)
    assert upper_if(r, up) == up == lower_if(r, up)


@given(worlds(sets=2))
def test_monotone_and_union_laws(w):
    r, (x, y), _ = w
    assert lower_if(r, x & y) == lower_if(r, x) & lower_if(r, y)
    assert upper_if(r, x | y) == upper_if(r, x) | upper_if(r, y)
    assert lower_if(r, x) | lower_if(r, y) <= lower_if(r, x | y)
    assert upper_if(r, x & y) <= upper_if(r, x) & upper_if(r, y)


@given(worlds(sets=1))
def test_matches_oracle(w):
    r, (x,), _ = w
    assert lower_if(r, x) == oracle_approx(r, x, "lower")
    assert upper_if(r, x) == oracle_approx(r, x, "upper")


@given(worlds(sets=1))
def test_crisp_reduction(w):
    r, (x,), _ = w
    s = CrispSet.from_mask(r.universe, x.mu > 5000)
    e = embed_crisp(s)
    assert lower_if(r, e) == embed_crisp(lower_crisp(r, s))
    assert upper_if(r, e) == embed_crisp(upper_crisp(r, s))


@given(worlds(sets=1))
def test_fuzzy_reduction(w):
    r, (x,), _ = w
    m = {e: str(int(t) / 10000) for e, t in zip(r.universe, x.mu)}
    f = embed_fuzzy(m, r.universe)
    lo = lower_if(r, f)
    assert lo.is_fuzzy and lo == lower_fuzzy(r, m)
    assert upper_if(r, f) == upper_fuzzy(r, f)
