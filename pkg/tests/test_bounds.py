import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import BOUNDS
from reltc.bounds import (
    UNREDUCED_NOTE,
    Bound,
    combine_bounds,
    dim_conn_upper,
    farber_product_upper,
    lower,
    reference_tc,
    report_from_spec,
    upper,
)
from reltc.errors import InconsistentBounds, InvalidPresentation, ParamOutOfRange, UnsupportedFamily


def dim_conn_oracle(d1, d2, s):
    """Largest integer k with k < (d1 + d2 + 1)/(s + 1) + 1, by scanning."""
    k = 0
    while (k + 1) * (s + 1) < (d1 + d2 + 1) + (s + 1):
        k += 1
    return k


@pytest.mark.parametrize("d1,d2,s,expected", [(1, 1, 0, 3), (1, 1, 5, 1), (2, 2, 0, 5), (3, 3, 1, 4), (0, 0, 0, 1)])
def test_dim_conn_examples(d1, d2, s, expected):
    assert dim_conn_upper(d1, d2, s) == expected


def test_dim_conn_grid_matches_oracle_and_is_monotone():
    R = range(21)
    table = {(a, b, s): dim_conn_upper(a, b, s) for a, b, s in itertools.product(R, R, R)}
    for (a, b, s), v in table.items():
        assert v == dim_conn_oracle(a, b, s)
        if s < 20:
            assert table[(a, b, s + 1)] <= v
        if a < 20:
            assert table[(a + 1, b, s)] >= v
        if b < 20:
            assert table[(a, b + 1, s)] >= v


@pytest.mark.parametrize("n", range(0, 51))
def test_two_upper_bounds_agree(n):
    assert dim_conn_upper(n, n, 0) == 2 * n + 1
    if n >= 1:
        assert farber_product_upper(3, n) == 2 * n + 1


def test_farber_examples_and_errors():
    assert farber_product_upper(3, 2) == 5
    assert farber_product_upper(7, 1) == 7
    assert farber_product_upper(1, 9) == 1
    with pytest.raises(ParamOutOfRange):
        farber_product_upper(0, 2)
    with pytest.raises(ParamOutOfRange):
        dim_conn_upper(-1, 0, 0)


REFERENCE = [
    ("sphere", {"n": 1}, 2), ("sphere", {"n": 2}, 3), ("sphere", {"n": 3}, 2),
    ("sphere", {"n": 4}, 3), ("sphere", {"n": 7}, 2), ("sphere", {"n": 10}, 3),
    ("config-euclidean", {"n": 2, "m": 2}, 2), ("config-euclidean", {"n": 2, "m": 3}, 3),
    ("config-euclidean", {"n": 3, "m": 2}, 4), ("config-euclidean", {"n": 3, "m": 3}, 5),
    ("config-euclidean", {"n": 4, "m": 4}, 6), ("config-euclidean", {"n": 5, "m": 7}, 9),
    ("config-euclidean", {"n": 2, "m": 4}, 2),
    ("config-tree", {"n": 4, "m": 1}, 3), ("config-tree", {"n": 2, "m": 1}, 3),
    ("config-tree", {"n": 6, "m": 2}, 5), ("config-tree", {"n": 6, "m": 5}, 7),
    ("config-tree", {"n": 3, "m": 3}, 3), ("config-tree", {"n": 1, "m": 1}, 1),
    ("config-tree", {"n": 8, "m": 3}, 7),
]


@pytest.mark.parametrize("family,params,expected", REFERENCE, ids=[f"{f}-{p}" for f, p, _ in REFERENCE])
def test_reference_table(family, params, expected):
    assert reference_tc(family, **params) == expected


def test_reference_errors():
    with pytest.raises(UnsupportedFamily):
        reference_tc("torus", n=2)
    with pytest.raises(ParamOutOfRange):
        reference_tc("config-euclidean", n=1, m=2)
    with pytest.raises(ParamOutOfRange):
        reference_tc("config-tree", n=3)


def test_combine_examples():
    r = combine_bounds([lower(5, "graph product"), upper(5, "dim/conn"), upper(7, "weaker")])
    assert r.interval == (5, 5) and r.exact
    assert r.upper.by == "dim/conn"
    assert UNREDUCED_NOTE in r.notes
    with pytest.raises(InconsistentBounds):
        combine_bounds([lower(3, "a"), upper(2, "b")])
    assert combine_bounds([]).interval == (None, None)


bounds_st = st.lists(
    st.builds(Bound, st.sampled_from(["lower", "upper"]), st.integers(1, 9), st.sampled_from(["p", "q", "r"])),
    max_size=8,
)


@given(bounds_st, st.randoms())
def test_combine_is_order_independent(pieces, rnd):
    shuffled = list(pieces)
    rnd.shuffle(shuffled)
    lows = [p.value for p in pieces if p.side == "lower"]
    ups = [p.value for p in pieces if p.side == "upper"]
    if lows and ups and max(lows) > min(ups):
        with pytest.raises(InconsistentBounds):
            combine_bounds(shuffled)
        return
    a, b = combine_bounds(pieces), combine_bounds(shuffled)
    assert a.to_json() == b.to_json()
    assert a.interval == (max(lows) if lows else None, min(ups) if ups else None)


@pytest.mark.parametrize("name,interval", [
    ("dumbbell_n2", (5, 5)), ("sphere_config_n2", (1, 4)), ("torus_wedge", (3, 3)),
])
def test_shipped_bound_specs(name, interval):
    path = BOUNDS / f"{name}.json"
    r = report_from_spec(json.loads(path.read_text()), path.parent)
    assert r.interval == interval
    assert all(b.by for b in (r.lower, r.upper))


def test_contradictory_spec():
    path = BOUNDS / "contradictory.json"
    with pytest.raises(InconsistentBounds):
        report_from_spec(json.loads(path.read_text()), path.parent)


def test_spec_pieces_from_files(tmp_path):
    (tmp_path / "zcl.json").write_text(json.dumps({"tc_lower": 3}))
    (tmp_path / "report.json").write_text(json.dumps({"checks": [{"check": "rule-count", "evidence": {"rules": 4}}]}))
    spec = {"quantity": "TC_X(C^2(S^2)xC^2(S^2))", "pieces": [
        {"kind": "zcl", "result": "zcl.json"},
        {"kind": "rule-count", "file": "report.json"},
        {"kind": "reference", "family": "sphere", "n": 2, "side": "upper"},
    ]}
    r = report_from_spec(spec, tmp_path)
    assert r.interval == (3, 3)
    assert r.quantity.startswith("TC_X")


def test_malformed_spec():
    with pytest.raises(InvalidPresentation):
        report_from_spec({"pieces": [{"kind": "dim-conn", "d1": 1}]})
    with pytest.raises(InvalidPresentation):
        report_from_spec({"pieces": [{"kind": "mystery"}]})
