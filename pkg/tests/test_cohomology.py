import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ALGEBRAS
from reltc.cohomology import (
    GF2,
    QQ,
    AlgebraMap,
    TableAlgebra,
    check_witness,
    cup,
    graph_yn_product,
    graph_yn_product_check,
    kunneth_power,
    load_algebra,
    load_map,
    relative_zcl_lower_bound,
    tensor,
    tensor_square,
    witness_product,
    zcl_lower_bound,
    zero_divisor,
)
from reltc.errors import AxiomViolation, DegreeAssumptionViolated, InvalidPresentation, NotHomogeneous, SourceMismatch

SHIPPED = sorted(p.name for p in ALGEBRAS.glob("*.json") if "map" not in p.name and "nonassociative" not in p.name)


def alg(name):
    return load_algebra(ALGEBRAS / f"{name}.json")


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_algebras_satisfy_axioms(name):
    A = load_algebra(ALGEBRAS / name)
    A.check_axioms()
    tensor_square(A).check_axioms()
    if A.dim <= 3:
        kunneth_power(A, 3).check_axioms()


def test_nonassociative_is_rejected_with_location():
    with pytest.raises(AxiomViolation) as exc:
        alg("nonassociative_gf2")
    assert "associativity" in str(exc.value) and "x" in str(exc.value)


@pytest.mark.parametrize("name,zcl", [
    ("s1_gf2", 1), ("s2_gf2", 1), ("s2_rational", 2), ("s3_rational", 1),
    ("torus_gf2", 2), ("torus_rational", 2), ("wedge2_gf2", 2), ("dumbbell_gf2", 2),
    ("circle_with_tail_gf2", 1),
])
def test_zcl_values(name, zcl):
    A = alg(name)
    res = zcl_lower_bound(A)
    assert res.length == zcl and res.tc_lower == zcl + 1
    assert check_witness(A, res)
    assert witness_product(A, res.witness) == res.product


def test_s2_rational_square_of_zero_divisor():
    A = alg("s2_rational")
    z = zero_divisor(A, A.basis("a"))
    a = A.basis("a")
    assert z * z == tensor(a, a).scale(-2)
    assert (z * z * z).is_zero()


def test_s2_gf2_square_vanishes():
    A = alg("s2_gf2")
    z = zero_divisor(A, A.basis("a"))
    assert (z * z).is_zero()


@pytest.mark.parametrize("name", SHIPPED)
def test_zero_divisors_lie_in_kernel_of_cup(name):
    A = load_algebra(ALGEBRAS / name)
    for a in A.basis_elements():
        assert cup(A, zero_divisor(A, a)).is_zero()


@pytest.mark.parametrize("name", [n for n in SHIPPED if "gf2" in n])
def test_gf2_zero_divisor_square(name):
    A = load_algebra(ALGEBRAS / name)
    one = A.one()
    for a in A.basis_elements():
        z = zero_divisor(A, a)
        assert z * z == tensor(a * a, one) + tensor(one, a * a)


def _exterior_oracle(k):
    """Products in the exterior algebra on 2k generators, basis = sorted index subsets."""
    def mul(s, t):
        if set(s) & set(t):
            return None, 0
        seq = list(s) + list(t)
        inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
        return tuple(sorted(seq)), (-1) ** inversions
    return mul


def test_koszul_signs_against_exterior_algebra():
    # torus (x) torus over Q is the exterior algebra on alpha1, beta1, alpha2, beta2
    A = alg("torus_rational")
    T = tensor_square(A)
    gens = {"1": (), "alpha": (0,), "beta": (1,), "alphabeta": (0, 1)}

    def subset(k):
        i, j = T.split(k)
        return gens[A.labels[i]] + tuple(g + 2 for g in gens[A.labels[j]])

    mul = _exterior_oracle(2)
    to_index = {subset(k): k for k in range(T.dim)}
    for i, j in itertools.product(range(T.dim), repeat=2):
        s, sign = mul(subset(i), subset(j))
        expect = {} if s is None else {to_index[s]: Fraction(sign)}
        assert T.mul_basis(i, j) == expect


def test_kunneth_dimension_and_slots():
    A = alg("dumbbell_gf2")
    P = kunneth_power(A, 2)
    assert P.dim == 9 and kunneth_power(A, 1) is A
    assert tensor_square(P).dim == 81


def test_dumbbell_product_against_slot_oracle():
    # Y^2 (x) Y^2 has four slots; over GF(2) zd(c in slot s) = c@s + c@(s+2).
    A = alg("dumbbell_gf2")

    def zd(label, slot):
        out = {}
        for pos in (slot, slot + 2):
            key = ["1"] * 4
            key[pos] = label
            out[tuple(key)] = 1
        return out

    def mul(u, v):
        out = {}
        for a, b in itertools.product(u, v):
            if any(x != "1" and y != "1" for x, y in zip(a, b)):
                continue
            key = tuple(y if x == "1" else x for x, y in zip(a, b))
            out[key] = (out.get(key, 0) + 1) % 2
        return {k: c for k, c in out.items() if c}

    prod = {("1",) * 4: 1}
    for factor in (zd("beta1", 0), zd("beta2", 1), zd("beta2", 0), zd("beta1", 1)):
        prod = mul(prod, factor)
    assert len(prod) == 4

    got, factors = graph_yn_product(2, A)
    assert len(factors) == 4 and len(got.coeffs) == len(prod)
    assert graph_yn_product_check(2, A)


def test_graph_check_degenerate_cases():
    A = alg("dumbbell_gf2")
    assert not graph_yn_product_check(1, alg("circle_with_tail_gf2"))
    with pytest.raises(DegreeAssumptionViolated):
        graph_yn_product_check(2, A, ["beta1", "beta1"])
    with pytest.raises(DegreeAssumptionViolated):
        graph_yn_product_check(3, A)
    with pytest.raises(DegreeAssumptionViolated):
        graph_yn_product_check(2, alg("torus_gf2"))


def test_relative_zcl_torus_to_wedge():
    T, W = alg("torus_gf2"), alg("wedge2_gf2")
    i = load_map(ALGEBRAS / "torus_to_wedge_gf2.map.json", source=T, target=W)
    res = relative_zcl_lower_bound(T, i, i)
    assert res.length == 2 and res.relative
    assert res.length <= zcl_lower_bound(T).length
    assert check_witness(T, res, i, i)
    assert not res.image.is_zero()


@pytest.mark.parametrize("name", SHIPPED)
def test_relative_identity_and_trivial_maps(name):
    A = load_algebra(ALGEBRAS / name)
    ident = AlgebraMap.identity(A)
    assert relative_zcl_lower_bound(A, ident, ident).length == zcl_lower_bound(A).length
    point = TableAlgebra(A.field, [("1", 0)], {})
    triv = AlgebraMap.positive_degree_zero(A, point)
    assert relative_zcl_lower_bound(A, triv, triv).length == 0
    assert relative_zcl_lower_bound(A, ident, triv).length <= zcl_lower_bound(A).length


def test_relative_requires_matching_source():
    T = alg("torus_gf2")
    other = alg("torus_gf2")
    with pytest.raises(SourceMismatch):
        relative_zcl_lower_bound(T, AlgebraMap.identity(other), AlgebraMap.identity(other))


coeffs = st.lists(st.integers(-3, 3), min_size=16, max_size=16)


@given(coeffs)
def test_cup_is_natural(cs):
    # f: torus -> wedge over GF(2), and cup((f (x) f) u) == f(cup u)
    from reltc.cohomology import tensor_of_maps
    T, W = alg("torus_gf2"), alg("wedge2_gf2")
    f = load_map(ALGEBRAS / "torus_to_wedge_gf2.map.json", source=T, target=W)
    S = tensor_square(T)
    u = S.element({k: c for k, c in enumerate(cs)})
    assert cup(W, tensor_of_maps(f, f)(u)) == f(cup(T, u))


@given(coeffs, coeffs)
def test_tensor_square_rational_is_graded_commutative(c1, c2):
    A = alg("torus_rational")
    S = tensor_square(A)
    deg = lambda k: S.degrees[k]
    for i in range(S.dim):
        for j in range(S.dim):
            lhs = S.mul_basis(i, j)
            rhs = {k: (-1) ** (deg(i) * deg(j)) * c for k, c in S.mul_basis(j, i).items()}
            assert lhs == rhs
    u = S.element({k: c for k, c in enumerate(c1)})
    v = S.element({k: c for k, c in enumerate(c2)})
    assert (u * v) * u == u * (v * u)


def test_zero_divisor_needs_homogeneous_class():
    A = alg("torus_rational")
    with pytest.raises(NotHomogeneous):
        zero_divisor(A, A.basis("alpha") + A.basis("alphabeta"))


# presentation loader

def _basic(**extra):
    d = {"field": "gf2", "basis": [{"label": "1", "degree": 0}, {"label": "x", "degree": 1}], "products": []}
    d.update(extra)
    return d


def test_loader_completes_reverse_order_with_sign():
    d = {"field": "rational",
         "basis": [{"label": "1", "degree": 0}, {"label": "a", "degree": 1},
                   {"label": "b", "degree": 1}, {"label": "ab", "degree": 2}],
         "products": [{"left": "a", "right": "b", "result": [{"basis": "ab", "coeff": 1}]}]}
    A = load_algebra(d)
    assert A.basis("b") * A.basis("a") == A.basis("ab").scale(-1)
    assert A.field is QQ


@pytest.mark.parametrize("bad,err", [
    (_basic(products=[{"left": "x", "right": "y", "result": []}]), InvalidPresentation),
    (_basic(products=[{"left": "x", "right": "x", "result": []}] * 2), InvalidPresentation),
    (_basic(basis=[{"label": "x", "degree": 1}]), AxiomViolation),
    (_basic(products=[{"left": "1", "right": "x", "result": []}]), AxiomViolation),
    (_basic(products=[{"left": "x", "right": "x", "result": [{"basis": "x", "coeff": 1}]}]), AxiomViolation),
    ({"basis": []}, InvalidPresentation),
])
def test_loader_errors(bad, err):
    with pytest.raises(err):
        load_algebra(bad)


def test_loader_file_errors(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    with pytest.raises(InvalidPresentation):
        load_algebra(p)
    with pytest.raises(InvalidPresentation):
        load_algebra(tmp_path / "missing.json")


def test_map_errors(tmp_path):
    T, W = alg("torus_gf2"), alg("wedge2_gf2")
    bad_label = {"source": "x", "target": "y", "images": [{"source": "gamma", "result": []}]}
    with pytest.raises(InvalidPresentation):
        load_map(bad_label, source=T, target=W)
    # a degree-2 class cannot go to a degree-1 class
    bad_degree = {"source": "x", "target": "y",
                  "images": [{"source": "alphabeta", "result": [{"basis": "A", "coeff": 1}]}]}
    with pytest.raises(AxiomViolation):
        load_map(bad_degree, source=T, target=W)
    m = json.loads((ALGEBRAS / "torus_to_wedge_gf2.map.json").read_text())
    f = load_map(m, base_dir=ALGEBRAS)
    assert f.source.field is GF2 and f(f.source.basis("alpha")) == f.target.basis("A")


def test_zero_divisors_are_natural():
    from reltc.cohomology import tensor_of_maps
    T, W = alg("torus_gf2"), alg("wedge2_gf2")
    maps = [load_map(ALGEBRAS / "torus_to_wedge_gf2.map.json", source=T, target=W), AlgebraMap.identity(T)]
    for f in maps:
        ff = tensor_of_maps(f, f)
        for a in T.basis_elements():
            if a.degree() == 0:
                continue
            assert ff(zero_divisor(T, a)) == zero_divisor(f.target, f(a))
