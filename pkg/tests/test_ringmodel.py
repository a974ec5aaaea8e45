import itertools
import json
from fractions import Fraction

import pytest

from symorb.permgroup import Permutation, excess_euler_degree, orbit_structure, symmetric_group
from symorb.ringmodel import (
    InertiaElement,
    ModelError,
    OrbitVector,
    SectorAlgebra,
    SectorVector,
    TableSizeError,
    builtin_model,
    cs_product,
    excess_class,
    excess_multiplicities,
    invariant_basis,
    load_model,
    multiplication_table,
    pushforward,
    restrict,
    sn_project,
    vip_product,
)
from symorb.ringmodel.model import format_rational, parse_rational
from symorb.ringmodel.products import product_element, sector_orbits, transversal_orientation
from symorb.ringmodel.table import table_diff, table_is_closed
from symorb.ringmodel.tensor import calculus

F = Fraction
E2 = Permutation.identity(2)
T12 = Permutation.parse("2,1")
MODELS = [("sphere", 2), ("sphere", 4), ("torus", 1), ("torus", 2)]


def sphere2():
    return builtin_model("sphere", 2)


def cp3_document(x_x2=1):
    names = ["1", "x", "x2", "x3"]
    powers = {(i, j): i + j for i in range(4) for j in range(4) if i + j <= 3}
    cup = []
    for (i, j), k in powers.items():
        coeff = x_x2 if (i, j) == (1, 2) else 1
        cup.append({"a": names[i], "b": names[j], "result": [{"basis": names[k], "coeff": str(coeff)}]})
    pairing = [["1" if i + j == 3 else "0" for j in range(4)] for i in range(4)]
    return {
        "dimension": 6,
        "basis": [{"name": nm, "degree": 2 * i} for i, nm in enumerate(names)],
        "unit": "1",
        "cup": cup,
        "pairing": pairing,
        "euler_class": [{"basis": "x3", "coeff": "4"}],
    }


# models ------------------------------------------------------------------


def test_builtin_sphere():
    m = sphere2()
    assert m.dim == 2 and m.names == ("1", "x")
    assert m.euler_class == {1: F(2)}
    assert m.mul(1, 1) == {}
    assert m.pairing == ((0, 1), (1, 0))


def test_builtin_torus():
    t1 = builtin_model("torus", 1)
    assert t1.names == ("1", "theta") and t1.mul(1, 1) == {} and t1.euler_class == {}
    t2 = builtin_model("torus", 2)
    assert t2.dim == 4 and t2.betti() == (1, 2, 1) and t2.euler_class == {}
    a, b = t2.index("t1"), t2.index("t2")
    top = t2.index("t1*t2")
    assert t2.mul(a, b) == {top: 1} and t2.mul(b, a) == {top: -1}


def test_odd_sphere_rejected():
    with pytest.raises(ModelError):
        builtin_model("sphere", 3)


def test_document_round_trip():
    m = sphere2()
    doc = m.to_document()
    assert load_model(doc) == m
    assert load_model(json.dumps(doc)) == m
    t = builtin_model("torus", 2)
    assert load_model(t.to_document()) == t


def test_cp3_loads():
    m = load_model(cp3_document())
    assert m.euler_characteristic() == 4 and m.betti() == (1, 0, 1, 0, 1, 0, 1)


def test_pairing_degenerate():
    doc = sphere2().to_document()
    doc["pairing"] = [["0", "0"], ["0", "0"]]
    with pytest.raises(ModelError) as info:
        load_model(doc)
    assert info.value.axiom == "pairing degenerate"


def test_non_associative_names_triple():
    with pytest.raises(ModelError) as info:
        load_model(cp3_document(x_x2=2))
    assert info.value.axiom == "associativity"
    assert "(x*x)*x" in str(info.value)


def test_graded_commutativity_violation():
    doc = builtin_model("torus", 2).to_document()
    for entry in doc["cup"]:
        if entry["a"] == "t2" and entry["b"] == "t1":
            entry["result"][0]["coeff"] = "1"
    with pytest.raises(ModelError) as info:
        load_model(doc)
    assert info.value.axiom == "graded commutativity"


def test_unit_violation():
    doc = sphere2().to_document()
    doc["cup"][1]["result"][0]["coeff"] = "2"
    with pytest.raises(ModelError) as info:
        load_model(doc)
    assert info.value.axiom == "unit"


def test_parse_errors():
    with pytest.raises(ModelError) as info:
        load_model("{not json")
    assert info.value.axiom == "parse error"
    doc = sphere2().to_document()
    doc["cup"][0]["result"][0]["basis"] = "nope"
    with pytest.raises(ModelError):
        load_model(doc)


def test_euler_class_must_match_characteristic():
    doc = sphere2().to_document()
    doc["euler_class"][0]["coeff"] = "3"
    with pytest.raises(ModelError) as info:
        load_model(doc)
    assert info.value.axiom == "euler class"


def test_rationals():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational(2) == 2
    assert format_rational(F(-3, 4)) == "-3/4"
    assert format_rational(F(2)) == "2"
    doc = sphere2().to_document()
    doc["pairing"] = [["0", "1/2"], ["1/2", "0"]]
    with pytest.raises(ModelError) as info:
        load_model(doc)
    assert info.value.axiom == "pairing inconsistent"


# restriction, pushforward, excess ----------------------------------------


def test_restrict_examples():
    m = sphere2()
    target = sector_orbits(T12)
    assert restrict(SectorVector.basis(E2, (1, 0)), target, m).coeffs == {(1,): 1}
    assert restrict(SectorVector.basis(E2, (0, 1)), target, m).coeffs == {(1,): 1}
    assert restrict(SectorVector.basis(E2, (1, 1)), target, m).coeffs == {}
    src = SectorVector.basis(E2, (1, 0))
    assert restrict(src, sector_orbits(E2), m).coeffs == {(1, 0): 1}


def test_restrict_rejects_non_coarsening():
    m = sphere2()
    with pytest.raises(ValueError):
        restrict(SectorVector.basis(T12, (0,)), sector_orbits(E2), m)


def test_pushforward_examples():
    m = sphere2()
    diag = OrbitVector(sector_orbits(T12), {(1,): F(1)})
    assert pushforward(diag, sector_orbits(E2), m).coeffs == {(1, 1): 1}
    unit = OrbitVector(sector_orbits(T12), {(0,): F(1)})
    assert pushforward(unit, sector_orbits(E2), m).coeffs == {(0, 1): 1, (1, 0): 1}
    top = OrbitVector(sector_orbits(E2), {(1, 1): F(1)})
    assert pushforward(top, sector_orbits(E2), m).coeffs == {(1, 1): 1}


def test_torus_diagonal_class():
    m = builtin_model("torus", 1)
    unit = OrbitVector(sector_orbits(T12), {(0,): F(1)})
    assert pushforward(unit, sector_orbits(E2), m).coeffs == {(1, 0): 1, (0, 1): -1}


def _set_partitions(n):
    seen = {}
    for p in symmetric_group(n):
        s = orbit_structure([p])
        seen.setdefault(s.orbit_assignment, s)
    return list(seen.values())


@pytest.mark.parametrize("kind,d,max_n", [("sphere", 2, 4), ("torus", 1, 4), ("torus", 2, 4)])
def test_pushforward_is_pairing_adjoint(kind, d, max_n):
    m = builtin_model(kind, d)
    calc = calculus(m)
    for n in range(1, max_n + 1):
        structures = _set_partitions(n)
        for coarse, fine in itertools.product(structures, repeat=2):
            if not coarse.coarsens(fine):
                continue
            for u in calc.words(coarse.orbit_count):
                pushed = pushforward(OrbitVector(coarse, {u: F(1)}), fine, m).coeffs
                for w in calc.words(fine.orbit_count):
                    lhs = calc.pairing(dict(pushed), {w: F(1)})
                    rhs = calc.pairing({u: F(1)}, restrict(OrbitVector(fine, {w: F(1)}), coarse, m).coeffs)
                    assert lhs == rhs


def test_excess_examples():
    s, t = sphere2(), builtin_model("torus", 2)
    assert excess_class(T12, T12, s).coeffs == {(1,): 2}
    assert excess_class(E2, E2, s).coeffs == {(0, 0): 1}
    assert excess_class(T12, T12, t).coeffs == {}
    assert excess_multiplicities(T12, T12) == [1]


@pytest.mark.parametrize("n", range(1, 6))
def test_excess_rank_consistency(n):
    for tau, sigma in itertools.product(symmetric_group(n), repeat=2):
        assert 2 * sum(excess_multiplicities(tau, sigma)) == excess_euler_degree(tau, sigma, 2)
        assert min(excess_multiplicities(tau, sigma)) >= 0


def test_transversal_orientation_identity_and_symmetry_of_unit():
    e = Permutation.identity(3)
    for p in symmetric_group(3):
        assert transversal_orientation(e, p) == 1
        assert transversal_orientation(p, e) == 1


# products ------------------------------------------------------------------


@pytest.mark.parametrize("product", [vip_product, cs_product])
def test_twisted_unit_squared_sphere(product):
    m = sphere2()
    one = SectorVector.basis(T12, (0,))
    r = product(one, one, m)
    assert r.label == E2 and r.coeffs == {(1, 1): 2}


@pytest.mark.parametrize("product", [vip_product, cs_product])
def test_twisted_unit_squared_torus2_vanishes(product):
    m = builtin_model("torus", 2)
    one = SectorVector.basis(T12, (0,))
    assert product(one, one, m).is_zero()


@pytest.mark.parametrize("kind,d", MODELS)
@pytest.mark.parametrize("product", [vip_product, cs_product])
def test_untwisted_unit_is_unit(kind, d, product):
    m = builtin_model(kind, d)
    calc = calculus(m)
    n = 3
    one = SectorVector.basis(Permutation.identity(n), calc.unit_word(n))
    for t in symmetric_group(n):
        for w in calc.words(len(t.cycles())):
            a = SectorVector.basis(t, w)
            assert product(one, a, m) == a
            assert product(a, one, m) == a


def test_degree_mismatch_between_labels():
    with pytest.raises(ValueError):
        vip_product(SectorVector.basis(E2, (0, 0)), SectorVector.basis(Permutation.identity(3), (0, 0, 0)), sphere2())


def test_torus3_products_agree():
    m = builtin_model("torus", 3)
    alg_v, alg_c = SectorAlgebra(m, 2, "vip"), SectorAlgebra(m, 2, "cs")
    assert alg_v.table == alg_c.table
    assert not alg_v.associativity_failures()
    assert not alg_v.equivariance_failures()


@pytest.mark.parametrize("kind,d", MODELS)
def test_equivariance(kind, d):
    alg = SectorAlgebra(builtin_model(kind, d), 3)
    assert alg.degree_violations == 0
    assert not alg.equivariance_failures()


# S_n averaging and tables ---------------------------------------------------


def test_sn_project_examples():
    m = sphere2()
    sym = InertiaElement({E2: {(0, 1): F(1), (1, 0): F(1)}})
    assert sn_project(sym, m) == sym
    tw = InertiaElement({T12: {(0,): F(1)}})
    assert sn_project(tw, m) == tw
    half = sn_project(InertiaElement({E2: {(1, 0): F(1)}}), m)
    assert half == InertiaElement({E2: {(1, 0): F(1, 2), (0, 1): F(1, 2)}})


def test_twisted_sector_of_circle_has_no_invariants():
    # odd d: the swap reverses the normal orientation of the diagonal
    m = builtin_model("torus", 1)
    assert sn_project(InertiaElement({T12: {(0,): F(1)}}), m).is_zero()


@pytest.mark.parametrize("kind,d", MODELS)
def test_sn_project_idempotent_and_commutes(kind, d):
    m = builtin_model(kind, d)
    basis = invariant_basis(m, 2)
    for b in basis:
        assert sn_project(b.vector, m) == b.vector
    for a, b in itertools.product(basis, repeat=2):
        for use in ("vip", "cs"):
            prod = product_element(a.vector, b.vector, m, use)
            assert sn_project(prod, m) == prod


def test_sphere_table():
    t = multiplication_table(sphere2(), 2)
    names = [b.name(t.model) for b in t.basis]
    assert names == ["()[1|1]", "()[1|x]", "()[x|x]", "(1 2)[1]", "(1 2)[x]"]
    twisted = names.index("(1 2)[1]")
    assert t.entries[(twisted, twisted)] == {names.index("()[x|x]"): 2}
    assert [b.homology_degree for b in t.basis] == [4, 2, 0, 2, 0]
    doc = t.to_json()
    assert set(doc) >= {"sector_basis", "entries"}
    entry = next(e for e in doc["entries"] if e["left"] == e["right"] == "(1 2)[1]")
    assert entry["result"] == [{"basis": "()[x|x]", "coeff": "2"}]


@pytest.mark.parametrize("kind,d", MODELS)
def test_n1_table_is_cup_table(kind, d):
    m = builtin_model(kind, d)
    t = multiplication_table(m, 1)
    assert [b.word for b in t.basis] == sorted(((a,) for a in range(m.dim)), key=lambda w: (m.degrees[w[0]], w))
    pos = {b.word[0]: i for i, b in enumerate(t.basis)}
    for a, b in itertools.product(range(m.dim), repeat=2):
        assert t.entries[(pos[a], pos[b])] == {pos[c]: v for c, v in m.mul(a, b).items()}


def test_torus2_twisted_squares_vanish():
    t = multiplication_table(builtin_model("torus", 2), 2)
    for i, b in enumerate(t.basis):
        if not b.label.is_identity():
            for j, c in enumerate(t.basis):
                if not c.label.is_identity():
                    assert t.entries[(i, j)] == {}


@pytest.mark.parametrize("kind,d", MODELS)
def test_tables_agree_and_close(kind, d):
    m = builtin_model(kind, d)
    for n in (2, 3):
        tv, tc = multiplication_table(m, n, "vip"), multiplication_table(m, n, "cs")
        assert not table_diff(tv, tc)
        assert table_is_closed(tv)
        assert tv.degree_violations == 0


def test_table_is_deterministic():
    a = multiplication_table(builtin_model("torus", 2), 2).to_json()
    b = multiplication_table(builtin_model("torus", 2), 2).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_table_size_bounds(monkeypatch):
    with pytest.raises(TableSizeError):
        multiplication_table(builtin_model("torus", 1), 5)
    with pytest.raises(TableSizeError):
        multiplication_table(sphere2(), 6)
    # file models are bounded by the word count of the untwisted sector
    with pytest.raises(TableSizeError):
        multiplication_table(load_model(cp3_document()), 10)
