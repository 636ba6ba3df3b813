"""Exactness checks of the unit algebras and the component calculus."""

import itertools

import numpy as np
import pytest

import refvals
from symplectica.clifford import (
    Algebra,
    CL20_UNIT_NAMES,
    CL31_UNIT_NAMES,
    CliffordElement2,
    CliffordElement4,
    SignedUnit,
    UnitId,
    baumgarten_map,
    compose2,
    compose4,
    decompose2,
    decompose4,
    mul_units,
    unit_rep,
)

U20 = [UnitId(Algebra.CL20, n) for n in CL20_UNIT_NAMES]
U31 = [UnitId(Algebra.CL31, n) for n in CL31_UNIT_NAMES]

BIREAL_20 = ("beta1", "beta2")
COMPLEX_20 = ("gamma",)
BIREAL_31 = tuple(n for n in CL31_UNIT_NAMES if n.startswith("beta"))
COMPLEX_31 = tuple(n for n in CL31_UNIT_NAMES if n.startswith(("zeta", "gamma")))


def test_unit_counts():
    assert len(U20) == 4
    assert len(U31) == 16


@pytest.mark.parametrize("unit", U20 + U31, ids=lambda u: f"{u.algebra.name}-{u.name}")
def test_representatives_are_orthogonal_and_signed(unit):
    rep = unit_rep(unit)
    n = rep.shape[0]
    assert np.array_equal(rep.T @ rep, np.eye(n))
    assert np.all(np.isin(rep, (-1.0, 0.0, 1.0)))
    if unit.name == "one":
        assert np.array_equal(rep, np.eye(n))
    elif unit.name in BIREAL_20 + BIREAL_31:
        assert np.array_equal(rep, rep.T) and np.trace(rep) == 0
        assert np.array_equal(rep @ rep, np.eye(n))
    else:
        assert np.array_equal(rep, -rep.T)
        assert np.array_equal(rep @ rep, -np.eye(n))


@pytest.mark.parametrize("units", [U20, U31], ids=["cl20", "cl31"])
def test_representation_homomorphism_exact(units):
    for a, b in itertools.product(units, repeat=2):
        signed = mul_units(a, b)
        lhs = unit_rep(a) @ unit_rep(b)
        assert np.array_equal(lhs, signed.sign * unit_rep(signed.unit)), (a, b)


def test_generators_anticommute_exactly():
    gens20 = [unit_rep(UnitId(Algebra.CL20, n)) for n in ("beta1", "beta2")]
    gens31 = [
        unit_rep(UnitId(Algebra.CL31, n))
        for n in ("gamma1", "beta2_1", "beta2_2", "beta2_3")
    ]
    for gens in (gens20, gens31):
        for i, g in enumerate(gens):
            for h in gens[i + 1:]:
                assert np.array_equal(g @ h + h @ g, np.zeros_like(g))


def test_scalar_product_orthonormality():
    for units in (U20, U31):
        d = unit_rep(units[0]).shape[0]
        for a, b in itertools.product(units, repeat=2):
            val = np.trace(unit_rep(a).T @ unit_rep(b)) / d
            assert val == (1.0 if a == b else 0.0)


def test_mul_units_examples():
    b1, b2, g = (UnitId(Algebra.CL20, n) for n in ("beta1", "beta2", "gamma"))
    assert mul_units(b1, b2) == SignedUnit(1, g)
    assert mul_units(g, g) == SignedUnit(-1, UnitId(Algebra.CL20, "one"))
    for k in (1, 2, 3):
        prod = mul_units(
            UnitId(Algebra.CL31, f"beta2_{k}"), UnitId(Algebra.CL31, "gamma1")
        )
        assert prod == SignedUnit(1, UnitId(Algebra.CL31, f"beta3_{k}"))


def test_mul_units_rejects_mixed_algebras():
    with pytest.raises(ValueError):
        mul_units(U20[0], U31[0])


def _eps(i, j, k):
    return int((i - j) * (j - k) * (k - i) / 2)


def _abstract_product(a: str, b: str):
    """Multiplication table from the index calculus, written independently
    of the representatives: generators anticommute, zeta/gamma are the
    antisymmetric pair products, beta the mixed ones."""

    def parse(name):
        if name == "one":
            return ("one",)
        if name.startswith("zeta"):
            return ("zeta", int(name[-1]))
        if name.startswith("gamma"):
            return ("gamma", int(name[-1]))
        return ("beta", int(name[4]), int(name[6]))  # beta<m>_<k>: family m, comp k

    def fmt(kind, *idx):
        if kind == "one":
            return "one"
        if kind == "zeta":
            return f"zeta{idx[0]}"
        if kind == "gamma":
            return f"gamma{idx[0]}"
        m, k = idx
        return f"beta{m}_{k}"

    ta, tb = parse(a), parse(b)
    terms = []  # (coefficient, kind, indices)
    if ta[0] == "one":
        terms.append((1, *tb))
    elif tb[0] == "one":
        terms.append((1, *ta))
    elif ta[0] == "zeta" and tb[0] == "zeta":
        k, l = ta[1], tb[1]
        if k == l:
            terms.append((-1, "one"))
        for i in (1, 2, 3):
            if _eps(k, l, i):
                terms.append((-_eps(k, l, i), "zeta", i))
    elif ta[0] == "gamma" and tb[0] == "gamma":
        m, n = ta[1], tb[1]
        if m == n:
            terms.append((-1, "one"))
        for o in (1, 2, 3):
            if _eps(m, n, o):
                terms.append((-_eps(m, n, o), "gamma", o))
    elif ta[0] == "gamma" and tb[0] == "zeta":
        terms.append((1, "beta", ta[1], tb[1]))
    elif ta[0] == "zeta" and tb[0] == "gamma":
        terms.append((1, "beta", tb[1], ta[1]))
    elif ta[0] == "gamma" and tb[0] == "beta":
        m, (n, l) = ta[1], tb[1:]
        if m == n:
            terms.append((-1, "zeta", l))
        for o in (1, 2, 3):
            if _eps(m, n, o):
                terms.append((-_eps(m, n, o), "beta", o, l))
    elif ta[0] == "beta" and tb[0] == "gamma":
        (m, k), n = ta[1:], tb[1]
        if m == n:
            terms.append((-1, "zeta", k))
        for o in (1, 2, 3):
            if _eps(m, n, o):
                terms.append((-_eps(m, n, o), "beta", o, k))
    elif ta[0] == "zeta" and tb[0] == "beta":
        k, (n, l) = ta[1], tb[1:]
        if k == l:
            terms.append((-1, "gamma", n))
        for i in (1, 2, 3):
            if _eps(k, l, i):
                terms.append((-_eps(k, l, i), "beta", n, i))
    elif ta[0] == "beta" and tb[0] == "zeta":
        (m, k), l = ta[1:], tb[1]
        if k == l:
            terms.append((-1, "gamma", m))
        for i in (1, 2, 3):
            if _eps(k, l, i):
                terms.append((-_eps(k, l, i), "beta", m, i))
    else:  # beta times beta
        (m, k), (n, l) = ta[1:], tb[1:]
        if k == l and m == n:
            terms.append((1, "one"))
        if k == l:
            for o in (1, 2, 3):
                if _eps(m, n, o):
                    terms.append((_eps(m, n, o), "gamma", o))
        if m == n:
            for i in (1, 2, 3):
                if _eps(k, l, i):
                    terms.append((_eps(k, l, i), "zeta", i))
        for i in (1, 2, 3):
            for o in (1, 2, 3):
                c = _eps(k, l, i) * _eps(m, n, o)
                if c:
                    terms.append((c, "beta", o, i))
    assert len(terms) == 1, (a, b, terms)
    coeff, kind, *idx = terms[0]
    return coeff, fmt(kind, *idx)


def test_cl31_table_matches_index_calculus():
    for a, b in itertools.product(CL31_UNIT_NAMES, repeat=2):
        sign, name = _abstract_product(a, b)
        got = mul_units(UnitId(Algebra.CL31, a), UnitId(Algebra.CL31, b))
        assert (got.sign, got.unit.name) == (sign, name), (a, b)


def test_unit_rep_examples():
    assert np.array_equal(unit_rep(UnitId(Algebra.CL20, "one")), np.eye(2))
    g = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert np.array_equal(
        unit_rep(UnitId(Algebra.CL31, "gamma1")), np.kron(np.eye(2), g)
    )
    b2 = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.array_equal(unit_rep(UnitId(Algebra.CL31, "beta2_1")), np.kron(b2, b2))


def test_decompose_identity_and_basis():
    z = decompose4(np.eye(4))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1.0
    assert np.array_equal(z.components, expected)

    z = decompose4(unit_rep(UnitId(Algebra.CL31, "beta3_2")))
    expected = np.zeros((4, 4))
    expected[2, 3] = 1.0  # slot (kappa=2, lam=3)
    assert np.array_equal(z.components, expected)


def test_reference_beam_components_roundtrip():
    rep = compose4(CliffordElement4(refvals.REFERENCE_BEAM))
    assert np.allclose(decompose4(rep).components, refvals.REFERENCE_BEAM, atol=1e-14)
    assert np.allclose(rep, rep.T)


def test_compose4_explicit_entry_formulas(rng):
    # the (1,1) entry is the sum of the four diagonal-slot coefficients, etc.
    z = rng.standard_normal((4, 4))
    m = compose4(CliffordElement4(z))
    assert abs(m[0, 0] - (z[0, 0] + z[1, 1] + z[2, 2] + z[3, 3])) < 1e-14
    assert abs(m[0, 1] - (-z[1, 0] + z[0, 1] - z[3, 2] + z[2, 3])) < 1e-14
    assert abs(m[1, 0] - (z[1, 0] - z[0, 1] - z[3, 2] + z[2, 3])) < 1e-14
    assert abs(m[3, 3] - (z[0, 0] - z[1, 1] - z[2, 2] + z[3, 3])) < 1e-14


def test_compose4_normal_form_diagonal():
    comp = np.zeros((4, 4))
    comp[0, 0], comp[1, 1] = 3.0, -2.0
    assert np.allclose(compose4(CliffordElement4(comp)), np.diag([1.0, 1.0, 5.0, 5.0]))


def test_roundtrip_random(rng):
    for _ in range(1000):
        m = rng.standard_normal((4, 4))
        assert np.abs(compose4(decompose4(m)) - m).max() <= 1e-14
    for _ in range(200):
        m = rng.standard_normal((2, 2))
        assert np.abs(compose2(decompose2(m)) - m).max() <= 1e-14


def test_component_shape_of_symmetric_and_antisymmetric(rng):
    m = rng.standard_normal((4, 4))
    sym = decompose4(m + m.T).components
    assert np.abs(sym[1:, 0]).max() <= 1e-14   # no zeta content
    assert np.abs(sym[0, 1:]).max() <= 1e-14   # no gamma content
    anti = decompose4(m - m.T).components
    assert np.abs(anti[0, 0]) <= 1e-14
    assert np.abs(anti[1:, 1:]).max() <= 1e-14  # no bireal content


def test_transpose_rule(rng):
    m = rng.standard_normal((4, 4))
    z, zt = decompose4(m).components, decompose4(m.T).components
    assert np.allclose(zt[1:, 0], -z[1:, 0])   # zeta coefficients flip
    assert np.allclose(zt[0, 1:], -z[0, 1:])   # gamma coefficients flip
    assert np.allclose(zt[0, 0], z[0, 0])
    assert np.allclose(zt[1:, 1:], z[1:, 1:])  # bireal coefficients fixed

    m2 = rng.standard_normal((2, 2))
    a, b = decompose2(m2), decompose2(m2.T)
    assert (b.z0, b.z1, b.z2, b.z3) == (a.z0, a.z1, a.z2, -a.z3)


def test_complex_number_subalgebra_exact():
    # 1*x + gamma*y represents x + iy; products must match integer-exactly
    def rep(x, y):
        return compose2(CliffordElement2(x, 0.0, 0.0, y))

    for x1, y1, x2, y2 in itertools.product((-2, -1, 0, 1, 3), repeat=4):
        prod = rep(x1, y1) @ rep(x2, y2)
        zz = complex(x1, y1) * complex(x2, y2)
        assert np.array_equal(prod, rep(zz.real, zz.imag))


def test_baumgarten_map():
    m0 = baumgarten_map(0)
    assert (m0.sign, m0.unit.name) == (1, "gamma1")
    m3 = baumgarten_map(3)
    assert (m3.sign, m3.unit.name) == (-1, "beta2_2")
    m15 = baumgarten_map(15)
    assert (m15.sign, m15.unit.name) == (1, "one")
    hit = sorted(baumgarten_map(n).unit.name for n in range(16))
    assert hit == sorted(CL31_UNIT_NAMES)
    with pytest.raises(ValueError):
        baumgarten_map(16)
    with pytest.raises(ValueError):
        baumgarten_map(-1)


def test_unknown_unit_name_rejected():
    with pytest.raises(ValueError):
        UnitId(Algebra.CL20, "zeta1")
