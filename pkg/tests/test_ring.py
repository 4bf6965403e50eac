"""Ring arithmetic against an explicit 2x2-matrix oracle."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from topfan.ring import (
    MU0,
    ONE,
    ZERO,
    BSingularError,
    RElem,
    RVec,
    VNotUnimodularError,
    dual_basis,
    orientation_sign,
    pairing,
    standard_basis_rvec,
)
from topfan import linalg

import pytest


def mat_oracle_mul(x, y):
    """2x2 rational matrix product, kept independent of RElem.__mul__."""
    a, b = x.as_matrix(), y.as_matrix()
    return [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]


def random_elem(rng):
    return RElem(
        Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
        Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
        rng.randint(-4, 4),
    )


def test_product_matches_matrix_oracle_bulk():
    rng = random.Random(42)
    for _ in range(10_000):
        x, y = random_elem(rng), random_elem(rng)
        assert (x * y).as_matrix() == mat_oracle_mul(x, y)


def test_ring_axioms_bulk():
    rng = random.Random(7)
    for _ in range(10_000):
        x, y, z = (random_elem(rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z


def test_identity_and_zero():
    assert MU0 * MU0 == ONE
    m = RElem(Fraction(5, 3), Fraction(-2), 7)
    assert m * ONE == m
    assert ONE * m == m
    assert m * ZERO == ZERO
    assert m + ZERO == m


def test_worked_product():
    assert RElem(1, 2, 3) * RElem(2, 0, 1) == RElem(2, 4, 3)


def test_mu0_right_multiplication_flips_v_only():
    m = RElem(Fraction(3, 2), Fraction(7), -2)
    assert m * MU0 == RElem(Fraction(3, 2), Fraction(7), 2)
    # left multiplication is conjugation
    assert MU0 * m == m.conjugate()


def test_conjugate_involution():
    rng = random.Random(3)
    for _ in range(100):
        m = random_elem(rng)
        assert m.conjugate().conjugate() == m


def test_homeo_scalar_predicate():
    assert MU0.is_homeo_scalar()
    assert not RElem(0, 0, 1).is_homeo_scalar()
    assert RElem(Fraction(1, 2), 7, 1).is_homeo_scalar()
    assert not RElem(1, 0, 2).is_homeo_scalar()


def test_laurent_exponents():
    m = RElem(0, 0, -2)
    assert m.is_laurent() and m.laurent_exponents() == (-1, 1)
    assert not RElem(Fraction(1, 2), 0, 0).is_laurent()
    assert not RElem(1, 1, 1).is_laurent()
    assert RElem(3, 0, 1).laurent_exponents() == (2, 1)


def test_algebraic_subring_closed():
    # elements with b = v integral and c = 0 stay in that set under products
    rng = random.Random(11)
    for _ in range(500):
        v1, v2 = rng.randint(-5, 5), rng.randint(-5, 5)
        x, y = RElem(v1, 0, v1), RElem(v2, 0, v2)
        p = x * y
        assert p.c == 0 and p.b == p.v


def test_serialization_roundtrip():
    m = RElem(Fraction(-3, 4), Fraction(5, 7), -2)
    assert RElem.from_json(m.to_json()) == m
    vec = RVec((m, ONE, ZERO))
    assert RVec.from_json(vec.to_json()) == vec


def test_pairing_standard_basis():
    for n in (1, 2, 4):
        for i in range(n):
            alpha = standard_basis_rvec(n, i)
            beta = standard_basis_rvec(n, i)
            assert pairing(alpha, beta) == ONE


def test_pairing_length_mismatch():
    with pytest.raises(ValueError):
        pairing(standard_basis_rvec(2, 0), standard_basis_rvec(3, 0))


# vectors of the four-gon example used throughout: (b, v) columns
_EX_BETAS = {
    1: RVec.from_parts((1, 0), (0, 0), (1, 0)),
    2: RVec.from_parts((0, 1), (0, 0), (0, 1)),
    3: RVec.from_parts((-1, 0), (0, 0), (-1, -2)),
    4: RVec.from_parts((-1, -1), (0, 0), (-1, -1)),
}


def test_pairing_published_values():
    duals_23 = dual_basis({2: _EX_BETAS[2], 3: _EX_BETAS[3]})
    alpha2 = duals_23[2]
    assert alpha2 == RVec.from_parts((0, 1), (0, 0), (-2, 1))
    assert pairing(duals_23[2], _EX_BETAS[3]) == ZERO
    duals_12 = dual_basis({1: _EX_BETAS[1], 2: _EX_BETAS[2]})
    assert pairing(duals_12[1], _EX_BETAS[1]) == ONE


def test_dual_basis_identity_blocks():
    betas = {i: standard_basis_rvec(3, i) for i in range(3)}
    duals = dual_basis(betas)
    for i in range(3):
        assert duals[i] == standard_basis_rvec(3, i)


def test_dual_basis_published_table():
    expected = {
        (3, 4): {3: ((-1, 1), (1, -1)), 4: ((0, -1), (-2, 1))},
        (4, 1): {4: ((0, -1), (0, -1)), 1: ((1, -1), (1, -1))},
    }
    for facet, alphas in expected.items():
        duals = dual_basis({i: _EX_BETAS[i] for i in facet})
        for i, (b, v) in alphas.items():
            assert duals[i] == RVec.from_parts(b, (0, 0), v)


def test_dual_basis_error_kinds():
    degenerate_b = {
        1: RVec.from_parts((1, 0), (0, 0), (1, 0)),
        2: RVec.from_parts((2, 0), (0, 0), (0, 1)),
    }
    with pytest.raises(BSingularError):
        dual_basis(degenerate_b)
    bad_v = {
        1: RVec.from_parts((1, 0), (0, 0), (1, 0)),
        2: RVec.from_parts((0, 1), (0, 0), (0, 2)),
    }
    with pytest.raises(VNotUnimodularError):
        dual_basis(bad_v)


def _random_unimodular(rng, n):
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        f = rng.randint(-2, 2)
        for k in range(n):
            mat[i][k] += f * mat[j][k]
    return mat


def test_dual_basis_property_random():
    rng = random.Random(19)
    for _ in range(150):
        n = rng.randint(1, 4)
        v = _random_unimodular(rng, n)
        while True:
            b = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
                 for _ in range(n)]
            if linalg.det(b) != 0:
                break
        c = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        betas = {
            i: RVec.from_parts([b[k][i] for k in range(n)],
                               [c[k][i] for k in range(n)],
                               [v[k][i] for k in range(n)])
            for i in range(n)
        }
        duals = dual_basis(betas)
        for i in range(n):
            for j in range(n):
                assert pairing(duals[i], betas[j]) == (ONE if i == j else ZERO)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(-30, 30), st.integers(1, 9), st.integers(-30, 30), st.integers(1, 9),
    st.integers(-5, 5), st.integers(-30, 30), st.integers(1, 9), st.integers(-30, 30),
    st.integers(1, 9), st.integers(-5, 5),
)
def test_product_matches_oracle_hypothesis(bn1, bd1, cn1, cd1, v1, bn2, bd2, cn2, cd2, v2):
    x = RElem(Fraction(bn1, bd1), Fraction(cn1, cd1), v1)
    y = RElem(Fraction(bn2, bd2), Fraction(cn2, cd2), v2)
    assert (x * y).as_matrix() == mat_oracle_mul(x, y)


def test_orientation_sign_examples():
    std = [standard_basis_rvec(2, 0), standard_basis_rvec(2, 1)]
    assert orientation_sign(std) == 1
    assert orientation_sign([_EX_BETAS[3], _EX_BETAS[4]]) == -1
    assert orientation_sign([_EX_BETAS[1], _EX_BETAS[2]]) == 1
    # invariant under reordering: both block determinants flip together
    assert orientation_sign([_EX_BETAS[4], _EX_BETAS[3]]) == -1


def test_orientation_sign_matches_dual():
    betas = {i: _EX_BETAS[i] for i in (3, 4)}
    duals = dual_basis(betas)
    assert orientation_sign(betas.values()) == orientation_sign(duals.alphas)


def test_orientation_sign_singular():
    with pytest.raises(ValueError):
        orientation_sign([_EX_BETAS[1], _EX_BETAS[1]])
