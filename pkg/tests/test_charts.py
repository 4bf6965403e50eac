"""Kernel presentations, transition matrices, cocycle identities, face poset."""

import random
from fractions import Fraction

import pytest

from topfan.charts import (
    check_cocycle,
    check_conjugation_equivariant,
    kernel_presentation,
    kernel_residual,
    orbit_face_poset,
    transition_matrix,
)
from topfan.complexes import SimplicialComplex
from topfan.fans import Ray, TopologicalFan
from topfan.fixtures import octahedron_fan, projective_fan
from topfan.ring import ONE, ZERO, RElem
from tests.conftest import random_valid_fan


def test_kernel_generators_square_fan(square_fan):
    pres = kernel_presentation(square_fan, (1, 2))
    assert pres.base == (1, 2)
    assert set(pres.generators) == {3, 4}
    g3 = pres.generators[3]
    assert g3[3] == ONE
    assert g3[1] == ONE  # -<alpha_1, beta_3> = -(-1) = 1
    assert g3[2] == RElem(0, 0, 2)
    assert 4 not in g3
    g4 = pres.generators[4]
    assert g4 == {4: ONE, 1: ONE, 2: ONE}


def test_kernel_residual_vanishes(square_fan):
    for base in square_fan.complex.facets:
        pres = kernel_presentation(square_fan, base)
        for k in pres.generators:
            assert all(e.is_zero() for e in kernel_residual(square_fan, pres, k))


def test_kernel_zero_generators_when_every_vertex_in_base():
    complex_ = SimplicialComplex(2, [(1, 2)])
    fan = TopologicalFan(2, complex_, [Ray.from_parts((1, 0)), Ray.from_parts((0, 1))])
    pres = kernel_presentation(fan, (1, 2))
    assert pres.generators == {}


def test_kernel_requires_facet(square_fan):
    with pytest.raises(ValueError):
        kernel_presentation(square_fan, (1, 3))


def test_kernel_base_independence(square_fan):
    """Different base facets present the same subgroup.

    The v-parts of the exponent vectors span the same integer kernel lattice
    of the map v, and the (b, c)-parts the same rational kernel of (b, c).
    """
    from topfan import linalg

    lattices = []
    spaces = []
    for base in square_fan.complex.facets:
        pres = kernel_presentation(square_fan, base)
        v_rows = []
        bc_rows = []
        for k in sorted(pres.generators):
            exps = [pres.exponent(k, j) for j in range(1, square_fan.m + 1)]
            v_rows.append([Fraction(e.v) for e in exps])
            bc_rows.append([e.b for e in exps] + [e.c for e in exps])
        lattices.append(v_rows)
        spaces.append(bc_rows)
    for other in lattices[1:]:
        combined = linalg.rref(lattices[0] + other)[1]
        assert len(combined) == len(linalg.rref(lattices[0])[1])
    for other in spaces[1:]:
        combined = linalg.rref(spaces[0] + other)[1]
        assert len(combined) == len(linalg.rref(spaces[0])[1])


def test_transition_identity(square_fan):
    mat = transition_matrix(square_fan, (1, 2), (1, 2))
    for j in (1, 2):
        for i in (1, 2):
            assert mat.entry(j, i) == (ONE if i == j else ZERO)


def test_transition_published_example(square_fan):
    mat = transition_matrix(square_fan, (1, 2), (2, 3))
    assert mat.entry(3, 1) == RElem(-1, 0, -1)
    # second coordinate of the gluing map: the conjugate-monomial exponent
    assert mat.entry(2, 1) == RElem(0, 0, -2)
    assert mat.entry(2, 1).laurent_exponents() == (-1, 1)
    assert mat.entry(2, 2) == ONE
    assert mat.entry(3, 2) == ZERO


def test_transition_kronecker_rows_on_shared_vertices(square_fan):
    mat = transition_matrix(square_fan, (2, 3), (3, 4))
    assert mat.entry(3, 3) == ONE
    assert mat.entry(4, 3) == ZERO


def test_cocycle_square_and_fixtures(square_fan, oct_fan):
    assert check_cocycle(square_fan).ok
    assert check_cocycle(oct_fan).ok
    assert check_cocycle(projective_fan(2)).ok


def test_cocycle_random_fans(fan_generator):
    rng = random.Random(41)
    for _ in range(12):
        fan = fan_generator(rng, max_m=7)
        assert check_cocycle(fan).ok


def test_cocycle_detects_corruption(square_fan):
    from topfan.charts import TransitionMatrix, _compose

    good = transition_matrix(square_fan, (1, 2), (2, 3))
    bad_entries = dict(good.entries)
    bad_entries[(2, 1)] = bad_entries[(2, 1)] + ONE
    bad = TransitionMatrix(good.source, good.target, bad_entries)
    back = transition_matrix(square_fan, (2, 3), (1, 2))
    product = _compose(back, bad)
    assert any(product[(j, i)] != (ONE if i == j else ZERO) for (j, i) in product)


def test_conjugation_equivariance(square_fan, fan_generator):
    assert check_conjugation_equivariant(square_fan)
    rng = random.Random(43)
    for _ in range(10):
        fan = fan_generator(rng, max_m=6)
        if fan.check_involutive():
            assert check_conjugation_equivariant(fan)
    # a c-vector on one ray generically breaks it
    rays = list(square_fan.rays)
    rays[0] = Ray(rays[0].b, (Fraction(1), Fraction(0)), rays[0].v)
    fan = TopologicalFan(2, square_fan.complex, rays)
    assert not check_conjugation_equivariant(fan)


def test_transition_v_parts_ignore_b_and_c(square_fan):
    """The winding parts of all chart data depend only on the v-vectors."""
    rays = []
    rng = random.Random(47)
    for ray in square_fan.rays:
        b = tuple(x * Fraction(rng.randint(1, 3)) for x in ray.b)
        c = tuple(Fraction(rng.randint(-2, 2)) for _ in ray.c)
        rays.append(Ray(b, c, ray.v))
    perturbed = TopologicalFan(2, square_fan.complex, rays)
    for src in square_fan.complex.facets:
        for tgt in square_fan.complex.facets:
            a = transition_matrix(square_fan, src, tgt)
            b = transition_matrix(perturbed, src, tgt)
            assert {k: mu.v for k, mu in a.entries.items()} == \
                {k: mu.v for k, mu in b.entries.items()}
        pres_a = kernel_presentation(square_fan, src)
        pres_b = kernel_presentation(perturbed, src)
        for k in pres_a.generators:
            assert {j: mu.v for j, mu in pres_a.generators[k].items()} == \
                {j: mu.v for j, mu in pres_b.generators[k].items()}


def test_face_poset_square(square_fan):
    poset = orbit_face_poset(square_fan)
    assert poset.rank_counts() == {0: 1, 1: 4, 2: 4}
    assert poset.elements[0] == ()
    # reverse inclusion: the empty face is the top element
    for e in poset.elements:
        assert poset.leq(e, ())
    # facets are minimal
    for f in square_fan.complex.facets:
        assert not any(a == f for a, _ in poset.covers if len(a) > len(f))


def test_face_poset_octahedron_is_cube(oct_fan):
    poset = orbit_face_poset(oct_fan)
    assert poset.rank_counts() == {0: 1, 1: 6, 2: 12, 3: 8}
    for e in poset.elements:
        assert poset.cube_zero_set(e) == tuple(e)


def test_face_poset_counts_match_f_vector(fan_generator):
    rng = random.Random(53)
    for _ in range(10):
        fan = fan_generator(rng, max_m=7)
        poset = orbit_face_poset(fan)
        counts = poset.rank_counts()
        f = fan.complex.f_vector()
        for k, fk in enumerate(f):
            assert counts[k + 1] == fk
