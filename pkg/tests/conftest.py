"""Shared fixtures: reference fans and a seeded generator of valid fans.

Random fans are produced from known complete non-singular seeds by
validity-preserving moves only (stellar subdivision, suspension, products,
per-ray homeomorphism scalars, arbitrary c-vectors), so the generator's
output is valid by construction and the validation suites re-check that
independently.
"""

import random
from fractions import Fraction

import pytest

from topfan.fans import Ray, RElem, TopologicalFan
from topfan.fixtures import (
    cp2cp2_fan,
    octahedron_fan,
    projective_fan,
    segment_fan,
)
from topfan.realize import product_fan, stellar_subdivide_fan, suspend_fan


@pytest.fixture
def square_fan():
    return cp2cp2_fan()


@pytest.fixture
def oct_fan():
    return octahedron_fan()


def _seed_fan(rng, n):
    if n == 1:
        return segment_fan()
    if n == 2:
        return rng.choice([cp2cp2_fan, lambda: projective_fan(2),
                           lambda: product_fan(segment_fan(), segment_fan(), validate=False)])()
    builders = [
        octahedron_fan,
        lambda: projective_fan(3),
        lambda: suspend_fan(cp2cp2_fan(), validate=False),
        lambda: product_fan(segment_fan(), projective_fan(2), validate=False),
    ]
    return rng.choice(builders)()


def _random_scalar(rng):
    s = rng.choice([Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)])
    t = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    eps = rng.choice([1, -1])
    return RElem(s, t, eps)


def random_valid_fan(rng: random.Random, max_m=8, max_n=3):
    n = rng.randint(1, max_n)
    fan = _seed_fan(rng, n)
    while fan.n >= 2 and fan.m < max_m and rng.random() < 0.55:
        facet = rng.choice(fan.complex.facets)
        fan = stellar_subdivide_fan(fan, facet, validate=False)
    rays = []
    for ray in fan.rays:
        if rng.random() < 0.6:
            ray = ray.right_mul(_random_scalar(rng))
        if rng.random() < 0.3:
            c = tuple(Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(fan.n))
            ray = Ray(ray.b, c, ray.v)
        rays.append(ray)
    return TopologicalFan(fan.n, fan.complex, rays)


@pytest.fixture
def fan_generator():
    return random_valid_fan
