"""Shared deterministic generators for the property and acceptance tests."""

from __future__ import annotations

import math
import random

import pytest

from dpdsurf.divisor import DivisorPair, QDivisor
from dpdsurf.dpdring import GradedElement
from dpdsurf.exactmath import Poly, Rat, RatFunc

SMALL_POINTS = [
    Rat(-2),
    Rat(-1),
    Rat(0),
    Rat(1),
    Rat(2),
    Rat(3),
    Rat(1, 2),
    Rat(-3, 2),
]

NEGATIVE_SUMS = [
    Rat(-1),
    Rat(-2),
    Rat(-1, 2),
    Rat(-1, 3),
    Rat(-2, 3),
    Rat(-3, 2),
    Rat(-1, 4),
    Rat(-5),
]


def random_rat(rng: random.Random, span: int = 4, den: int = 4,
               allow_zero: bool = True) -> Rat:
    while True:
        q = Rat(rng.randint(-span, span), rng.randint(1, den))
        if allow_zero or q != 0:
            return q


def random_divisor(rng: random.Random, max_points: int = 3) -> QDivisor:
    pts = rng.sample(SMALL_POINTS, rng.randint(0, max_points))
    return QDivisor((p, random_rat(rng, allow_zero=False)) for p in pts)


def random_pair(rng: random.Random) -> DivisorPair:
    """An arbitrary valid pair: sums forced <= 0 pointwise."""
    d_plus = random_divisor(rng)
    points = set(d_plus.support) | {
        p for p in rng.sample(SMALL_POINTS, rng.randint(0, 2))
    }
    minus_terms = []
    for p in points:
        target = rng.choice([Rat(0)] + NEGATIVE_SUMS)
        minus_terms.append((p, target - d_plus(p)))
    return DivisorPair(d_plus, QDivisor(minus_terms))


def random_concentrated_pair(
    rng: random.Random, max_extra: int = 2, single_point: bool = False
) -> DivisorPair:
    """A pair whose fractional d_plus part sits at one point (or is zero)."""
    d = rng.choice([1, 1, 1, 2, 2, 3, 4, 5])
    e_prime = rng.choice([e for e in range(d) if math.gcd(e, d) == 1]) if d > 1 else 0
    anchor = rng.choice([Rat(0), Rat(0), Rat(1), Rat(-1)])
    plus_terms = []
    if e_prime:
        plus_terms.append((anchor, Rat(-e_prime, d)))
    minus_terms = [(anchor, rng.choice([Rat(0)] + NEGATIVE_SUMS) + Rat(e_prime, d))]
    if not single_point:
        others = rng.sample([p for p in SMALL_POINTS if p != anchor],
                            rng.randint(0, max_extra))
        for p in others:
            minus_terms.append((p, rng.choice(NEGATIVE_SUMS)))
    return DivisorPair(QDivisor(plus_terms), QDivisor(minus_terms))


def random_shift(rng: random.Random, pair: DivisorPair) -> DivisorPair:
    points = rng.sample(SMALL_POINTS, rng.randint(1, 3))
    shift = QDivisor((p, rng.randint(-3, 3)) for p in points)
    return pair.shift(shift)


def random_poly(rng: random.Random, max_deg: int = 3) -> Poly:
    deg = rng.randint(0, max_deg)
    return Poly([random_rat(rng, span=4, den=3) for _ in range(deg + 1)])


def random_ratfunc(rng: random.Random) -> RatFunc:
    num = random_poly(rng)
    den = Poly.from_roots(
        rng.sample(SMALL_POINTS, rng.randint(0, 2))
    )
    return RatFunc(num, den)


def random_element(rng: random.Random, max_terms: int = 3) -> GradedElement:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        terms.append((rng.randint(-4, 4), RatFunc(random_poly(rng))))
    return GradedElement(terms)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260809)
