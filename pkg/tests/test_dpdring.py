"""Graded ring pieces, membership, presentations, and their identities."""

from __future__ import annotations

import pytest

from conftest import random_concentrated_pair, random_element, random_pair
from dpdsurf.divisor import DivisorPair, QDivisor, denom_index, normalize_pair
from dpdsurf.dpdring import (
    Elliptic,
    GradedElement,
    Hyperbolic,
    Parabolic,
    contains,
    from_equation,
    graded_generator,
    is_line_cross_torus,
    presentation,
    spec_from_obj,
    spec_to_obj,
)
from dpdsurf.errors import (
    FractionalPlusSpread,
    GcdViolation,
    IrrationalLocus,
    NegativeDegreeParabolic,
    NonRationalRoots,
    NotUnitary,
)
from dpdsurf.exactmath import Poly, Rat, RatFunc


def D(*terms) -> QDivisor:
    return QDivisor(terms)


def danielewski_pair(d: int) -> DivisorPair:
    return DivisorPair(QDivisor.zero(), D((0, Rat(-1, d)), (-1, Rat(-1, d))))


class TestGradedGenerator:
    def test_danielewski_v(self):
        spec = Hyperbolic(danielewski_pair(2))
        v = graded_generator(spec, -2)
        assert v == GradedElement.monomial(-2, Poly((0, 1, 1)))

    def test_degree_zero(self):
        spec = Hyperbolic(danielewski_pair(3))
        assert graded_generator(spec, 0) == GradedElement.one()

    def test_conic_degree_one(self):
        pair = DivisorPair(D((0, Rat(-1, 2))), D((0, Rat(1, 2)), (1, -1)))
        u1 = graded_generator(Hyperbolic(pair), 1)
        assert u1 == GradedElement.monomial(1, Poly.t())

    def test_parabolic_negative_degree(self):
        with pytest.raises(NegativeDegreeParabolic):
            graded_generator(Parabolic(D((0, Rat(-1, 2)))), -1)


class TestContains:
    def test_integral_closure_example(self):
        # normalization of u^2 v = t^3: 3 t^2 u^-1 is integral over the ring
        spec = Hyperbolic(DivisorPair(QDivisor.zero(), D((0, Rat(-3, 2)))))
        assert contains(spec, GradedElement.monomial(-1, Poly.monomial(2, 3)))
        assert not contains(spec, GradedElement.monomial(-1, Poly.t()))

    def test_generators_are_members(self, rng):
        for _ in range(25):
            pair = random_pair(rng)
            spec = Hyperbolic(pair)
            for n in range(-8, 9):
                assert contains(spec, graded_generator(spec, n))

    def test_irrational_pole(self):
        spec = Hyperbolic(danielewski_pair(2))
        bad = GradedElement.monomial(0, RatFunc(Poly.one(), Poly((1, 0, 1))))
        with pytest.raises(IrrationalLocus):
            contains(spec, bad)

    def test_parabolic_no_negative_part(self):
        spec = Parabolic(D((0, Rat(-1, 2))))
        assert not contains(spec, GradedElement.monomial(-1, Poly.one()))


class TestMultiplicativity:
    def test_catalog_and_random(self, rng):
        from dpdsurf.catalog import default_entries

        pairs = [
            e.spec.pair for e in default_entries() if isinstance(e.spec, Hyperbolic)
        ]
        pairs += [random_pair(rng) for _ in range(10)]
        for pair in pairs:
            spec = Hyperbolic(pair)
            gens = {n: graded_generator(spec, n) for n in range(-6, 7)}
            for m in range(-6, 7):
                for n in range(-6, 7):
                    assert contains(spec, gens[m] * gens[n])

    def test_degree_saturation(self, rng):
        # A_{d+ + n} = A_{d+} * A_n for n >= 0
        for _ in range(25):
            pair = random_concentrated_pair(rng)
            spec = Hyperbolic(normalize_pair(pair))
            d_plus = denom_index(pair.d_plus)
            v = graded_generator(spec, d_plus)
            for n in range(0, 7):
                prod = v * graded_generator(spec, n)
                gen = graded_generator(spec, d_plus + n)
                ratio = prod.coefficient(d_plus + n) / gen.coefficient(d_plus + n)
                assert ratio.is_polynomial()


class TestEulerDerivation:
    def test_product_rule(self, rng):
        for _ in range(60):
            x, y = random_element(rng), random_element(rng)
            lhs = (x * y).euler()
            rhs = x.euler() * y + x * y.euler()
            assert lhs == rhs


class TestLineCrossTorus:
    def test_examples(self):
        assert is_line_cross_torus(
            DivisorPair(D((0, Rat(-1, 3))), D((0, Rat(1, 3))))
        )
        assert is_line_cross_torus(DivisorPair(QDivisor.zero(), QDivisor.zero()))
        assert not is_line_cross_torus(danielewski_pair(2))


class TestFromEquation:
    def test_quadric(self):
        pair = from_equation(1, Poly((-1, 0, 1)))
        assert pair.d_plus.is_zero()
        assert pair.d_minus == D((1, -1), (-1, -1))

    def test_danielewski(self):
        for d in (1, 2, 3):
            assert from_equation(d, Poly((0, 1, 1))) == danielewski_pair(d)

    def test_cusp_cover(self):
        pair = from_equation(2, Poly.monomial(3))
        assert pair.d_minus == D((0, Rat(-3, 2)))

    def test_errors(self):
        with pytest.raises(NonRationalRoots):
            from_equation(1, Poly((1, 0, 1)))
        with pytest.raises(GcdViolation):
            from_equation(2, Poly.monomial(4))
        with pytest.raises(NotUnitary):
            from_equation(1, Poly((0, 2)))


class TestPresentation:
    def test_danielewski(self):
        for d in (1, 2, 5):
            pres = presentation(danielewski_pair(d))
            assert pres.k == d
            assert pres.P == Poly((0, 1, 1))
            assert pres.d == 1 and pres.e_prime == 0

    def test_bertin(self):
        for d in (2, 3):
            for n in (2, 3):
                pair = DivisorPair(
                    D((0, Rat(1, n))),
                    D((0, Rat(-1, n)), (-1, Rat(-1, n * (d - 1)))),
                )
                pres = presentation(pair)
                assert pres.k == n * (d - 1)
                assert pres.d == n
                assert pres.e_prime == n - 1
                assert pres.l == -(d - 1) * (n - 1)
                assert pres.Q == Poly((1, 1))
                assert pres.P == Poly.monomial(n) + 1
                assert pres.zd_weights == (1, n - 1, 0)

    def test_dihedral(self):
        pres = presentation(DivisorPair(QDivisor.zero(), D((0, -4))))
        assert pres.k == 1 and pres.P == Poly.monomial(4)

    def test_spread_rejected(self):
        pair = DivisorPair(
            D((0, Rat(-1, 2)), (1, Rat(-1, 2))), QDivisor.zero()
        )
        with pytest.raises(FractionalPlusSpread):
            presentation(pair)

    def test_translation_recorded(self):
        pair = DivisorPair(D((3, Rat(-1, 2))), D((3, Rat(-1, 2))))
        pres = presentation(pair)
        assert pres.translation == 3

    def test_p_q_consistency(self, rng):
        # P(s) = Q(s^d) s^(k e' + d l) holds by construction; recheck it
        for _ in range(30):
            pair = random_concentrated_pair(rng)
            pres = presentation(pair)
            rebuilt = pres.Q.compose(Poly.monomial(pres.d)) * Poly.monomial(
                pres.k * pres.e_prime + pres.d * pres.l
            )
            assert rebuilt == pres.P
            assert pres.Q(0) != 0

    def test_roundtrip_from_equation(self, rng):
        for k, roots in [
            (1, [(0, 2)]),
            (2, [(0, 3)]),
            (3, [(1, 1), (-1, 2)]),
            (4, [(0, 1), (2, 3)]),
        ]:
            p = Poly.one()
            for a, m in roots:
                p = p * Poly((-Rat(a), 1)) ** m
            pair = from_equation(k, p)
            pres = presentation(pair)
            assert pres.k == k
            assert pres.P == p
            assert pres.d == 1 and pres.e_prime == 0

    def test_symbolic_relation(self, rng):
        # u^k * v = P(t) inside Frac(A_0)[u, u^-1] when d_plus = 0
        for k, p in [(1, Poly((-1, 0, 1))), (2, Poly((0, 1, 1))), (3, Poly.monomial(2))]:
            pair = from_equation(k, p)
            spec = Hyperbolic(pair)
            u = graded_generator(spec, 1)
            v = graded_generator(spec, -k)
            assert u**k * v == GradedElement.monomial(0, p)


class TestSpecSerialization:
    def test_roundtrip(self, rng):
        specs = [
            Elliptic(5, 2),
            Parabolic(D((0, Rat(-2, 5)))),
            Hyperbolic(danielewski_pair(2)),
        ]
        for _ in range(10):
            specs.append(Hyperbolic(random_pair(rng)))
        for spec in specs:
            assert spec_from_obj(spec_to_obj(spec)) == spec
