"""The graded coordinate ring of a C*-surface as a computational object.

A surface is specified by its divisor data (elliptic, parabolic or
hyperbolic); graded pieces of the ring A_0[D] or A_0[D+, D-] are free
rank-1 modules over A_0 = C[t], so each one is represented by its single
generator f_n(t) u^n.  Elements of Frac(A_0)[u, u^-1] are carried by
:class:`GradedElement`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

from .divisor import (
    DivisorPair,
    QDivisor,
    denom_index,
    normalize_pair,
)
from .errors import (
    FractionalPlusSpread,
    GcdViolation,
    InvalidSpecFile,
    IrrationalLocus,
    NegativeDegreeParabolic,
    NonRationalRoots,
    NotUnitary,
)
from .exactmath import (
    Poly,
    Rat,
    RatFunc,
    RatLike,
    format_rat,
    rational_linear_factorization,
)


@dataclass(frozen=True)
class Elliptic:
    """Toric data (d, e'): the quotient A^2 / Z_d acting with weights (1, e')."""

    d: int
    e_prime: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if not 0 <= self.e_prime < self.d:
            raise ValueError("need 0 <= e' < d")
        if math.gcd(self.e_prime, self.d) != 1:
            raise ValueError("need gcd(e', d) = 1")


@dataclass(frozen=True)
class Parabolic:
    """Positively graded ring A_0[D] over the affine line."""

    divisor: QDivisor


@dataclass(frozen=True)
class Hyperbolic:
    """Two-sided graded ring A_0[D+, D-]."""

    pair: DivisorPair


SurfaceSpec = Union[Elliptic, Parabolic, Hyperbolic]


class GradedElement:
    """A finite sum sum_n f_n(t) u^n inside Frac(A_0)[u, u^-1]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[int, RatFunc]] = ()):
        acc: dict[int, RatFunc] = {}
        for n, f in terms:
            if n in acc:
                acc[n] = acc[n] + f
            else:
                acc[n] = f if isinstance(f, RatFunc) else RatFunc(f)
        self._terms = tuple(
            (n, f) for n, f in sorted(acc.items()) if not f.is_zero()
        )

    @classmethod
    def zero(cls) -> GradedElement:
        return cls()

    @classmethod
    def monomial(cls, degree: int, coeff: RatFunc | Poly | RatLike = 1) -> GradedElement:
        f = coeff if isinstance(coeff, RatFunc) else RatFunc(coeff)
        return cls([(degree, f)])

    @classmethod
    def one(cls) -> GradedElement:
        return cls.monomial(0)

    @property
    def terms(self) -> tuple[tuple[int, RatFunc], ...]:
        return self._terms

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self._terms)

    def coefficient(self, degree: int) -> RatFunc:
        for n, f in self._terms:
            if n == degree:
                return f
        return RatFunc.zero()

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len(self._terms) <= 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GradedElement):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __neg__(self) -> GradedElement:
        return GradedElement((n, -f) for n, f in self._terms)

    def __add__(self, other: GradedElement) -> GradedElement:
        return GradedElement(self._terms + other._terms)

    def __sub__(self, other: GradedElement) -> GradedElement:
        return self + (-other)

    def __mul__(self, other: GradedElement | RatFunc | Poly | RatLike) -> GradedElement:
        if not isinstance(other, GradedElement):
            f = other if isinstance(other, RatFunc) else RatFunc(other)
            return GradedElement((n, g * f) for n, g in self._terms)
        out = []
        for n, f in self._terms:
            for m, g in other._terms:
                out.append((n + m, f * g))
        return GradedElement(out)

    def __rmul__(self, other: RatFunc | Poly | RatLike) -> GradedElement:
        return self * other

    def __pow__(self, n: int) -> GradedElement:
        if n < 0:
            raise ValueError("negative power of a graded element")
        acc = GradedElement.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def euler(self) -> GradedElement:
        """The grading derivation E: sum n f_n u^n."""
        return GradedElement((n, f * n) for n, f in self._terms)

    def invert_grading(self) -> GradedElement:
        """Substitute u -> u^-1."""
        return GradedElement((-n, f) for n, f in self._terms)

    def __str__(self) -> str:
        from .cli import render_element  # local import: cli owns the grammar

        return render_element(self)

    def __repr__(self) -> str:
        parts = [f"({f})*u^{n}" for n, f in self._terms] or ["0"]
        return "GradedElement[" + " + ".join(parts) + "]"


def _generator_coefficient(d: QDivisor, n: int) -> RatFunc:
    """prod_p (t - p)^{ceil(-n * D(p))} for the degree-|n| piece along D."""
    num, den = Poly.one(), Poly.one()
    for p, c in d.terms:
        q = -n * c
        expo = -((-q.numerator) // q.denominator)  # ceil(q), exactly
        if expo > 0:
            num = num * Poly((-p, 1)) ** expo
        elif expo < 0:
            den = den * Poly((-p, 1)) ** (-expo)
    return RatFunc._reduced(num, den)


def graded_generator(spec: SurfaceSpec, n: int) -> GradedElement:
    """The A_0-module generator f_n(t) u^n of the degree-n piece.

    For n >= 0 the relevant divisor is D (parabolic) or D+ (hyperbolic);
    for n < 0 it is D- taken with |n|.  The degree-0 piece is generated
    by 1.
    """
    if isinstance(spec, Elliptic):
        raise ValueError("graded_generator applies to parabolic/hyperbolic specs")
    if n == 0:
        return GradedElement.one()
    if isinstance(spec, Parabolic):
        if n < 0:
            raise NegativeDegreeParabolic(
                f"parabolic rings have no degree {n} piece"
            )
        return GradedElement.monomial(n, _generator_coefficient(spec.divisor, n))
    d = spec.pair.d_plus if n > 0 else spec.pair.d_minus
    return GradedElement.monomial(n, _generator_coefficient(d, abs(n)))


def _rational_pole_points(f: RatFunc) -> list[Rat]:
    """Roots of the denominator; raises IrrationalLocus on a nonsplit factor."""
    if f.den.degree == 0:
        return []
    _, roots, rem = rational_linear_factorization(f.den)
    if rem.degree >= 1:
        raise IrrationalLocus(
            f"denominator {f.den} has an irrational factor {rem}"
        )
    return [a for a, _ in roots]


def contains(spec: SurfaceSpec, x: GradedElement) -> bool:
    """Membership test: ord_p(f_n) + |n| * D(p) >= 0 at every relevant point."""
    if isinstance(spec, Elliptic):
        raise ValueError("contains applies to parabolic/hyperbolic specs")
    for n, f in x.terms:
        if isinstance(spec, Parabolic):
            if n < 0:
                return False
            d = spec.divisor
        else:
            d = spec.pair.d_plus if n >= 0 else spec.pair.d_minus
        points = set(_rational_pole_points(f)) | set(d.support)
        for p in points:
            if f.order_at(p) + abs(n) * d(p) < 0:
                return False
    return True


def is_line_cross_torus(pair: DivisorPair) -> bool:
    """True when d_plus + d_minus = 0, i.e. the ring has a unit of nonzero degree."""
    return pair.sum().is_zero()


@dataclass(frozen=True)
class Presentation:
    """Equation data u^k v = P for the surface and its cyclic cover.

    The ring is the Z_d-invariant part of the normalization of
    C[s, u, v]/(u^k v - P(s)) with P(s) = Q(s^d) * s^(k*e' + d*l), the
    group acting with the recorded weights on (s, u, v).  For d = 1 this
    degenerates to the hypersurface u^k v = P(t) itself with P = Q*t^l.
    """

    k: int
    P: Poly
    d: int
    e_prime: int
    l: int
    Q: Poly
    zd_weights: tuple[int, int, int]
    translation: Rat

    def relation_text(self) -> str:
        var = "t" if self.d == 1 else "s"
        return f"u^{self.k} v = {str(self.P).replace('t', var)}"


def fractional_plus_point(pair: DivisorPair) -> Rat | None:
    """The unique fractional support point of normalized d_plus, or None.

    Raises FractionalPlusSpread when there are two or more.
    """
    support = [p for p, c in normalize_pair(pair).d_plus.terms if c != 0]
    if len(support) > 1:
        raise FractionalPlusSpread(
            "fractional part of d_plus is supported at "
            + ", ".join(format_rat(p) for p in support)
        )
    return support[0] if support else None


def presentation(pair: DivisorPair) -> Presentation:
    """Compute the defining-equation presentation of A_0[D+, D-].

    The single fractional support point of d_plus (if any) is translated
    to 0 and the translation recorded; l = -k * d_minus(0) may be negative,
    but k*e' + d*l >= 0 always holds because the sum at 0 is <= 0.
    """
    q = normalize_pair(pair)
    anchor = fractional_plus_point(q)
    translation = anchor if anchor is not None else Rat(0)
    q = q.translate(-translation)

    d = denom_index(q.d_plus)
    e_prime = int(-d * q.d_plus(0))
    k = denom_index(q.d_minus)
    l_rat = -k * q.d_minus(0)
    assert l_rat.denominator == 1
    l = int(l_rat)

    big_q = Poly.one()
    for a, c in q.d_minus.terms:
        if a == 0:
            continue
        expo = -k * c
        assert expo.denominator == 1 and expo >= 0
        big_q = big_q * Poly((-a, 1)) ** int(expo)

    s_exp = k * e_prime + d * l
    assert s_exp >= 0, "k*e' + d*l < 0 would contradict d_plus + d_minus <= 0"
    big_p = big_q.compose(Poly.monomial(d)) * Poly.monomial(s_exp)
    return Presentation(
        k=k,
        P=big_p,
        d=d,
        e_prime=e_prime,
        l=l,
        Q=big_q,
        zd_weights=(1, e_prime, 0),
        translation=translation,
    )


def from_equation(k: int, p: Poly) -> DivisorPair:
    """DPD pair (0, -div(P)/k) of the normalization of C[t,u,v]/(u^k v - P).

    Requires P unitary, nonconstant and split over the rationals, with
    gcd(k, r_1, ..., r_s) = 1 so that k is the true denominator index.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if p.is_zero() or not p.is_unitary():
        raise NotUnitary(f"P = {p} is not a unitary polynomial")
    if p.degree < 1:
        raise ValueError("P must be nonconstant")
    _, roots, rem = rational_linear_factorization(p)
    if rem.degree >= 1:
        raise NonRationalRoots(f"P has a factor {rem} with no rational root")
    g = math.gcd(k, *(m for _, m in roots))
    if g > 1:
        raise GcdViolation(
            f"gcd(k, multiplicities) = {g} > 1; divide the equation down"
        )
    d_minus = QDivisor((a, Rat(-m, k)) for a, m in roots)
    return DivisorPair(QDivisor.zero(), d_minus)


# -- surface-spec document format -------------------------------------------
#
# A spec is a JSON object with exactly one of the keys:
#   {"elliptic":   {"d": int, "e_prime": int}}
#   {"parabolic":  {"divisor": [[point, coeff], ...]}}
#   {"hyperbolic": {"d_plus": [...], "d_minus": [...]}}
# with rationals as "n" / "n/m" strings.


def spec_to_obj(spec: SurfaceSpec) -> dict:
    if isinstance(spec, Elliptic):
        return {"elliptic": {"d": spec.d, "e_prime": spec.e_prime}}
    if isinstance(spec, Parabolic):
        return {"parabolic": {"divisor": spec.divisor.to_pairs()}}
    return {
        "hyperbolic": {
            "d_plus": spec.pair.d_plus.to_pairs(),
            "d_minus": spec.pair.d_minus.to_pairs(),
        }
    }


def spec_from_obj(obj: object) -> SurfaceSpec:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InvalidSpecFile(
            'spec must be an object with exactly one of "elliptic", '
            '"parabolic", "hyperbolic"'
        )
    (kind, body), = obj.items()
    if not isinstance(body, dict):
        raise InvalidSpecFile(f"body of {kind!r} must be an object")
    if kind == "elliptic":
        try:
            d, e_prime = body["d"], body["e_prime"]
        except KeyError as exc:
            raise InvalidSpecFile(f"elliptic spec needs {exc}") from None
        if not isinstance(d, int) or not isinstance(e_prime, int):
            raise InvalidSpecFile("elliptic d and e_prime must be integers")
        try:
            return Elliptic(d, e_prime)
        except ValueError as exc:
            raise InvalidSpecFile(str(exc)) from None
    if kind == "parabolic":
        if "divisor" not in body:
            raise InvalidSpecFile('parabolic spec needs "divisor"')
        return Parabolic(QDivisor.from_pairs(body["divisor"]))
    if kind == "hyperbolic":
        if "d_plus" not in body or "d_minus" not in body:
            raise InvalidSpecFile('hyperbolic spec needs "d_plus" and "d_minus"')
        return Hyperbolic(
            DivisorPair(
                QDivisor.from_pairs(body["d_plus"]),
                QDivisor.from_pairs(body["d_minus"]),
            )
        )
    raise InvalidSpecFile(f"unknown spec kind {kind!r}")
