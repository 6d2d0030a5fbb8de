"""Homogeneous locally nilpotent derivations: existence, construction,
symbolic evaluation, and the brute-force stabilization oracle.

A horizontal derivation of degree e on A_0[D+, D-] is stored by its toric
data (d, e', k) and acts on monomials in closed form:

    del(f(t) u^m) = (d*t*f'(t) - e'*m*f(t)) * t^k * u^(m+e),   e*e' - 1 = k*d.

Negative degrees are handled exclusively through the reversed grading, and
fiber-type derivations act as del(f u^n) = n*g*f*u^(n-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .divisor import DivisorPair, QDivisor, denom_index, normalize_pair
from .dpdring import (
    GradedElement,
    Hyperbolic,
    Parabolic,
    SurfaceSpec,
    contains,
    fractional_plus_point,
    graded_generator,
)
from .errors import (
    CapExceeded,
    FractionalPlusSpread,
    InadmissibleDegree,
    NotSmallGroup,
)
from .exactmath import (
    Poly,
    Rat,
    RatFunc,
    RatLike,
    format_rat,
    mod_inverse,
    ratfunc_monomial_power,
)


@dataclass(frozen=True)
class HorizontalLnd:
    """Degree sign*e derivation with monomial action as in the module docstring.

    e is the magnitude of the degree and anchor the point the formula is
    centered at (the fractional support point of the relevant d_plus), so
    t is replaced by t - anchor throughout.  sign = -1 means the formula is
    read through the reversed grading u -> u^-1; twist records the integral
    divisor of the shift that renormalizes the reversed pair, i.e. the
    variable change between the two DPD embeddings.  Elements handed to
    apply() are always written in the normalized embedding of the original
    pair (d_plus coefficients in (-1, 0]).
    """

    e: int
    d: int
    e_prime: int
    k: int
    sign: int = 1
    scale: Rat = Rat(1)
    anchor: Rat = Rat(0)
    twist: tuple[tuple[Rat, int], ...] = ()

    @property
    def degree(self) -> int:
        return self.sign * self.e


@dataclass(frozen=True)
class FiberLnd:
    """del = g(t) d/du of degree -1; g generates the section module."""

    g: RatFunc

    degree = -1


@dataclass(frozen=True)
class EllipticToricLnd:
    """X^exp d/dY (axis "X") or Y^exp d/dX (axis "Y") on C[X,Y]^(Z_d).

    Elements are carried by GradedElement with t playing X and u playing Y.
    """

    d: int
    exponent: int
    axis: str

    def __post_init__(self):
        if self.axis not in ("X", "Y"):
            raise ValueError("axis must be 'X' or 'Y'")


Lnd = Union[HorizontalLnd, FiberLnd, EllipticToricLnd]


@dataclass(frozen=True)
class DegreeSet:
    """Admissible degrees {e : e >= e_min, e = residue (mod modulus)}.

    e_min = 0 exactly in the torus-line case, where e = 0 is admissible too.
    """

    residue: int
    modulus: int
    e_min: int
    empty: bool = False

    @classmethod
    def none(cls) -> DegreeSet:
        return cls(0, 1, 1, empty=True)

    def contains(self, e: int) -> bool:
        if self.empty or e < 0:
            return False
        if e == 0:
            return self.e_min == 0
        if e < max(self.e_min, 1):
            return False
        return e % self.modulus == self.residue % self.modulus

    def min_degree(self) -> Optional[int]:
        """Smallest admissible positive degree."""
        if self.empty:
            return None
        start = max(self.e_min, 1)
        return start + (self.residue - start) % self.modulus

    def __str__(self) -> str:
        if self.empty:
            return "none"
        base = f"e >= {max(self.e_min, 1)}"
        if self.modulus > 1:
            base += f", e = {self.residue % self.modulus} (mod {self.modulus})"
        if self.e_min == 0:
            base += ", and e = 0"
        return "{" + base + "}"


def reverse(pair: DivisorPair) -> DivisorPair:
    """Swap d_plus and d_minus (reverse the grading)."""
    return pair.reverse()


def positive_lnd_exists(pair: DivisorPair) -> bool:
    """True iff the fractional part of d_plus sits at one point or is zero."""
    try:
        fractional_plus_point(pair)
    except FractionalPlusSpread:
        return False
    return True


def anchor_pair(pair: DivisorPair) -> tuple[DivisorPair, Rat]:
    """Normalize and translate the fractional point of d_plus to 0.

    Returns the anchored pair and the applied translation (original point).
    Raises FractionalPlusSpread when no anchoring is possible.
    """
    q = normalize_pair(pair)
    point = fractional_plus_point(q)
    shift = point if point is not None else Rat(0)
    return q.translate(-shift), shift


def anchor_parabolic(d: QDivisor) -> tuple[QDivisor, Rat]:
    """Parabolic analogue: coefficients into (-1, 0], support point to 0."""
    q = d - d.ceil()
    support = q.support
    if len(support) > 1:
        raise FractionalPlusSpread(
            "fractional part of D is supported at "
            + ", ".join(format_rat(p) for p in support)
        )
    shift = support[0] if support else Rat(0)
    return q.translate(-shift), shift


def _plus_data(pair: DivisorPair) -> tuple[DivisorPair, int, int]:
    q, _ = anchor_pair(pair)
    d = denom_index(q.d_plus)
    e_prime = int(-d * q.d_plus(0))
    return q, d, e_prime


def admissible_degrees(pair: DivisorPair) -> DegreeSet:
    """Closed-form admissible positive degrees for the anchored pair.

    residue e0 solves e*e' = 1 (mod d); the lower bound comes from the
    pointwise sum: d*e >= -1/s(0) at the anchor and e >= -1/s(a) elsewhere.
    In the torus-line case (d = 1, sum = 0) the result also admits e = 0.
    """
    q, d, e_prime = _plus_data(pair)
    e0 = mod_inverse(e_prime, d)
    s = q.sum()
    bounds = []
    for a, value in s.terms:
        factor = d if a == 0 else 1
        target = -1 / (factor * value)
        bounds.append(-((-target.numerator) // target.denominator))
    if d == 1 and s.is_zero():
        e_min = 0
    else:
        e_min = max([1, *bounds])
    return DegreeSet(residue=e0, modulus=d, e_min=e_min)


def build_horizontal(pair: DivisorPair, e: int, scale: RatLike = 1) -> HorizontalLnd:
    """Construct the degree-e horizontal derivation, unique up to scale.

    Negative e goes through the reversed pair.  Raises InadmissibleDegree
    naming the violated condition: (i) the congruence e*e' = 1 (mod d),
    or (ii) the bound -1/(sum) at some degenerate point.
    """
    base = pair if e >= 0 else reverse(pair)
    degrees = admissible_degrees(base)
    mag = abs(e)
    if not degrees.contains(mag):
        d = degrees.modulus
        if mag == 0 or mag % d != degrees.residue % d:
            raise InadmissibleDegree(
                f"degree {e}: condition (i) fails, need |e| = {degrees.residue % d} "
                f"(mod {d})" + (" or the torus-line case for e = 0" if mag == 0 else "")
            )
        raise InadmissibleDegree(
            f"degree {e}: condition (ii) fails, need |e| >= {degrees.e_min}"
        )
    q = normalize_pair(pair)
    if e >= 0:
        working = q
        twist: tuple[tuple[Rat, int], ...] = ()
    else:
        flipped = reverse(q)
        ceil_div = flipped.d_plus.ceil()
        twist = tuple((p, int(c)) for p, c in ceil_div.terms)
        working = normalize_pair(flipped)
    point = fractional_plus_point(working)
    anchor = point if point is not None else Rat(0)
    d = denom_index(working.d_plus)
    e_prime = int(-d * working.d_plus(anchor))
    k = (mag * e_prime - 1) // d
    return HorizontalLnd(
        e=mag,
        d=d,
        e_prime=e_prime,
        k=k,
        sign=1 if e >= 0 else -1,
        scale=Rat(scale),
        anchor=anchor,
        twist=twist,
    )


_T = RatFunc(Poly.t())


def _twist_power(twist: tuple[tuple[Rat, int], ...], j: int) -> RatFunc:
    """phi^j where phi = prod (t - p)^(-c) over the twist divisor."""
    f = RatFunc.one()
    for p, c in twist:
        f = f * ratfunc_monomial_power(p, -c * j)
    return f


def apply(lnd: Lnd, x: GradedElement) -> GradedElement:
    """Linear extension of the monomial action over all graded terms.

    The result may leave the ring; stabilization is checked separately.
    """
    if isinstance(lnd, HorizontalLnd):
        shifted_t = _T - RatFunc(Poly((lnd.anchor,)))
        tk = ratfunc_monomial_power(lnd.anchor, lnd.k)
        out = []
        if lnd.sign > 0:
            for m, f in x.terms:
                r = shifted_t * f.derivative() * lnd.d - f * (lnd.e_prime * m)
                out.append((m + lnd.e, r * tk * lnd.scale))
            return GradedElement(out)
        for n, f in x.terms:
            m = -n
            g = f * _twist_power(lnd.twist, -m)
            r = shifted_t * g.derivative() * lnd.d - g * (lnd.e_prime * m)
            back = r * tk * _twist_power(lnd.twist, m + lnd.e)
            out.append((-(m + lnd.e), back * lnd.scale))
        return GradedElement(out)
    if isinstance(lnd, FiberLnd):
        return GradedElement((n - 1, f * lnd.g * n) for n, f in x.terms)
    if lnd.axis == "X":
        xw = RatFunc(Poly.monomial(lnd.exponent))
        return GradedElement((n - 1, f * xw * n) for n, f in x.terms)
    return GradedElement((n + lnd.exponent, f.derivative()) for n, f in x.terms)


def nilpotency_steps(
    lnd: Lnd, spec: SurfaceSpec, x: GradedElement, cap: int = 256
) -> int:
    """Minimal N <= cap with apply^N(x) = 0 (caller guarantees x in A).

    CapExceeded signals a bug or an inadmissible derivation; negative tests
    rely on it.
    """
    steps = 0
    while not x.is_zero():
        if steps >= cap:
            raise CapExceeded(f"no zero within {cap} applications")
        x = apply(lnd, x)
        steps += 1
    return steps


@dataclass(frozen=True)
class StabilizationReport:
    """Outcome of the brute-force extension check."""

    verdict: bool
    failures: tuple[tuple[Optional[int], str], ...] = ()

    def __str__(self) -> str:
        if self.verdict:
            return "stabilizes"
        lines = [f"degree {n}: {why}" if n is not None else why
                 for n, why in self.failures]
        return "does not stabilize: " + "; ".join(lines)


def stabilization_witness(
    pair: DivisorPair,
    e: int,
    window: int = 8,
    e_prime_override: Optional[int] = None,
) -> StabilizationReport:
    """Brute-force oracle for Lemma-style extension of the degree-e candidate.

    Builds the candidate derivation ignoring admissibility and applies it to
    the module generators of every degree |n| <= window plus the A_0
    generator t; the verdict is True iff every image stays in the ring.
    By A_0-linearity and the Leibniz rule these finitely many checks decide
    stabilization of the whole ring.  e_prime_override substitutes a
    (possibly wrong) e' to probe non-solutions of e*e' = 1 (mod d).
    """
    if e < 0:
        return stabilization_witness(reverse(pair), -e, window, e_prime_override)
    try:
        q, _ = anchor_pair(pair)
    except FractionalPlusSpread as exc:
        return StabilizationReport(False, ((None, str(exc)),))
    spec = Hyperbolic(q)
    d = denom_index(q.d_plus)
    e_prime = (
        e_prime_override if e_prime_override is not None else int(-d * q.d_plus(0))
    )
    candidates: list[tuple[int, RatFunc]] = [(0, _T)]
    for n in range(-window, window + 1):
        if n != 0:
            candidates.append((n, graded_generator(spec, n).coefficient(n)))
    failures = []
    for n, f in candidates:
        r = _T * f.derivative() * d - f * (e_prime * n)
        if r.is_zero():
            continue
        num = e * e_prime - 1
        if num % d != 0:
            failures.append(
                (n, f"condition (i): t-exponent (e*e'-1)/d = {num}/{d} is not integral")
            )
            continue
        image = GradedElement.monomial(n + e, r * ratfunc_monomial_power(0, num // d))
        if not contains(spec, image):
            failures.append((n, f"image of the degree-{n} generator leaves the ring"))
    return StabilizationReport(not failures, tuple(failures))


def kernel_generator(spec: SurfaceSpec, lnd: Lnd) -> GradedElement:
    """ker del = C[v] with v = (t - p)^(e') u^(d), the degree-d generator.

    Elements are written in the normalized embedding, matching apply().
    """
    if isinstance(lnd, HorizontalLnd) and lnd.sign < 0:
        raise ValueError("kernel_generator wants a positive-degree derivation; "
                         "call on the reversed pair")
    if isinstance(spec, Hyperbolic):
        q = normalize_pair(spec.pair)
        fractional_plus_point(q)  # reject spread fractional parts
        return graded_generator(Hyperbolic(q), denom_index(q.d_plus))
    if isinstance(spec, Parabolic):
        qd = spec.divisor - spec.divisor.ceil()
        if len(qd.support) > 1:
            raise FractionalPlusSpread(
                "fractional part of D is supported at several points"
            )
        return graded_generator(Parabolic(qd), denom_index(qd))
    raise ValueError("kernel_generator applies to parabolic/hyperbolic specs")


def fiber_lnd(d: QDivisor) -> FiberLnd:
    """The fiber-type derivation of degree -1: g = prod (t-p)^(ceil D(p)).

    Every parabolic DPD ring carries one; g may legitimately have poles,
    membership of images is the correctness criterion.
    """
    g = RatFunc.one()
    for p, c in d.terms:
        expo = -((-c.numerator) // c.denominator)
        g = g * ratfunc_monomial_power(p, expo)
    return FiberLnd(g)


def parabolic_horizontal(d: QDivisor) -> Optional[tuple[int, int]]:
    """Horizontal data (d, e0) of A_0[D], or None when {D} is spread.

    e0 is the residue of admissible degrees: e*e' = 1 (mod d) with
    e' read off the normalized fractional coefficient.
    """
    try:
        qd, _ = anchor_parabolic(d)
    except FractionalPlusSpread:
        return None
    dd = denom_index(qd)
    e_prime = int(-dd * qd(0))
    return dd, mod_inverse(e_prime, dd)


def build_horizontal_parabolic(d: QDivisor, e: int) -> HorizontalLnd:
    """Degree-e horizontal derivation on A_0[D] (same monomial action)."""
    data = parabolic_horizontal(d)
    if data is None:
        raise InadmissibleDegree(
            "fractional part of D is spread: no horizontal derivation exists"
        )
    dd, e0 = data
    if e < 0 or e % dd != e0 % dd or (e == 0 and dd != 1):
        raise InadmissibleDegree(
            f"degree {e}: need e >= 0 with e = {e0 % dd} (mod {dd})"
            + ("" if dd == 1 else " and e >= 1")
        )
    qd = d - d.ceil()
    support = qd.support
    anchor = support[0] if support else Rat(0)
    e_prime = int(-dd * qd(anchor))
    return HorizontalLnd(
        e=e, d=dd, e_prime=e_prime, k=(e * e_prime - 1) // dd, anchor=anchor
    )


def elliptic_lnd(d: int, e_prime: int) -> tuple[EllipticToricLnd, EllipticToricLnd]:
    """The two toric derivations of V_{d,e'}: X^(e') d/dY and Y^e d/dX.

    Here e solves e*e' = 1 (mod d) (e = 0 when e' = 0, which forces d = 1).
    """
    if d < 1:
        raise NotSmallGroup(f"group order must be positive, got {d}")
    if d > 1 and math.gcd(e_prime, d) != 1:
        raise NotSmallGroup(
            f"gcd({e_prime}, {d}) > 1: the cyclic action is not small"
        )
    e = mod_inverse(e_prime, d)
    return (
        EllipticToricLnd(d=d, exponent=e_prime, axis="X"),
        EllipticToricLnd(d=d, exponent=e, axis="Y"),
    )


def conjugate_kernel(p: Poly, e: int, alpha: RatLike) -> GradedElement:
    """Kernel generator u_alpha of the conjugated derivation on u v = P(t).

    u_alpha = P(t) u^-1 + sum_{j=1..deg P} P^(j)(t) alpha^j / j! * u^(j*e-1),
    i.e. u^-1 * P(t + alpha u^e) written out inside Frac(A_0)[u, u^-1].
    """
    a = Rat(alpha)
    terms: list[tuple[int, RatFunc]] = [(-1, RatFunc(p))]
    deriv, factorial = p, 1
    for j in range(1, p.degree + 1):
        deriv = deriv.derivative()
        factorial *= j
        terms.append((j * e - 1, RatFunc(deriv * (a**j / factorial))))
    return GradedElement(terms)


def taylor_shift(p: Poly, alpha: RatLike, e: int) -> GradedElement:
    """P(t + alpha u^e) expanded as a graded element."""
    a = Rat(alpha)
    terms: list[tuple[int, RatFunc]] = [(0, RatFunc(p))]
    deriv, factorial = p, 1
    for j in range(1, p.degree + 1):
        deriv = deriv.derivative()
        factorial *= j
        terms.append((j * e, RatFunc(deriv * (a**j / factorial))))
    return GradedElement(terms)


def describe(lnd: Lnd) -> str:
    """Human-readable rendering with the resolved integers substituted."""
    if isinstance(lnd, HorizontalLnd):
        var = "t" if lnd.anchor == 0 else f"(t-{format_rat(lnd.anchor)})"
        core = (
            f"{var}^{lnd.k} u^{lnd.e} "
            f"({lnd.d}*{var}*d/dt - {lnd.e_prime}*u*d/du)"
        )
        if lnd.scale != 1:
            core += f" * {format_rat(lnd.scale)}"
        if lnd.sign < 0:
            core += "  [in the reversed grading u -> u^-1]"
        return core
    if isinstance(lnd, FiberLnd):
        return f"({lnd.g}) d/du"
    if lnd.axis == "X":
        return f"X^{lnd.exponent} d/dY"
    return f"Y^{lnd.exponent} d/dX"
