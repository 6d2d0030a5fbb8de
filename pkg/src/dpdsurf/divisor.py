"""Q-divisors on the affine line, divisor pairs, and their equivalences.

A divisor is a finite formal sum of rational points with rational
coefficients.  The pair (d_plus, d_minus) with d_plus + d_minus <= 0
pointwise is the master datum of a hyperbolic surface; the shift and
affine equivalences implemented here are the ones under which the
classification is invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidSpecFile, PositiveSum
from .exactmath import Rat, RatLike, format_rat, parse_rat

#: A point of the affine line, i.e. an exact rational coordinate.
Point = Rat


def _ceil(q: Rat) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Rat) -> int:
    return q.numerator // q.denominator


class QDivisor:
    """A finite formal sum sum_a c_a [a] with rational points and coefficients.

    Zero coefficients are never stored and the support is kept sorted by
    coordinate.  The degree (sum of coefficients) is always derived.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[RatLike, RatLike]] = ()):
        acc: dict[Rat, Rat] = {}
        for point, coeff in terms:
            p, c = Rat(point), Rat(coeff)
            acc[p] = acc.get(p, Rat(0)) + c
        self._terms = tuple(
            (p, c) for p, c in sorted(acc.items()) if c != 0
        )

    @classmethod
    def zero(cls) -> QDivisor:
        return cls()

    @classmethod
    def single(cls, point: RatLike, coeff: RatLike) -> QDivisor:
        return cls([(point, coeff)])

    @property
    def terms(self) -> tuple[tuple[Rat, Rat], ...]:
        return self._terms

    @property
    def support(self) -> tuple[Rat, ...]:
        return tuple(p for p, _ in self._terms)

    def coefficient(self, point: RatLike) -> Rat:
        p = Rat(point)
        for q, c in self._terms:
            if q == p:
                return c
        return Rat(0)

    __call__ = coefficient

    @property
    def degree(self) -> Rat:
        return sum((c for _, c in self._terms), Rat(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self._terms)

    def is_effective(self) -> bool:
        return all(c > 0 for _, c in self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QDivisor):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: QDivisor) -> QDivisor:
        return QDivisor(self._terms + other._terms)

    def __sub__(self, other: QDivisor) -> QDivisor:
        return self + (-other)

    def __neg__(self) -> QDivisor:
        return QDivisor((p, -c) for p, c in self._terms)

    def __mul__(self, scalar: RatLike) -> QDivisor:
        return QDivisor((p, c * scalar) for p, c in self._terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar: RatLike) -> QDivisor:
        return self * (Rat(1) / Rat(scalar))

    def ceil(self) -> QDivisor:
        return QDivisor((p, _ceil(c)) for p, c in self._terms)

    def floor(self) -> QDivisor:
        return QDivisor((p, _floor(c)) for p, c in self._terms)

    def frac(self) -> QDivisor:
        """Fractional part: coefficients in [0, 1)."""
        return self - self.floor()

    def translate(self, offset: RatLike) -> QDivisor:
        return QDivisor((p + offset, c) for p, c in self._terms)

    def apply_map(self, g: AffineMap) -> QDivisor:
        return QDivisor((g(p), c) for p, c in self._terms)

    def to_pairs(self) -> list[list[str]]:
        """Serialize as [[point, coefficient], ...] string pairs."""
        return [[format_rat(p), format_rat(c)] for p, c in self._terms]

    @classmethod
    def from_pairs(cls, pairs: object) -> QDivisor:
        if not isinstance(pairs, list):
            raise InvalidSpecFile("divisor must be an array of [point, coeff] pairs")
        terms = []
        for entry in pairs:
            if (
                not isinstance(entry, (list, tuple))
                or len(entry) != 2
                or not all(isinstance(x, str) for x in entry)
            ):
                raise InvalidSpecFile(f"bad divisor entry {entry!r}")
            terms.append((parse_rat(entry[0]), parse_rat(entry[1])))
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for p, c in self._terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = f"[{format_rat(p)}]" if mag == 1 else f"{format_rat(mag)}*[{format_rat(p)}]"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"QDivisor({self})"


def denom_index(d: QDivisor) -> int:
    """Least d >= 1 making d*D integral (lcm of coefficient denominators)."""
    if d.is_zero():
        return 1
    return math.lcm(*(c.denominator for _, c in d.terms))


def floor_frac(d: QDivisor) -> tuple[QDivisor, QDivisor]:
    """Split D = floor(D) + {D} with fractional coefficients in [0, 1)."""
    return d.floor(), d.frac()


@dataclass(frozen=True)
class AffineMap:
    """a |-> scale*a + offset with scale != 0."""

    scale: Rat
    offset: Rat

    def __post_init__(self):
        object.__setattr__(self, "scale", Rat(self.scale))
        object.__setattr__(self, "offset", Rat(self.offset))
        if self.scale == 0:
            raise ValueError("affine map must have nonzero scale")

    @classmethod
    def identity(cls) -> AffineMap:
        return cls(Rat(1), Rat(0))

    def __call__(self, a: RatLike) -> Rat:
        return self.scale * a + self.offset

    def inverse(self) -> AffineMap:
        return AffineMap(1 / self.scale, -self.offset / self.scale)

    def __str__(self) -> str:
        return f"a -> {format_rat(self.scale)}*a + {format_rat(self.offset)}"


class DivisorPair:
    """The pair (d_plus, d_minus) with d_plus + d_minus <= 0 pointwise."""

    __slots__ = ("d_plus", "d_minus")

    def __init__(self, d_plus: QDivisor, d_minus: QDivisor):
        for p in set(d_plus.support) | set(d_minus.support):
            if d_plus(p) + d_minus(p) > 0:
                raise PositiveSum(
                    f"d_plus + d_minus = {format_rat(d_plus(p) + d_minus(p))} > 0 "
                    f"at point {format_rat(p)}"
                )
        self.d_plus = d_plus
        self.d_minus = d_minus

    def sum(self) -> QDivisor:
        return self.d_plus + self.d_minus

    def reverse(self) -> DivisorPair:
        return DivisorPair(self.d_minus, self.d_plus)

    def translate(self, offset: RatLike) -> DivisorPair:
        return DivisorPair(
            self.d_plus.translate(offset), self.d_minus.translate(offset)
        )

    def apply_map(self, g: AffineMap) -> DivisorPair:
        return DivisorPair(self.d_plus.apply_map(g), self.d_minus.apply_map(g))

    def shift(self, integral: QDivisor) -> DivisorPair:
        """(d_plus + E, d_minus - E) for an integral divisor E."""
        if not integral.is_integral():
            raise ValueError("shift divisor must be integral")
        return DivisorPair(self.d_plus + integral, self.d_minus - integral)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DivisorPair):
            return self.d_plus == other.d_plus and self.d_minus == other.d_minus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.d_plus, self.d_minus))

    def __str__(self) -> str:
        return f"(D+ = {self.d_plus}, D- = {self.d_minus})"

    def __repr__(self) -> str:
        return f"DivisorPair{self}"


def normalize_pair(pair: DivisorPair) -> DivisorPair:
    """Shift so every coefficient of d_plus lands in (-1, 0].

    The shift is by ceil(d_plus), so the normalized d_plus coefficient at
    the single fractional point reads off -e'/d directly.  The pointwise
    sum is untouched and the operation is idempotent.
    """
    e = pair.d_plus.ceil()
    return DivisorPair(pair.d_plus - e, pair.d_minus + e)


def shift_equivalent(p1: DivisorPair, p2: DivisorPair) -> bool:
    """True when p1 and p2 agree up to an integral shift."""
    return normalize_pair(p1) == normalize_pair(p2)


def _labeled_support(pair: DivisorPair) -> dict[Rat, tuple[Rat, Rat]]:
    points = set(pair.d_plus.support) | set(pair.d_minus.support)
    return {p: (pair.d_plus(p), pair.d_minus(p)) for p in points}


def affine_equivalent(p1: DivisorPair, p2: DivisorPair) -> Optional[AffineMap]:
    """Search for an affine map g with g.p1 shift-equivalent to p2.

    Candidates are enumerated from matchings of the labeled supports of the
    normalized pairs (labels are the coefficient pairs); supports in scope
    hold a handful of points, so the quadratic scan is negligible.
    """
    n1, n2 = normalize_pair(p1), normalize_pair(p2)
    s1, s2 = _labeled_support(n1), _labeled_support(n2)
    if sorted(s1.values()) != sorted(s2.values()):
        return None
    if not s1:
        return AffineMap.identity()
    pts1 = sorted(s1)
    if len(pts1) == 1:
        (a1,) = pts1
        for a2 in s2:
            if s2[a2] == s1[a1]:
                g = AffineMap(Rat(1), a2 - a1)
                if shift_equivalent(p1.apply_map(g), p2):
                    return g
        return None
    x1, y1 = pts1[0], pts1[1]
    for x2 in s2:
        if s2[x2] != s1[x1]:
            continue
        for y2 in s2:
            if y2 == x2 or s2[y2] != s1[y1]:
                continue
            scale = (x2 - y2) / (x1 - y1)
            g = AffineMap(scale, x2 - scale * x1)
            if shift_equivalent(p1.apply_map(g), p2):
                return g
    return None
