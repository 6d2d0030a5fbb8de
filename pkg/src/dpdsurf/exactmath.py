"""Exact arithmetic: rationals, univariate polynomials over Q, reduced
rational functions, and the two number-theoretic helpers used by the
classification (modular inverse and rational linear factorization).

All values are immutable and all operations are pure; nothing here ever
touches floating point.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import NotCoprime, ParseError, ZeroPolynomial

#: Exact rational number.  ``fractions.Fraction`` already enforces every
#: invariant we need: reduced form, positive denominator, 0 stored as 0/1,
#: arbitrary-precision integer parts.
Rat = Fraction

RatLike = Union[Rat, int]

_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rat(text: str) -> Rat:
    """Parse ``"n"`` or ``"n/m"`` (optional leading minus, no whitespace)."""
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError(f"invalid rational literal {text!r}", 0)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", 0)
    return Rat(num, den)


def format_rat(q: RatLike) -> str:
    """Render a rational as ``"n"`` or ``"n/m"``."""
    q = Rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def mod_inverse(e: int, d: int) -> int:
    """Return e' with 0 <= e' < d and e*e' == 1 (mod d); 0 when d == 1.

    Raises :class:`NotCoprime` when gcd(e, d) > 1 and d > 1.
    """
    if d < 1:
        raise ValueError(f"modulus must be positive, got {d}")
    if d == 1:
        return 0
    try:
        return pow(e, -1, d)
    except ValueError:
        raise NotCoprime(f"gcd({e}, {d}) = {math.gcd(e, d)} > 1") from None


class Poly:
    """A univariate polynomial over Q in the variable t.

    Coefficients are stored densely, indexed by exponent, with trailing
    zeros never kept; the zero polynomial is the empty sequence.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        c = [Rat(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def zero(cls) -> Poly:
        return cls()

    @classmethod
    def one(cls) -> Poly:
        return cls((1,))

    @classmethod
    def t(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, exponent: int, coeff: RatLike = 1) -> Poly:
        if exponent < 0:
            raise ValueError("polynomial exponents are nonnegative")
        return cls((0,) * exponent + (coeff,))

    @classmethod
    def from_roots(cls, roots: Iterable[RatLike], leading: RatLike = 1) -> Poly:
        p = cls((leading,))
        for r in roots:
            p = p * cls((-Rat(r), 1))
        return p

    @property
    def coeffs(self) -> Sequence[Rat]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self._c) - 1

    @property
    def leading(self) -> Rat:
        if not self._c:
            return Rat(0)
        return self._c[-1]

    def is_zero(self) -> bool:
        return not self._c

    def is_unitary(self) -> bool:
        """True when the leading coefficient is 1 (monic)."""
        return bool(self._c) and self._c[-1] == 1

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def __getitem__(self, exponent: int) -> Rat:
        if 0 <= exponent < len(self._c):
            return self._c[exponent]
        return Rat(0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly((other,))._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __neg__(self) -> Poly:
        return Poly(-x for x in self._c)

    def __add__(self, other: Poly | RatLike) -> Poly:
        other = _as_poly(other)
        n = max(len(self._c), len(other._c))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other: Poly | RatLike) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Poly | RatLike) -> Poly:
        return _as_poly(other) + (-self)

    def __mul__(self, other: Poly | RatLike) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly(x * other for x in self._c)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Rat(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        d, lc = other.degree, other.leading
        if self.degree < d:
            return Poly(), self
        q = [Rat(0)] * (self.degree - d + 1)
        rem = list(self._c)
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + d]
            if c == 0:
                continue
            c = c / lc
            q[k] = c
            for i in range(d):
                if other._c[i]:
                    rem[k + i] -= c * other._c[i]
        return Poly(q), Poly(rem[:d])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, x: RatLike) -> Rat:
        acc = Rat(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self._c) if i > 0)

    def monic(self) -> Poly:
        if self.is_zero():
            raise ZeroPolynomial("no monic form of the zero polynomial")
        return self * (1 / self.leading)

    def compose(self, inner: Poly) -> Poly:
        """Evaluate self at another polynomial (e.g. Q(s^d))."""
        acc = Poly()
        for c in reversed(self._c):
            acc = acc * inner + Poly((c,))
        return acc

    def multiplicity_at(self, a: RatLike) -> int:
        """Order of vanishing at the rational point a (synthetic division)."""
        if self.is_zero():
            raise ZeroPolynomial("order undefined for the zero polynomial")
        a = Rat(a)
        mult = 0
        cur = list(self._c)
        while len(cur) > 1:
            quot = [Rat(0)] * (len(cur) - 1)
            acc = cur[-1]
            for i in range(len(cur) - 2, -1, -1):
                quot[i] = acc
                acc = cur[i] + a * acc
            if acc != 0:
                return mult
            mult += 1
            cur = quot
        return mult

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = format_rat(mag)
            else:
                tp = "t" if i == 1 else f"t^{i}"
                body = tp if mag == 1 else f"{format_rat(mag)}*{tp}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self) -> str:
        return f"Poly({self})"


def _as_poly(x: Poly | RatLike) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly((x,))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def _cancel(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Strip common factors: rational roots of den first, then a gcd pass
    on the (usually tiny) rootless remainder.  Avoids full Euclid on the
    large linear-power denominators the graded generators produce."""
    leading = den.leading
    _, droots, drem = rational_linear_factorization(den)
    new_den = Poly((leading,))
    for a, m in droots:
        k = min(m, num.multiplicity_at(a))
        if k:
            num = num // Poly((-a, 1)) ** k
        if m - k:
            new_den = new_den * Poly((-a, 1)) ** (m - k)
    if drem.degree >= 1:
        g = poly_gcd(num, drem)
        if g.degree >= 1:
            num = num // g
            drem = drem // g
        new_den = new_den * drem
    return num, new_den


def _prime_factors(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, m in _prime_factors(n).items():
        divs = [d * p**i for d in divs for i in range(m + 1)]
    return sorted(divs)


def rational_linear_factorization(
    p: Poly,
) -> tuple[Rat, list[tuple[Rat, int]], Poly]:
    """Split off every rational linear factor of p.

    Returns ``(leading, roots, remainder)`` with
    ``p = leading * prod (t - a_i)^{r_i} * remainder``, the remainder monic
    with no rational roots, and roots sorted by their coordinate.  Uses the
    rational-root theorem on the primitive integer form; no numerics.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    leading = p.leading
    work = p.monic()
    roots: dict[Rat, int] = {}

    # Roots at 0 come straight off the low-order coefficients.
    low = 0
    while low <= work.degree and work[low] == 0:
        low += 1
    if low > 0:
        roots[Rat(0)] = low
        work = Poly(work.coeffs[low:])

    while work.degree >= 1:
        den_lcm = math.lcm(*(c.denominator for c in work.coeffs))
        ints = [int(c * den_lcm) for c in work.coeffs]
        content = math.gcd(*ints)
        if content > 1:
            ints = [c // content for c in ints]
        n = len(ints) - 1
        at_one = sum(ints)
        at_minus_one = sum(c if i % 2 == 0 else -c for i, c in enumerate(ints))
        found = None
        for q in _divisors(ints[-1]):
            if found is not None:
                break
            q_pows = [q**j for j in range(n + 1)]
            for p in _divisors(ints[0]):
                if math.gcd(p, q) != 1:
                    continue
                for pp in (p, -p):
                    # classical filters: (p - q) | P(1), (p + q) | P(-1)
                    if at_one != 0 and pp != q and at_one % (pp - q) != 0:
                        continue
                    if at_minus_one != 0 and pp != -q and at_minus_one % (pp + q) != 0:
                        continue
                    value = sum(
                        ints[i] * pp**i * q_pows[n - i] for i in range(n + 1)
                    )
                    if value == 0:
                        found = Rat(pp, q)
                        break
                if found is not None:
                    break
        if found is None:
            break
        lin = Poly((-found, 1))
        mult = 0
        while work.degree >= 1 and work(found) == 0:
            work = work // lin
            mult += 1
        roots[found] = roots.get(found, 0) + mult

    ordered = sorted(roots.items(), key=lambda kv: kv[0])
    return leading, ordered, work


class RatFunc:
    """A reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | RatLike, den: Poly | RatLike = 1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.one()
            return
        if den.degree >= 1:
            num, den = _cancel(num, den)
        lc = den.leading
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def _reduced(cls, num: Poly, den: Poly) -> RatFunc:
        """Trusted constructor: num, den already coprime with den monic."""
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def zero(cls) -> RatFunc:
        return cls(Poly())

    @classmethod
    def one(cls) -> RatFunc:
        return cls(Poly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction)):
            return self == RatFunc(_as_poly(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __add__(self, other: RatFunc | Poly | RatLike) -> RatFunc:
        other = _as_ratfunc(other)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other: RatFunc | Poly | RatLike) -> RatFunc:
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other: RatFunc | Poly | RatLike) -> RatFunc:
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other: RatFunc | Poly | RatLike) -> RatFunc:
        other = _as_ratfunc(other)
        if self.is_zero() or other.is_zero():
            return RatFunc.zero()
        # cross-cancel first: each operand is reduced, so the cross-reduced
        # products are coprime and no further gcd is needed
        n1, d2 = (self.num, other.den)
        if d2.degree >= 1:
            n1, d2 = _cancel(n1, d2)
        n2, d1 = (other.num, self.den)
        if d1.degree >= 1:
            n2, d1 = _cancel(n2, d1)
        num, den = n1 * n2, d1 * d2
        lc = den.leading
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RatFunc._reduced(num, den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFunc | Poly | RatLike) -> RatFunc:
        other = _as_ratfunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RatFunc(other.den, other.num)

    def __rtruediv__(self, other: RatFunc | Poly | RatLike) -> RatFunc:
        return _as_ratfunc(other) / self

    def derivative(self) -> RatFunc:
        if self.den.degree == 0:
            return RatFunc._reduced(self.num.derivative(), Poly.one())
        # (n/d)' = (n'd - n d')/d^2; the repeated part g = gcd(d, d') cancels
        # exactly once and the result is already reduced
        g = poly_gcd(self.den, self.den.derivative())
        big = self.num.derivative() * self.den - self.num * self.den.derivative()
        if big.is_zero():
            return RatFunc.zero()
        num = big // g
        den = (self.den // g) * self.den
        return RatFunc._reduced(num, den)

    def order_at(self, a: RatLike) -> int:
        """ord_a: zero multiplicity minus pole multiplicity at a rational point."""
        if self.is_zero():
            raise ZeroPolynomial("order undefined for the zero function")
        up = self.num.multiplicity_at(a)
        down = self.den.multiplicity_at(a)
        return up - down

    def __call__(self, x: RatLike) -> Rat:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {format_rat(Rat(x))}")
        return self.num(x) / d

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _as_ratfunc(x: RatFunc | Poly | RatLike) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(_as_poly(x))


def ratfunc_monomial_power(base_root: RatLike, exponent: int) -> RatFunc:
    """(t - a)^e as a rational function, allowing negative e."""
    lin = Poly((-Rat(base_root), 1))
    if exponent >= 0:
        return RatFunc._reduced(lin**exponent, Poly.one())
    return RatFunc._reduced(Poly.one(), lin ** (-exponent))
