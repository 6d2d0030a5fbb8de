"""Fiber and singularity structure, Makar-Limanov and Miyanishi-Masuda
invariants, SL2-pair and homogeneous-model recognition, and the aggregate
classification report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .divisor import (
    DivisorPair,
    QDivisor,
    affine_equivalent,
    denom_index,
    normalize_pair,
)
from .dpdring import (
    Elliptic,
    Hyperbolic,
    Parabolic,
    Presentation,
    SurfaceSpec,
    is_line_cross_torus,
    presentation,
    spec_to_obj,
)
from .errors import FractionalPlusSpread, NoPositiveLnd
from .exactmath import Rat, format_rat, rational_linear_factorization
from .lnd import (
    DegreeSet,
    admissible_degrees,
    anchor_parabolic,
    describe,
    elliptic_lnd,
    fiber_lnd,
    parabolic_horizontal,
    positive_lnd_exists,
    reverse,
)

ML_TRIVIAL = "trivial"
ML_POLYNOMIAL = "polynomial_ring"
ML_LAURENT = "laurent_ring"
ML_WHOLE = "whole_ring"


@dataclass(frozen=True)
class FiberData:
    """Fiber of the C*-fibration over a point a of the base line.

    D+(a) = -e_plus/m_plus and D-(a) = e_minus/m_minus in lowest terms with
    m_plus > 0 > m_minus; the point is degenerate (two orbit closures) when
    the sum is negative, and then delta = m_plus*e_minus - m_minus*e_plus >= 1
    is the determinant governing smoothness.  For non-degenerate points only
    the multiplicities are asserted.
    """

    point: Rat
    m_plus: int
    m_minus: int
    degenerate: bool
    e_plus: Optional[int] = None
    e_minus: Optional[int] = None
    delta: Optional[int] = None
    pi_star: Optional[tuple[int, int]] = None
    div_u: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class SingularityRecord:
    """Order and smoothness of the surface point over a degenerate fiber.

    order = delta, and the point is smooth iff order = 1.  paper_type is
    the quotient-singularity tuple (d_i, e_i) read from r_i/k = d_i/e_i' in
    lowest terms; it is only emitted in charts where the fractional part of
    d_plus vanishes at the point (chart_valid).
    """

    point: Rat
    order: int
    smooth: bool
    chart_valid: bool
    paper_type: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class MlResult:
    """Makar-Limanov invariant: C, C[v], C[v, v^-1], or the whole ring."""

    kind: str
    generator_degree: Optional[int] = None


@dataclass(frozen=True)
class Sl2Model:
    """One of the four reference pairs, with the Veronese cone degree."""

    model: str
    veronese_degree: Optional[int] = None


@dataclass(frozen=True)
class Recognition:
    """Homogeneous model: plane, line_cross_torus, quadric,
    conic_complement, or veronese_cone(degree)."""

    model: str
    degree: Optional[int] = None


@dataclass(frozen=True)
class LndSummary:
    exists_plus: bool
    exists_minus: bool
    degrees_plus: Optional[DegreeSet] = None
    degrees_minus: Optional[DegreeSet] = None
    fiber: Optional[str] = None
    elliptic_axes: Optional[tuple[str, str]] = None


@dataclass(frozen=True)
class ClassificationReport:
    spec: SurfaceSpec
    grading: str
    normalized_pair: Optional[DivisorPair]
    normalized_divisor: Optional[QDivisor]
    translation: Optional[Rat]
    d_plus_index: Optional[int]
    d_minus_index: Optional[int]
    lnd: LndSummary
    ml: MlResult
    mm: Optional[int]
    plane: bool
    presentation: Optional[Presentation]
    fibers: tuple[FiberData, ...]
    singularities: tuple[SingularityRecord, ...]
    ruling: Optional[tuple[tuple[Rat, int], ...]]
    sl2: Optional[Sl2Model]
    recognition: Optional[Recognition]
    toric: Optional[tuple[int, int]]


def _split_plus(x: Rat) -> tuple[int, int]:
    """x = -e/m in lowest terms with m > 0."""
    return -x.numerator, x.denominator


def _split_minus(y: Rat) -> tuple[int, int]:
    """y = e/m in lowest terms with m < 0."""
    return -y.numerator, -y.denominator


def fiber_structure(pair: DivisorPair, a: Rat) -> FiberData:
    """Multiplicity data of the fiber over a (expects a normalized pair)."""
    x, y = pair.d_plus(a), pair.d_minus(a)
    e_plus, m_plus = _split_plus(x)
    e_minus, m_minus = _split_minus(y)
    if x + y == 0:
        return FiberData(point=a, m_plus=m_plus, m_minus=m_minus, degenerate=False)
    delta = m_plus * e_minus - m_minus * e_plus
    assert delta >= 1
    return FiberData(
        point=a,
        m_plus=m_plus,
        m_minus=m_minus,
        degenerate=True,
        e_plus=e_plus,
        e_minus=e_minus,
        delta=delta,
        pi_star=(m_plus, -m_minus),
        div_u=(-e_plus, e_minus),
    )


def ruling_divisor(pair: DivisorPair) -> list[tuple[Rat, int]]:
    """div(v) of the affine ruling v: one entry per degenerate point.

    The multiplicity is d_plus_index * m_minus(a) * (D+(a) + D-(a)), a
    positive integer.
    """
    if not positive_lnd_exists(pair):
        raise NoPositiveLnd(
            "the fractional part of d_plus is spread: no affine ruling from "
            "a positive-degree derivation"
        )
    d_plus_idx = denom_index(pair.d_plus)
    out = []
    for a, s in pair.sum().terms:
        if s >= 0:
            continue
        m_minus = -pair.d_minus(a).denominator
        mult = d_plus_idx * m_minus * s
        assert mult.denominator == 1 and mult > 0
        out.append((a, int(mult)))
    return sorted(out)


def singular_points(pair: DivisorPair) -> list[SingularityRecord]:
    """One record per degenerate point of the normalized pair."""
    q = normalize_pair(pair)
    k = denom_index(q.d_minus)
    out = []
    for a, s in q.sum().terms:
        if s >= 0:
            continue
        data = fiber_structure(q, a)
        order = data.delta
        chart_valid = q.d_plus(a) == 0
        paper_type = None
        if chart_valid:
            r = -k * q.d_minus(a)
            assert r.denominator == 1 and r > 0
            r = int(r)
            g = math.gcd(r, k)
            d_i, e_i_prime = r // g, k // g
            paper_type = (d_i, e_i_prime % d_i)
        out.append(
            SingularityRecord(
                point=a,
                order=order,
                smooth=(order == 1),
                chart_valid=chart_valid,
                paper_type=paper_type,
            )
        )
    return sorted(out, key=lambda rec: rec.point)


def _concentrated(d: QDivisor) -> bool:
    return len(d.frac().support) <= 1


def ml_invariant(spec: SurfaceSpec) -> MlResult:
    """Makar-Limanov invariant from the divisor data.

    Elliptic specs are toric, hence trivial.  Parabolic: trivial iff the
    fractional part of D is concentrated; otherwise only fiber-type
    derivations exist and the common kernel is A_0 = C[t].  Hyperbolic:
    trivial iff both fractional parts are concentrated and the sum is
    nonzero; a zero sum gives the line-cross-torus ring C[z, v, v^-1] with
    invariant C[v, v^-1] (provided a derivation exists at all); one-sided
    existence leaves C[v] in the stated degree; no derivation leaves A.
    """
    if isinstance(spec, Elliptic):
        return MlResult(ML_TRIVIAL)
    if isinstance(spec, Parabolic):
        if _concentrated(spec.divisor):
            return MlResult(ML_TRIVIAL)
        return MlResult(ML_POLYNOMIAL, generator_degree=0)
    pair = spec.pair
    plus_ok = _concentrated(pair.d_plus)
    minus_ok = _concentrated(pair.d_minus)
    if pair.sum().is_zero():
        # Spread fractional parts kill every homogeneous derivation even
        # here, and with them every derivation at all.
        return MlResult(ML_LAURENT) if plus_ok else MlResult(ML_WHOLE)
    if plus_ok and minus_ok:
        return MlResult(ML_TRIVIAL)
    if plus_ok:
        return MlResult(ML_POLYNOMIAL, generator_degree=denom_index(pair.d_plus))
    if minus_ok:
        return MlResult(ML_POLYNOMIAL, generator_degree=-denom_index(pair.d_minus))
    return MlResult(ML_WHOLE)


def mm_invariant(spec: SurfaceSpec) -> Optional[int]:
    """Homogeneous Miyanishi-Masuda invariant; defined only for trivial ML.

    Parabolic toric: the denominator index d(A).  Elliptic (d, e'): d.
    Hyperbolic: -d_plus_index * d_minus_index * deg(D+ + D-), cross-checked
    against the defining polynomial both through the presentation degree
    and through the divisor identity div P = -k d+' d-' (D+ + D-) with
    k = gcd of the two indices.
    """
    if ml_invariant(spec).kind != ML_TRIVIAL:
        return None
    if isinstance(spec, Elliptic):
        return spec.d
    if isinstance(spec, Parabolic):
        return denom_index(spec.divisor)
    pair = spec.pair
    d_plus_idx = denom_index(pair.d_plus)
    d_minus_idx = denom_index(pair.d_minus)
    value = -d_plus_idx * d_minus_idx * pair.sum().degree
    assert value.denominator == 1 and value > 0
    value = int(value)

    g = math.gcd(d_plus_idx, d_minus_idx)
    div_p = pair.sum() * (-(d_plus_idx * d_minus_idx // g))
    assert div_p.is_integral() and div_p.is_effective()
    assert g * div_p.degree == value

    pres = presentation(pair)
    assert pres.P.degree == value
    return value


def _template(model: str, param: int) -> DivisorPair:
    if model == "quadric":
        return DivisorPair(
            QDivisor.zero(), QDivisor([(1, -1), (-1, -1)])
        )
    if model == "conic_complement":
        return DivisorPair(
            QDivisor.single(0, Rat(1, 2)),
            QDivisor([(0, Rat(-1, 2)), (1, -1)]),
        )
    if model == "veronese_even":
        # param = d' with cone degree 2d'
        return DivisorPair(
            QDivisor.single(0, Rat(-1, param)), QDivisor.single(0, Rat(-1, param))
        )
    # veronese_odd: param = e' with cone degree d = 2e' - 1
    d = 2 * param - 1
    return DivisorPair(
        QDivisor.single(0, Rat(param - 1, d)), QDivisor.single(0, Rat(-param, d))
    )


def recognize_sl2(pair: DivisorPair) -> Optional[Sl2Model]:
    """Match against the four reference pairs up to affine maps and shifts."""
    q = normalize_pair(pair)
    plus, minus = q.d_plus, q.d_minus
    candidates: list[tuple[Sl2Model, DivisorPair]] = []
    if plus.is_zero():
        terms = minus.terms
        if len(terms) == 2 and all(c == -1 for _, c in terms):
            candidates.append((Sl2Model("quadric"), _template("quadric", 0)))
        if len(terms) == 1 and terms[0][1] == -2:
            candidates.append(
                (Sl2Model("veronese_even", 2), _template("veronese_even", 1))
            )
        if len(terms) == 1 and terms[0][1] == -1:
            candidates.append(
                (Sl2Model("veronese_odd", 1), _template("veronese_odd", 1))
            )
    elif len(plus.terms) == 1:
        p0, c0 = plus.terms[0]
        d = c0.denominator
        e_prime = -c0.numerator
        if c0 == Rat(-1, 2) and len(minus.terms) == 2 and minus(p0) == Rat(1, 2):
            other = [(p, c) for p, c in minus.terms if p != p0]
            if other and other[0][1] == -1:
                candidates.append(
                    (Sl2Model("conic_complement"), _template("conic_complement", 0))
                )
        if e_prime == 1 and minus.terms == ((p0, c0),):
            candidates.append(
                (Sl2Model("veronese_even", 2 * d), _template("veronese_even", d))
            )
        if d == 2 * e_prime - 1 and minus.terms == ((p0, Rat(e_prime - 1, d)),):
            candidates.append(
                (Sl2Model("veronese_odd", d), _template("veronese_odd", e_prime))
            )
    for model, template in candidates:
        if affine_equivalent(pair, template) is not None:
            return model
    return None


def _parabolic_toric_type(d: QDivisor) -> Optional[tuple[int, int]]:
    try:
        qd, _ = anchor_parabolic(d)
    except FractionalPlusSpread:
        return None
    dd = denom_index(qd)
    return dd, int(-dd * qd(0))


def _hyperbolic_toric_type(pair: DivisorPair) -> Optional[tuple[int, int]]:
    """Cone normal form (d, e) of a one-point hyperbolic pair, else None.

    The graded ring of a pair supported at a single point is the semigroup
    algebra of the plane cone with rays (e', d) and (l, -k); bringing the
    first ray to (1, 0) by GL2(Z) and reducing mod the second coordinate
    yields V_{d,e}, reported with e canonicalized to min(e, e^-1 mod d).
    """
    q = normalize_pair(pair)
    support = set(q.d_plus.support) | set(q.d_minus.support)
    if len(support) > 1:
        return None
    if not support:
        return None  # A^1 x C*, not of the form V_{d,e}
    (p0,) = support
    q = q.translate(-p0)
    d = denom_index(q.d_plus)
    e_prime = int(-d * q.d_plus(0))
    k = denom_index(q.d_minus)
    l = int(-k * q.d_minus(0))
    r = k * e_prime + d * l
    if r == 0:
        return None  # unit of nonzero degree: A^1 x C*
    # Bezout row (x, y) with x*e' + y*d = 1; alpha is well-defined mod r.
    g, x, y = _xgcd(e_prime, d)
    assert g == 1
    alpha = x * l - y * k
    e = alpha % r
    if e != 0:
        inv = pow(e, -1, r) if math.gcd(e, r) == 1 else e
        e = min(e, inv)
    return r, e


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    return old_r, old_s, old_t


def recognize_homogeneous(spec: SurfaceSpec) -> Optional[Recognition]:
    """Gizatullin-Popov recognition: which homogeneous model, if any.

    Returns plane (mm = 1), line_cross_torus, quadric, conic_complement or
    veronese_cone(d); None means no algebraic group acts with a big open
    orbit.
    """
    mm = mm_invariant(spec)
    if mm == 1:
        return Recognition("plane")
    if isinstance(spec, Elliptic):
        if spec.e_prime == 1 and spec.d >= 2:
            return Recognition("veronese_cone", spec.d)
        return None
    if isinstance(spec, Parabolic):
        toric = _parabolic_toric_type(spec.divisor)
        if toric is not None:
            d, e_prime = toric
            if e_prime == 1 and d >= 2:
                return Recognition("veronese_cone", d)
        return None
    pair = spec.pair
    if is_line_cross_torus(pair) and positive_lnd_exists(pair):
        return Recognition("line_cross_torus")
    sl2 = recognize_sl2(pair)
    if sl2 is None:
        return None
    if sl2.model == "quadric":
        return Recognition("quadric")
    if sl2.model == "conic_complement":
        return Recognition("conic_complement")
    if sl2.veronese_degree is not None and sl2.veronese_degree >= 2:
        return Recognition("veronese_cone", sl2.veronese_degree)
    return None


def classify(spec: SurfaceSpec) -> ClassificationReport:
    """Populate the full report by delegating to the operations above."""
    ml = ml_invariant(spec)
    mm = mm_invariant(spec)
    recognition = recognize_homogeneous(spec)
    plane = mm == 1

    if isinstance(spec, Elliptic):
        dx, dy = elliptic_lnd(spec.d, spec.e_prime)
        return ClassificationReport(
            spec=spec,
            grading="elliptic",
            normalized_pair=None,
            normalized_divisor=None,
            translation=None,
            d_plus_index=spec.d,
            d_minus_index=None,
            lnd=LndSummary(
                exists_plus=True,
                exists_minus=True,
                elliptic_axes=(describe(dx), describe(dy)),
            ),
            ml=ml,
            mm=mm,
            plane=plane,
            presentation=None,
            fibers=(),
            singularities=(),
            ruling=None,
            sl2=None,
            recognition=recognition,
            toric=(spec.d, spec.e_prime),
        )

    if isinstance(spec, Parabolic):
        horizontal = parabolic_horizontal(spec.divisor)
        toric = _parabolic_toric_type(spec.divisor)
        translation = None
        if horizontal is not None:
            d, e0 = horizontal
            degrees_plus = DegreeSet(
                residue=e0, modulus=d, e_min=0 if d == 1 else 1
            )
            _, shift = anchor_parabolic(spec.divisor)
            translation = shift
        else:
            degrees_plus = DegreeSet.none()
        return ClassificationReport(
            spec=spec,
            grading="parabolic",
            normalized_pair=None,
            normalized_divisor=spec.divisor - spec.divisor.ceil(),
            translation=translation,
            d_plus_index=denom_index(spec.divisor),
            d_minus_index=None,
            lnd=LndSummary(
                exists_plus=horizontal is not None,
                exists_minus=True,
                degrees_plus=degrees_plus,
                fiber=describe(fiber_lnd(spec.divisor)),
            ),
            ml=ml,
            mm=mm,
            plane=plane,
            presentation=None,
            fibers=(),
            singularities=(),
            ruling=None,
            sl2=None,
            recognition=recognition,
            toric=toric,
        )

    pair = spec.pair
    exists_plus = positive_lnd_exists(pair)
    exists_minus = positive_lnd_exists(reverse(pair))
    norm = normalize_pair(pair)
    degrees_plus = admissible_degrees(pair) if exists_plus else DegreeSet.none()
    degrees_minus = (
        admissible_degrees(reverse(pair)) if exists_minus else DegreeSet.none()
    )
    pres = presentation(pair) if exists_plus else None
    translation = pres.translation if pres is not None else None
    points = sorted(set(norm.d_plus.support) | set(norm.d_minus.support))
    fibers = tuple(fiber_structure(norm, a) for a in points)
    sings = tuple(singular_points(norm))
    ruling = tuple(ruling_divisor(norm)) if exists_plus else None
    return ClassificationReport(
        spec=spec,
        grading="hyperbolic",
        normalized_pair=norm,
        normalized_divisor=None,
        translation=translation,
        d_plus_index=denom_index(pair.d_plus),
        d_minus_index=denom_index(pair.d_minus),
        lnd=LndSummary(
            exists_plus=exists_plus,
            exists_minus=exists_minus,
            degrees_plus=degrees_plus,
            degrees_minus=degrees_minus,
        ),
        ml=ml,
        mm=mm,
        plane=plane,
        presentation=pres,
        fibers=fibers,
        singularities=sings,
        ruling=ruling,
        sl2=recognize_sl2(pair),
        recognition=recognition,
        toric=_hyperbolic_toric_type(pair),
    )


def invariant_signature(report: ClassificationReport) -> tuple:
    """Everything in the report that shifts and translations must preserve.

    Point coordinates and root locations are positional labels, not
    isomorphism invariants, so they are left out.
    """
    pres = report.presentation
    if pres is None:
        pres_sig = None
    else:
        _, roots, _ = rational_linear_factorization(pres.P)
        pres_sig = (
            pres.k,
            pres.d,
            pres.e_prime,
            pres.P.degree,
            tuple(sorted(m for _, m in roots)),
            pres.zd_weights,
        )
    fibers_sig = tuple(
        sorted(
            (f.m_plus, f.m_minus, f.degenerate, f.e_plus, f.e_minus, f.delta)
            for f in report.fibers
        )
    )
    sings_sig = tuple(
        sorted(
            (s.order, s.smooth, s.chart_valid, s.paper_type)
            for s in report.singularities
        )
    )
    ruling_sig = (
        None if report.ruling is None else tuple(sorted(m for _, m in report.ruling))
    )
    return (
        report.grading,
        report.d_plus_index,
        report.d_minus_index,
        report.lnd.exists_plus,
        report.lnd.exists_minus,
        report.lnd.degrees_plus,
        report.lnd.degrees_minus,
        report.ml,
        report.mm,
        report.plane,
        pres_sig,
        fibers_sig,
        sings_sig,
        ruling_sig,
        report.sl2,
        report.recognition,
        report.toric,
    )


# -- machine-readable report ------------------------------------------------


def degrees_to_obj(ds: Optional[DegreeSet]) -> Optional[dict]:
    if ds is None:
        return None
    if ds.empty:
        return {"empty": True}
    return {
        "empty": False,
        "residue": ds.residue % ds.modulus,
        "modulus": ds.modulus,
        "e_min": ds.e_min,
        "min_positive_degree": ds.min_degree(),
        "zero_admissible": ds.e_min == 0,
    }


def report_to_obj(report: ClassificationReport) -> dict:
    """Stable machine-readable document (field names are a contract)."""
    pres = report.presentation
    return {
        "input": spec_to_obj(report.spec),
        "grading": report.grading,
        "normalized": (
            spec_to_obj(Hyperbolic(report.normalized_pair))
            if report.normalized_pair is not None
            else (
                spec_to_obj(Parabolic(report.normalized_divisor))
                if report.normalized_divisor is not None
                else None
            )
        ),
        "translation": (
            format_rat(report.translation) if report.translation is not None else None
        ),
        "d_plus_index": report.d_plus_index,
        "d_minus_index": report.d_minus_index,
        "lnd": {
            "exists_positive": report.lnd.exists_plus,
            "exists_negative": report.lnd.exists_minus,
            "degrees_positive": degrees_to_obj(report.lnd.degrees_plus),
            "degrees_negative": degrees_to_obj(report.lnd.degrees_minus),
            "fiber": report.lnd.fiber,
            "elliptic": (
                list(report.lnd.elliptic_axes) if report.lnd.elliptic_axes else None
            ),
        },
        "ml": report.ml.kind,
        "ml_generator_degree": report.ml.generator_degree,
        "mm": report.mm,
        "plane": report.plane,
        "presentation": None
        if pres is None
        else {
            "k": pres.k,
            "P": str(pres.P),
            "d": pres.d,
            "e_prime": pres.e_prime,
            "l": pres.l,
            "Q": str(pres.Q),
            "zd_weights": list(pres.zd_weights),
            "translation": format_rat(pres.translation),
            "relation": pres.relation_text(),
        },
        "fibers": [
            {
                "point": format_rat(f.point),
                "degenerate": f.degenerate,
                "m_plus": f.m_plus,
                "m_minus": f.m_minus,
                "e_plus": f.e_plus,
                "e_minus": f.e_minus,
                "delta": f.delta,
                "pi_star": list(f.pi_star) if f.pi_star else None,
                "div_u": list(f.div_u) if f.div_u else None,
            }
            for f in report.fibers
        ],
        "singularities": [
            {
                "point": format_rat(s.point),
                "order": s.order,
                "smooth": s.smooth,
                "chart_valid": s.chart_valid,
                "paper_type": list(s.paper_type) if s.paper_type else None,
            }
            for s in report.singularities
        ],
        "ruling": (
            None
            if report.ruling is None
            else [[format_rat(a), m] for a, m in report.ruling]
        ),
        "sl2": (
            None
            if report.sl2 is None
            else {"model": report.sl2.model, "degree": report.sl2.veronese_degree}
        ),
        "recognition": (
            None
            if report.recognition is None
            else {"model": report.recognition.model, "degree": report.recognition.degree}
        ),
        "toric": list(report.toric) if report.toric else None,
    }
