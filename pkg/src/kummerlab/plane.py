"""Exact geometry of plane curves over Q(w) with one parameter.

Everything here happens in the projective plane over the Eisenstein
field Q(w), extended by a single parameter ``lam``.  The cast of
characters: a sextic with nine ordinary cusps, the tangent lines at
those cusps, the twelve conics through six cusps each, and quartics
with one triple point.  The operations certify incidence statements,
multiplicities, dimensions of linear systems, and full intersection
censuses of line/conic arrangements, all by exact computation; there
is no floating point and no tolerance anywhere.

Conventions:

* Points normalize their first nonzero coordinate to 1, so equality
  and hashing are structural.  A point is either *symbolic* (its
  coordinates are rational functions of lam) or *specialized* (plain
  Q(w) numbers).
* Curves are polynomials in x, y, z whose coefficients are polynomials
  in lam.  They are normalized to carry no common lam-factor and to
  have scalar 1 on the leading term, ordered graded-lex on (x, y, z)
  with ties broken by lam-degree.  Thus proportional inputs construct
  equal objects.
* The parameter must stay away from lam = 0 and lam^3 = 1, where the
  cusp configuration degenerates; specialized censuses default to the
  sample values 2, 3, 5.
* Intersection points of two conics are required to be Q(w)-rational
  and any point outside Q(w) raises PlaneError.  Line-conic censuses
  are allowed to meet in a conjugate pair of points from a quadratic
  extension; such points are counted exactly (via an irreducibility
  certificate for the restriction) without ever naming coordinates.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .fixtures import FixtureError, expect_keys, load_json
from .linalg import det_field, nullspace, rank
from .linalg import poly_nullspace, poly_rank
from .scalars import (
    EIS_ONE,
    EIS_ZERO,
    EisensteinScalar,
    FunctionElement,
    MultiPoly,
    det_poly,
    eisenstein_sqrt,
    gens,
    poly_exact_div,
    poly_from_text,
    poly_gcd,
    resultant,
    specialize as scalar_specialize,
)

PLANE_VARS = ("x", "y", "z", "lam")
PARAM_VARS = ("lam",)
LOCAL_VARS = ("s", "t", "lam")
SAMPLE_LAMBDAS = (2, 3, 5)

_LAM_FE = FunctionElement(MultiPoly.var(PARAM_VARS, "lam"))
_LAM_LOCAL_FE = FunctionElement(MultiPoly.var(LOCAL_VARS, "lam"))


class PlaneError(Exception):
    """A geometric claim failed, or an operation left its certified range."""


class ConfigurationError(PlaneError):
    """An incidence structure is not the configuration it was claimed to be."""


def excluded_parameter(value):
    """True for the parameter values where the cusp configuration degenerates."""
    v = EisensteinScalar.of(value)
    return (not v) or v ** 3 == EIS_ONE


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------


class ProjPoint:
    """A projective plane point with exact coordinates.

    Coordinates are all EisensteinScalar (specialized) or all
    FunctionElement over ("lam",) (symbolic).  The first nonzero
    coordinate is scaled to 1.
    """

    __slots__ = ("coords", "symbolic")

    def __init__(self, coords):
        cs = list(coords)
        if len(cs) != 3:
            raise ValueError(f"a plane point needs 3 coordinates, got {len(cs)}")
        symbolic = any(isinstance(c, (MultiPoly, FunctionElement)) for c in cs)
        if symbolic:
            cs = [self._as_function(c) for c in cs]
        else:
            cs = [EisensteinScalar.of(c) for c in cs]
        pivot = next((c for c in cs if c), None)
        if pivot is None:
            raise ValueError("all three coordinates are zero")
        inv = pivot.inverse()
        self.coords = tuple(c * inv for c in cs)
        self.symbolic = symbolic

    @staticmethod
    def _as_function(c):
        if isinstance(c, FunctionElement):
            if c.num.vars != PARAM_VARS:
                raise ValueError(f"symbolic coordinates live over {PARAM_VARS}")
            return c
        if isinstance(c, MultiPoly):
            if c.vars != PARAM_VARS:
                raise ValueError(f"symbolic coordinates live over {PARAM_VARS}")
            return FunctionElement(c)
        return FunctionElement.const(PARAM_VARS, c)

    def specialize(self, value):
        if not self.symbolic:
            return self
        v = EisensteinScalar.of(value)
        if excluded_parameter(v):
            raise PlaneError(f"parameter value {v.text()} is excluded")
        return ProjPoint([scalar_specialize(c, {"lam": v}) for c in self.coords])

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.symbolic == other.symbolic and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def text(self):
        return "(" + " : ".join(c.text() for c in self.coords) + ")"

    __str__ = text

    def __repr__(self):
        return f"<ProjPoint {self.text()}>"


def _det3(rows):
    # 3x3 determinant by explicit expansion; works for any ring rows
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def collinear(p, q, r):
    """Exact test that three points lie on a common line."""
    return not _det3([p.coords, q.coords, r.coords])


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------


def _split_by_param(poly):
    """Split a poly whose last variable is lam into {front-exponent: lam-poly}."""
    buckets = {}
    for e, c in poly.terms.items():
        buckets.setdefault(e[:-1], {})[(e[-1],)] = c
    return {k: MultiPoly(PARAM_VARS, v) for k, v in buckets.items()}


def _join_with_param(variables, cmap):
    terms = {}
    for front, lampoly in cmap.items():
        for (k,), c in lampoly.terms.items():
            terms[front + (k,)] = c
    return MultiPoly(variables, terms)


def _front_key(item):
    front, lampoly = item
    return (sum(front), front, lampoly.degree())


def _normalize_front(poly):
    """Canonical scaling: strip common lam-content, then make the scalar on
    the leading term 1 (graded-lex on the front variables, lam-degree ties)."""
    if not poly:
        return poly
    cmap = _split_by_param(poly)
    content = None
    for lp in cmap.values():
        content = lp if content is None else poly_gcd(content, lp)
        if content.degree() == 0:
            content = None
            break
    if content is not None and content.degree() > 0:
        cmap = {k: poly_exact_div(lp, content) for k, lp in cmap.items()}
    top_front, top_poly = max(cmap.items(), key=_front_key)
    lc = top_poly.leading_coefficient()
    if lc != EIS_ONE:
        inv = lc.inverse()
        cmap = {k: lp * inv for k, lp in cmap.items()}
    return _join_with_param(poly.vars, cmap)


class PlaneCurve:
    """A plane projective curve: homogeneous in (x, y, z) over Q(w)[lam].

    The stored polynomial is canonically scaled (see _normalize_front),
    so two proportional defining polynomials construct equal curves.
    """

    __slots__ = ("poly", "degree")

    def __init__(self, poly):
        if not isinstance(poly, MultiPoly) or poly.vars != PLANE_VARS:
            raise ValueError(f"a plane curve needs a polynomial over {PLANE_VARS}")
        if not poly:
            raise ValueError("the zero polynomial does not define a curve")
        degs = poly.degrees_in(("x", "y", "z"))
        if len(degs) != 1:
            raise ValueError(f"not homogeneous in (x, y, z): degrees {sorted(degs)}")
        self.poly = _normalize_front(poly)
        self.degree = degs.pop()

    def is_specialized(self):
        return self.poly.degree_in("lam") == 0

    def specialize(self, value):
        v = EisensteinScalar.of(value)
        if excluded_parameter(v):
            raise PlaneError(f"parameter value {v.text()} is excluded")
        p = self.poly.specialize({"lam": v})
        if isinstance(p, EisensteinScalar) or not p:
            raise PlaneError(f"curve degenerates at lam = {v.text()}")
        return PlaneCurve(p.lift(PLANE_VARS))

    def value_at(self, point):
        return _value_at(self.poly, point)

    def contains(self, point):
        return not self.value_at(point)

    def text(self):
        return self.poly.text()

    def __eq__(self, other):
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    __str__ = text

    def __repr__(self):
        return f"<PlaneCurve deg {self.degree}: {self.text()}>"


def _value_at(poly, point):
    if point.symbolic:
        values = {
            "x": point.coords[0],
            "y": point.coords[1],
            "z": point.coords[2],
            "lam": _LAM_FE,
        }
        return poly.evaluate(values)
    if poly.degree_in("lam") > 0:
        # a parameter-free point on a parametrized curve: the value is a
        # polynomial in the parameter, and vanishing means vanishing
        # identically
        return poly.specialize(
            {
                "x": point.coords[0],
                "y": point.coords[1],
                "z": point.coords[2],
            }
        )
    values = {
        "x": point.coords[0],
        "y": point.coords[1],
        "z": point.coords[2],
        "lam": EIS_ZERO,
    }
    return poly.evaluate(values)


def incidence(point, curve):
    """Exact membership test of a point on a curve."""
    return curve.contains(point)


# ---------------------------------------------------------------------------
# multiplicity and tangent cones
# ---------------------------------------------------------------------------


def _derive(poly, alpha):
    out = poly
    for name, k in zip(("x", "y", "z"), alpha):
        for _ in range(k):
            out = out.derivative(name)
            if not out:
                return out
    return out


def _alphas(order):
    return [
        (i, j, order - i - j)
        for i in range(order, -1, -1)
        for j in range(order - i, -1, -1)
    ]


def multiplicity_at(curve, point):
    """Smallest m such that some order-m partial derivative is nonzero at
    the point; 0 means the point is not on the curve."""
    for m in range(curve.degree + 1):
        for alpha in _alphas(m):
            d = _derive(curve.poly, alpha)
            if d and _value_at(d, point):
                return m
    raise PlaneError("all partial derivatives vanish; the curve would be zero")


@dataclass(frozen=True)
class TangentCone:
    """Lowest-degree part of a curve in an affine chart centered at a point.

    ``form`` is a binary form in the local variables (s, t) with
    lam-polynomial coefficients, canonically scaled.  ``repeated_part``
    is the monic gcd of the two partial derivatives of the form: for a
    cone l^k * (squarefree) it equals l^(k-1) up to the same scaling,
    so a nontrivial value certifies a repeated linear factor.  ``chart``
    records which coordinate was pinned to 1 and which two positions
    became s and t.
    """

    form: MultiPoly
    multiplicity: int
    repeated_part: MultiPoly
    chart: tuple


def _local_expansion(curve, point):
    pivot = next(i for i, c in enumerate(point.coords) if c)
    others = [i for i in range(3) if i != pivot]
    chart = (pivot, tuple(others))
    names = ("x", "y", "z")
    if point.symbolic:
        s_fe = FunctionElement(MultiPoly.var(LOCAL_VARS, "s"))
        t_fe = FunctionElement(MultiPoly.var(LOCAL_VARS, "t"))
        lifted = [
            FunctionElement(c.num.lift(LOCAL_VARS), c.den.lift(LOCAL_VARS))
            for c in point.coords
        ]
        values = {names[i]: lifted[i] for i in range(3)}
        values[names[others[0]]] = values[names[others[0]]] + s_fe
        values[names[others[1]]] = values[names[others[1]]] + t_fe
        values["lam"] = _LAM_LOCAL_FE
        res = curve.poly.evaluate(values)
        if res.den.degrees_in(("s", "t")) != {0}:
            raise PlaneError("local expansion produced a non-polynomial object")
        return res.num, chart
    if not curve.is_specialized():
        raise PlaneError("specialize the curve before expanding at a specialized point")
    consts = [MultiPoly.const(LOCAL_VARS, c) for c in point.coords]
    values = {names[i]: consts[i] for i in range(3)}
    values[names[others[0]]] = values[names[others[0]]] + MultiPoly.var(LOCAL_VARS, "s")
    values[names[others[1]]] = values[names[others[1]]] + MultiPoly.var(LOCAL_VARS, "t")
    values["lam"] = MultiPoly.zero(LOCAL_VARS)
    return curve.poly.evaluate(values), chart


def tangent_cone(curve, point):
    """Tangent cone of the curve at a point of it, in a local chart.

    The chart pins the first nonzero coordinate of the point to 1 and
    lets the other two coordinate slots vary as s and t; the cone is the
    lowest (s, t)-degree part of the curve equation there.  Raises
    PlaneError when the point is not on the curve.
    """
    local, chart = _local_expansion(curve, point)
    if not local:
        raise PlaneError("the curve vanishes identically in the local chart")
    m = min(e[0] + e[1] for e in local.terms)
    if m == 0:
        raise PlaneError(f"point {point.text()} is not on the curve")
    form = MultiPoly(
        LOCAL_VARS, {e: c for e, c in local.terms.items() if e[0] + e[1] == m}
    )
    form = _normalize_front(form)
    fs = form.derivative("s")
    ft = form.derivative("t")
    g = poly_gcd(fs, ft)
    g = _normalize_front(g) if g else g
    return TangentCone(form=form, multiplicity=m, repeated_part=g, chart=chart)


def proportional(f, g):
    """Exact proportionality of two polynomials over the same variables."""
    if not f or not g:
        return not f and not g
    if f.vars != g.vars:
        raise ValueError(f"variable mismatch: {f.vars} vs {g.vars}")
    items = sorted(f.terms)
    if items != sorted(g.terms):
        return False
    e0 = items[0]
    a0, b0 = f.terms[e0], g.terms[e0]
    return all(f.terms[e] * b0 == g.terms[e] * a0 for e in items)


def linear_factor_power(form, factor):
    """Largest k with factor^k dividing form, plus the last exact quotient."""
    k = 0
    rest = form
    while True:
        try:
            rest = poly_exact_div(rest, factor)
        except ValueError:
            return k, rest
        k += 1


# ---------------------------------------------------------------------------
# linear systems of curves
# ---------------------------------------------------------------------------


def _degree_monomials(degree):
    exps = [
        (i, j, degree - i - j)
        for i in range(degree, -1, -1)
        for j in range(degree - i, -1, -1)
    ]
    exps.sort(key=lambda e: (sum(e), e), reverse=True)
    return exps


def _jet_rows(degree, conditions, value=None):
    """Rows of the jet matrix: order-(m-1) partials of each degree-d monomial
    evaluated at each conditioned point.  Symbolic when value is None,
    over Q(w) at lam = value otherwise."""
    exps = _degree_monomials(degree)
    monos = [
        MultiPoly(PLANE_VARS, {(i, j, k, 0): EIS_ONE}) for (i, j, k) in exps
    ]
    rows = []
    for point, mult in conditions:
        if mult < 1:
            raise ValueError("multiplicities in a linear system must be >= 1")
        pt = point if value is None else point.specialize(value)
        for alpha in _alphas(mult - 1):
            row = []
            for mono in monos:
                d = _derive(mono, alpha)
                row.append(_value_at(d, pt) if d else _zero_like(pt))
            rows.append(row)
    return exps, monos, rows


def _zero_like(point):
    if point.symbolic:
        return FunctionElement(MultiPoly.zero(PARAM_VARS))
    return EIS_ZERO


def _clear_denominators(row):
    den = MultiPoly.one(PARAM_VARS)
    for c in row:
        g = poly_gcd(den, c.den)
        den = poly_exact_div(den * c.den, g)
    return [c.num * poly_exact_div(den, c.den) for c in row]


_SYMBOLIC_COLUMN_LIMIT = 21


def linear_system(degree, conditions):
    """Basis of the curves of the given degree with prescribed multiplicities.

    conditions is a sequence of (point, multiplicity) pairs; a pair
    imposes the vanishing of every order-(multiplicity - 1) partial
    derivative at the point, which in characteristic zero pins the full
    jet.  Points must be symbolic; the answer is a list of PlaneCurve
    forming a basis over Q(w)(lam).  Refuses systems with more monomials
    than symbolic elimination comfortably certifies; use
    linear_system_dimension for those.
    """
    if degree < 1:
        raise PlaneError("curves have degree at least 1")
    exps, monos, rows = _jet_rows(degree, conditions)
    if len(exps) > _SYMBOLIC_COLUMN_LIMIT and rows:
        raise PlaneError(
            f"{len(exps)} columns is beyond the symbolic elimination budget; "
            "use linear_system_dimension"
        )
    if not rows:
        kernel = [
            [MultiPoly.one(PARAM_VARS) if i == j else MultiPoly.zero(PARAM_VARS)
             for j in range(len(exps))]
            for i in range(len(exps))
        ]
    else:
        cleared = [_clear_denominators(r) for r in rows]
        kernel = poly_nullspace(cleared)
    out = []
    for vec in kernel:
        poly = MultiPoly.zero(PLANE_VARS)
        for coeff, mono in zip(vec, monos):
            if coeff:
                poly = poly + coeff.lift(PLANE_VARS) * mono
        out.append(PlaneCurve(poly))
    return out


def linear_system_dimension_at(degree, conditions, value):
    """Dimension of the system after specializing the parameter."""
    exps, _, rows = _jet_rows(degree, conditions, value=value)
    if not rows:
        return len(exps)
    return len(exps) - rank(rows)


@dataclass(frozen=True)
class DimensionCertificate:
    dimension: int
    lower_bound_source: str
    specialized_dimensions: tuple


def linear_system_dimension(degree, conditions, values=SAMPLE_LAMBDAS, witnesses=()):
    """Certified dimension (over Q(w)(lam)) of a too-big-to-eliminate system.

    Upper bound: the generic dimension is at most the dimension at any
    specialized parameter value.  Lower bound: columns minus rows, or the
    rank of the coefficient vectors of explicitly verified member curves,
    whichever is larger.  Raises PlaneError when the bounds do not meet,
    rather than guessing.
    """
    exps = _degree_monomials(degree)
    nrows = sum((m + 1) * m // 2 for _, m in conditions)
    lower = len(exps) - nrows
    source = "column count minus row count"
    if witnesses:
        wrows = []
        for w in witnesses:
            if w.degree != degree:
                raise ValueError("witness degree does not match the system")
            for point, mult in conditions:
                if multiplicity_at(w, point) < mult:
                    raise PlaneError(
                        f"witness {w.text()} misses multiplicity {mult} "
                        f"at {point.text()}"
                    )
            cmap = _split_by_param(w.poly)
            wrows.append([cmap.get(e, MultiPoly.zero(PARAM_VARS)) for e in exps])
        wrank = poly_rank(wrows)
        if wrank > lower:
            lower = wrank
            source = f"rank of {len(witnesses)} verified member curves"
    dims = tuple(
        linear_system_dimension_at(degree, conditions, v) for v in values
    )
    upper = min(dims) if dims else len(exps)
    if lower != upper:
        raise PlaneError(
            f"dimension not certified: lower bound {lower}, "
            f"specialized dimensions {dims}"
        )
    return DimensionCertificate(
        dimension=upper, lower_bound_source=source, specialized_dimensions=dims
    )


# ---------------------------------------------------------------------------
# the standard cast: sextic, cubic through the nine cusps, tangent lines
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cuspidal_sextic():
    """The parameter family of sextics with nine ordinary cusps."""
    x, y, z, lam = gens(PLANE_VARS)
    poly = (
        (x ** 6 + y ** 6 + z ** 6)
        + 2 * (2 * lam ** 3 - 1) * (x ** 3 * y ** 3 + x ** 3 * z ** 3 + y ** 3 * z ** 3)
        - 6 * lam ** 2 * (x * y * z) * (x ** 3 + y ** 3 + z ** 3)
        - 3 * lam * (lam ** 3 - 4) * x ** 2 * y ** 2 * z ** 2
    )
    return PlaneCurve(poly)


@lru_cache(maxsize=None)
def nine_point_cubic():
    """The unique cubic through all nine cusps (lam-denominators cleared)."""
    x, y, z, lam = gens(PLANE_VARS)
    poly = lam * (x ** 3 + y ** 3 + z ** 3) - (lam ** 3 + 2) * (x * y * z)
    return PlaneCurve(poly)


def line_through(p, q):
    """The line spanned by two distinct points (same flavor on both)."""
    if p.symbolic != q.symbolic:
        raise ValueError("mixed symbolic/specialized points")
    (a1, a2, a3), (b1, b2, b3) = p.coords, q.coords
    n = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    if not any(n):
        raise ValueError("the two points coincide")
    if p.symbolic:
        den = MultiPoly.one(PARAM_VARS)
        for c in n:
            g = poly_gcd(den, c.den)
            den = poly_exact_div(den * c.den, g)
        coeffs = [c.num * poly_exact_div(den, c.den) for c in n]
        poly = MultiPoly.zero(PLANE_VARS)
        for c, name in zip(coeffs, ("x", "y", "z")):
            poly = poly + c.lift(PLANE_VARS) * MultiPoly.var(PLANE_VARS, name)
    else:
        poly = MultiPoly.zero(PLANE_VARS)
        for c, name in zip(n, ("x", "y", "z")):
            poly = poly + MultiPoly.var(PLANE_VARS, name) * c
    return PlaneCurve(poly)


def cusp_tangent_lines(cusps):
    """The tangent line at each cusp, built as the span of the cusp at two
    parameter values and certified symbolically.

    The locus a cusp sweeps as the parameter moves is a line; the line
    through the positions at lam = 2 and lam = 3 must therefore contain
    the symbolic cusp, which is checked, as is tangency (the cusp's
    tangent cone is a power of exactly this line).
    """
    lines = []
    sextic = cuspidal_sextic()
    for j, p in enumerate(cusps, start=1):
        line = line_through(p.specialize(2), p.specialize(3))
        if not line.contains(p):
            raise PlaneError(f"cusp {j} does not sweep a line")
        cone = tangent_cone(sextic, p)
        local_line, _ = _local_expansion(line, p)
        if not proportional(cone.repeated_part, _normalize_front(local_line)):
            raise PlaneError(f"line through cusp {j} is not the cuspidal tangent")
        lines.append(line)
    return tuple(lines)


# ---------------------------------------------------------------------------
# conic search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConicRecord:
    curve: PlaneCurve
    indices: frozenset


def _conic_quadratic_form(curve):
    cmap = _split_by_param(curve.poly)

    def c(e):
        return cmap.get(e, MultiPoly.zero(PARAM_VARS))

    a, b, cc = c((2, 0, 0)), c((1, 1, 0)), c((1, 0, 1))
    d, e, f = c((0, 2, 0)), c((0, 1, 1)), c((0, 0, 2))
    two = MultiPoly.const(PARAM_VARS, 2)
    return [
        [two * a, b, cc],
        [b, two * d, e],
        [cc, e, two * f],
    ]


def conic_is_smooth(curve):
    """Nonvanishing (as a lam-polynomial) of the symmetric determinant."""
    if curve.degree != 2:
        raise ValueError("smoothness test is for conics")
    return bool(det_poly(_conic_quadratic_form(curve)))


def find_conics(points, threshold=6):
    """All smooth conics through exactly ``threshold`` of the given points.

    Walks every size-``threshold`` subset, keeps those whose conic system
    is one-dimensional, and insists the resulting conic is smooth and
    contains exactly the chosen points.  Requires the input points to be
    in general position (no three collinear); raises PlaneError naming an
    offending triple otherwise.  Records come back sorted by the curve's
    canonical text.
    """
    points = list(points)
    for i, j, k in itertools.combinations(range(len(points)), 3):
        if collinear(points[i], points[j], points[k]):
            raise PlaneError(f"points {i + 1}, {j + 1}, {k + 1} are collinear")
    found = {}
    for subset in itertools.combinations(range(len(points)), threshold):
        basis = linear_system(2, [(points[i], 1) for i in subset])
        if len(basis) != 1:
            continue
        conic = basis[0]
        if not conic_is_smooth(conic):
            continue
        contained = frozenset(
            i + 1 for i, p in enumerate(points) if conic.contains(p)
        )
        if len(contained) != threshold:
            continue
        prev = found.get(conic)
        if prev is not None and prev != contained:
            raise PlaneError("one conic claims two different point sets")
        found[conic] = contained
    records = [ConicRecord(curve=c, indices=s) for c, s in found.items()]
    records.sort(key=lambda r: r.curve.text())
    return records


def conics_in_index_order(records):
    """The same records sorted by their index sets (lexicographically)."""
    return sorted(records, key=lambda r: tuple(sorted(r.indices)))


# ---------------------------------------------------------------------------
# intersection censuses
# ---------------------------------------------------------------------------


def _binary_quadratic_roots(A, B, C):
    """Projective roots of A*u^2 + B*u*v + C*v^2 over Q(w).

    Returns one of
      ("zero",)                      the form vanishes identically,
      ("points", [(u, v), (u, v)])   two distinct rational roots,
      ("double", (u, v))             one double root,
      ("conjugate",)                 irreducible: a conjugate pair of
                                     roots in a quadratic extension.
    """
    if not A and not B and not C:
        return ("zero",)
    if not A:
        if not B:
            return ("double", (EIS_ONE, EIS_ZERO))
        return ("points", [(EIS_ONE, EIS_ZERO), (-C, B)])
    disc = B * B - 4 * A * C
    if not disc:
        return ("double", (-B, 2 * A))
    s = eisenstein_sqrt(disc)
    if s is None:
        return ("conjugate",)
    return ("points", [(-B + s, 2 * A), (-B - s, 2 * A)])


def _line_coefficients(curve):
    t = curve.poly.terms
    return (
        t.get((1, 0, 0, 0), EIS_ZERO),
        t.get((0, 1, 0, 0), EIS_ZERO),
        t.get((0, 0, 1, 0), EIS_ZERO),
    )


def _line_span(curve):
    coeffs = _line_coefficients(curve)
    basis = nullspace([list(coeffs)], EIS_ONE)
    if len(basis) != 2:
        raise PlaneError("degenerate line coefficients")
    return basis


def _line_line_point(l1, l2):
    n1 = _line_coefficients(l1)
    n2 = _line_coefficients(l2)
    p = (
        n1[1] * n2[2] - n1[2] * n2[1],
        n1[2] * n2[0] - n1[0] * n2[2],
        n1[0] * n2[1] - n1[1] * n2[0],
    )
    if not any(p):
        raise PlaneError("two of the lines coincide")
    return ProjPoint(p)


def _restrict_to_line(curve, span):
    P, Q = span
    u = MultiPoly.var(("u", "v"), "u")
    v = MultiPoly.var(("u", "v"), "v")
    values = {
        "x": u * P[0] + v * Q[0],
        "y": u * P[1] + v * Q[1],
        "z": u * P[2] + v * Q[2],
        "lam": MultiPoly.zero(("u", "v")),
    }
    return curve.poly.evaluate(values)


def _line_conic_points(line, conic):
    span = _line_span(line)
    q = _restrict_to_line(conic, span)
    A = q.terms.get((2, 0), EIS_ZERO)
    B = q.terms.get((1, 1), EIS_ZERO)
    C = q.terms.get((0, 2), EIS_ZERO)
    kind = _binary_quadratic_roots(A, B, C)
    if kind[0] == "zero":
        raise PlaneError("a line lies inside one of the conics")
    if kind[0] == "double":
        raise PlaneError("a line is tangent to one of the conics")
    if kind[0] == "conjugate":
        return [], 2
    P, Q = span
    pts = []
    for (u0, v0) in kind[1]:
        coords = [u0 * P[i] + v0 * Q[i] for i in range(3)]
        pts.append((ProjPoint(coords), 1))
    return pts, 0


def _conic_pair_points(f, g, known):
    """All common points of two smooth conics, via a coordinate projection.

    Distinct common points are allowed to share a projection fiber; the
    fiber is then split exactly by a gcd computation.  Returns
    ``(points, residual)`` where ``points`` lists the Q(w)-rational
    common points with their (always 1) intersection multiplicities and
    ``residual`` counts common points in a quadratic extension.  Raises
    PlaneError on any tangency: a root of the eliminant carries the sum
    of the intersection multiplicities in its fiber, so transversality
    holds exactly when each fiber contributes as many distinct points as
    its eliminant multiplicity.
    """
    for name in ("z", "y", "x"):
        coords = [EIS_ZERO, EIS_ZERO, EIS_ZERO]
        coords["xyz".index(name)] = EIS_ONE
        center = ProjPoint(coords)
        if f.contains(center) and g.contains(center):
            continue
        return _conic_pair_via(f, g, name, known)
    raise PlaneError(
        "all three coordinate points lie on both conics "
        f"({f.text()} and {g.text()})"
    )


def _conic_pair_via(f, g, name, known):
    R = resultant(f.poly, g.poly, name)
    if not R:
        raise PlaneError("two of the conics share a component")
    if R.degree() != 4:
        raise PlaneError(
            f"eliminant of a conic pair has degree {R.degree()}, expected 4"
        )
    kept = [v for v in ("x", "y", "z") if v != name]
    kept_idx = ["xyz".index(k) for k in kept]
    elim_idx = "xyz".index(name)
    cands = [p for p in known if f.contains(p) and g.contains(p)]
    # group the known common points by projection fiber; two distinct
    # points may be collinear with the projection center
    groups = []
    for p in cands:
        a, b = p.coords[kept_idx[0]], p.coords[kept_idx[1]]
        for (ga, gb), members in groups:
            if a * gb == b * ga:
                members.append(p)
                break
        else:
            groups.append(((a, b), [p]))
    U = MultiPoly.var(PLANE_VARS, kept[0])
    V = MultiPoly.var(PLANE_VARS, kept[1])
    fibers = []
    for (a, b), members in groups:
        k, R = linear_factor_power(R, U * b - V * a)
        if k < len(members):
            raise PlaneError(
                "bookkeeping failure: a common point leaves no trace "
                "in the eliminant"
            )
        fibers.append(((a, b), k, members))
    residual = 0
    deg = R.degree()
    if deg > 2:
        raise PlaneError(
            f"{deg} unaccounted intersections of two conics; "
            "extend the seed points"
        )

    def rcoeff(i, j):
        e = [0, 0, 0, 0]
        e[kept_idx[0]] = i
        e[kept_idx[1]] = j
        return R.terms.get(tuple(e), EIS_ZERO)

    if deg == 1:
        fibers.append(((-rcoeff(0, 1), rcoeff(1, 0)), 1, []))
    elif deg == 2:
        kind = _binary_quadratic_roots(rcoeff(2, 0), rcoeff(1, 1), rcoeff(0, 2))
        if kind[0] == "conjugate":
            # two conjugate simple roots, one transverse common point in
            # each fiber, neither rational
            residual += 2
        elif kind[0] == "double":
            fibers.append((kind[1], 2, []))
        else:
            for root in kind[1]:
                fibers.append((root, 1, []))
    out = []
    for (a, b), k, members in fibers:
        pts, res = _fiber_points(f, g, name, kept, kept_idx, elim_idx, (a, b))
        if len(pts) + res != k:
            raise PlaneError(
                f"two conics are tangent: {f.text()} and {g.text()}"
            )
        residual += res
        for m in members:
            if m not in pts:
                raise PlaneError(
                    "a known common point is missing from its fiber"
                )
        out.extend((p, 1) for p in pts)
    if len(out) + residual != 4:
        raise PlaneError("two conics do not meet in 4 transverse points")
    return out, residual


def _fiber_points(f, g, elim, kept, kept_idx, elim_idx, root):
    """Common points of two conics on one projection fiber.

    Returns ``(points, residual)``: the Q(w)-rational common points on
    the line where the kept coordinates equal ``root``, plus the count
    of conjugate irrational ones.  A fiber shared tangentially (the gcd
    of the two restrictions has a double root) raises PlaneError.
    """
    bind = {kept[0]: root[0], kept[1]: root[1], "lam": EIS_ZERO}
    fu = f.poly.specialize(bind)
    gu = g.poly.specialize(bind)
    if isinstance(fu, EisensteinScalar) or isinstance(gu, EisensteinScalar):
        raise PlaneError("a conic degenerates along a projection fiber")
    h = poly_gcd(fu, gu)
    d = h.degree_in(elim) if isinstance(h, MultiPoly) else 0
    if d == 0:
        raise PlaneError("an eliminant root has an empty fiber")

    def point_at(val):
        coords = [None, None, None]
        coords[kept_idx[0]] = root[0]
        coords[kept_idx[1]] = root[1]
        coords[elim_idx] = val
        p = ProjPoint(coords)
        if not (f.contains(p) and g.contains(p)):
            raise PlaneError("reconstructed intersection fails verification")
        return p

    c0 = h.coeff_of(elim, 0).constant_value()
    c1 = h.coeff_of(elim, 1).constant_value()
    if d == 1:
        return [point_at(-c0 / c1)], 0
    if d != 2:
        raise PlaneError(f"fiber gcd of two conics has degree {d}")
    c2 = h.coeff_of(elim, 2).constant_value()
    disc = c1 * c1 - 4 * c2 * c0
    if not disc:
        raise PlaneError(
            f"two conics are tangent: {f.text()} and {g.text()}"
        )
    s = eisenstein_sqrt(disc)
    if s is None:
        return [], 2
    return [point_at((-c1 + s) / (2 * c2)), point_at((-c1 - s) / (2 * c2))], 0


@dataclass(frozen=True)
class PairRecord:
    i: int
    j: int
    points: tuple
    residual: int


@dataclass
class CensusResult:
    """Outcome of a full pairwise intersection census of an arrangement.

    ``named`` maps each Q(w)-rational intersection point to the number of
    arrangement curves through it.  ``residual_double_points`` counts the
    intersection points living in a quadratic extension of Q(w); the
    census proves each lies on exactly two curves (one line and one
    conic) without ever computing its coordinates: a residual point on a
    second conic would contradict the completed rational bookkeeping of
    that conic pair, and one on a second line would contradict the
    line-line bookkeeping.
    """

    named: dict
    residual_double_points: int
    pairs: tuple

    def multiplicity_profile(self):
        prof = Counter(self.named.values())
        if self.residual_double_points:
            prof[2] += self.residual_double_points
        return dict(sorted(prof.items(), reverse=True))

    def extra_points(self, excluded):
        ex = set(excluded)
        return {p: n for p, n in self.named.items() if p not in ex}


def pairwise_intersection_census(curves, value, seed_points=()):
    """Exact census of all pairwise intersections of lines and conics.

    The parameter is specialized to ``value`` first.  ``seed_points``
    prime the conic-conic bookkeeping (each conic pair needs enough known
    common points to reduce the leftover eliminant to degree <= 2, where
    exact root extraction over Q(w) takes over); the census discovers and
    certifies everything else itself.  Raises PlaneError when a claimed
    property fails: a non-transverse intersection, a conic pair meeting
    outside Q(w), or inconsistent global bookkeeping.
    """
    v = EisensteinScalar.of(value)
    work = [c if c.is_specialized() else c.specialize(v) for c in curves]
    for c in work:
        if c.degree not in (1, 2):
            raise PlaneError("censuses cover lines and conics only")
    named = set()
    for p in seed_points:
        named.add(p.specialize(v) if p.symbolic else p)
    pairs = []
    residual_total = 0
    for i, j in itertools.combinations(range(len(work)), 2):
        ci, cj = work[i], work[j]
        if ci.degree == 1 and cj.degree == 1:
            pts, residual = [(_line_line_point(ci, cj), 1)], 0
        elif ci.degree == 1:
            pts, residual = _line_conic_points(ci, cj)
        elif cj.degree == 1:
            pts, residual = _line_conic_points(cj, ci)
        else:
            pts, residual = _conic_pair_points(
                ci, cj, sorted(named, key=ProjPoint.text)
            )
        expected = ci.degree * cj.degree
        if sum(m for _, m in pts) + residual != expected:
            raise PlaneError(
                f"pair ({i}, {j}) accounts for {len(pts)} points "
                f"plus {residual} residual, expected {expected}"
            )
        for p, m in pts:
            if m != 1:
                raise PlaneError(f"non-transverse intersection at {p.text()}")
            named.add(p)
        residual_total += residual
        pairs.append(PairRecord(i=i, j=j, points=tuple(pts), residual=residual))
    counts = {}
    for p in named:
        n = sum(1 for c in work if c.contains(p))
        if n >= 2:
            counts[p] = n
    lhs = sum(len(rec.points) for rec in pairs)
    rhs = sum(n * (n - 1) // 2 for n in counts.values())
    if lhs != rhs:
        raise PlaneError(
            f"census bookkeeping is inconsistent: {lhs} pairwise meetings "
            f"vs {rhs} implied by incidence counts"
        )
    return CensusResult(
        named=counts,
        residual_double_points=residual_total,
        pairs=tuple(pairs),
    )


# ---------------------------------------------------------------------------
# configurations, fibration triples, aligned points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConfigurationDescriptor:
    points: int
    point_degree: int
    curves: int
    curve_degree: int

    def text(self):
        return (
            f"({self.points}_{self.point_degree}, "
            f"{self.curves}_{self.curve_degree})"
        )


def configuration_check(points, curves):
    """Verify that the incidence structure is a (v_r, b_k) configuration.

    Every point must lie on the same number r of curves and every curve
    must contain the same number k of points; otherwise a
    ConfigurationError names the first offender.
    """
    points = list(points)
    curves = list(curves)
    table = [[c.contains(p) for c in curves] for p in points]
    r = None
    for p, row in zip(points, table):
        n = sum(row)
        if r is None:
            r = n
        elif n != r:
            raise ConfigurationError(
                f"point {p.text()} lies on {n} curves, others on {r}"
            )
    k = None
    for idx, c in enumerate(curves):
        n = sum(row[idx] for row in table)
        if k is None:
            k = n
        elif n != k:
            raise ConfigurationError(
                f"curve {c.text()} contains {n} points, others {k}"
            )
    if points and curves and len(points) * r != len(curves) * k:
        raise ConfigurationError("incidence double count failed")
    return ConfigurationDescriptor(
        points=len(points), point_degree=r or 0,
        curves=len(curves), curve_degree=k or 0,
    )


def sextic_triples(records):
    """All ways to split the conics into triples that each cover every
    point exactly twice.

    A triple of conics whose six-point index sets cover each of the nine
    base points exactly twice is a candidate (the union is a sextic that
    is double at every base point); the function returns every partition
    of the whole list into such triples.  The expected answer for the
    full twelve is exactly one partition; for any proper subset, none.
    """
    sets = [tuple(sorted(r.indices)) for r in records]
    n = len(sets)
    if n % 3:
        return []
    universe = sorted(set().union(*map(set, sets))) if sets else []

    def triple_ok(a, b, c):
        cnt = Counter(sets[a]) + Counter(sets[b]) + Counter(sets[c])
        return all(cnt.get(p, 0) == 2 for p in universe)

    partitions = []

    def extend(remaining, acc):
        if not remaining:
            partitions.append(tuple(acc))
            return
        first = remaining[0]
        rest = remaining[1:]
        for b, c in itertools.combinations(rest, 2):
            if triple_ok(first, b, c):
                acc.append((first, b, c))
                extend([r for r in rest if r not in (b, c)], acc)
                acc.pop()

    extend(list(range(n)), [])
    return partitions


@dataclass(frozen=True)
class AlignedPoints:
    points: tuple
    line: PlaneCurve


def aligned_extra_points(records, cusps, cusp_index, value):
    """The conics through one cusp meet pairwise in four aligned extra points.

    Takes the full conic records, keeps the ones through the given cusp
    (there must be eight), runs the pairwise census at the given
    parameter value, and certifies: exactly four intersection points
    outside the cusp set, each on exactly two of the eight conics, all
    four collinear, and the line passes through the chosen cusp.
    Returns the points (sorted by text) and the line.
    """
    chosen = [r for r in records if cusp_index in r.indices]
    if len(chosen) != 8:
        raise PlaneError(
            f"expected 8 conics through cusp {cusp_index}, found {len(chosen)}"
        )
    census = pairwise_intersection_census(
        [r.curve for r in chosen], value, seed_points=cusps
    )
    if census.residual_double_points:
        raise PlaneError("conic pairs through a cusp must meet rationally")
    cusp_set = {p.specialize(value) for p in cusps}
    extras = sorted(census.extra_points(cusp_set), key=ProjPoint.text)
    if len(extras) != 4:
        raise PlaneError(f"expected 4 extra points, found {len(extras)}")
    for p in extras:
        if census.named[p] != 2:
            raise PlaneError(f"extra point {p.text()} is on {census.named[p]} conics")
    for trio in itertools.combinations(extras, 3):
        if not collinear(*trio):
            raise PlaneError("the four extra points are not collinear")
    line = line_through(extras[0], extras[1])
    pivot = cusps[cusp_index - 1].specialize(value)
    if not line.contains(pivot):
        raise PlaneError("the aligned line misses its cusp")
    for p in extras:
        if not line.contains(p):
            raise PlaneError("an extra point escaped the aligned line")
    return AlignedPoints(points=tuple(extras), line=line)


# ---------------------------------------------------------------------------
# classical nine-inflection reference configuration
# ---------------------------------------------------------------------------


def standard_inflection_points():
    """The nine base points of the standard cubic pencil, as Q(w) points."""
    w = EisensteinScalar(0, 1)
    cube_roots = (EIS_ONE, w, w * w)
    pts = []
    for t in cube_roots:
        pts.append(ProjPoint([EIS_ZERO, EIS_ONE, -t]))
    for t in cube_roots:
        pts.append(ProjPoint([EIS_ONE, EIS_ZERO, -t]))
    for t in cube_roots:
        pts.append(ProjPoint([EIS_ONE, -t, EIS_ZERO]))
    return tuple(pts)


def inflection_lines():
    """The twelve lines through triples of the standard nine inflections."""
    x, y, z, _ = gens(PLANE_VARS)
    w = EisensteinScalar(0, 1)
    cube_roots = (EIS_ONE, w, w * w)
    polys = [x, y, z]
    for a in cube_roots:
        for b in cube_roots:
            polys.append(x + y * a + z * b)
    return tuple(PlaneCurve(p) for p in polys)


# ---------------------------------------------------------------------------
# shipped data: cusps, conics, quartics
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def load_cusps():
    """The nine cusps, as symbolic points, cross-checked on load."""
    data = load_json("p9.json")
    expect_keys(data, ("points",), "p9.json")
    rows = data["points"]
    if len(rows) != 9:
        raise FixtureError(f"p9.json: expected 9 points, found {len(rows)}")
    pts = []
    for k, row in enumerate(rows, start=1):
        if not isinstance(row, list) or len(row) != 3:
            raise FixtureError(f"p9.json: point {k} is not a coordinate triple")
        try:
            coords = [poly_from_text(c, PARAM_VARS) for c in row]
            pts.append(ProjPoint(coords))
        except (ValueError, TypeError) as exc:
            raise FixtureError(f"p9.json: point {k}: {exc}") from exc
    if len(set(pts)) != 9:
        raise FixtureError("p9.json: the nine points are not distinct")
    for i, j, k in itertools.combinations(range(9), 3):
        if collinear(pts[i], pts[j], pts[k]):
            raise FixtureError(
                f"p9.json: points {i + 1}, {j + 1}, {k + 1} are collinear"
            )
    sextic = cuspidal_sextic()
    for k, p in enumerate(pts, start=1):
        if multiplicity_at(sextic, p) != 2:
            raise FixtureError(f"p9.json: point {k} is not a double point")
    return tuple(pts)


@lru_cache(maxsize=None)
def load_conics():
    """The twelve conic records, in index-set order, cross-checked on load."""
    data = load_json("conics12.json")
    expect_keys(data, ("conics",), "conics12.json")
    rows = data["conics"]
    if len(rows) != 12:
        raise FixtureError(f"conics12.json: expected 12 conics, found {len(rows)}")
    cusps = load_cusps()
    records = []
    coverage = Counter()
    for k, row in enumerate(rows, start=1):
        expect_keys(row, ("indices", "poly"), f"conics12.json entry {k}")
        idx = row["indices"]
        if sorted(idx) != idx or len(set(idx)) != 6 or not set(idx) <= set(range(1, 10)):
            raise FixtureError(f"conics12.json entry {k}: bad index set {idx}")
        try:
            poly = poly_from_text(row["poly"], PLANE_VARS)
            curve = PlaneCurve(poly)
        except (ValueError, TypeError) as exc:
            raise FixtureError(f"conics12.json entry {k}: {exc}") from exc
        if curve.degree != 2:
            raise FixtureError(f"conics12.json entry {k}: degree {curve.degree}")
        if curve.text() != row["poly"]:
            raise FixtureError(
                f"conics12.json entry {k}: polynomial is not in canonical form"
            )
        if not conic_is_smooth(curve):
            raise FixtureError(f"conics12.json entry {k}: conic is singular")
        contained = {j for j, p in enumerate(cusps, start=1) if curve.contains(p)}
        if contained != set(idx):
            raise FixtureError(
                f"conics12.json entry {k}: contains points {sorted(contained)}, "
                f"claims {idx}"
            )
        coverage.update(idx)
        records.append(ConicRecord(curve=curve, indices=frozenset(idx)))
    keys = [tuple(sorted(r.indices)) for r in records]
    if keys != sorted(keys):
        raise FixtureError("conics12.json: entries are not in index order")
    if any(coverage[j] != 8 for j in range(1, 10)):
        raise FixtureError(f"conics12.json: uneven cusp coverage {dict(coverage)}")
    return tuple(records)


@lru_cache(maxsize=None)
def load_quartics():
    """The nine quartics with a triple point, cross-checked on load."""
    data = load_json("quartics.json")
    expect_keys(data, ("quartics",), "quartics.json")
    rows = data["quartics"]
    if len(rows) != 9:
        raise FixtureError(f"quartics.json: expected 9 curves, found {len(rows)}")
    cusps = load_cusps()
    out = []
    for k, row in enumerate(rows, start=1):
        expect_keys(row, ("cusp", "poly"), f"quartics.json entry {k}")
        if row["cusp"] != k:
            raise FixtureError(f"quartics.json entry {k}: labeled {row['cusp']}")
        try:
            curve = PlaneCurve(poly_from_text(row["poly"], PLANE_VARS))
        except (ValueError, TypeError) as exc:
            raise FixtureError(f"quartics.json entry {k}: {exc}") from exc
        if curve.degree != 4:
            raise FixtureError(f"quartics.json entry {k}: degree {curve.degree}")
        if curve.text() != row["poly"]:
            raise FixtureError(
                f"quartics.json entry {k}: polynomial is not in canonical form"
            )
        for j, p in enumerate(cusps, start=1):
            want = 3 if j == k else 1
            have = multiplicity_at(curve, p)
            if have != want:
                raise FixtureError(
                    f"quartics.json entry {k}: multiplicity {have} at point {j}, "
                    f"expected {want}"
                )
        out.append(curve)
    return tuple(out)
