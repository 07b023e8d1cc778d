"""Local branches, intersection multiplicities and smoothness of plane curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _upoly as up
from .arith import AtLeast, PrimeField, TruncSeries, mul_trunc, series_valuation
from .elliptic import DivisorOnE, WeierstrassCurve
from .errors import (
    CommonComponent,
    DegenerateElimination,
    FieldMismatch,
    NonRationalIntersection,
    NotOnCurve,
    PrecisionExhausted,
    SingularPoint,
    ValidationError,
)
from .forms import HomogeneousForm, ProjPoint


def substitute(poly: dict[tuple[int, int], int], u: Sequence[int], v: Sequence[int], p: int, n: int) -> list[int]:
    """poly(u(t), v(t)) mod t^n for a bivariate polynomial given as a dict."""
    if not poly:
        return [0] * n
    du = max(i for i, _ in poly)
    dv = max(j for _, j in poly)
    upow = [[1] + [0] * (n - 1)]
    for _ in range(du):
        upow.append(mul_trunc(upow[-1], u, p, n))
    vpow = [[1] + [0] * (n - 1)]
    for _ in range(dv):
        vpow.append(mul_trunc(vpow[-1], v, p, n))
    out = [0] * n
    for (i, j), c in poly.items():
        term = mul_trunc(upow[i], vpow[j], p, n)
        for s in range(n):
            out[s] += c * term[s]
    return [c % p for c in out]


@dataclass(frozen=True)
class BranchParametrization:
    """Power-series parametrization of a smooth curve near ``center``.

    In the affine chart ``coordinate[chart] = 1`` the two remaining
    coordinates (in index order) are ``x_series`` and ``y_series``; the one
    at position ``dependent`` was solved for, the other is ``value + t``.
    """

    center: ProjPoint
    chart: int
    x_series: TruncSeries
    y_series: TruncSeries
    dependent: int
    curve_degree: int

    @property
    def precision(self) -> int:
        return self.x_series.precision

    @property
    def field(self) -> PrimeField:
        return self.center.field

    def coordinate_series(self) -> list[list[int]]:
        n = self.precision
        one = [1] + [0] * (n - 1)
        affine = iter((list(self.x_series.coefficients), list(self.y_series.coefficients)))
        return [one if v == self.chart else next(affine) for v in range(3)]


def _affine_partials(poly, u0, v0, p):
    du = sum(c * i * pow(u0, i - 1, p) * pow(v0, j, p) for (i, j), c in poly.items() if i) % p
    dv = sum(c * j * pow(u0, i, p) * pow(v0, j - 1, p) for (i, j), c in poly.items() if j) % p
    return du, dv


@lru_cache(maxsize=4096)
def _branch(C: HomogeneousForm, P: ProjPoint, precision: int, chart: int | None, dependent: int | None):
    F = C.field
    p = F.p
    if C.evaluate(P.coords):
        raise NotOnCurve(f"{P} is not on the curve")
    if chart is None:
        chart = max(v for v in range(3) if P.coords[v])
    if not P.coords[chart]:
        raise ValidationError(f"chart {chart} does not contain {P}")
    s = F.inv(P.coords[chart])
    keep = [v for v in range(3) if v != chart]
    base = [P.coords[keep[0]] * s % p, P.coords[keep[1]] * s % p]
    g = C.dehomogenize(chart)
    grad = _affine_partials(g, base[0], base[1], p)
    if not any(grad):
        raise SingularPoint(f"{P} is a singular point of the curve")
    if dependent is None:
        dependent = 1 if grad[1] else 0
    elif not grad[dependent]:
        raise ValidationError(f"cannot solve for coordinate {dependent} at {P}")
    inv = F.inv(grad[dependent])
    series = [[base[0]] + [0] * (precision - 1), [base[1]] + [0] * (precision - 1)]
    if precision > 1:
        series[1 - dependent][1] = 1
    # Hensel lifting, one coefficient per step
    for i in range(1, precision):
        r = substitute(g, series[0], series[1], p, i + 1)
        series[dependent][i] = -r[i] * inv % p
    return BranchParametrization(
        center=P,
        chart=chart,
        x_series=TruncSeries(tuple(series[0]), F),
        y_series=TruncSeries(tuple(series[1]), F),
        dependent=dependent,
        curve_degree=C.degree,
    )


def local_parametrization(C: HomogeneousForm, P: ProjPoint, precision: int,
                          chart: int | None = None, dependent: int | None = None) -> BranchParametrization:
    """Branch of the smooth point P of C, accurate to ``precision`` terms.

    By default the chart is the last nonzero coordinate of P and the second
    affine coordinate is solved for whenever its partial derivative is
    nonzero at P.
    """
    if C.field != P.field:
        raise FieldMismatch(f"{C.field} vs {P.field}")
    if precision < 1:
        raise ValidationError("precision must be positive")
    return _branch(C, P, precision, chart, dependent)


def form_on_branch(F: HomogeneousForm, branch: BranchParametrization, n: int | None = None) -> list[int]:
    """Coefficients of F restricted to the branch, mod t^n."""
    if F.field != branch.field:
        raise FieldMismatch(f"{F.field} vs {branch.field}")
    n = branch.precision if n is None else n
    if n > branch.precision:
        raise ValidationError(f"branch known to {branch.precision} terms, {n} requested")
    coords = branch.coordinate_series()
    keep = [v for v in range(3) if v != branch.chart]
    return substitute(F.dehomogenize(branch.chart), coords[keep[0]], coords[keep[1]], F.field.p, n)


def monomial_rows(degree: int, branch: BranchParametrization, n: int, monos) -> list[list[int]]:
    """Row s holds the t^s coefficient of each monomial restricted to the branch."""
    p = branch.field.p
    coords = [c[:n] for c in branch.coordinate_series()]
    pows = []
    for c in coords:
        row = [[1] + [0] * (n - 1)]
        for _ in range(degree):
            row.append(mul_trunc(row[-1], c, p, n))
        pows.append(row)
    cols = []
    for (i, j, k) in monos:
        cols.append(mul_trunc(mul_trunc(pows[0][i], pows[1][j], p, n), pows[2][k], p, n))
    return [[col[s] for col in cols] for s in range(n)]


def intersection_multiplicity(F: HomogeneousForm, branch: BranchParametrization) -> int:
    bound = branch.curve_degree * F.degree
    if branch.precision <= bound:
        raise ValidationError(f"branch precision {branch.precision} must exceed the Bezout bound {bound}")
    val = series_valuation(TruncSeries(tuple(form_on_branch(F, branch)), F.field))
    if isinstance(val, AtLeast):
        raise PrecisionExhausted(f"form vanishes to order >= {val.precision} along the branch at {branch.center}")
    return val


@dataclass(frozen=True)
class IntersectionDivisor:
    entries: dict[ProjPoint, int]

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def as_divisor(self, E: WeierstrassCurve) -> DivisorOnE:
        return DivisorOnE({E.from_proj(P): c for P, c in self.entries.items()})

    def to_json(self, E: WeierstrassCurve) -> list:
        return self.as_divisor(E).to_json()


def divides_cubic(F: HomogeneousForm, E: WeierstrassCurve) -> bool:
    if F.is_zero():
        return True
    return F.divmod_monic_x(E.form)[1].is_zero()


def intersection_divisor(F: HomogeneousForm, E: WeierstrassCurve) -> IntersectionDivisor:
    """All intersections of F = 0 with E, each with its multiplicity.

    Raises NonRationalIntersection unless the multiplicities add up to
    3 deg F over rational points alone.
    """
    if F.field != E.field:
        raise FieldMismatch(f"{F.field} vs {E.field}")
    if divides_cubic(F, E):
        raise CommonComponent("form vanishes identically on the cubic")
    precision = 3 * F.degree + 1
    entries: dict[ProjPoint, int] = {}
    for P in E.points:
        Q = E.to_proj(P)
        if F.evaluate(Q.coords):
            continue
        try:
            entries[Q] = intersection_multiplicity(F, local_parametrization(E.form, Q, precision))
        except PrecisionExhausted as exc:
            raise CommonComponent(str(exc)) from exc
    D = IntersectionDivisor(entries)
    if D.total != 3 * F.degree:
        raise NonRationalIntersection(
            f"rational intersections account for {D.total} of {3 * F.degree}")
    return D


# ---------------------------------------------------------------------------
# smoothness


@dataclass
class SmoothnessReport:
    smooth: bool
    witness: ProjPoint | None = None
    certificate: dict = field(default_factory=dict)

    def __bool__(self):
        return self.smooth


def _grid_values(F: HomogeneousForm, pts: np.ndarray) -> np.ndarray:
    p = F.field.p
    pows = []
    for v in range(3):
        col = pts[:, v]
        row = [np.ones_like(col)]
        for _ in range(F.degree):
            row.append(row[-1] * col % p)
        pows.append(row)
    out = np.zeros(len(pts), dtype=np.int64)
    for (i, j, k), c in F.items():
        out = (out + c * (pows[0][i] * pows[1][j] % p) % p * pows[2][k]) % p
    return out


def _all_points(p: int) -> np.ndarray:
    xs, ys = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    affine = np.stack([xs.ravel(), ys.ravel(), np.ones(p * p, dtype=np.int64)], axis=1)
    line = np.stack([np.arange(p), np.ones(p, dtype=np.int64), np.zeros(p, dtype=np.int64)], axis=1)
    return np.concatenate([np.array([[1, 0, 0]]), line, affine]).astype(np.int64)


def rational_common_zero(forms: Sequence[HomogeneousForm]) -> ProjPoint | None:
    """First point of P^2(F_p), in enumeration order, where all forms vanish."""
    field_ = forms[0].field
    pts = _all_points(field_.p)
    hits = np.ones(len(pts), dtype=bool)
    for g in forms:
        hits &= _grid_values(g, pts) == 0
    idx = np.flatnonzero(hits)
    if not len(idx):
        return None
    x, y, z = (int(c) for c in pts[idx[0]])
    return ProjPoint.of(field_, x, y, z)


class _Split(Exception):
    def __init__(self, factor):
        self.factor = factor


def _reduce_coeffs(poly, G, p):
    out = [up.rem(c, G, p) for c in poly]
    while out and not out[-1]:
        out.pop()
    return out


def _inv_mod(c, G, p):
    g, s = up.xgcd(c, G, p)
    if up.deg(g) > 0:
        raise _Split(g)
    return s


def _polyrem(a, b, G, p):
    """a mod b in (F_p[y]/G)[X]; b has an invertible leading coefficient."""
    a = list(a)
    inv = _inv_mod(b[-1], G, p)
    while len(a) >= len(b):
        c = up.rem(up.mul(a[-1], inv, p), G, p)
        s = len(a) - len(b)
        for i, bc in enumerate(b):
            a[s + i] = up.rem(up.sub(a[s + i], up.mul(c, bc, p), p), G, p)
        while a and not a[-1]:
            a.pop()
    return a


def _gcd_over_quotient(polys, G, p):
    """X-degree of gcd(polys) over F_p[y]/G, or a split of G."""
    polys = [_reduce_coeffs(f, G, p) for f in polys]
    a = polys[0]
    for b in polys[1:]:
        while b:
            _inv_mod(b[-1], G, p)
            a, b = b, _polyrem(a, b, G, p)
    return len(a) - 1


def _common_zero_in_chart(polys, G, p):
    """Search the components of F_p[y]/G for a common X-root of ``polys``."""
    stack = [G]
    while stack:
        H = stack.pop()
        try:
            d = _gcd_over_quotient(polys, H, p)
        except _Split as s:
            g = up.monic(s.factor, p)
            stack.extend([g, up.exact_div(H, g, p)])
            continue
        if d >= 1:
            return H
    return None


def _x_coeffs(g: HomogeneousForm):
    """g(X, y, 1) as a list (by X-degree) of polynomials in y."""
    out = [[0] * (g.degree + 1) for _ in range(g.degree + 1)]
    for (i, j, _), c in g.items():
        out[i][j] = c
    res = [up.trim(row) for row in out]
    while res and not res[-1]:
        res.pop()
    return res


def _resultant_with_monic(g1, h, p):
    """Res_X(g1, h) up to a unit, for g1 monic in X with coefficients in F_p[y]."""
    d1 = len(g1) - 1

    def reduce(a):
        a = [list(c) for c in a]
        while len(a) > d1:
            c = a.pop()
            if not c:
                continue
            s = len(a) - d1
            for i in range(d1):
                a[s + i] = up.sub(a[s + i], up.mul(c, g1[i], p), p)
        return a + [[] for _ in range(d1 - len(a))]

    col = reduce(h)
    cols = [col]
    for _ in range(d1 - 1):
        col = reduce([[]] + col)
        cols.append(col)
    matrix = [[cols[j][i] for j in range(d1)] for i in range(d1)]
    return up.det_bareiss(matrix, p)


def curve_is_smooth(F: HomogeneousForm) -> SmoothnessReport:
    """Decide smoothness of F = 0 over the algebraic closure of F_p.

    A rational singular point is returned as ``witness`` when there is one.
    Otherwise the partial derivatives are eliminated with resultants; a
    nonconstant common eliminant is resolved exactly by a gcd computation
    over F_p[y]/(eliminant) that splits the modulus whenever a leading
    coefficient is a zero divisor.
    """
    if F.degree < 1:
        raise ValidationError("smoothness needs a form of positive degree")
    if F.is_zero():
        return SmoothnessReport(False, certificate={"reason": "zero form"})
    p = F.field.p
    forms = list(F.gradient())
    if F.degree % p == 0:
        forms.append(F)
    forms = [g for g in forms if not g.is_zero()]
    if any(g.degree == 0 for g in forms):
        return SmoothnessReport(True, certificate={"reason": "constant partial derivative"})

    witness = rational_common_zero(forms)
    if witness is not None:
        return SmoothnessReport(False, witness=witness, certificate={"reason": "rational singular point"})

    choice = next(((gi, v) for gi, g in enumerate(forms) for v in range(3)
                   if g.coefficient(tuple(g.degree if w == v else 0 for w in range(3)))), None)
    if choice is None:
        raise DegenerateElimination("no partial derivative has a pure power term in any variable")
    gi, v = choice
    others = [w for w in range(3) if w != v]
    perm = [0, 0, 0]
    perm[v], perm[others[0]], perm[others[1]] = 0, 1, 2
    forms = [g.permute(perm) for g in forms]
    forms.insert(0, forms.pop(gi))
    cert = {"eliminate": "XYZ"[v], "permutation": perm}

    # points on the line (last coordinate) = 0, away from [1:0:0]
    line_gcd = []
    for g in forms:
        line_gcd = up.gcd(line_gcd, [g.coefficient((a, g.degree - a, 0)) for a in range(g.degree + 1)], p)
    if up.deg(line_gcd) >= 1:
        cert.update(reason="singular point on the line at infinity", gcd=line_gcd)
        return SmoothnessReport(False, certificate=cert)

    g1 = _x_coeffs(forms[0])
    lead_inv = up.inv_mod_p(g1[-1][0], p)
    g1 = [up.scale(c, lead_inv, p) for c in g1]
    rest = [_x_coeffs(g) for g in forms[1:]]
    eliminant: list[int] = []
    for h in rest:
        eliminant = up.gcd(eliminant, _resultant_with_monic(g1, h, p), p)
    cert["eliminant"] = eliminant
    if not eliminant:
        cert["reason"] = "partial derivatives share a curve component"
        return SmoothnessReport(False, certificate=cert)
    if up.deg(eliminant) <= 0:
        cert["reason"] = "resultants coprime"
        return SmoothnessReport(True, certificate=cert)
    factor = _common_zero_in_chart([g1] + rest, up.squarefree_part(eliminant, p), p)
    if factor is not None:
        cert.update(reason="common zero over an extension field", factor=factor)
        return SmoothnessReport(False, certificate=cert)
    cert["reason"] = "eliminant factors carry no common zero"
    return SmoothnessReport(True, certificate=cert)
