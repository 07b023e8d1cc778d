"""Construction of curves of type (b, m) with a prescribed lambda-invariant."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .arith import is_prime, kernel_basis
from .elliptic import INF, DivisorOnE, EPoint, WeierstrassCurve, find_point_of_order, negate, _add
from .errors import (
    EmptyKernel,
    NoSuchOrder,
    NonRationalIntersection,
    OracleMismatch,
    RetryExhausted,
    UnrealizableOrder,
    ValidationError,
)
from .forms import HomogeneousForm
from .geometry import curve_is_smooth, divides_cubic, intersection_divisor, rational_common_zero
from .splitting import (
    CoverSpec,
    SplittingCertificate,
    certify,
    cubic_multiples_dim,
    vanishing_system,
    _combine,
)

DEFAULT_RETRIES = 64


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@dataclass(frozen=True)
class ConstructionRequest:
    b: int
    m: int
    mu: int
    curve: WeierstrassCurve
    seed: int = 0
    retry_budget: int = DEFAULT_RETRIES

    def __post_init__(self):
        if self.b < 3:
            raise ValidationError(f"type (b, m) needs b >= 3, got b = {self.b}")
        if self.m < 1 or self.b % self.m:
            raise ValidationError(f"m = {self.m} must divide b = {self.b}")
        if self.mu < 1 or self.m % self.mu:
            raise ValidationError(f"mu = {self.mu} must divide m = {self.m}")
        if math.gcd(self.curve.p, 6 * self.m) != 1:
            raise ValidationError(f"p = {self.curve.p} must be prime to 6m = {6 * self.m}")
        if self.retry_budget < 1:
            raise ValidationError("retry budget must be positive")

    @property
    def n(self) -> int:
        return self.b // self.m


def sample_divisor_with_class(req: ConstructionRequest) -> list[EPoint]:
    """3n distinct affine points whose group sum has exact order mu."""
    E = req.curve
    T = find_point_of_order(E, req.mu, seed=req.seed)
    k = 3 * req.n
    affine = [P for P in E.points if not P.is_infinity]
    rng = random.Random(req.seed)
    if len(affine) < k:
        raise RetryExhausted(f"{E} has only {len(affine)} affine points, {k} needed")
    for _ in range(req.retry_budget):
        chosen = rng.sample(affine, k - 1)
        S = INF
        for P in chosen:
            S = _add(S, P, E)
        last = _add(T, negate(S, E), E)
        if last.is_infinity or last in chosen:
            continue
        pts = chosen + [last]
        if req.n == 1 and len({P.x for P in pts}) < 3:
            continue
        return sorted(pts, key=EPoint.sort_key)
    raise RetryExhausted(f"no admissible {k}-point sample in {req.retry_budget} draws")


@dataclass
class CheckResult:
    passed: bool
    evidence: dict = field(default_factory=dict)

    def to_json(self):
        return {"passed": self.passed, **self.evidence}


@dataclass
class TypeBMReport:
    checks: dict[str, CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failing(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": {k: v.to_json() for k, v in self.checks.items()}}


def verify_type_bm(B: HomogeneousForm, cubic: WeierstrassCurve, b: int, m: int) -> TypeBMReport:
    """Check the four defining conditions of a curve B + E of type (b, m)."""
    checks: dict[str, CheckResult] = {}
    n = b // m if m and b % m == 0 else None
    checks["degrees"] = CheckResult(
        B.degree == b and b >= 3 and n is not None,
        {"deg_B": B.degree, "deg_E": 3, "b": b, "m": m},
    )
    multiple = divides_cubic(B, cubic)
    checks["components"] = CheckResult(not multiple, {"B_divisible_by_E": multiple})

    checks["smooth_cubic"] = CheckResult(cubic.discriminant != 0, {"discriminant": cubic.discriminant})
    if B.degree >= 1 and not B.is_zero():
        sm = curve_is_smooth(B)
        ev = {"reason": sm.certificate.get("reason")}
        if sm.witness is not None:
            ev["singular_point"] = list(sm.witness.coords)
        # a smooth plane curve is irreducible
        checks["smooth_branch"] = CheckResult(sm.smooth, ev)
    else:
        checks["smooth_branch"] = CheckResult(False, {"reason": "constant form"})

    if multiple:
        checks["point_count"] = CheckResult(False, {"reason": "common component"})
        checks["multiplicity"] = CheckResult(False, {"reason": "common component"})
        return TypeBMReport(checks)
    try:
        div = intersection_divisor(B, cubic).as_divisor(cubic)
    except NonRationalIntersection as exc:
        checks["point_count"] = CheckResult(False, {"reason": str(exc)})
        checks["multiplicity"] = CheckResult(False, {"reason": "intersection not fully rational"})
        return TypeBMReport(checks)
    mults = [c for _, c in div.items()]
    checks["point_count"] = CheckResult(n is not None and len(div) == 3 * n,
                                        {"points": len(div), "expected": None if n is None else 3 * n})
    checks["multiplicity"] = CheckResult(all(c == m for c in mults), {"multiplicities": mults, "expected": m})
    return TypeBMReport(checks)


def interpolate_branched_curve(points: list[EPoint], req: ConstructionRequest) -> HomogeneousForm:
    """A smooth degree-b form meeting E exactly in m * (sum of points)."""
    E = req.curve
    target = req.m * DivisorOnE.from_points(points)
    M = vanishing_system(target, req.b, E)
    basis = kernel_basis(M)
    if len(basis) <= cubic_multiples_dim(req.b):
        raise EmptyKernel(f"only multiples of the cubic vanish on {req.m} * {points}")
    rng = random.Random(req.seed * 7919 + 1)
    last_failure = "none"
    for _ in range(req.retry_budget):
        G = HomogeneousForm.from_vector(E.field, req.b, _combine(basis, [rng.randrange(E.p) for _ in basis], E.p))
        if divides_cubic(G, E):
            last_failure = "divisible by cubic"
            continue
        if intersection_divisor(G, E).as_divisor(E) != target:
            last_failure = "intersection divisor"
            continue
        if rational_common_zero(list(G.gradient())) is not None:
            last_failure = "rational singular point"
            continue
        if not curve_is_smooth(G):
            last_failure = "singular over an extension"
            continue
        return G
    raise RetryExhausted(f"no smooth member in {req.retry_budget} draws (last failure: {last_failure})")


@dataclass
class ConstructedCurve:
    form: HomogeneousForm
    points: list[EPoint]
    mu: int
    report: TypeBMReport

    def to_json(self) -> dict:
        return {
            "branch": self.form.to_record(),
            "points": [P.to_json() for P in self.points],
            "mu": self.mu,
            "type_bm": self.report.to_json(),
        }


def construct(req: ConstructionRequest) -> ConstructedCurve:
    pts = sample_divisor_with_class(req)
    B = interpolate_branched_curve(pts, req)
    report = verify_type_bm(B, req.curve, req.b, req.m)
    if not report.passed:
        raise OracleMismatch(f"constructed curve fails {report.failing()}")
    return ConstructedCurve(B, pts, req.mu, report)


@dataclass
class KpletMember:
    form: HomogeneousForm
    mu: int
    certificate: SplittingCertificate
    report: TypeBMReport


def build_kplet(b: int, m: int, curve: WeierstrassCurve, seed: int = 0,
                retry_budget: int = DEFAULT_RETRIES) -> list[KpletMember]:
    """One certified curve of type (b, m) for every divisor mu of m."""
    missing = [mu for mu in divisors(m) if curve.exponent % mu]
    if missing:
        raise UnrealizableOrder(f"no rational point of order {missing} on {curve} (exponent {curve.exponent})")
    out = []
    for mu in divisors(m):
        req = ConstructionRequest(b, m, mu, curve, seed=seed * 7919 + mu, retry_budget=retry_budget)
        inst = construct(req)
        cert = certify(CoverSpec(m, inst.form, curve), seed=req.seed)
        if cert.lam != mu:
            raise OracleMismatch(f"requested lambda {mu}, certified {cert.lam}")
        out.append(KpletMember(inst.form, mu, cert, inst.report))
    if len({mem.certificate.lam for mem in out}) != len(out):
        raise OracleMismatch("k-plet members share a lambda value")
    return out


def find_curve(b: int, m: int, max_p: int = 1 << 16) -> WeierstrassCurve:
    """Smallest-p short Weierstrass curve whose group exponent is divisible by m.

    Parameters (a4, a6) are scanned in lexicographic order; the curve must
    also carry comfortably more affine points than a construction draws.
    """
    n = b // m
    for p in range(5, max_p):
        if not is_prime(p) or math.gcd(p, 6 * m) != 1:
            continue
        for a4 in range(p):
            for a6 in range(p):
                if (4 * a4 ** 3 + 27 * a6 ** 2) % p == 0:
                    continue
                E = WeierstrassCurve.from_params(p, a4, a6)
                if E.order - 1 >= 3 * n + 3 and E.exponent % m == 0:
                    return E
    raise NoSuchOrder(f"no curve with exponent divisible by {m} below p = {max_p}")
