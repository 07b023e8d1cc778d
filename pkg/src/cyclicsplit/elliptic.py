"""Short Weierstrass cubics Y^2 Z = X^3 + a4 X Z^2 + a6 Z^3 and their group law.

The identity is the flex O = [0:1:0], so three collinear points sum to O and
a degree-zero divisor is principal exactly when its points add up to O.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .arith import PrimeField
from .errors import NonzeroDegree, NoSuchOrder, NotOnCurve, ValidationError
from .forms import HomogeneousForm, ProjPoint


@dataclass(frozen=True)
class EPoint:
    """A rational point: ``x is None`` encodes the point at infinity."""

    x: int | None = None
    y: int | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def to_json(self):
        return "inf" if self.x is None else [self.x, self.y]

    @classmethod
    def from_json(cls, obj) -> EPoint:
        if obj == "inf":
            return INF
        try:
            x, y = obj
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad point {obj!r}") from exc
        if not (isinstance(x, int) and isinstance(y, int)):
            raise ValidationError(f"bad point {obj!r}")
        return cls(x, y)

    def __repr__(self):
        return "O" if self.x is None else f"({self.x},{self.y})"

    def sort_key(self):
        return (-1, -1) if self.x is None else (self.x, self.y)


INF = EPoint()


@dataclass(frozen=True)
class WeierstrassCurve:
    field: PrimeField
    a4: int
    a6: int

    def __post_init__(self):
        p = self.field.p
        object.__setattr__(self, "a4", self.a4 % p)
        object.__setattr__(self, "a6", self.a6 % p)
        if (4 * self.a4 ** 3 + 27 * self.a6 ** 2) % p == 0:
            raise ValidationError(f"singular cubic: a4={self.a4}, a6={self.a6} over F_{p}")

    @classmethod
    def from_params(cls, p: int, a4: int, a6: int) -> WeierstrassCurve:
        return cls(PrimeField(p), a4, a6)

    def to_record(self) -> dict:
        return {"p": self.field.p, "a4": self.a4, "a6": self.a6}

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a4 ** 3 + 27 * self.a6 ** 2) % self.p

    def rhs(self, x: int) -> int:
        return (x * x * x + self.a4 * x + self.a6) % self.p

    def contains(self, P: EPoint) -> bool:
        if P.is_infinity:
            return True
        if not (0 <= P.x < self.p and 0 <= P.y < self.p):
            return False
        return P.y * P.y % self.p == self.rhs(P.x)

    def check(self, P: EPoint) -> EPoint:
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self}")
        return P

    @cached_property
    def form(self) -> HomogeneousForm:
        return HomogeneousForm(self.field, 3, {
            (0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): -self.a4, (0, 0, 3): -self.a6,
        })

    @cached_property
    def points(self) -> tuple[EPoint, ...]:
        """All rational points, O first, then affine points sorted by (x, y)."""
        roots = self.field.sqrt_table()
        out = [INF]
        for x in range(self.p):
            for y in roots.get(self.rhs(x), ()):
                out.append(EPoint(x, y))
        return tuple(out)

    def to_proj(self, P: EPoint) -> ProjPoint:
        if P.is_infinity:
            return ProjPoint((0, 1, 0), self.field)
        return ProjPoint((P.x, P.y, 1), self.field)

    def from_proj(self, Q: ProjPoint) -> EPoint:
        x, y, z = Q.coords
        if z == 0:
            P = INF if (x, y) == (0, 1) else None
        else:
            P = EPoint(x, y)
        if P is None or not self.contains(P):
            raise NotOnCurve(f"{Q} is not on {self}")
        return P

    @cached_property
    def order(self) -> int:
        return group_order(self)

    @cached_property
    def exponent(self) -> int:
        e = 1
        for P in self.points:
            e = math.lcm(e, point_order(P, self))
        return e

    def __repr__(self):
        return f"E: y^2 = x^3 + {self.a4}x + {self.a6} over F_{self.p}"


def negate(P: EPoint, E: WeierstrassCurve) -> EPoint:
    if P.is_infinity:
        return P
    return EPoint(P.x, -P.y % E.p)


def _add(P: EPoint, Q: EPoint, E: WeierstrassCurve) -> EPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    p = E.p
    if P.x == Q.x:
        if (P.y + Q.y) % p == 0:
            return INF
        slope = (3 * P.x * P.x + E.a4) * E.field.inv(2 * P.y) % p
    else:
        slope = (Q.y - P.y) * E.field.inv(Q.x - P.x) % p
    x3 = (slope * slope - P.x - Q.x) % p
    y3 = (slope * (P.x - x3) - P.y) % p
    return EPoint(x3, y3)


def add_points(P: EPoint, Q: EPoint, E: WeierstrassCurve) -> EPoint:
    """Chord-tangent addition."""
    return _add(E.check(P), E.check(Q), E)


def _mul(k: int, P: EPoint, E: WeierstrassCurve) -> EPoint:
    if k < 0:
        k, P = -k, negate(P, E)
    acc = INF
    while k:
        if k & 1:
            acc = _add(acc, P, E)
        P = _add(P, P, E)
        k >>= 1
    return acc


def scalar_multiply(k: int, P: EPoint, E: WeierstrassCurve) -> EPoint:
    """k * P by double-and-add; negative k goes through -P."""
    return _mul(k, E.check(P), E)


def group_order(E: WeierstrassCurve) -> int:
    p = E.p
    # Euler's criterion: number of y with y^2 = r is 1 + (r | p)
    n = 1
    for x in range(p):
        r = E.rhs(x)
        if r == 0:
            n += 1
        elif pow(r, (p - 1) // 2, p) == 1:
            n += 2
    assert (n - (p + 1)) ** 2 <= 4 * p, f"Hasse bound violated: {n} points over F_{p}"
    return n


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def point_order(P: EPoint, E: WeierstrassCurve) -> int:
    """Least k >= 1 with kP = O, by stripping primes from #E(F_p)."""
    E.check(P)
    k = E.order
    for q in prime_factors(k):
        while k % q == 0 and _mul(k // q, P, E).is_infinity:
            k //= q
    return k


class DivisorOnE:
    """Finite formal sum of rational points with integer coefficients."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[EPoint, int] | Iterable[tuple[EPoint, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[EPoint, int] = {}
        for P, c in items:
            acc[P] = acc.get(P, 0) + int(c)
        self._entries = {P: c for P, c in acc.items() if c}

    @classmethod
    def from_points(cls, points: Iterable[EPoint]) -> DivisorOnE:
        return cls((P, 1) for P in points)

    @property
    def entries(self) -> dict[EPoint, int]:
        return dict(self._entries)

    @property
    def degree(self) -> int:
        return sum(self._entries.values())

    @property
    def support(self) -> list[EPoint]:
        return sorted(self._entries, key=EPoint.sort_key)

    def __getitem__(self, P: EPoint) -> int:
        return self._entries.get(P, 0)

    def __len__(self):
        return len(self._entries)

    def items(self):
        return sorted(self._entries.items(), key=lambda kv: kv[0].sort_key())

    def __add__(self, other: DivisorOnE) -> DivisorOnE:
        return DivisorOnE(list(self._entries.items()) + list(other._entries.items()))

    def __neg__(self) -> DivisorOnE:
        return DivisorOnE({P: -c for P, c in self._entries.items()})

    def __sub__(self, other: DivisorOnE) -> DivisorOnE:
        return self + (-other)

    def __rmul__(self, k: int) -> DivisorOnE:
        return DivisorOnE({P: k * c for P, c in self._entries.items()})

    def __eq__(self, other):
        return isinstance(other, DivisorOnE) and self._entries == other._entries

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __repr__(self):
        return " + ".join(f"{c}*{P}" for P, c in self.items()) or "0"

    def to_json(self) -> list:
        return [[P.to_json(), c] for P, c in self.items()]


def divisor_class_point(D: DivisorOnE, E: WeierstrassCurve) -> EPoint:
    """The point S with D ~ S - O; D is principal iff S = O."""
    if D.degree != 0:
        raise NonzeroDegree(f"divisor has degree {D.degree}")
    S = INF
    for P, c in D.items():
        S = _add(S, _mul(c, E.check(P), E), E)
    return S


def class_order(D: DivisorOnE, E: WeierstrassCurve) -> int:
    return point_order(divisor_class_point(D, E), E)


def find_point_of_order(E: WeierstrassCurve, mu: int, seed: int = 0, retries: int = 64) -> EPoint:
    """A point of exact order ``mu``.

    Tries ``retries`` seeded random points scaled by #E/mu, then falls back
    to scanning every rational point.
    """
    if mu < 1:
        raise ValidationError(f"order must be positive, got {mu}")
    if mu == 1:
        return INF
    N = E.order
    if N % mu:
        raise NoSuchOrder(f"{mu} does not divide #E(F_{E.p}) = {N}")
    rng = random.Random(seed)
    pts = E.points
    for _ in range(retries):
        Q = _mul(N // mu, rng.choice(pts), E)
        if point_order(Q, E) == mu:
            return Q
    for P in pts:
        if point_order(P, E) == mu:
            return P
    raise NoSuchOrder(f"no point of order {mu} on {E} (group exponent {E.exponent})")
