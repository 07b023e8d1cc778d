"""Homogeneous forms in X, Y, Z and points of the projective plane."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .arith import PrimeField, Scalar
from .errors import FieldMismatch, ValidationError

Exponent = tuple[int, int, int]


@lru_cache(maxsize=None)
def monomials(degree: int) -> tuple[Exponent, ...]:
    """Exponent triples of the given degree, X-heaviest first."""
    out = []
    for i in range(degree, -1, -1):
        for j in range(degree - i, -1, -1):
            out.append((i, j, degree - i - j))
    return tuple(out)


def num_monomials(degree: int) -> int:
    return (degree + 1) * (degree + 2) // 2 if degree >= 0 else 0


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^2(F_p) with its last nonzero coordinate scaled to 1."""

    coords: tuple[int, int, int]
    field: PrimeField

    @classmethod
    def of(cls, field: PrimeField, x: int, y: int, z: int) -> ProjPoint:
        p = field.p
        c = [x % p, y % p, z % p]
        last = next((i for i in (2, 1, 0) if c[i]), None)
        if last is None:
            raise ValidationError("(0, 0, 0) is not a projective point")
        inv = field.inv(c[last])
        return cls(tuple(v * inv % p for v in c), field)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "[{}:{}:{}]".format(*self.coords)


class HomogeneousForm:
    """A degree-d form sum c_{ijk} X^i Y^j Z^k over F_p.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("degree", "field", "_coeffs", "_hash")

    def __init__(self, field: PrimeField, degree: int, coeffs: Mapping[Exponent, int] | None = None):
        if degree < 0:
            raise ValidationError(f"negative degree {degree}")
        p = field.p
        clean: dict[Exponent, int] = {}
        for e, c in (coeffs or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise ValidationError(f"exponent {e} does not have degree {degree}")
            c = int(c) % p
            if c:
                clean[e] = (clean.get(e, 0) + c) % p
                if not clean[e]:
                    del clean[e]
        self.field = field
        self.degree = degree
        self._coeffs = clean
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, field: PrimeField, degree: int, terms: Iterable[Sequence[int]]) -> HomogeneousForm:
        coeffs: dict[Exponent, int] = {}
        for t in terms:
            if len(t) != 4:
                raise ValidationError(f"term {t!r} is not [i, j, k, c]")
            i, j, k, c = (int(x) for x in t)
            if not 0 <= c < field.p:
                raise ValidationError(f"coefficient {c} outside [0, {field.p})")
            coeffs[(i, j, k)] = (coeffs.get((i, j, k), 0) + c) % field.p
        return cls(field, degree, coeffs)

    @classmethod
    def from_vector(cls, field: PrimeField, degree: int, vector: Sequence[int]) -> HomogeneousForm:
        return cls(field, degree, dict(zip(monomials(degree), vector)))

    @classmethod
    def monomial(cls, field: PrimeField, e: Exponent, c: int = 1) -> HomogeneousForm:
        return cls(field, sum(e), {e: c})

    @classmethod
    def linear(cls, field: PrimeField, a: int, b: int, c: int) -> HomogeneousForm:
        return cls(field, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    # -- access -----------------------------------------------------------

    @property
    def coefficients(self) -> dict[Exponent, int]:
        return dict(self._coeffs)

    def coefficient(self, e: Exponent) -> int:
        return self._coeffs.get(e, 0)

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def terms(self) -> list[list[int]]:
        """Serializable ``[i, j, k, c]`` list in canonical monomial order."""
        return [[*e, self._coeffs[e]] for e in monomials(self.degree) if e in self._coeffs]

    def to_record(self) -> dict:
        return {"p": self.field.p, "degree": self.degree, "terms": self.terms()}

    @classmethod
    def from_record(cls, record: Mapping) -> HomogeneousForm:
        try:
            field = PrimeField(int(record["p"]))
            return cls.from_terms(field, int(record["degree"]), record["terms"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed form record: {exc}") from exc

    def vector(self) -> list[int]:
        return [self._coeffs.get(e, 0) for e in monomials(self.degree)]

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: HomogeneousForm):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: HomogeneousForm) -> HomogeneousForm:
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if other.degree != self.degree:
            raise ValidationError("cannot add forms of different degrees")
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return HomogeneousForm(self.field, self.degree, out)

    def __neg__(self) -> HomogeneousForm:
        return self.scale(-1)

    def __sub__(self, other: HomogeneousForm) -> HomogeneousForm:
        return self + (-other)

    def scale(self, c: int) -> HomogeneousForm:
        return HomogeneousForm(self.field, self.degree, {e: v * c for e, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(int(other))
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        self._check(other)
        p = self.field.p
        out: dict[Exponent, int] = {}
        for (a, b, c), u in self._coeffs.items():
            for (d, e, f), v in other._coeffs.items():
                key = (a + d, b + e, c + f)
                out[key] = (out.get(key, 0) + u * v) % p
        return HomogeneousForm(self.field, self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> HomogeneousForm:
        out = HomogeneousForm.monomial(self.field, (0, 0, 0))
        for _ in range(k):
            out = out * self
        return out

    def partial(self, var: int) -> HomogeneousForm:
        if self.degree == 0:
            return HomogeneousForm(self.field, 0)
        out: dict[Exponent, int] = {}
        for e, c in self._coeffs.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                out[tuple(f)] = c * e[var]
        return HomogeneousForm(self.field, self.degree - 1, out)

    def gradient(self) -> tuple[HomogeneousForm, HomogeneousForm, HomogeneousForm]:
        return self.partial(0), self.partial(1), self.partial(2)

    def permute(self, perm: Sequence[int]) -> HomogeneousForm:
        """Substitute variable ``perm[v]`` for variable ``v``."""
        out = {}
        for e, c in self._coeffs.items():
            f = [0, 0, 0]
            for v in range(3):
                f[perm[v]] += e[v]
            out[tuple(f)] = c
        return HomogeneousForm(self.field, self.degree, out)

    def evaluate(self, coords: Sequence[int]) -> int:
        p = self.field.p
        x, y, z = (c % p for c in coords)
        return sum(c * pow(x, i, p) * pow(y, j, p) * pow(z, k, p) for (i, j, k), c in self._coeffs.items()) % p

    def dehomogenize(self, chart: int) -> dict[tuple[int, int], int]:
        """Affine polynomial in the two remaining variables (in index order)."""
        keep = [v for v in range(3) if v != chart]
        out: dict[tuple[int, int], int] = {}
        for e, c in self._coeffs.items():
            key = (e[keep[0]], e[keep[1]])
            out[key] = (out.get(key, 0) + c) % self.field.p
        return {k: v for k, v in out.items() if v}

    def divmod_monic_x(self, divisor: HomogeneousForm) -> tuple[HomogeneousForm, HomogeneousForm]:
        """Division by a form whose X^d coefficient is nonzero.

        Returns (q, r) with self = q * divisor + r and deg_X r < deg divisor.
        """
        self._check(divisor)
        d = divisor.degree
        lead = divisor.coefficient((d, 0, 0))
        if not lead:
            raise ValidationError("divisor lacks a pure X-power term")
        p = self.field.p
        inv = self.field.inv(lead)
        rem = dict(self._coeffs)
        quot: dict[Exponent, int] = {}
        qdeg = self.degree - d
        while True:
            top = [e for e, c in rem.items() if c and e[0] >= d]
            if not top:
                break
            e = max(top)
            c = rem[e] * inv % p
            qe = (e[0] - d, e[1], e[2])
            quot[qe] = (quot.get(qe, 0) + c) % p
            for (a, b, cc), v in divisor._coeffs.items():
                key = (qe[0] + a, qe[1] + b, qe[2] + cc)
                rem[key] = (rem.get(key, 0) - c * v) % p
                if not rem[key]:
                    del rem[key]
        if qdeg < 0:
            return HomogeneousForm(self.field, 0), self
        return HomogeneousForm(self.field, qdeg, quot), HomogeneousForm(self.field, self.degree, rem)

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.p, self.degree, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e in monomials(self.degree):
            c = self._coeffs.get(e)
            if not c:
                continue
            mono = "".join(
                v + (f"^{k}" if k > 1 else "") for v, k in zip("XYZ", e) if k
            )
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts) + f"  (deg {self.degree}, mod {self.field.p})"


def evaluate_form(F: HomogeneousForm, P: ProjPoint) -> Scalar:
    if F.field != P.field:
        raise FieldMismatch(f"{F.field} vs {P.field}")
    return Scalar(F.evaluate(P.coords), F.field)


def projective_points(field: PrimeField):
    """All points of P^2(F_p) in a fixed order."""
    p = field.p
    yield ProjPoint((1, 0, 0), field)
    for x in range(p):
        yield ProjPoint((x, 1, 0), field)
    for x in range(p):
        for y in range(p):
            yield ProjPoint((x, y, 1), field)
