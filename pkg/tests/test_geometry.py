import random

import pytest

from cyclicsplit.elliptic import INF, DivisorOnE, EPoint, WeierstrassCurve
from cyclicsplit.errors import CommonComponent, NonRationalIntersection, NotOnCurve, SingularPoint, ValidationError
from cyclicsplit.forms import HomogeneousForm, ProjPoint, evaluate_form
from cyclicsplit.geometry import (
    divides_cubic,
    form_on_branch,
    intersection_divisor,
    intersection_multiplicity,
    local_parametrization,
)
from cyclicsplit.arith import kernel_basis
from cyclicsplit.splitting import vanishing_system


def line_root_multiplicity(E, P, direction):
    """Multiplicity of s = 0 in f(P + s * direction), by synthetic division."""
    p = E.p
    (x0, y0, z0), (dx, dy, dz) = P, direction
    # expand f(x0 + s dx, y0 + s dy, z0 + s dz) as a cubic in s by evaluation
    vals = [E.form.evaluate(((x0 + s * dx) % p, (y0 + s * dy) % p, (z0 + s * dz) % p)) for s in range(4)]
    # Lagrange interpolation through s = 0..3 gives the coefficients
    coeffs = [0, 0, 0, 0]
    for i, v in enumerate(vals):
        basis = [1]
        denom = 1
        for j in range(4):
            if j == i:
                continue
            basis = [(a - j * b) % p for a, b in zip([0] + basis, basis + [0])]
            denom = denom * (i - j) % p
        scale = v * pow(denom, p - 2, p) % p
        coeffs = [(c + scale * b) % p for c, b in zip(coeffs, basis)]
    return next(i for i, c in enumerate(coeffs) if c)


def test_evaluate_examples(F7):
    fermat = HomogeneousForm(F7, 3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1})
    assert evaluate_form(fermat, ProjPoint.of(F7, 1, -1, 0)) == F7(0)
    Z = HomogeneousForm.linear(F7, 0, 0, 1)
    assert evaluate_form(Z, ProjPoint((0, 1, 0), F7)) == F7(0)
    E = WeierstrassCurve.from_params(7, 0, 1)
    assert evaluate_form(E.form, ProjPoint((2, 3, 1), F7)) == F7(0)


def test_canonical_projective_points(F7):
    assert ProjPoint.of(F7, 2, 4, 2) == ProjPoint.of(F7, 1, 2, 1)
    assert ProjPoint.of(F7, 3, 5, 0).coords == (3 * 3 % 7, 1, 0)


def test_branch_example(E7):
    br = local_parametrization(E7.form, ProjPoint((2, 3, 1), E7.field), 4)
    assert br.x_series.coefficients[:2] == (2, 1)
    assert br.y_series.coefficients[:2] == (3, 2)


def test_line_branch_is_exact(F7):
    Z = HomogeneousForm.linear(F7, 0, 0, 1)
    br = local_parametrization(Z, ProjPoint((0, 1, 0), F7), 10)
    assert br.x_series.coefficients == (0, 1) + (0,) * 8
    assert br.y_series.coefficients == (0,) * 10


def test_branch_errors(F7, E7):
    node = HomogeneousForm(F7, 3, {(2, 1, 0): 1, (1, 2, 0): 1, (1, 1, 1): 1})  # XY(X+Y+Z)
    with pytest.raises(SingularPoint):
        local_parametrization(node, ProjPoint((0, 0, 1), F7), 5)
    with pytest.raises(NotOnCurve):
        local_parametrization(E7.form, ProjPoint((1, 1, 1), F7), 5)


def test_branch_residual_vanishes():
    rng = random.Random(2)
    for p, a4, a6 in [(7, 0, 1), (11, 1, 2), (101, 5, 17)]:
        E = WeierstrassCurve.from_params(p, a4, a6)
        for P in rng.sample(E.points, min(8, len(E.points))):
            br = local_parametrization(E.form, E.to_proj(P), 20)
            assert form_on_branch(E.form, br) == [0] * 20


def test_multiplicity_examples(E7):
    F = E7.field
    O = local_parametrization(E7.form, ProjPoint((0, 1, 0), F), 10)
    assert intersection_multiplicity(HomogeneousForm.linear(F, 0, 0, 1), O) == 3
    two_torsion = local_parametrization(E7.form, ProjPoint((3, 0, 1), F), 10)
    assert intersection_multiplicity(HomogeneousForm.linear(F, 1, 0, -3), two_torsion) == 2
    generic = local_parametrization(E7.form, ProjPoint((2, 3, 1), F), 10)
    assert intersection_multiplicity(HomogeneousForm.linear(F, 1, 1, 2), generic) == 1


def test_line_multiplicities_match_root_multiplicity():
    """Every line through every point: branch valuation = root multiplicity."""
    E = WeierstrassCurve.from_params(13, 2, 5)
    p = E.p
    for P in E.points:
        Q = E.to_proj(P)
        br = local_parametrization(E.form, Q, 4)
        for d in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 2, 3), (2, 0, 1)]:
            # line through Q in direction d: coefficients of the cross product
            a = ((Q.coords[1] * d[2] - Q.coords[2] * d[1]) % p,
                 (Q.coords[2] * d[0] - Q.coords[0] * d[2]) % p,
                 (Q.coords[0] * d[1] - Q.coords[1] * d[0]) % p)
            if not any(a):
                continue
            L = HomogeneousForm.linear(E.field, *a)
            assert intersection_multiplicity(L, br) == line_root_multiplicity(E, Q.coords, d)


def test_chart_independence():
    E = WeierstrassCurve.from_params(31, 3, 7)
    rng = random.Random(4)
    for P in E.points:
        if P.is_infinity or P.y == 0 or P.x == 0:
            continue
        Q = E.to_proj(P)
        F = HomogeneousForm.from_vector(E.field, 2, [rng.randrange(31) for _ in range(6)])
        F = F - HomogeneousForm.monomial(E.field, (0, 0, 2), F.evaluate(Q.coords))  # force F(Q) = 0
        ref = intersection_multiplicity(F, local_parametrization(E.form, Q, 7))
        for chart in (0, 1, 2):
            for dep in (0, 1):
                try:
                    br = local_parametrization(E.form, Q, 7, chart=chart, dependent=dep)
                except (SingularPoint, ValidationError):
                    continue  # chart or variable not admissible at Q
                assert intersection_multiplicity(F, br) == ref


def test_intersection_divisor_examples(E7):
    F = E7.field
    D = intersection_divisor(HomogeneousForm.linear(F, 0, 0, 1), E7)
    assert D.entries == {ProjPoint((0, 1, 0), F): 3} and D.total == 3
    with pytest.raises(CommonComponent):
        intersection_divisor(E7.form, E7)
    with pytest.raises(CommonComponent):
        intersection_divisor(E7.form * HomogeneousForm.linear(F, 1, 2, 3), E7)
    verticals = HomogeneousForm.linear(F, 1, 0, -3) * HomogeneousForm.linear(F, 1, 0, -5)
    D = intersection_divisor(verticals, E7).as_divisor(E7)
    assert D == DivisorOnE({EPoint(3, 0): 2, EPoint(5, 0): 2, INF: 2})


def test_non_rational_intersection():
    E = WeierstrassCurve.from_params(7, 0, 2)
    # the vertical line x = x0 meets E in conjugate points when rhs(x0) is a non-residue
    x0 = next(x for x in range(7) if pow(E.rhs(x), 3, 7) == 6)
    with pytest.raises(NonRationalIntersection):
        intersection_divisor(HomogeneousForm.linear(E.field, 1, 0, -x0), E)


def forms_vanishing_at(E, P, order, degree, rng):
    M = vanishing_system(DivisorOnE({P: order}), degree, E)
    basis = kernel_basis(M)
    vec = [0] * M.cols
    for v in basis:
        c = rng.randrange(E.p)
        vec = [(a + c * b) % E.p for a, b in zip(vec, v)]
    return HomogeneousForm.from_vector(E.field, degree, vec)


def test_multiplicativity_under_products():
    E = WeierstrassCurve.from_params(101, 5, 17)
    rng = random.Random(9)
    for _ in range(60):
        P = rng.choice(E.points)
        br = local_parametrization(E.form, E.to_proj(P), 3 * 6 + 1)
        F = forms_vanishing_at(E, P, rng.randint(0, 3), rng.randint(1, 3), rng)
        G = forms_vanishing_at(E, P, rng.randint(0, 3), rng.randint(1, 3), rng)
        if F.is_zero() or G.is_zero():
            continue
        if divides_cubic(F, E) or divides_cubic(G, E):
            continue
        a, b = intersection_multiplicity(F, br), intersection_multiplicity(G, br)
        assert intersection_multiplicity(F * G, br) == a + b
