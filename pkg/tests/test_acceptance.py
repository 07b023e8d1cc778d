"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line that is echoed in the pytest
terminal summary under "acceptance criteria".
"""

import copy
import io
import json
import random
import time

import pytest

from cyclicsplit.arith import is_prime, kernel_basis
from cyclicsplit.certificate import verify_certificate
from cyclicsplit.cli import main
from cyclicsplit.construct import ConstructionRequest, construct, divisors
from cyclicsplit.elliptic import INF, DivisorOnE, WeierstrassCurve, add_points, group_order, negate, point_order, scalar_multiply
from cyclicsplit.forms import HomogeneousForm, projective_points
from cyclicsplit.geometry import divides_cubic, intersection_divisor, intersection_multiplicity, local_parametrization
from cyclicsplit.splitting import (
    CoverSpec,
    assemble_dbc,
    certify,
    class_point_of,
    principality_witness,
    splitting_number,
    splitting_number_oracle,
    vanishing_system,
    verify_witness,
    witness_search,
)

TYPES = [(b, m) for m in range(1, 9) for b in (m, 2 * m) if 3 <= b <= 8]
PRIMES = [p for p in range(5, 200) if is_prime(p)]


def record(log, number, title, ok, detail):
    log.append(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({detail})")
    assert ok, detail


def random_instance(rng):
    """A constructed curve of type (b, m) with lambda = mu over a random small field."""
    b, m = rng.choice(TYPES)
    mu = rng.choice(divisors(m))
    primes = [q for q in PRIMES if (6 * m) % q]
    while True:
        p = rng.choice(primes)
        a4, a6 = rng.randrange(p), rng.randrange(p)
        if (4 * a4 ** 3 + 27 * a6 ** 2) % p == 0:
            continue
        E = WeierstrassCurve.from_params(p, a4, a6)
        if E.exponent % mu or E.order - 1 < 3 * (b // m) + 3:
            continue
        req = ConstructionRequest(b, m, mu, E, seed=rng.randrange(10 ** 6))
        return req, construct(req)


@pytest.fixture(scope="module")
def instances():
    rng = random.Random(20240601)
    t0 = time.perf_counter()
    out = [random_instance(rng) for _ in range(60)]
    return out, time.perf_counter() - t0


def test_criterion_1_oracle_equivalence(instances, acceptance_log):
    insts, build_time = instances
    t0 = time.perf_counter()
    bad = []
    for req, inst in insts:
        cover = CoverSpec(req.m, inst.form, req.curve)
        res = splitting_number(cover)
        oracle = splitting_number_oracle(cover, req.seed)
        if res.nu != oracle or res.lam * res.nu != req.m or res.lam != req.mu:
            bad.append((req.curve.p, req.b, req.m, req.mu, res, oracle))
    elapsed = build_time + time.perf_counter() - t0
    types = {(r.b, r.m) for r, _ in insts}
    mus = sorted({r.mu for r, _ in insts})
    primes = {r.curve.p for r, _ in insts}
    record(acceptance_log, 1, "splitting_number == splitting_number_oracle and lambda * nu = m",
           not bad and len(insts) >= 50 and elapsed < 120,
           f"{len(insts)} instances, {len(types)} types, {len(primes)} primes, mu in {mus}, {len(bad)} disagreements, {elapsed:.1f}s")


def test_criterion_2_kplet_4_4(tmp_path, acceptance_log):
    t0 = time.perf_counter()
    out, err = io.StringIO(), io.StringIO()
    code = main(["kplet", "-b", "4", "-m", "4", "--certify", str(tmp_path)], out, err)
    doc = json.loads(out.getvalue()) if code == 0 else {"members": []}
    lams = sorted(mem["lambda"] for mem in doc["members"])
    nus = sorted(mem["splitting_number"] for mem in doc["members"])
    files = sorted(tmp_path.glob("cert_mu*.json"))
    verified = []
    for f in files:
        vout = io.StringIO()
        verified.append(main(["verify", str(f)], vout, io.StringIO()) == 0)
    elapsed = time.perf_counter() - t0
    ok = (code == 0 and len(files) == 3 and lams == [1, 2, 4] and nus == [1, 2, 4]
          and all(verified) and elapsed < 60)
    record(acceptance_log, 2, "kplet -b 4 -m 4 yields 3 verified certificates",
           ok, f"lambda {lams}, nu {nus}, {sum(verified)}/{len(files)} verified, {elapsed:.1f}s")


def test_criterion_3_kernel_dimension_law(instances, acceptance_log):
    insts, _ = instances
    checked, bad = 0, []
    for req, inst in insts[:25]:
        cover = CoverSpec(req.m, inst.form, req.curve)
        dbc, _ = assemble_dbc(cover)
        S = class_point_of(dbc, req.curve)
        for k in range(1, req.m + 1):
            kn = k * req.n
            ev = witness_search(dbc, k, req.curve, req.seed)
            expected = (kn - 2) * (kn - 1) // 2 + (scalar_multiply(k, S, req.curve) == INF)
            checked += 1
            if ev.kernel_dim != expected:
                bad.append((req.curve.p, req.b, req.m, k, ev.kernel_dim, expected))
    record(acceptance_log, 3, "level-k kernel dimension = (kn-2)(kn-1)/2 + [k*S = O]",
           not bad and checked >= 20, f"{checked} (instance, level) pairs, {len(bad)} mismatches")


def naive_count(p, a4, a6):
    """Projective solutions of Y^2 Z = X^3 + a4 X Z^2 + a6 Z^3 by brute force."""
    count = 0
    for x, y, z in ((P.coords) for P in projective_points(WeierstrassCurve.from_params(p, a4, a6).field)):
        if (y * y * z - x ** 3 - a4 * x * z * z - a6 * z ** 3) % p == 0:
            count += 1
    return count


def test_criterion_4_group_law(acceptance_log):
    rng = random.Random(4)
    curves = [(5, 0, 1), (7, 0, 1), (5, 4, 0), (13, 2, 5), (101, 5, 17), (197, 3, 11)]
    failures = []
    if naive_count(5, 0, 1) != 6 or naive_count(7, 0, 1) != 12:
        failures.append("naive counts")
    for params in curves:
        E = WeierstrassCurve.from_params(*params)
        if group_order(E) != naive_count(*params) or len(E.points) != group_order(E):
            failures.append(f"order {params}")
        pts = E.points
        for _ in range(1000):
            P, Q, R = (rng.choice(pts) for _ in range(3))
            if add_points(add_points(P, Q, E), R, E) != add_points(P, add_points(Q, R, E), E):
                failures.append(f"assoc {params}")
            if add_points(P, INF, E) != P or add_points(P, negate(P, E), E) != INF:
                failures.append(f"identity/inverse {params}")
            if add_points(P, Q, E) != add_points(Q, P, E):
                failures.append(f"commutativity {params}")
        N = group_order(E)
        for P in pts:
            if N % point_order(P, E):
                failures.append(f"order of {P} on {params}")
    record(acceptance_log, 4, "group law axioms, point orders divide #E, #E = 6 and 12",
           not failures, f"{len(curves)} curves x 1000 triples, {len(failures)} failures")


def principal_form(E, degree, rng):
    """A degree-d form cutting out 3d random points of E whose sum is O."""
    affine = [P for P in E.points if not P.is_infinity]
    while True:
        pts = [rng.choice(affine) for _ in range(3 * degree - 1)]
        S = INF
        for P in pts:
            S = add_points(S, P, E)
        pts.append(negate(S, E))
        D = DivisorOnE.from_points(pts)
        basis = kernel_basis(vanishing_system(D, degree, E))
        vec = [0] * len(basis[0])
        for v in basis:
            c = rng.randrange(E.p)
            vec = [(a + c * b) % E.p for a, b in zip(vec, v)]
        F = HomogeneousForm.from_vector(E.field, degree, vec)
        if not F.is_zero() and not divides_cubic(F, E):
            return F


def test_criterion_5_bezout_and_multiplicativity(instances, acceptance_log):
    insts, _ = instances
    rng = random.Random(5)
    audited, bad = 0, []
    forms = []
    for req, inst in insts:
        forms.append((inst.form, req.curve))
        dbc, _ = assemble_dbc(CoverSpec(req.m, inst.form, req.curve))
        forms.append((principality_witness(dbc, req.mu, req.curve, req.seed), req.curve))
    for params in [(101, 5, 17), (13, 2, 5), (197, 3, 11)]:
        E = WeierstrassCurve.from_params(*params)
        for _ in range(20):
            forms.append((principal_form(E, rng.randint(1, 4), rng), E))
    for F, E in forms:
        total = intersection_divisor(F, E).total
        audited += 1
        if total != 3 * F.degree:
            bad.append((E.p, F.degree, total))

    E = WeierstrassCurve.from_params(101, 5, 17)
    mult_cases = 0
    while mult_cases < 200:
        F = principal_form(E, rng.randint(1, 3), rng)
        G = principal_form(E, rng.randint(1, 3), rng)
        P = rng.choice(E.points)
        br = local_parametrization(E.form, E.to_proj(P), 3 * (F.degree + G.degree) + 1)
        if intersection_multiplicity(F * G, br) != intersection_multiplicity(F, br) + intersection_multiplicity(G, br):
            bad.append(("multiplicativity", P))
        mult_cases += 1
    record(acceptance_log, 5, "intersection divisors total 3 deg F; I(FG) = I(F) + I(G)",
           not bad, f"{audited} divisors audited, {mult_cases} product cases, {len(bad)} failures")


def leaves(doc, path=()):
    if isinstance(doc, dict):
        for k, v in doc.items():
            yield from leaves(v, path + (k,))
    elif isinstance(doc, list):
        for i, v in enumerate(doc):
            yield from leaves(v, path + (i,))
    else:
        yield path, doc


def tamper(doc, path, leaf):
    out = copy.deepcopy(doc)
    node = out
    for k in path[:-1]:
        node = node[k]
    if isinstance(leaf, bool):
        node[path[-1]] = not leaf
    elif isinstance(leaf, int):
        node[path[-1]] = leaf + 1
    else:
        node[path[-1]] = str(leaf) + "x"
    return out


def test_criterion_6_witness_round_trip(instances, acceptance_log):
    insts, _ = instances
    problems = []
    tampered = 0
    for idx, (req, inst) in enumerate(insts):
        cover = CoverSpec(req.m, inst.form, req.curve)
        dbc, _ = assemble_dbc(cover)
        lam = splitting_number(cover).lam
        G = principality_witness(dbc, lam, req.curve, req.seed)
        if G is None or not verify_witness(G, dbc, lam, req.curve):
            problems.append(("witness", idx))
        cert = certify(cover, req.seed)
        doc = cert.to_json()
        ranks = doc["nonexistence_ranks"]
        if sorted(ranks, key=int) != [str(k) for k in range(1, lam)]:
            problems.append(("rank levels", idx))
        if any(r["kernel_dim"] != r["cubic_multiples_dim"] for r in ranks.values()):
            problems.append(("rank evidence", idx))
        if not verify_certificate(json.loads(json.dumps(doc))).ok:
            problems.append(("round trip", idx))
        if idx < 6:
            for path, leaf in leaves(doc):
                tampered += 1
                if verify_certificate(tamper(doc, path, leaf)).ok:
                    problems.append(("tamper", idx, path))
    record(acceptance_log, 6, "witness at lambda verifies, lower levels witness-free, tampering detected",
           not problems, f"{len(insts)} instances, {tampered} tampered fields, {len(problems)} problems")
