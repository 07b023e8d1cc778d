"""Canonical JSON certificates and their independent re-verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .elliptic import WeierstrassCurve, point_order
from .errors import CyclicSplitError, ValidationError
from .forms import HomogeneousForm
from .splitting import (
    CoverSpec,
    SplittingCertificate,
    assemble_dbc,
    check_invariants,
    class_point_of,
    verify_witness,
    witness_search,
)

CERTIFICATE_KEYS = {
    "kind", "method", "ground_field", "within_theorem_hypotheses", "cover", "intersection",
    "class_point", "lambda", "splitting_number", "witness_form", "witness_level",
    "nonexistence_ranks", "seed",
}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def certificate_text(cert: SplittingCertificate) -> str:
    check_invariants(cert)
    return dumps(cert.to_json())


def emit_certificate(cert: SplittingCertificate, path: str | Path) -> Path:
    """Write ``cert`` as canonical JSON; refuses certificates that break invariants."""
    text = certificate_text(cert)
    path = Path(path)
    path.write_text(text)
    return path


@dataclass
class VerificationReport:
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, message: str):
        self.failures.append((check, message))

    def to_json(self) -> dict:
        return {
            "valid": self.ok,
            "failures": [{"check": c, "message": m} for c, m in self.failures],
        }


def _differs(recorded, computed) -> bool:
    # compare canonical text so that true/1 and 1.0/1 count as different
    return json.dumps(recorded, sort_keys=True) != json.dumps(computed, sort_keys=True)


def _int(x, what):
    if not isinstance(x, int) or isinstance(x, bool):
        raise ValidationError(f"{what} must be an integer")
    return x


def verify_certificate(doc) -> VerificationReport:
    """Recompute every recorded quantity from the cover data alone.

    The report lists each failing check by name; an empty list means the
    certificate is valid.
    """
    rep = VerificationReport()
    if not isinstance(doc, dict):
        rep.fail("schema", "certificate must be a JSON object")
        return rep
    keys = set(doc)
    if keys != CERTIFICATE_KEYS:
        rep.fail("schema", f"missing {sorted(CERTIFICATE_KEYS - keys)}, unexpected {sorted(keys - CERTIFICATE_KEYS)}")
        return rep

    try:
        c = doc["cover"]
        if set(c) != {"curve", "m", "b", "n", "branch"}:
            raise ValidationError("cover record has wrong fields")
        cv = c["curve"]
        if set(cv) != {"p", "a4", "a6"}:
            raise ValidationError("curve record has wrong fields")
        curve = WeierstrassCurve.from_params(_int(cv["p"], "p"), _int(cv["a4"], "a4"), _int(cv["a6"], "a6"))
        if _differs([cv["a4"], cv["a6"]], [curve.a4, curve.a6]):
            raise ValidationError("curve coefficients are not canonical residues")
        branch = HomogeneousForm.from_record(c["branch"])
        if _differs(c["branch"], branch.to_record()):
            raise ValidationError("branch form is not in canonical terms order")
        cover = CoverSpec(_int(c["m"], "m"), branch, curve)
        if _differs([c["b"], c["n"]], [cover.b, cover.n]):
            raise ValidationError(f"recorded (b, n) = ({c['b']}, {c['n']}) but branch gives ({cover.b}, {cover.n})")
    except (CyclicSplitError, KeyError, TypeError, ValueError) as exc:
        rep.fail("cover", str(exc))
        return rep

    if doc["kind"] != "splitting-certificate":
        rep.fail("kind", f"unexpected kind {doc['kind']!r}")
    if doc["method"] != {"class_order": "group law on E with flex identity O", "oracle": "interpolation criterion"}:
        rep.fail("method", "unexpected method description")
    if doc["ground_field"] != f"F_{curve.p} (finite-field proxy for the complex numbers)":
        rep.fail("ground_field", "ground field note does not match the curve")
    if doc["within_theorem_hypotheses"] is not (cover.b >= 4):
        rep.fail("within_theorem_hypotheses", f"b = {cover.b}")

    try:
        dbc, inter = assemble_dbc(cover)
    except CyclicSplitError as exc:
        rep.fail("intersection", f"{type(exc).__name__}: {exc}")
        return rep
    if _differs(doc["intersection"], inter.to_json(curve)):
        rep.fail("intersection", "recorded intersection divisor differs from recomputation")

    S = class_point_of(dbc, curve)
    if _differs(doc["class_point"], S.to_json()):
        rep.fail("class_point", f"recomputed class point {S.to_json()}")
    lam = point_order(S, curve)
    if _differs(doc["lambda"], lam):
        rep.fail("lambda", f"recomputed lambda {lam}")
    nu = doc["splitting_number"]
    both_int = all(isinstance(v, int) and not isinstance(v, bool) for v in (nu, doc["lambda"]))
    if _differs(nu, cover.m // lam) or not both_int or doc["lambda"] * nu != cover.m:
        rep.fail("splitting_number", f"expected {cover.m // lam} with lambda * nu = m")
    if _differs(doc["witness_level"], lam):
        rep.fail("witness_level", f"witness must sit at level lambda = {lam}")

    witness = None
    try:
        witness = HomogeneousForm.from_record(doc["witness_form"])
        if witness.field != curve.field or _differs(doc["witness_form"], witness.to_record()):
            raise ValidationError("witness form is not canonical over the curve's field")
        if not verify_witness(witness, dbc, lam, curve):
            rep.fail("witness", f"witness does not cut out {lam} * D_(B,E) on E")
    except CyclicSplitError as exc:
        rep.fail("witness", f"{type(exc).__name__}: {exc}")

    seed = doc["seed"]
    if not isinstance(seed, int) or isinstance(seed, bool):
        rep.fail("seed", "seed must be an integer")
        return rep

    ranks = doc["nonexistence_ranks"]
    if not isinstance(ranks, dict) or sorted(ranks) != sorted(str(k) for k in range(1, lam)):
        rep.fail("nonexistence_ranks", f"expected levels 1..{lam - 1}")
    else:
        for k in range(1, lam):
            ev = witness_search(dbc, k, curve, seed)
            if ev.witness is not None:
                rep.fail("nonexistence_ranks", f"level {k} admits a witness")
            elif _differs(ranks[str(k)], ev.to_json()):
                rep.fail("nonexistence_ranks", f"level {k}: recorded {ranks[str(k)]}, recomputed {ev.to_json()}")

    top = witness_search(dbc, lam, curve, seed)
    if top.witness is None:
        rep.fail("witness", f"no witness exists at level {lam}")
    elif witness is not None and top.witness != witness:
        rep.fail("seed", "witness is not the one selected by the recorded seed")
    return rep


def load_certificate(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
