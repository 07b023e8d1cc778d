"""Command line front end.

Exit status: 0 success, 2 invalid input, 3 mathematical obstruction or
invalid certificate, 4 retry budget exhausted.  Errors are reported on
stderr as a JSON object naming the error class.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .certificate import dumps, emit_certificate, load_certificate, verify_certificate
from .construct import DEFAULT_RETRIES, ConstructionRequest, build_kplet, construct, find_curve
from .elliptic import WeierstrassCurve
from .errors import CyclicSplitError, ValidationError
from .forms import HomogeneousForm
from .splitting import CoverSpec, certify, splitting_number

_DECIMAL = re.compile(r"-?[0-9]+")


def strict_int(text: str) -> int:
    if not _DECIMAL.fullmatch(text):
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    return int(text)


def positive_int(text: str) -> int:
    v = strict_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def curve_arg(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected p,a4,a6")
    return tuple(strict_int(s.strip()) for s in parts)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyclicsplit",
        description="Splitting numbers of a smooth cubic under simple cyclic covers of the plane.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def cover_flags(p):
        p.add_argument("--curve", type=curve_arg, required=True, help="p,a4,a6 for y^2 = x^3 + a4 x + a6")
        p.add_argument("--branch", type=Path, required=True, help="JSON form record {p, degree, terms}")
        p.add_argument("-m", type=positive_int, required=True, help="degree of the cyclic cover")

    sp = sub.add_parser("split", help="splitting number of the cubic")
    cover_flags(sp)
    sp.add_argument("--seed", type=strict_int, default=0)
    sp.add_argument("--certify", type=Path, metavar="FILE", help="also write a full certificate")

    sp = sub.add_parser("lambda", help="the lambda-invariant of B + E")
    cover_flags(sp)

    sp = sub.add_parser("construct", help="build a curve of type (b, m) with lambda = mu")
    sp.add_argument("-b", type=positive_int, required=True)
    sp.add_argument("-m", type=positive_int, required=True)
    sp.add_argument("--mu", type=positive_int, required=True)
    sp.add_argument("--curve", type=curve_arg, help="default: smallest suitable curve")
    sp.add_argument("--seed", type=strict_int, default=0)
    sp.add_argument("--retries", type=positive_int, default=DEFAULT_RETRIES)
    sp.add_argument("--certify", type=Path, metavar="FILE")

    sp = sub.add_parser("verify", help="re-check a certificate file")
    sp.add_argument("file", type=Path)

    sp = sub.add_parser("kplet", help="one certified curve per divisor of m")
    sp.add_argument("-b", type=positive_int, required=True)
    sp.add_argument("-m", type=positive_int, required=True)
    sp.add_argument("--curve", type=curve_arg)
    sp.add_argument("--seed", type=strict_int, default=0)
    sp.add_argument("--retries", type=positive_int, default=DEFAULT_RETRIES)
    sp.add_argument("--certify", type=Path, metavar="DIR", help="write cert_mu<mu>.json files here")

    sp = sub.add_parser("demo", help="the (4, 4) three-member demonstration")
    sp.add_argument("--seed", type=strict_int, default=0)
    sp.add_argument("--retries", type=positive_int, default=DEFAULT_RETRIES)
    sp.add_argument("--certify", type=Path, metavar="DIR")
    return ap


def _curve(spec) -> WeierstrassCurve:
    return WeierstrassCurve.from_params(*spec)


def _branch(path: Path, curve: WeierstrassCurve) -> HomogeneousForm:
    try:
        record = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(record, dict):
        raise ValidationError(f"{path}: expected a JSON object")
    form = HomogeneousForm.from_record(record)
    if form.field != curve.field:
        raise ValidationError(f"branch form is over F_{form.field.p}, curve over F_{curve.p}")
    return form


def _warn_small_b(b: int, err):
    if b < 4:
        print(f"warning: b = {b} lies outside the theorem hypotheses (b >= 4); exploring anyway", file=err)


def _kplet_doc(b, m, curve, members, outdir: Path | None) -> dict:
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
    out = []
    for mem in members:
        entry = {"mu": mem.mu, "lambda": mem.certificate.lam, "splitting_number": mem.certificate.splitting_number,
                 "branch": mem.form.to_record(), "certificate": mem.certificate.to_json()}
        if outdir is not None:
            entry["certificate_file"] = str(emit_certificate(mem.certificate, outdir / f"cert_mu{mem.mu}.json"))
        out.append(entry)
    return {"b": b, "m": m, "curve": curve.to_record(), "k": len(out), "members": out}


def run(args, out, err) -> int:
    cmd = args.command
    if cmd in ("split", "lambda"):
        curve = _curve(args.curve)
        cover = CoverSpec(args.m, _branch(args.branch, curve), curve)
        res = splitting_number(cover)
        if cmd == "lambda":
            out.write(dumps({"lambda": res.lam}))
            return 0
        doc = {"nu": res.nu, "lambda": res.lam, "class_point": res.class_point.to_json()}
        if args.certify is not None:
            emit_certificate(certify(cover, args.seed), args.certify)
            doc["certificate_file"] = str(args.certify)
        out.write(dumps(doc))
        return 0

    if cmd == "construct":
        _warn_small_b(args.b, err)
        curve = _curve(args.curve) if args.curve else find_curve(args.b, args.m)
        req = ConstructionRequest(args.b, args.m, args.mu, curve, seed=args.seed, retry_budget=args.retries)
        inst = construct(req)
        doc = {"curve": curve.to_record(), "b": args.b, "m": args.m, **inst.to_json()}
        if args.certify is not None:
            emit_certificate(certify(CoverSpec(args.m, inst.form, curve), args.seed), args.certify)
            doc["certificate_file"] = str(args.certify)
        out.write(dumps(doc))
        return 0

    if cmd == "verify":
        rep = verify_certificate(load_certificate(args.file))
        out.write(dumps(rep.to_json()))
        if not rep.ok:
            first = rep.failures[0]
            err.write(json.dumps({"error": "CertificateInvalid", "check": first[0], "message": first[1]}) + "\n")
            return 3
        return 0

    if cmd in ("kplet", "demo"):
        b, m = (4, 4) if cmd == "demo" else (args.b, args.m)
        _warn_small_b(b, err)
        curve = _curve(args.curve) if getattr(args, "curve", None) else find_curve(b, m)
        members = build_kplet(b, m, curve, seed=args.seed, retry_budget=args.retries)
        out.write(dumps(_kplet_doc(b, m, curve, members, args.certify)))
        return 0
    raise AssertionError(cmd)


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args, out, err)
    except CyclicSplitError as exc:
        err.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return exc.exit_code
    except OSError as exc:
        err.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
