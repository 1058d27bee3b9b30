"""Command-line front end.

Subcommands: sps-check, sps-search, split-verify, split-search,
enumerate-sps, ring.  All output is a single JSON run report on stdout;
exit 0 means found/valid, 1 not found or invalid certificate, 2 input
error.  Reports echo the canonical form and a hash of every input so a
report is self-contained and re-checkable.

Note: irreducibility of divisor equations is never tested; the caller
asserts it, and the generator hypothesis behind splitting certificates
is recorded as a user assertion in the report metadata.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .field import CoefficientField, FieldError
from .poly import DegreeError, MismatchError, ParseError, Polynomial, parse
from .quadring import DoubleCover, QuadRingElement, conjugate, norm, ring_mul
from .sps import SpsCertificate, sps_search, sps_verify
from .splitting import (
    HypothesisError,
    SplitCertificate,
    SpsBasis,
    split_search,
    split_verify,
)
from .enum_sps import enumerate_sps_degree, enumerate_sps_lines
from .util import CostGuardError, default_jobs

EXIT_FOUND = 0
EXIT_NOT_FOUND = 1
EXIT_INPUT_ERROR = 2


class InputError(Exception):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read().strip()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _parse_field(label: str, closure: bool):
    """'q' or 'fp:P' (optionally 'fp:P1,P2,...'); returns (field, primes)."""
    label = label.strip().lower()
    if label in ("q", "qq", "rationals"):
        return CoefficientField(closure_mode=closure), None
    if label.startswith("fp:"):
        primes = [int(x) for x in label[3:].split(",") if x]
        if not primes:
            raise InputError("no primes given after fp:")
        return CoefficientField(primes[0], closure_mode=closure), primes
    raise InputError(f"unknown field {label!r} (expected 'q' or 'fp:P')")


def _load_poly(path: str, nvars: int, field) -> tuple:
    text = _read_text(path)
    try:
        poly = parse(text, nvars, field)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}", exc.position) from exc
    return poly, {"file": path, "sha256": _sha256(text), "poly": str(poly)}


def _load_cert_json(path: str) -> dict:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def _emit(report: dict, pretty: bool) -> None:
    print(json.dumps(report, indent=2 if pretty else None, sort_keys=False))


def _report(subcommand, args, field, inputs, result, started, hypotheses=None, bounds=None):
    report = {
        "subcommand": subcommand,
        "toolVersion": __version__,
        "field": field.label(),
        "inputs": inputs,
        "result": result,
        "assertedHypotheses": hypotheses or [],
        "seed": args.seed,
        "timingSeconds": round(time.perf_counter() - started, 6),
    }
    if bounds:
        report["bounds"] = bounds
    return report


# ----------------------------------------------------------------------


def _add_common(sub, cover=True):
    sub.add_argument("--field", default="q", help="coefficient field: q or fp:P")
    sub.add_argument("--closure", action="store_true",
                     help="treat the field as algebraically closed for existence questions")
    sub.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub.add_argument("--seed", type=int, default=0, help="seed for randomized internals")
    sub.add_argument("--jobs", type=int, default=None,
                     help="worker processes (default: SPLITCERT_JOBS or 1)")
    if cover:
        sub.add_argument("--cover", required=True, help="file with the branch equation F")
        sub.add_argument("-l", type=int, required=True, dest="l",
                         help="half the branch degree (deg F = 2l)")
        sub.add_argument("-n", type=int, default=2, dest="n",
                         help="projective dimension (default 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitcert",
        description="Certify and search splitting / SPS divisors on double covers "
                    "of projective space.  Divisor equations are assumed irreducible; "
                    "this is asserted, never checked.")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    for name in ("sps-check", "sps-search"):
        sub = subs.add_parser(name, help="search (or verify with --cert) an SPS certificate")
        _add_common(sub)
        sub.add_argument("--divisor", required=True, help="file with the divisor equation f")
        sub.add_argument("--point", help="rational point a,b,c on a conic divisor")
        sub.add_argument("--cert", help="certificate JSON to verify instead of searching")

    sub = subs.add_parser("split-verify", help="verify a splitting certificate")
    _add_common(sub)
    sub.add_argument("--divisor", required=True)
    sub.add_argument("--sps", required=True, help="comma-separated files g1.txt,g2.txt,...")
    sub.add_argument("--cert", required=True, help="certificate JSON file")

    sub = subs.add_parser("split-search", help="search a splitting certificate within bounds")
    _add_common(sub)
    sub.add_argument("--divisor", required=True)
    sub.add_argument("--sps", required=True)
    sub.add_argument("--max-exp", type=int, required=True, dest="max_exp")
    sub.add_argument("--max-k", type=int, required=True, dest="max_k")
    sub.add_argument("--lift-to-q", action="store_true", dest="lift",
                     help="search modulo the given primes and reconstruct over Q")

    sub = subs.add_parser("enumerate-sps", help="enumerate SPS candidates over GF(p)")
    _add_common(sub)
    sub.add_argument("--degree", type=int, default=1)
    sub.add_argument("--max-candidates", type=int, default=10**6, dest="max_candidates")
    sub.add_argument("--allow-over-bound", action="store_true", dest="over_bound")

    sub = subs.add_parser("ring", help="arithmetic in k[x][t]/(t^2 - F)")
    _add_common(sub)
    sub.add_argument("op", choices=["mul", "norm", "conj"])
    sub.add_argument("--elem", required=True, help='JSON {"p":...,"q":...,"k":...} or @file')
    sub.add_argument("--elem2", help="second element for mul")

    return parser


# ----------------------------------------------------------------------


def _load_cover(args, field) -> tuple:
    F, info = _load_poly(args.cover, args.n + 1, field)
    info["l"] = args.l
    info["n"] = args.n
    return DoubleCover(args.n, F, args.l), info


def _cmd_sps(args, field) -> tuple:
    started = time.perf_counter()
    cover, cover_info = _load_cover(args, field)
    f, f_info = _load_poly(args.divisor, args.n + 1, field)
    inputs = {"cover": cover_info, "divisor": f_info}
    if args.cert:
        data = _load_cert_json(args.cert)
        cert = SpsCertificate(parse(data["h"], args.n + 1, field),
                              parse(data["g"], args.n + 1, field),
                              field.convert(Fraction(str(data.get("unit", 1)))))
        try:
            valid = sps_verify(cover, f, cert)
            reason = "" if valid else "identity residual nonzero"
        except DegreeError as exc:
            valid, reason = False, f"degree mismatch: {exc}"
        result = {"valid": valid, "reason": reason}
        code = EXIT_FOUND if valid else EXIT_NOT_FOUND
    else:
        point = tuple(int(x) for x in args.point.split(",")) if args.point else None
        res = sps_search(cover, f, point=point, jobs=args.jobs)
        result = {"found": res.found, "inBranch": res.in_branch,
                  "strategy": res.strategy, "exhaustive": res.exhaustive}
        if res.found:
            result.update(res.certificate.to_json())
        else:
            result["reason"] = res.reason
        code = EXIT_FOUND if res.found else EXIT_NOT_FOUND
    return _report(args.subcommand, args, field, inputs, result, started,
                   hypotheses=["divisor equation asserted irreducible"]), code


def _load_basis(args, field) -> tuple:
    polys, infos = [], []
    for path in args.sps.split(","):
        g, info = _load_poly(path.strip(), args.n + 1, field)
        polys.append(g)
        infos.append(info)
    return SpsBasis.from_polys(polys), infos


GENERATOR_HYPOTHESIS = ("class group generated by the hyperplane pullback and the "
                        "components of the pulled-back basis divisors (user assertion)")


def _cmd_split_verify(args, field) -> tuple:
    started = time.perf_counter()
    cover, cover_info = _load_cover(args, field)
    f, f_info = _load_poly(args.divisor, args.n + 1, field)
    basis, basis_info = _load_basis(args, field)
    data = _load_cert_json(args.cert)
    cert = SplitCertificate(parse(data["p"], args.n + 1, field),
                            parse(data["q"], args.n + 1, field),
                            tuple(int(x) for x in data["a"]), int(data["k"]))
    inputs = {"cover": cover_info, "divisor": f_info, "sps": basis_info,
              "certificate": data}
    try:
        valid = split_verify(cover, f, basis, cert)
        reason = "" if valid else "identity residual nonzero"
    except DegreeError as exc:
        valid, reason = False, f"degree mismatch: {exc}"
    result = {"valid": valid, "reason": reason}
    return _report("split-verify", args, field, inputs, result, started,
                   hypotheses=[GENERATOR_HYPOTHESIS]), EXIT_FOUND if valid else EXIT_NOT_FOUND


def _cmd_split_search(args, field, primes) -> tuple:
    started = time.perf_counter()
    if args.lift:
        field = CoefficientField(closure_mode=args.closure)
    cover, cover_info = _load_cover(args, field)
    f, f_info = _load_poly(args.divisor, args.n + 1, field)
    basis, basis_info = _load_basis(args, field)
    inputs = {"cover": cover_info, "divisor": f_info, "sps": basis_info}
    bounds = {"maxExpSum": args.max_exp, "maxK": args.max_k}
    res = split_search(cover, f, basis, args.max_exp, args.max_k,
                       jobs=args.jobs, primes=primes if args.lift else None)
    result = {"found": res.found, "searchedExponents": res.searched_exponents,
              "searchedQ": res.searched_q}
    if res.found:
        result["certificate"] = res.certificate.to_json()
        result["certificate"]["field"] = field.label()
        result["certificate"]["assertedGeneratorHypothesis"] = True
    else:
        result["reason"] = res.reason
        result["disclaimer"] = res.disclaimer
    if res.evidence:
        result["perPrimeEvidence"] = res.evidence
    return _report("split-search", args, field, inputs, result, started,
                   hypotheses=[GENERATOR_HYPOTHESIS], bounds=bounds), \
        EXIT_FOUND if res.found else EXIT_NOT_FOUND


def _cmd_enumerate(args, field) -> tuple:
    started = time.perf_counter()
    cover, cover_info = _load_cover(args, field)
    inputs = {"cover": cover_info}
    if args.degree == 1:
        enum = enumerate_sps_lines(cover, jobs=args.jobs,
                                   max_candidates=args.max_candidates, seed=args.seed)
    else:
        enum = enumerate_sps_degree(cover, args.degree, jobs=args.jobs,
                                    max_candidates=args.max_candidates,
                                    allow_over_bound=args.over_bound, seed=args.seed)
    hits = []
    for hit in enum.hits:
        entry = {"f": str(hit.f), "inBranch": hit.in_branch,
                 "visiblyReducible": hit.visibly_reducible}
        entry.update(hit.certificate.to_json())
        hits.append(entry)
    result = {"degree": enum.degree, "searchedCount": enum.searched_count,
              "hits": hits, "warnings": enum.warnings}
    return _report("enumerate-sps", args, field, inputs, result, started), \
        EXIT_FOUND if hits else EXIT_NOT_FOUND


def _load_elem(spec: str, nvars: int, field) -> QuadRingElement:
    text = _read_text(spec[1:]) if spec.startswith("@") else spec
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid element JSON: {exc}") from exc
    try:
        return QuadRingElement.from_json(data, nvars, field)
    except ParseError as exc:
        raise InputError(f"element polynomial: {exc}", exc.position) from exc


def _cmd_ring(args, field) -> tuple:
    started = time.perf_counter()
    cover, cover_info = _load_cover(args, field)
    elem = _load_elem(args.elem, args.n + 1, field)
    inputs = {"cover": cover_info, "elem": elem.to_json()}
    if args.op == "mul":
        if not args.elem2:
            raise InputError("ring mul requires --elem2")
        other = _load_elem(args.elem2, args.n + 1, field)
        inputs["elem2"] = other.to_json()
        result = {"product": ring_mul(elem, other, cover).to_json()}
    elif args.op == "conj":
        result = {"conjugate": conjugate(elem).to_json()}
    else:
        result = {"norm": str(norm(elem, cover))}
    return _report("ring", args, field, inputs, result, started), EXIT_FOUND


# ----------------------------------------------------------------------


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty = getattr(args, "pretty", False)
    try:
        field, primes = _parse_field(args.field, getattr(args, "closure", False))
        if args.jobs is None:
            args.jobs = default_jobs()
        if args.subcommand in ("sps-check", "sps-search"):
            report, code = _cmd_sps(args, field)
        elif args.subcommand == "split-verify":
            report, code = _cmd_split_verify(args, field)
        elif args.subcommand == "split-search":
            report, code = _cmd_split_search(args, field, primes)
        elif args.subcommand == "enumerate-sps":
            report, code = _cmd_enumerate(args, field)
        else:
            report, code = _cmd_ring(args, field)
    except InputError as exc:
        payload = {"error": str(exc)}
        if exc.position is not None:
            payload["position"] = exc.position
        _emit(payload, pretty)
        return EXIT_INPUT_ERROR
    except (FieldError, DegreeError, MismatchError, HypothesisError, ValueError) as exc:
        _emit({"error": str(exc)}, pretty)
        return EXIT_INPUT_ERROR
    except CostGuardError as exc:
        _emit({"found": False, "reason": "cost guard", "detail": str(exc)}, pretty)
        return EXIT_NOT_FOUND
    _emit(report, pretty)
    return code


if __name__ == "__main__":
    sys.exit(main())
