"""Command-line front end: ``steiner-moduli <subcommand> ...``.

Exit codes: 0 success, 1 error or out-of-scope input, 2 undecided
(stability for k >= 3 without a conclusive certificate), 3 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Sequence

from . import acceptance
from .census import type1_points_with_index, type2_indices
from .cohomology import (
    ModuliParams,
    betti,
    boundary_dim_even_m,
    euler_formula,
    euler_Ml,
    golden_hodge,
    hodge_vector_Ml,
    strata_codim,
)
from .exactalg import DropPoint, format_scalar
from .gitstab import (
    CertificateStatus,
    LinearMatrix,
    MatrixFormatError,
    Violation,
    boundary_point_even_m,
    certificate_for,
    check_instability_certificate,
    degeneracy_dim_k2,
    parse_matrix_document,
    stability_k2,
    strata_indices,
)
from .tangweights import (
    CalibrationError,
    ConventionError,
    SignConvention,
    calibrate,
    calibrated_convention,
    weights_payload,
)
from .torusfix import FixedPointType1, FixedPointType2, ScopeError, check_params

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED, EXIT_SELFTEST = 0, 1, 2, 3


class CliError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _params(args) -> ModuliParams:
    if args.n is None:
        raise CliError("--n is required")
    m = args.n if args.m is None else args.m
    check_params(args.n, m)
    return ModuliParams(args.n, m)


def _convention(args) -> SignConvention:
    if args.convention and args.convention != "auto":
        return SignConvention.from_code(args.convention)
    return calibrated_convention(args.cache_dir)


# -- subcommands ------------------------------------------------------------------------

def cmd_betti(args, out) -> int:
    p = _params(args)
    h = betti(p, _convention(args), args.jobs)
    b = h.betti
    if args.format == "json":
        out.write(_dump({"n": p.n, "m": p.m, "dim": p.dim, "betti": b,
                         "hodge": list(h.h), "euler": h.euler}) + "\n")
    elif args.format == "csv":
        out.write("n,i,b_i\n")
        for i, v in enumerate(b):
            if i % 2 == 0:
                out.write(f"{p.n},{i},{v}\n")
    else:
        out.write(f"n={p.n} m={p.m} dim={p.dim} euler={h.euler}\n")
        out.write(" ".join(f"b{i}={v}" for i, v in enumerate(b) if i % 2 == 0) + "\n")
    return EXIT_OK


def cmd_euler(args, out) -> int:
    p = _params(args)
    e = euler_formula(p)
    if args.format == "json":
        out.write(_dump({"n": p.n, "m": p.m, "euler": e}) + "\n")
    else:
        out.write(f"{e}\n")
    return EXIT_OK


def cmd_hodge_ml(args, out) -> int:
    if args.l is None:
        raise CliError("--l is required")
    vec = hodge_vector_Ml(args.l)
    if args.format == "json":
        out.write(_dump({"l": args.l, "hodge": vec, "euler": euler_Ml(args.l)}) + "\n")
    else:
        out.write(" ".join(str(v) for v in vec) + "\n")
    return EXIT_OK


def cmd_fixed_points(args, out) -> int:
    p = _params(args)
    conv = _convention(args)
    n1 = 0
    for q, k in type1_points_with_index(p.n, p.m, conv):
        n1 += 1
        out.write(_dump({"type": 1, "indices": [list(q.I), list(q.J)], "l": None,
                         "count_weight": 1, "n_A": k}) + "\n")
    pts, shifts = type2_indices(p.n, p.m, conv)
    per_l: Counter = Counter()
    for q, k in zip(pts, shifts.tolist()):
        per_l[q.l] += 1
        out.write(_dump({"type": 2, "indices": list(q.indices), "l": q.l,
                         "count_weight": euler_Ml(q.l), "n_A": k}) + "\n")
    summary = {"type1": n1, "type2": {f"l={l}": c for l, c in sorted(per_l.items())}}
    out.write(_dump(summary) + "\n")
    return EXIT_OK


def _int_list(text: str | None, flag: str) -> tuple[int, ...]:
    if not text:
        raise CliError(f"{flag} is required")
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CliError(f"{flag} must be a comma-separated list of integers") from None


def cmd_weights(args, out) -> int:
    if args.n is None:
        raise CliError("--n is required")
    if args.type == 1:
        point = FixedPointType1(args.n, _int_list(args.I, "--I"), _int_list(args.J, "--J"))
    else:
        point = FixedPointType2(args.n, tuple(sorted(_int_list(args.indices, "--indices"))))
    check_params(args.n, point.m)
    payload = weights_payload(point, _convention(args))
    out.write(_dump(payload) + "\n")
    return EXIT_OK


def _read_matrix(path: str) -> tuple[LinearMatrix, int | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix_document(text)


def _witness(w: DropPoint | None):
    if w is None:
        return None
    if w.point is not None:
        return {"point": [format_scalar(w.point.alpha), format_scalar(w.point.beta)], "rank": w.rank}
    return {"minpoly": str(w.minpoly), "rank": w.rank}


def _basis(b) -> list:
    return [[format_scalar(x) for x in row] for row in b]


def cmd_stability(args, out) -> int:
    A, cert_s = _read_matrix(args.path)
    if A.k != 2:
        report = {"k": A.k, "verdict": "undecided", "certificate": None}
        code = EXIT_UNDECIDED
        if cert_s is not None:
            cert = certificate_for(A, cert_s)
            status = check_instability_certificate(cert)
            report["certificate"] = {"s": cert_s, "zeros": list(cert.zeros), "status": status.value}
            if status is CertificateStatus.NONSEMISTABLE:
                report["verdict"], code = "Unstable", EXIT_OK
            elif status is CertificateStatus.NONSTABLE:
                report["verdict"], code = "NotStable", EXIT_OK
        out.write(_dump(report) + "\n")
        return code
    v = stability_k2(A)
    report = {
        "verdict": v.verdict.value,
        "s_max": v.s_max,
        "witness": _witness(v.witness),
        "violations": [x.value for x in v.violations],
        "strata": None,
        "degeneracy_dim": None,
    }
    if Violation.NOT_INJECTIVE not in v.violations:
        report["degeneracy_dim"] = degeneracy_dim_k2(A)
    if v.verdict.is_semistable:
        j_s, j_t = strata_indices(A)
        report["strata"] = {"j_S": j_s, "j_tilde": j_t}
    if A.m % 2 == 0 and v.verdict.is_semistable and not v.verdict.value == "Stable":
        try:
            first, second = boundary_point_even_m(A)
            report["boundary_pair"] = [_basis(first), _basis(second)]
        except MatrixFormatError:
            report["boundary_pair"] = None
    out.write(_dump(report) + "\n")
    return EXIT_OK


def cmd_degeneracy(args, out) -> int:
    A, _ = _read_matrix(args.path)
    if A.k != 2:
        raise ScopeError("degeneracy dimension is implemented for k = 2 only")
    out.write(_dump({"degeneracy_dim": degeneracy_dim_k2(A)}) + "\n")
    return EXIT_OK


def cmd_strata(args, out) -> int:
    if args.path:
        A, _ = _read_matrix(args.path)
        j_s, j_t = strata_indices(A)
        out.write(_dump({"j_S": j_s, "j_tilde": j_t}) + "\n")
        return EXIT_OK
    if args.n is None or args.m is None:
        raise CliError("give a matrix file, or --n and --m")
    p = ModuliParams(args.n, args.m)
    if args.j is not None:
        out.write(_dump({"n": p.n, "m": p.m, "j": args.j, "codim": strata_codim(p, args.j)}) + "\n")
        return EXIT_OK
    report = {"n": p.n, "m": p.m, "codim": {str(j): strata_codim(p, j) for j in range(2, p.j_m)}}
    if p.m % 2 == 0:
        report["boundary_dim"] = boundary_dim_even_m(p)
    out.write(_dump(report) + "\n")
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    golden_text = None
    if args.golden:
        golden_text = Path(args.golden).read_text()
    golden = golden_hodge(golden_text)
    if args.convention and args.convention != "auto":
        conv = SignConvention.from_code(args.convention)
        out.write(f"convention {conv.code} (explicit)\n")
    elif golden_text is None:
        conv = calibrated_convention(args.cache_dir)
        out.write(f"convention {conv.code} (calibrated)\n")
    else:
        try:
            res = calibrate(3, 3, golden[3], check=(5, 5, golden.get(5, ())))
        except CalibrationError as exc:
            out.write(f"FAIL calibration: {exc}\n")
            return EXIT_SELFTEST
        conv = res.convention
        out.write(f"convention {conv.code} (calibrated)\n")
    results = []
    for check in acceptance.all_checks(conv, args.jobs, golden):
        r = check()
        results.append(r)
        out.write(r.line() + "\n")
        for w in r.warnings:
            out.write(f"warning: {w}\n")
    passed = sum(r.ok for r in results)
    out.write(f"selftest: {passed}/{len(results)} checks passed\n")
    return EXIT_OK if passed == len(results) else EXIT_SELFTEST


# -- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--j", type=int)
    common.add_argument("--l", type=int)
    common.add_argument("--format", choices=("json", "table", "csv"), default="table")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--convention", default="auto",
                        help="'auto' (calibrate) or four 0/1 digits: flip W, flip I, flip V, count negative")
    common.add_argument("--cache-dir", default=None, help="where to keep the calibration result")

    parser = argparse.ArgumentParser(prog="steiner-moduli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("betti", parents=[common], help="Hodge and Betti numbers").set_defaults(func=cmd_betti)
    sub.add_parser("euler", parents=[common], help="Euler characteristic").set_defaults(func=cmd_euler)
    sub.add_parser("hodge-ml", parents=[common], help="Hodge numbers of M_l").set_defaults(func=cmd_hodge_ml)
    sub.add_parser("fixed-points", parents=[common],
                   help="torus fixed points as JSON lines").set_defaults(func=cmd_fixed_points)
    w = sub.add_parser("weights", parents=[common], help="weights at one fixed point")
    w.add_argument("--type", type=int, choices=(1, 2), required=True)
    w.add_argument("--I", help="type 1: i0,i1,...,it")
    w.add_argument("--J", help="type 1: j0,j1,...,jt")
    w.add_argument("--indices", help="type 2: comma-separated index vector")
    w.set_defaults(func=cmd_weights)
    for name, func, helptext in (("stability", cmd_stability, "GIT stability of a matrix file"),
                                 ("degeneracy", cmd_degeneracy, "dimension of the degeneracy locus")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("path")
        p.set_defaults(func=func)
    s = sub.add_parser("strata", parents=[common], help="strata of a matrix, or strata codimensions")
    s.add_argument("path", nargs="?")
    s.set_defaults(func=cmd_strata)
    t = sub.add_parser("selftest", parents=[common], help="calibrate and run the acceptance checks")
    t.add_argument("--golden", help="alternative reference CSV (n,i,b_i)")
    t.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args, out)
    except (CliError, ScopeError, MatrixFormatError, ConventionError, CalibrationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
