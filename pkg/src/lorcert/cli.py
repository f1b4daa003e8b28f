"""Command-line front end.

Matrices are read from CSV (rows of comma-separated decimals, no header,
blank lines ignored, scientific notation accepted) or JSON files of the
form {"n": 2, "rows": [[...], [...]]}; "-" reads standard input.  JSON
output mode writes exactly one object to stdout.  Exit codes: 0 for a
definite result, 2 for undecided/no-verdict, 1 for usage or input errors.
"""

import argparse
import json
import sys

import numpy as np

from . import geometry, oracle, structure
from .cones import LorentzCone, Tolerances, membership
from .engine import DecideOptions, decide
from .errors import LorcertError

_EXIT_OK = 0
_EXIT_ERROR = 1
_EXIT_INCONCLUSIVE = 2


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_matrix(text, path):
    stripped = text.lstrip()
    if path.endswith(".json") or stripped.startswith("{"):
        data = json.loads(text)
        rows = data["rows"]
        M = np.asarray(rows, dtype=np.float64)
        if "n" in data and M.shape != (int(data["n"]), int(data["n"])):
            raise ValueError(f"declared n={data['n']} does not match rows of shape {M.shape}")
    else:
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            rows.append([float(tok) for tok in line.split(",")])
        if not rows:
            raise ValueError("no rows found")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValueError("rows have inconsistent lengths")
        M = np.asarray(rows, dtype=np.float64)
    if M.ndim != 2:
        raise ValueError("input is not a matrix")
    return M


def _load_matrix(path):
    return _parse_matrix(_read_text(path), path)


def _parse_vector(text):
    return np.asarray([float(tok) for tok in text.split(",")], dtype=np.float64)


def _jsonify(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def _certificate_payload(cert, n, tol, seed):
    return {
        "verdict": cert.verdict.value,
        "method": cert.method,
        "primal": None if cert.primal is None else _jsonify(cert.primal),
        "dual": None if cert.dual is None else _jsonify(cert.dual),
        "margin": float(cert.margin),
        "n": int(n),
        "tolerances": {
            "eps_mem": tol.eps_mem,
            "eps_strict": tol.eps_strict,
            "eps_eq": tol.eps_eq,
        },
        "seed": int(seed),
    }


def _emit(payload, as_json, text_lines):
    if as_json:
        print(json.dumps(_jsonify(payload)))
    else:
        for line in text_lines:
            print(line)


def _emit_certificate(cert, n, args):
    payload = _certificate_payload(cert, n, args.tol, args.seed)
    lines = [f"verdict: {cert.verdict.value} (method={cert.method}, margin={cert.margin:.6g})"]
    if cert.primal is not None:
        lines.append(f"primal witness: {np.array2string(cert.primal, precision=12)}")
    if cert.dual is not None:
        lines.append(f"dual witness: {np.array2string(cert.dual, precision=12)}")
    _emit(payload, args.json, lines)
    return _EXIT_OK if cert.is_definite else _EXIT_INCONCLUSIVE


def _cmd_check(args):
    A = _load_matrix(args.file)
    cert = structure.structural_screen(A, args.tol)
    if not cert.is_definite:
        cert = decide(A, args.opts)
    return _emit_certificate(cert, A.shape[0], args)


def _detect_specialist(A, tol):
    n = A.shape[0]
    scale = 1.0 + float(np.max(np.abs(A)))
    if np.max(np.abs(A - np.diag(np.diag(A)))) <= tol.eps_eq * scale:
        return structure.diagonal_certificate
    if np.max(np.abs(A.T @ A - np.eye(n))) <= max(tol.eps_eq, 1e-12) * 10:
        return structure.orthogonal_certificate
    if np.max(np.abs(np.triu(A, k=1))) <= tol.eps_eq * scale:
        return structure.lower_triangular_certificate
    s = np.linalg.svd(A, compute_uv=False)
    if s.size > 1 and s[1] <= 1e-10 * max(s[0], 1.0) and s[0] > 0:
        return "rank_one"
    return None


def _cmd_classify(args):
    A = _load_matrix(args.file)
    specialist = _detect_specialist(A, args.tol)
    if specialist is None:
        return _cmd_check(args)
    if specialist == "rank_one":
        U, s, Vh = np.linalg.svd(A)
        u = U[:, 0] * s[0]
        v = Vh[0]
        if u[-1] < 0:
            u, v = -u, -v
        cert = structure.rank_one_certificate(u, v, args.tol)
    else:
        cert = specialist(A, args.tol)
    return _emit_certificate(cert, A.shape[0], args)


def _cmd_membership(args):
    A = _load_matrix(args.file)
    n = A.shape[0]
    v = _parse_vector(args.vector)
    m = membership(v, LorentzCone(n), args.tol)
    payload = {"class": m.cls.value, "margin": float(m.margin), "n": int(n)}
    _emit(payload, args.json, [f"{m.cls.value} (margin {m.margin:.6g})"])
    return _EXIT_OK


def _cmd_cone_rep(args):
    X = _load_matrix(args.file)
    rep = geometry.ellipsoidal_rep_from_map(X, args.tol)
    sig = geometry.inertia(rep.Q, args.tol)
    payload = {
        "Q": _jsonify(rep.Q),
        "u": _jsonify(rep.u),
        "lambda": float(rep.lam),
        "inertia": list(sig.astuple()),
    }
    _emit(
        payload,
        args.json,
        [
            f"Q = {np.array2string(rep.Q, precision=12)}",
            f"u = {np.array2string(rep.u, precision=12)}",
            f"lambda = {rep.lam:.12g}",
            f"inertia = {sig.astuple()}",
        ],
    )
    return _EXIT_OK


def _cmd_cone_extremal(args):
    A = _load_matrix(args.file)
    v = _parse_vector(args.vector)
    cone = LorentzCone(A.shape[0])
    pushed = geometry.extremal_pushforward(A, cone, v, args.tol)
    image_margin = membership(A @ pushed, tol=args.tol).margin
    payload = {
        "pushforward": _jsonify(pushed),
        "boundary_margin": float(image_margin),
        "n": int(A.shape[0]),
    }
    _emit(
        payload,
        args.json,
        [
            f"pushforward: {np.array2string(pushed, precision=12)}",
            f"boundary margin of image: {image_margin:.6g}",
        ],
    )
    return _EXIT_OK


def _cmd_monotone(args):
    A = _load_matrix(args.file)
    result = geometry.is_monotone(A, args.tol)
    payload = {"monotone": bool(result), "n": int(A.shape[0])}
    _emit(payload, args.json, [f"monotone: {result}"])
    return _EXIT_OK


def _cmd_oracle(args):
    A = _load_matrix(args.file)
    cfg = oracle.SamplerConfig(seed=args.seed, resolution=400)
    cert = oracle.brute_force_decide(A, cfg)
    return _emit_certificate(cert, A.shape[0], args)


_FLAG_DEFAULTS = {
    "tol_mem": 1e-9,
    "tol_strict": 1e-7,
    "seed": 42,
    "max_iters": 2000,
    "json": False,
    "text": False,
}


def _common_flags():
    """Global flags, accepted both before and after the subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    common.add_argument("--tol-mem", type=float, default=sup, help="membership slack")
    common.add_argument("--tol-strict", type=float, default=sup, help="interior margin band")
    common.add_argument("--seed", type=int, default=sup, help="search seed")
    common.add_argument("--max-iters", type=int, default=sup, help="ascent iteration budget")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=sup, help="machine-readable output")
    fmt.add_argument("--text", action="store_true", default=sup, help="human-readable output (default)")
    return common


def _build_parser():
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="lorcert",
        description="Semipositivity certificates and geometry over the Lorentz cone.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="decide semipositivity with a certificate")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check)
    p = sub.add_parser("classify", parents=[common], help="dispatch to a structure specialist")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)
    p = sub.add_parser("membership", parents=[common], help="classify a vector against the cone")
    p.add_argument("file")
    p.add_argument("--vector", required=True, help="comma-separated coordinates")
    p.set_defaults(func=_cmd_membership)
    cone = sub.add_parser("cone", parents=[common], help="cone geometry utilities")
    cone_sub = cone.add_subparsers(dest="cone_command", required=True)
    p = cone_sub.add_parser("rep", parents=[common], help="quadratic representation of X(L)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_cone_rep)
    p = cone_sub.add_parser(
        "extremal", parents=[common], help="pushforward of an extremal through A^{-1}"
    )
    p.add_argument("file")
    p.add_argument("--vector", required=True)
    p.set_defaults(func=_cmd_cone_extremal)
    p = sub.add_parser("monotone", parents=[common], help="cone monotonicity test")
    p.add_argument("file")
    p.set_defaults(func=_cmd_monotone)
    p = sub.add_parser("oracle", parents=[common], help="brute-force reference decision (n <= 4)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_oracle)
    return parser


def run(argv):
    """Dispatch one invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return _EXIT_OK if exc.code == 0 else _EXIT_ERROR
    for name, default in _FLAG_DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, default)
    args.tol = Tolerances(eps_mem=args.tol_mem, eps_strict=args.tol_strict)
    args.opts = DecideOptions(max_iters=args.max_iters, seed=args.seed, tol=args.tol)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError, LorcertError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_ERROR


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
