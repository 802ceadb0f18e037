"""Command line interface.

Every command prints one JSON report on stdout and a short human summary on
stderr, and communicates its verdict through the exit code:

* 0: verdict holds / command succeeded
* 1: verdict fails (a witness is embedded in the report)
* 2: usage or precondition error
* 3: enumeration cap exceeded, or an inconclusive complex-field verdict

Reports are deterministic for fixed inputs and seeds; stage timings are the
one nondeterministic field and only appear with ``--timings``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from ._linalg import DEFAULT_ENUM_CAP, DEFAULT_ORTHO_TOL, DEFAULT_RANK_TOL
from .errors import EnumerationCapExceeded
from .fileio import (
    build_report,
    certificate_to_dict,
    dumps_canonical,
    file_digest,
    load_frame,
    save_frame,
    vector_to_json,
)
from .frames import (
    bessel_norm_bound_check,
    frame_bounds,
    gen_deficient_plus_tail,
    gen_harmonic,
    gen_mercedes,
    gen_onb,
    gen_random,
    is_mu_complete,
)
from .perturb import break_norm_retrieval, break_phase_retrieval, stability_sweep
from .retrieval import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    alpha_certify,
    norm_retrieval_certify,
    norm_retrieval_oracle,
    phase_retrieval_certify,
)
from .tensor import tensor_nr_check, tensor_pr_check, tensor_product

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_CAP_OR_INCONCLUSIVE = 3

_VERDICT_EXIT = {HOLDS: EXIT_OK, FAILS: EXIT_FAILS, INCONCLUSIVE: EXIT_CAP_OR_INCONCLUSIVE}


def _env_rank_tol() -> float:
    env = os.environ.get("FRAMELAB_TOL")
    if env is not None:
        try:
            return float(env)
        except ValueError as exc:
            raise ValueError(f"FRAMELAB_TOL must be a float, got {env!r}") from exc
    return DEFAULT_RANK_TOL


def _parse_ids(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"{what} must be a comma-separated list of integers, got {text!r}") from exc


class _Stopwatch:
    """Collects per-stage wall times; stays empty (and silent) unless enabled."""

    def __init__(self, enabled: bool) -> None:
        self.enabled = enabled
        self.times: dict[str, float] = {}
        self._t0 = time.perf_counter()

    def lap(self, stage: str) -> None:
        now = time.perf_counter()
        if self.enabled:
            self.times[stage] = (now - self._t0) * 1000.0
        self._t0 = now

    def result(self) -> dict[str, float] | None:
        return self.times if self.enabled else None


def _summary(*lines: str) -> None:
    for line in lines:
        print(line, file=sys.stderr)


def cmd_gen(args: argparse.Namespace, command: str) -> tuple[int, dict]:
    watch = _Stopwatch(args.timings)
    kind = args.kind
    provenance: dict = {"generator": kind}
    if kind == "onb":
        frame = gen_onb(args.dim)
        provenance["dim"] = args.dim
    elif kind == "mercedes":
        frame = gen_mercedes()
    elif kind == "harmonic":
        frame = gen_harmonic(args.dim, args.n, args.field)
        provenance.update(dim=args.dim, n=args.n, field=args.field)
    elif kind == "random":
        frame = gen_random(args.dim, args.n, args.seed, args.field)
        provenance.update(dim=args.dim, n=args.n, seed=args.seed, field=args.field)
    else:  # deficient-tail
        frame = gen_deficient_plus_tail(args.dim, args.head_dim, args.tail_len, args.seed)
        provenance.update(
            dim=args.dim, head_dim=args.head_dim, tail_len=args.tail_len, seed=args.seed
        )
    watch.lap("generate")
    save_frame(args.output, frame, provenance)
    watch.lap("write")
    data = {
        "output": args.output,
        "output_digest": file_digest(args.output),
        "atoms": frame.n_atoms,
        "dim": frame.dim,
        "field": frame.field,
    }
    _summary(f"wrote {kind} frame: {frame.n_atoms} atoms in dimension {frame.dim} -> {args.output}")
    report = build_report(command, {}, {}, data, [], watch.result())
    return EXIT_OK, report


def cmd_bounds(args: argparse.Namespace, command: str) -> tuple[int, dict]:
    watch = _Stopwatch(args.timings)
    rank_tol = _env_rank_tol()
    frame = load_frame(args.file)
    watch.lap("load")
    bounds = frame_bounds(frame)
    bessel = bessel_norm_bound_check(frame)
    data = {
        "lower": bounds.lower,
        "upper": bounds.upper,
        "is_frame": bounds.is_frame,
        "eta": frame.space.eta,
        "total_mass": frame.space.total_mass,
        "mu_complete": is_mu_complete(frame, rank_tol),
        "bessel_bound": bessel.bound,
        "max_vector_norm": bessel.max_norm,
        "bessel_holds": bessel.holds,
    }
    watch.lap("compute")
    _summary(
        f"bounds: A={bounds.lower:.6g} B={bounds.upper:.6g} eta={frame.space.eta:.6g} "
        f"frame={bounds.is_frame}"
    )
    report = build_report(
        command, {args.file: file_digest(args.file)}, {"rank_tol": rank_tol}, data, [], watch.result()
    )
    return EXIT_OK, report


def cmd_certify(args: argparse.Namespace, command: str) -> tuple[int, dict]:
    watch = _Stopwatch(args.timings)
    frame = load_frame(args.file)
    watch.lap("load")
    if args.property == "pr":
        rank_tol = float(args.tol) if args.tol is not None else _env_rank_tol()
        cert = phase_retrieval_certify(
            frame, rank_tol, args.cap, alpha_restarts=args.alpha_restarts, seed=args.seed
        )
        watch.lap("certify")
        tolerances = {"rank_tol": rank_tol}
        data = {"property": "phase retrieval", "verdict": cert.verdict}
        certs = [certificate_to_dict(cert)]
        _summary(f"phase retrieval: {cert.verdict}")
        code = _VERDICT_EXIT[cert.verdict]
    else:
        rank_tol = _env_rank_tol()
        ortho_tol = float(args.tol) if args.tol is not None else DEFAULT_ORTHO_TOL
        cert = norm_retrieval_certify(frame, ortho_tol, rank_tol, args.cap)
        oracle = norm_retrieval_oracle(frame, ortho_tol, rank_tol, args.cap)
        watch.lap("certify")
        agree = cert.verdict == oracle.verdict
        tolerances = {"rank_tol": rank_tol, "ortho_tol": ortho_tol}
        data = {"property": "norm retrieval", "verdict": cert.verdict, "oracle_agrees": agree}
        certs = [certificate_to_dict(cert), certificate_to_dict(oracle)]
        _summary(f"norm retrieval: {cert.verdict} (oracle agrees: {agree})")
        if not agree:
            report = build_report(
                command, {args.file: file_digest(args.file)}, tolerances, data, certs, watch.result()
            )
            return EXIT_USAGE, report
        code = _VERDICT_EXIT[cert.verdict]
    report = build_report(
        command, {args.file: file_digest(args.file)}, tolerances, data, certs, watch.result()
    )
    return code, report


def cmd_alpha(args: argparse.Namespace, command: str) -> tuple[int, dict]:
    watch = _Stopwatch(args.timings)
    frame = load_frame(args.file)
    watch.lap("load")
    result = alpha_certify(frame, restarts=args.restarts, iters=args.iters, seed=args.seed)
    watch.lap("minimize")
    data = {
        "alpha": result.alpha,
        "argmin_f": vector_to_json(result.argmin_f),
        "argmin_g": vector_to_json(result.argmin_g),
        "restarts": args.restarts,
        "trace_lengths": [len(t) for t in result.traces],
    }
    _summary(f"alpha = {result.alpha:.9g} over {args.restarts} restarts")
    report = build_report(
        command, {args.file: file_digest(args.file)}, {}, data, [], watch.result()
    )
    return EXIT_OK, report


def cmd_perturb(args: argparse.Namespace, command: str) -> tuple[int, dict]:
    watch = _Stopwatch(args.timings)
    rank_tol = _env_rank_tol()
    frame = load_frame(args.file)
    watch.lap("load")
    if args.construction == "break-pr":
        if args.head is None:
            raise ValueError("perturb break-pr requires --head with comma-separated atom ids")
        ids = _parse_ids(args.head, "--head")
        result = break_phase_retrieval(frame, ids, args.eps, rank_tol)
        cert = phase_retrieval_certify(result.perturbed, rank_tol, args.cap)
        provenance = {
            "perturbation": "break-pr",
            "source": args.file,
            "head": ids,
            "epsilon": args.eps,
        }
    else:
        if args.subset is None:
            raise ValueError("perturb break-nr requires --subset with comma-separated atom ids")
        ids = _parse_ids(args.subset, "--subset")
        result = break_norm_retrieval(frame, ids, args.eps, rank_tol=rank_tol, cap=args.cap)
        cert = norm_retrieval_certify(result.perturbed, rank_tol=rank_tol, cap=args.cap)
        provenance = {
            "perturbation": "break-nr",
            "source": args.file,
            "subset": ids,
            "epsilon": args.eps,
        }
    watch.lap("construct")
    save_frame(args.output, result.perturbed, provenance)
    watch.lap("write")
    data = {
        "output": args.output,
        "output_digest": file_digest(args.output),
        "l2_distance": result.l2_distance,
        "new_lower": result.new_bounds.lower,
        "new_upper": result.new_bounds.upper,
        "witness_f": vector_to_json(result.witness_f),
        "witness_g": vector_to_json(result.witness_g),
    }
    _summary(
        f"{args.construction}: moved frame by {result.l2_distance:.3e} (L2 squared), "
        f"perturbed verdict: {cert.verdict}"
    )
    report = build_report(
        command,
        {args.file: file_digest(args.file)},
        {"rank_tol": rank_tol},
        data,
        [certificate_to_dict(cert)],
        watch.result(),
    )
    return EXIT_OK, report


def cmd_sweep(args: argparse.Namespace, command: str) -> tuple[int, dict]:
    watch = _Stopwatch(args.timings)
    rank_tol = _env_rank_tol()
    frame = load_frame(args.file)
    watch.lap("load")
    lambdas = [float(part) for part in args.lambdas.split(",") if part.strip() != ""]
    points = stability_sweep(frame, lambdas, args.trials, args.seed, rank_tol, args.cap)
    watch.lap("sweep")
    data = {
        "trials": args.trials,
        "seed": args.seed,
        "points": [
            {"lambda": p.lam, "all_preserved": p.all_preserved, "failures": p.failures}
            for p in points
        ],
    }
    for p in points:
        _summary(f"lambda={p.lam:g}: failures={p.failures}/{args.trials}")
    report = build_report(
        command, {args.file: file_digest(args.file)}, {"rank_tol": rank_tol}, data, [], watch.result()
    )
    return EXIT_OK, report


def cmd_tensor(args: argparse.Namespace, command: str) -> tuple[int, dict]:
    watch = _Stopwatch(args.timings)
    rank_tol = _env_rank_tol()
    left = load_frame(args.left)
    right = load_frame(args.right)
    watch.lap("load")
    tensored = tensor_product(left, right)
    provenance = {"generator": "tensor", "factors": [args.left, args.right]}
    save_frame(args.output, tensored.product, provenance)
    watch.lap("write")
    bounds = frame_bounds(tensored.product)
    data = {
        "output": args.output,
        "output_digest": file_digest(args.output),
        "atoms": tensored.product.n_atoms,
        "dim": tensored.product.dim,
        "lower": bounds.lower,
        "upper": bounds.upper,
    }
    certs: list[dict] = []
    code = EXIT_OK
    if args.check == "pr":
        report_pr = tensor_pr_check(left, right, rank_tol, args.cap)
        certs = [
            certificate_to_dict(report_pr.left_pr),
            certificate_to_dict(report_pr.right_pr),
            certificate_to_dict(report_pr.product_pr),
        ]
        data["check"] = "pr"
        data["theorem_consistent"] = report_pr.theorem_consistent
        code = _VERDICT_EXIT[report_pr.product_pr.verdict]
        _summary(
            f"tensor pr check: product {report_pr.product_pr.verdict}, "
            f"consistent={report_pr.theorem_consistent}"
        )
    elif args.check == "nr":
        report_nr = tensor_nr_check(left, right, rank_tol=rank_tol, cap=args.cap)
        certs = [
            certificate_to_dict(report_nr.left_nr),
            certificate_to_dict(report_nr.right_nr),
            certificate_to_dict(report_nr.product_nr),
        ]
        data["check"] = "nr"
        data["consistent"] = report_nr.consistent
        code = _VERDICT_EXIT[report_nr.product_nr.verdict]
        _summary(
            f"tensor nr check: product {report_nr.product_nr.verdict}, "
            f"consistent={report_nr.consistent}"
        )
    else:
        _summary(
            f"tensor product: {tensored.product.n_atoms} atoms in dimension {tensored.product.dim}"
        )
    watch.lap("check")
    inputs = {args.left: file_digest(args.left), args.right: file_digest(args.right)}
    report = build_report(command, inputs, {"rank_tol": rank_tol}, data, certs, watch.result())
    return code, report


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--timings", action="store_true", help="attach wall-clock stage timings to the report")
    common.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP, help="subset enumeration cap (default %(default)s)")

    parser = argparse.ArgumentParser(prog="framelab", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_gen = sub.add_parser("gen", parents=[common], help="generate a frame file")
    p_gen.add_argument("kind", choices=["onb", "mercedes", "harmonic", "random", "deficient-tail"])
    p_gen.add_argument("--dim", type=int, default=3)
    p_gen.add_argument("--n", type=int, default=4)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--field", choices=["real", "complex"], default="real")
    p_gen.add_argument("--head-dim", type=int, default=2)
    p_gen.add_argument("--tail-len", type=int, default=3)
    p_gen.add_argument("-o", "--output", required=True)
    p_gen.set_defaults(handler=cmd_gen)

    p_bounds = sub.add_parser("bounds", parents=[common], help="frame bounds, eta, Bessel check")
    p_bounds.add_argument("file")
    p_bounds.set_defaults(handler=cmd_bounds)

    p_cert = sub.add_parser("certify", parents=[common], help="certify phase or norm retrieval")
    p_cert.add_argument("property", choices=["pr", "nr"])
    p_cert.add_argument("file")
    p_cert.add_argument("--tol", type=float, default=None, help="rank tolerance for pr, orthogonality tolerance for nr")
    p_cert.add_argument("--alpha-restarts", type=int, default=4)
    p_cert.add_argument("--seed", type=int, default=0)
    p_cert.set_defaults(handler=cmd_certify)

    p_alpha = sub.add_parser("alpha", parents=[common], help="alternating minimization lower-bound functional")
    p_alpha.add_argument("file")
    p_alpha.add_argument("--restarts", type=int, default=8)
    p_alpha.add_argument("--iters", type=int, default=100)
    p_alpha.add_argument("--seed", type=int, default=0)
    p_alpha.set_defaults(handler=cmd_alpha)

    p_pert = sub.add_parser("perturb", parents=[common], help="retrieval-breaking perturbations")
    p_pert.add_argument("construction", choices=["break-pr", "break-nr"])
    p_pert.add_argument("file")
    p_pert.add_argument("--head", default=None, help="comma-separated head atom ids (break-pr)")
    p_pert.add_argument("--subset", default=None, help="comma-separated subset atom ids (break-nr)")
    p_pert.add_argument("--eps", type=float, required=True)
    p_pert.add_argument("-o", "--output", required=True)
    p_pert.set_defaults(handler=cmd_perturb)

    p_sweep = sub.add_parser("sweep", parents=[common], help="phase retrieval stability sweep")
    p_sweep.add_argument("file")
    p_sweep.add_argument("--lambdas", required=True, help="comma-separated ascending radii")
    p_sweep.add_argument("--trials", type=int, default=20)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.set_defaults(handler=cmd_sweep)

    p_tensor = sub.add_parser("tensor", parents=[common], help="tensor product of two frame files")
    p_tensor.add_argument("left")
    p_tensor.add_argument("right")
    p_tensor.add_argument("-o", "--output", required=True)
    p_tensor.add_argument("--check", choices=["pr", "nr"], default=None)
    p_tensor.set_defaults(handler=cmd_tensor)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    command = " ".join(["framelab"] + argv)
    try:
        code, report = args.handler(args, command)
    except EnumerationCapExceeded as exc:
        _summary(f"error: {exc}")
        sys.stdout.write(dumps_canonical({"command": command, "error": str(exc)}))
        return EXIT_CAP_OR_INCONCLUSIVE
    except (ValueError, OSError) as exc:
        _summary(f"error: {exc}")
        sys.stdout.write(dumps_canonical({"command": command, "error": str(exc)}))
        return EXIT_USAGE
    sys.stdout.write(dumps_canonical(report))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
