"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input or parse error,
3 numerical failure (e.g. a decomposition residual out of bounds).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import circuits, oracle
from .channels import apply_programmed, program_channel, program_overlap
from .errors import ContractError, DecompositionError, DimensionError, MatrixFormatError
from .matio import load_matrix, matrix_to_obj
from .matops import kron
from .minimax import (
    CanonicalForm,
    fidelity_uv,
    kraus_cirac_decompose,
    optimal_interaction,
    s_operator,
    theta_from_alpha,
    worst_case_fidelity,
)
from .pauli import HADAMARD, bloch_to_matrix, hadamard_t, hadamard_t_contract

DEFAULT_SEED_ENV = "PROGCHAN_SEED"


def _default_seed() -> int:
    raw = os.environ.get(DEFAULT_SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise MatrixFormatError(f"{DEFAULT_SEED_ENV} must be an integer, got {raw!r}")


def _emit(payload, out_path=None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _complex_pairs(values) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex)]


def _report_minimax(rep) -> dict:
    return {
        "fidelity": rep.fidelity,
        "epsilon": rep.epsilon,
        "argmin_j": rep.argmin_j,
        "worst_unitary": matrix_to_obj(rep.worst_unitary),
        "optimal_sigma": matrix_to_obj(rep.optimal_sigma),
        "t": _complex_pairs(rep.t.t),
    }


def _parse_alpha(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise MatrixFormatError(f"--alpha needs three comma-separated values, got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError:
        raise MatrixFormatError(f"--alpha values must be numbers, got {text!r}")


def _cmd_worst_case(args) -> int:
    rep = worst_case_fidelity(load_matrix(args.v))
    _emit(_report_minimax(rep), args.out)
    return 0


def _cmd_fidelity(args) -> int:
    u = load_matrix(args.u)
    v = load_matrix(args.v)
    if args.sigma:
        value = program_overlap(u, v, load_matrix(args.sigma))
        _emit({"fidelity": value, "program": "given"}, args.out)
    else:
        value, sigma = fidelity_uv(u, v)
        _emit(
            {"fidelity": value, "optimal_sigma": matrix_to_obj(sigma), "program": "optimal"},
            args.out,
        )
    return 0


def _cmd_program(args) -> int:
    v = load_matrix(args.v)
    sigma = load_matrix(args.sigma)
    channel = program_channel(v, sigma)
    payload = {"kraus": [matrix_to_obj(k) for k in channel.ops]}
    if args.rho:
        payload["output"] = matrix_to_obj(apply_programmed(v, sigma, load_matrix(args.rho)))
    _emit(payload, args.out)
    return 0


def _cmd_optimal_v(args) -> int:
    v = optimal_interaction(args.sx, args.sz)
    payload = {
        "sx": args.sx,
        "sz": args.sz,
        "v": matrix_to_obj(v),
        "fidelity": worst_case_fidelity(v).fidelity,
    }
    if args.emit_circuit:
        circuit = circuits.build_optimal_circuit(args.sx, args.sz)
        payload["circuit"] = circuits.format_circuit(circuit).splitlines()
    _emit(payload, args.out)
    return 0


def _cmd_decompose(args) -> int:
    v = load_matrix(args.v)
    form = kraus_cirac_decompose(v)
    residual = float(np.max(np.abs(form.reconstruct() - v)))
    _emit(
        {
            "alpha": [float(a) for a in form.alpha],
            "w1": matrix_to_obj(form.w1),
            "w2": matrix_to_obj(form.w2),
            "w3": matrix_to_obj(form.w3),
            "w4": matrix_to_obj(form.w4),
            "residual": residual,
        },
        args.out,
    )
    return 0


def _cmd_circuit(args) -> int:
    alpha = _parse_alpha(args.alpha)
    eye = np.eye(2, dtype=complex)
    circuit = circuits.build_general_circuit(CanonicalForm(alpha, eye, eye, eye, eye))
    text = circuits.format_circuit(circuit)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _verify_identities_rows() -> list:
    rows = []
    for check in circuits.verify_identities():
        if check.printed_holds:
            status = "pass"
            residual = check.residual
        elif check.corrected_residual is not None:
            status = "holds-with-corrected-sign"
            residual = check.corrected_residual
        else:
            status = "fail"
            residual = check.residual
        note = check.corrected_form or ""
        rows.append((f"identity/{check.ident}", status, residual, note))
    return rows


def _verify_covariance_rows(seed: int) -> list:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(50):
        u = oracle.haar_unitary(2, rng)
        v = oracle.haar_unitary(4, rng)
        w1, w2, w3, w4 = (oracle.haar_unitary(2, rng) for _ in range(4))
        direct = s_operator(u, kron(w1, w2) @ v @ kron(w3, w4))
        routed = np.conj(w2) @ s_operator(w1.conj().T @ u @ w3.conj().T, v) @ np.conj(w4)
        worst = max(worst, float(np.max(np.abs(direct - routed))))
    status = "pass" if worst <= 1e-12 else "fail"
    return [("covariance/two-route", status, worst, "")]


def _verify_hadamard_rows(seed: int) -> list:
    rows = []
    ortho = float(np.max(np.abs(HADAMARD @ HADAMARD.T - np.eye(4))))
    rows.append(("hadamard/orthogonality", "pass" if ortho <= 1e-15 else "fail", ortho, ""))
    rng = np.random.default_rng(seed)
    worst_sum = worst_min = worst_route = 0.0
    for _ in range(1000):
        theta = rng.uniform(-np.pi, np.pi, 4)
        t = hadamard_t(theta)
        worst_sum = max(worst_sum, abs(float(np.sum(t.moduli**2)) - 4.0))
        worst_min = max(worst_min, float(t.moduli.min()) - 1.0)
        worst_route = max(
            worst_route, float(np.max(np.abs(t.t - hadamard_t_contract(theta))))
        )
    rows.append(("hadamard/sum-rule", "pass" if worst_sum <= 1e-10 else "fail", worst_sum, ""))
    rows.append(("hadamard/min-bound", "pass" if worst_min <= 1e-12 else "fail", worst_min, ""))
    rows.append(("hadamard/two-route", "pass" if worst_route <= 1e-12 else "fail", worst_route, ""))
    return rows


def _cmd_verify(args) -> int:
    rows = []
    if args.suite in ("identities", "all"):
        rows += _verify_identities_rows()
    if args.suite in ("covariance", "all"):
        rows += _verify_covariance_rows(args.seed)
    if args.suite in ("hadamard", "all"):
        rows += _verify_hadamard_rows(args.seed)
    width = max(len(r[0]) for r in rows)
    failed = False
    for name, status, residual, note in rows:
        line = f"{name:<{width}}  {status:<25} residual={residual:.3e}"
        if note:
            line += f"  [{note}]"
        sys.stdout.write(line + "\n")
        failed = failed or status == "fail"
    return 1 if failed else 0


def _cmd_oracle(args) -> int:
    config = oracle.ScanConfig(
        resolution=args.resolution,
        refine_steps=args.refine,
        seed=args.seed,
        sigma_samples=args.sigma_samples,
    )
    v = load_matrix(args.v)
    result = oracle.minimax_scan(v, config, trace_path=args.csv)
    payload = {
        "f_min": result.f_min,
        "worst_bloch": [float(x) for x in result.worst_bloch],
        "gap_to_closed_form": result.gap_to_closed_form,
        "evaluations": result.evaluations,
        "resolution": config.resolution,
        "refine_steps": config.refine_steps,
        "seed": config.seed,
    }
    if config.sigma_samples > 0:
        worst_u = bloch_to_matrix(result.worst_bloch)
        payload["sigma_dominance_max"] = oracle.sigma_dominance_check(
            worst_u, v, config.sigma_samples, seed=config.seed
        )
    _emit(payload, args.out)
    return 0


def _cmd_scan(args) -> int:
    import csv as csv_mod

    n = args.alpha_grid
    if n < 2:
        raise MatrixFormatError("--alpha-grid must be >= 2")
    a1_values = np.linspace(0.0, np.pi / 4, n)
    with open(args.out, "w", newline="") as fh:
        writer = csv_mod.writer(fh)
        writer.writerow(["a1", "a2", "a3", "t0_sq", "t1_sq", "t2_sq", "t3_sq", "fidelity"])
        for a1 in a1_values:
            for a2 in np.linspace(0.0, np.pi / 4, n):
                if a2 > a1 + 1e-15:
                    continue
                for a3 in np.linspace(-np.pi / 4, np.pi / 4, 2 * n - 1):
                    if abs(a3) > a2 + 1e-15:
                        continue
                    t = hadamard_t(theta_from_alpha([a1, a2, a3]))
                    w = t.moduli**2
                    writer.writerow(
                        [repr(a1), repr(a2), repr(a3)]
                        + [repr(float(x)) for x in w]
                        + [repr(float(w.min() / 4.0))]
                    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="progchan",
        description="Worst-case programming fidelity of a fixed two-qubit device.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("worst-case", help="minimax report for a joint unitary")
    p.add_argument("--v", required=True, help="4x4 unitary matrix file")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_worst_case)

    p = sub.add_parser("fidelity", help="best-program or fixed-program fidelity")
    p.add_argument("--u", required=True, help="2x2 target unitary file")
    p.add_argument("--v", required=True, help="4x4 joint unitary file")
    p.add_argument("--sigma", help="program state file (optional)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_fidelity)

    p = sub.add_parser("program", help="Kraus family (and output state) of a program")
    p.add_argument("--v", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--rho", help="input state file (optional)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_program)

    p = sub.add_parser("optimal-v", help="an optimal device for the chosen signs")
    p.add_argument("--sx", type=int, choices=(1, -1), default=1)
    p.add_argument("--sz", type=int, choices=(1, -1), default=1)
    p.add_argument("--emit-circuit", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_optimal_v)

    p = sub.add_parser("decompose", help="canonical form of a joint unitary")
    p.add_argument("--v", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("circuit", help="gate list for inline interaction coefficients")
    p.add_argument("--alpha", required=True, help="a1,a2,a3 in radians")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_circuit)

    p = sub.add_parser("verify", help="run the built-in verification suites")
    p.add_argument(
        "--suite", choices=("identities", "covariance", "hadamard", "all"), default="all"
    )
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="brute-force minimax scan of a device")
    p.add_argument("--v", required=True)
    p.add_argument("--resolution", type=int, default=10_000)
    p.add_argument("--refine", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sigma-samples", type=int, default=1000)
    p.add_argument("--csv", help="write a per-sample trace CSV")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("scan", help="fidelity grid over the interaction chamber")
    p.add_argument("--alpha-grid", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        try:
            args.seed = _default_seed()
        except MatrixFormatError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
    try:
        return args.func(args)
    except (MatrixFormatError, ContractError, DimensionError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except DecompositionError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
