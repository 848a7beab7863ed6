"""Command-line frontend.

Times are in units of 1/J and energies in units of J throughout.  All
numeric output uses 17 significant digits so reruns diff exactly; the
only timestamps live in JSON sidecar files, never in tables.
"""

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from .circuits import (
    ctrl_iswap2_circuit,
    ctrl_iswap2_target,
    ctrl_x_circuit,
    phase_gate,
    verify_ctrl_iswap2_circuit,
    verify_ctrl_x_circuit,
)
from .driving import ProtocolParams, gate_time_accounting, run_iswap_protocol
from .eigengate import (
    VARIANTS,
    bch_rotation_residual,
    build_eigengate,
    check_intertwining,
    expected_phase,
    mapping_table,
    so3_checks,
)
from .experiments import (
    DEFAULT_SAMPLES,
    FIG2_EPS_GRID,
    FIG3_EPS_GRID,
    SweepConfig,
    ghz_demo,
    point_seed,
    pst_demo,
    sweep_fig2,
    sweep_fig3,
    write_table,
)
from .hamiltonians import build_hk, build_hz, krawtchouk_chain, single_particle_hopping
from .krawtchouk import (
    build_basis,
    conjugate_phase,
    m2_closed_form,
    matrix_element_bruteforce,
    meixner_identity_check,
)
from .linalg import SIGMA_MINUS, SIGMA_PLUS, tensor_embed

__all__ = ["main"]


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _emit_csv(header, rows, out=None):
    out = out if out is not None else sys.stdout
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def _apply_config_file(args, parser):
    """Fill parser defaults from a JSON file; explicit flags win."""
    if not getattr(args, "config", None):
        return args
    with open(args.config) as fh:
        overrides = json.load(fh)
    # flag defaults live on the per-command parser, not the top-level one
    sub = getattr(parser, "_command_parsers", {}).get(getattr(args, "command", None))
    for key, value in overrides.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise SystemExit(f"unknown config key {key!r}")
        default = sub.get_default(dest) if sub is not None else None
        if default is None:
            default = parser.get_default(dest)
        if getattr(args, dest) == default:
            setattr(args, dest, value)
    return args


def _cmd_spectrum(args) -> int:
    N, J = args.n, args.j
    n = N - 1
    hop = single_particle_hopping(krawtchouk_chain(N, J))
    solved = np.sort(np.linalg.eigvalsh(hop))
    exact = np.array([J * (k - n / 2.0) for k in range(N)])
    worst = float(np.abs(solved - exact).max())
    _emit_csv(("n", "k", "lambda"), [(n, k, exact[k]) for k in range(N)])
    if worst > 1e-10:
        print(f"FAIL spectrum deviation {worst:.3e}", file=sys.stderr)
        return 1
    return 0


def _cmd_matrix_elements(args) -> int:
    rows = []
    worst = 0.0
    for n in range(3, args.n_max + 1, 2):
        d = (n + 1) // 2
        N = n + 1
        basis = build_basis(n, 1.0)
        lower = tuple(range(N // 2))
        upper = tuple(range(N // 2, N))
        for j in range(0, n - d + 1):
            closed = m2_closed_form(n, j)
            op = tensor_embed(SIGMA_MINUS, [j], N) @ tensor_embed(
                SIGMA_PLUS, [j + d], N
            )
            brute = matrix_element_bruteforce(basis, lower, op, upper)
            err = abs(complex(brute) - closed)
            worst = max(worst, err)
            rows.append((n, j, d, closed, brute.real, err))
    _emit_csv(("n", "j", "d", "M2_closed", "M2_brute", "abs_err"), rows)
    if worst > 1e-12:
        print(f"FAIL matrix elements deviate up to {worst:.3e}", file=sys.stderr)
        return 1
    return 0


def _eigengate_report(N: int, J: float) -> dict:
    """Mapping quality, phase table deviation, and algebra residuals."""
    from .krawtchouk import build_basis as _build_basis

    basis = _build_basis(N - 1, J)
    spec = krawtchouk_chain(N, J)
    hk, hz = build_hk(spec), build_hz(N, J)
    n = N - 1
    report = {"N": N, "variants": {}}
    unitaries = {}
    for variant in VARIANTS:
        gate = build_eigengate(N, J, variant)
        unitaries[variant] = gate.unitary
        mags, phases = mapping_table(gate, basis)
        dev = max(
            abs(phases[s] - expected_phase(bin(s).count("1"), n))
            for s in range(2**N)
        )
        report["variants"][variant] = {
            "min_overlap": float(mags.min()),
            "max_phase_deviation": float(dev),
        }
    report["min_overlap"] = min(
        v["min_overlap"] for v in report["variants"].values()
    )
    report["max_phase_deviation"] = max(
        v["max_phase_deviation"] for v in report["variants"].values()
    )
    report["entrywise_difference"] = float(
        np.abs(unitaries["three_step"] - unitaries["single_pulse"]).max()
    )
    report["intertwining_residual"] = check_intertwining(
        build_eigengate(N, J, "three_step"), hk, hz
    )
    report["intertwining_allowance"] = 1e-9 * float(np.abs(hk).max())
    return report


def _cmd_eigengate_check(args) -> int:
    N, J = args.n, args.j
    report = _eigengate_report(N, J)
    report["so3_residuals"] = so3_checks(N, J)
    report["bch_residuals"] = {
        str(theta): bch_rotation_residual(N, J, theta)
        for theta in (0.0, math.pi / 2.0, math.pi)
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    ok = (
        report["min_overlap"] > 1.0 - 1e-9
        and report["max_phase_deviation"] < 1e-9
        and report["intertwining_residual"] < report["intertwining_allowance"]
    )
    return 0 if ok else 1


def _cmd_drive(args) -> int:
    rows = []
    count = 1 if args.eps == 0.0 else args.samples
    for i in range(count):
        seed = args.seed if count == 1 else point_seed(args.seed, args.n, args.m, 0, i)
        res = run_iswap_protocol(
            ProtocolParams(
                N=args.n,
                M=args.m,
                noise_eps=args.eps,
                seed=seed,
                halfway_inversion=not args.no_inversion,
            ),
            omega_override=args.omega_override,
        )
        tau_d = 2.0 * math.pi * args.m
        rows.append((args.n, args.m, tau_d, args.eps, seed, res.error))
    if args.out == "json":
        payload = {
            "rows": [
                dict(zip(("N", "M", "tauD_J", "eps", "seed", "error"), r))
                for r in rows
            ],
            "mean_error": float(np.mean([r[-1] for r in rows])),
            "omega": res.omega,
            "J_D": res.J_D,
            "drive_phase": res.drive_phase,
            "halfway_inversion": not args.no_inversion,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _emit_csv(("N", "M", "tauD_J", "eps", "seed", "error"), rows)
    return 0


def _cmd_noise_sweep(args) -> int:
    threads = args.threads
    t0 = time.time()
    if args.figure == 2:
        config = SweepConfig(
            protocol="fig2",
            n_values=tuple(args.n),
            m_values=tuple(range(args.m_min, args.m_max + 1)),
            eps_values=tuple(args.eps),
            samples=args.samples,
            base_seed=args.seed,
            threads=threads,
        )
        rows = sweep_fig2(config)
        header = ("N", "M", "eps", "mean_error", "stderr", "samples")
    else:
        config = SweepConfig(
            protocol="fig3",
            n_values=tuple(args.n),
            eps_values=tuple(args.eps),
            samples=args.samples,
            base_seed=args.seed,
            threads=threads,
        )
        rows = sweep_fig3(config)
        header = ("N", "eps", "mean_error", "stderr", "samples")
    write_table(args.out, header, rows, config=config, wall_time=time.time() - t0)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_circuit_verify(args) -> int:
    N = args.n
    core = None
    if args.use_simulated_drive:
        core = run_iswap_protocol(ProtocolParams(N=N, M=args.m)).unitary
    if args.which == "ctrl-x":
        circuit = ctrl_x_circuit(N, phase_n=None if core is None else core @ core)
        deviation = verify_ctrl_x_circuit(N, circuit)
    else:
        circuit = ctrl_iswap2_circuit(N, iswap_n=core)
        target = ctrl_iswap2_target(N)
        deviation = verify_ctrl_iswap2_circuit(N, circuit)
    report = {
        "which": args.which,
        "n": N,
        "deviation": deviation,
        "simulated_drive": bool(args.use_simulated_drive),
    }
    if args.use_simulated_drive:
        report["m"] = args.m
    passing = args.use_simulated_drive or deviation < 1e-10
    report["pass"] = bool(passing)
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if passing else 1


def _cmd_ghz(args) -> int:
    fid = ghz_demo(args.n, args.j)
    print(json.dumps({"n": args.n, "fidelity": fid}))
    return 0 if fid > 1.0 - 1e-10 else 1


def _cmd_pst(args) -> int:
    worst = pst_demo(args.n, args.j)
    print(json.dumps({"n": args.n, "max_infidelity": worst}))
    return 0 if worst < 1e-10 else 1


def _cmd_verify_all(args) -> int:
    n_max = args.n_max
    failures = 0

    def check(name, value, tol):
        nonlocal failures
        ok = value < tol
        failures += 0 if ok else 1
        print(f"{'PASS' if ok else 'FAIL'} {name}: {value:.3e} (tol {tol:g})")

    for N in range(2, n_max + 1):
        hop = single_particle_hopping(krawtchouk_chain(N, 1.0))
        n = N - 1
        exact = np.array([(k - n / 2.0) for k in range(N)])
        check(
            f"spectrum N={N}",
            float(np.abs(np.sort(np.linalg.eigvalsh(hop)) - exact).max()),
            1e-10,
        )
    for N in range(2, n_max + 1, 2):
        rep = _eigengate_report(N, 1.0)
        check(f"eigengate mapping N={N}", 1.0 - rep["min_overlap"], 1e-9)
        check(f"eigengate phases N={N}", rep["max_phase_deviation"], 1e-9)
        check(
            f"intertwining N={N}",
            rep["intertwining_residual"],
            rep["intertwining_allowance"],
        )
        residuals = so3_checks(N, 1.0)
        check(f"so(3) N={N}", max(residuals.values()), 1e-9)
        check(
            f"BCH N={N}",
            max(bch_rotation_residual(N, 1.0, t) for t in (0.0, math.pi / 2, math.pi)),
            1e-9,
        )
    for n in range(2, min(n_max, 9) + 1):
        check(f"Meixner n={n}", meixner_identity_check(n), 1e-9)
    for n in range(3, min(n_max + 1, 8), 2):
        d = (n + 1) // 2
        N = n + 1
        basis = build_basis(n, 1.0)
        lower = tuple(range(N // 2))
        upper = tuple(range(N // 2, N))
        worst = 0.0
        for j in range(0, n - d + 1):
            op = tensor_embed(SIGMA_MINUS, [j], N) @ tensor_embed(
                SIGMA_PLUS, [j + d], N
            )
            brute = matrix_element_bruteforce(basis, lower, op, upper)
            worst = max(worst, abs(complex(brute) - m2_closed_form(n, j)))
            conj_op = tensor_embed(SIGMA_PLUS, [j], N) @ tensor_embed(
                SIGMA_MINUS, [j + d], N
            )
            conj = matrix_element_bruteforce(basis, lower, conj_op, upper)
            worst = max(
                worst, abs(complex(conj) - conjugate_phase(N) * m2_closed_form(n, j))
            )
        check(f"matrix elements n={n}", worst, 1e-12)
    for N in range(2, n_max + 1):
        check(f"PST N={N}", pst_demo(N), 1e-10)
    for N in range(3, n_max + 1, 2):
        check(f"GHZ N={N}", 1.0 - ghz_demo(N), 1e-10)
    for N in (4, 6):
        if N <= max(n_max, 4):
            check(f"ctrl-X circuit N={N}", verify_ctrl_x_circuit(N), 1e-10)
            check(f"ctrl-iSWAP2 circuit N={N}", verify_ctrl_iswap2_circuit(N), 1e-10)
    for N, M, expected in ((6, 4, 30), (4, 1, 8)):
        _, _, eq = gate_time_accounting(N, M)
        check(f"gate time N={N} M={M}", abs(eq - expected), 0.5)
    print("all checks passed" if failures == 0 else f"{failures} checks FAILED")
    return 0 if failures == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kchain",
        description="Krawtchouk chain simulator: spectra, eigengates, resonant "
        "multi-qubit swap protocol, and verification suites.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("KRAW_THREADS", "1")),
        help="worker threads for sweeps (default: KRAW_THREADS or 1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="single-particle chain spectrum as CSV")
    p.add_argument("--n", type=int, required=True, help="qubit count N")
    p.add_argument("--j", type=float, default=1.0, help="coupling scale J")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser(
        "matrix-elements", help="closed-form vs brute-force drive matrix elements"
    )
    p.add_argument("--n-max", type=int, default=7, help="largest odd n (default 7)")
    p.set_defaults(func=_cmd_matrix_elements)

    p = sub.add_parser("eigengate-check", help="eigengate identity report as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=float, default=1.0)
    p.set_defaults(func=_cmd_eigengate_check)

    p = sub.add_parser("drive", help="run the resonant swap protocol")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--m", type=int, default=4, help="drive length in 2pi/J units")
    p.add_argument("--eps", type=float, default=0.0, help="coupling noise amplitude")
    p.add_argument("--seed", type=int, default=20260801)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--no-inversion", action="store_true")
    p.add_argument("--omega-override", type=float, default=None)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.add_argument("--config", type=str, default=None, help="JSON file of defaults")
    p.set_defaults(func=_cmd_drive)

    p = sub.add_parser("noise-sweep", help="Monte Carlo sweep to a CSV file")
    p.add_argument("--figure", type=int, choices=(2, 3), required=True)
    p.add_argument("--n", type=int, nargs="+", default=None)
    p.add_argument("--m-min", type=int, default=1)
    p.add_argument("--m-max", type=int, default=20)
    p.add_argument("--eps", type=float, nargs="+", default=None)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=20260801)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--config", type=str, default=None, help="JSON file of defaults")
    p.set_defaults(func=_cmd_noise_sweep)

    p = sub.add_parser("circuit-verify", help="gate construction checks as JSON")
    p.add_argument("--which", choices=("ctrl-x", "ctrl-iswap2"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--use-simulated-drive", action="store_true")
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=_cmd_circuit_verify)

    p = sub.add_parser("ghz", help="one-pulse GHZ preparation fidelity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=float, default=1.0)
    p.set_defaults(func=_cmd_ghz)

    p = sub.add_parser("pst", help="perfect-state-transfer mirror check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=float, default=1.0)
    p.set_defaults(func=_cmd_pst)

    p = sub.add_parser("verify-all", help="run the full identity suite")
    p.add_argument("--n-max", type=int, default=6)
    p.set_defaults(func=_cmd_verify_all)

    parser._command_parsers = dict(sub.choices)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        args = _apply_config_file(args, parser)
    if args.command == "noise-sweep":
        if args.n is None:
            args.n = [4, 6] if args.figure == 2 else [2, 4, 8, 12]
        if args.eps is None:
            args.eps = list(FIG2_EPS_GRID) if args.figure == 2 else list(FIG3_EPS_GRID)
        if args.out is None:
            args.out = f"fig{args.figure}.csv"
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
