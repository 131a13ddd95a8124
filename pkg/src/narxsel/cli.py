"""Command-line interface: identify, baseline, simulate, dictionary."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bpsogsa import OptimizerConfig
from .data import load_csv
from .dictionary import DictionarySpec, build_dictionary
from .report import Report, load_report, save_report, write_convergence_csv
from .runner import RunConfig, run_baseline, run_identify, simulate_report


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _add_dictionary_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ny", type=int, required=True, help="maximum output lag")
    parser.add_argument("--nu", type=int, required=True, help="number of input lags")
    parser.add_argument("--ell", type=int, required=True, help="degree of nonlinearity")
    parser.add_argument("--dead-time", type=int, default=1, help="input dead time (default 1)")
    parser.add_argument("--no-constant", action="store_true", help="drop the constant term")


def _add_data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="CSV file with columns u,y")
    parser.add_argument("--no-header", action="store_true", help="CSV has no header row")
    parser.add_argument("--split", type=float, default=0.5, help="identification fraction (default 0.5)")
    parser.add_argument("--no-normalize", action="store_true", help="skip min-max scaling")
    parser.add_argument("--p-value", type=float, default=0.05, help="relevance test level (default 0.05)")
    parser.add_argument("--out", help="directory for report.json (and convergence.csv)")


def _add_optimizer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--agents", type=int, default=10, help="swarm size (default 10)")
    parser.add_argument("--iters", type=int, default=30, help="iterations (default 30)")
    parser.add_argument("--g0", type=float, default=100.0, help="initial gravitational constant")
    parser.add_argument("--alpha-decay", type=float, default=23.0, help="gravitational decay rate")
    parser.add_argument("--seed", type=int, default=0, help="random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="narxsel",
        description="Polynomial NARX model structure selection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_id = sub.add_parser("identify", help="swarm-search the structure space")
    _add_dictionary_flags(p_id)
    _add_data_flags(p_id)
    _add_optimizer_flags(p_id)

    p_base = sub.add_parser("baseline", help="greedy error-reduction-ratio baseline")
    _add_dictionary_flags(p_base)
    _add_data_flags(p_base)
    p_base.add_argument("--n-terms", type=int, help="select exactly this many terms")
    p_base.add_argument("--err-threshold", type=float, help="stop when unexplained ratio falls below")

    p_sim = sub.add_parser("simulate", help="free-run a saved report on a dataset")
    p_sim.add_argument("--report", required=True, help="report.json from a previous run")
    p_sim.add_argument("--data", required=True, help="CSV file with columns u,y")
    p_sim.add_argument("--no-header", action="store_true", help="CSV has no header row")

    p_dict = sub.add_parser("dictionary", help="print the candidate universe")
    _add_dictionary_flags(p_dict)
    return parser


def _dictionary_spec(args) -> DictionarySpec:
    return DictionarySpec(
        n_y=args.ny,
        n_u=args.nu,
        ell=args.ell,
        d=args.dead_time,
        include_constant=not args.no_constant,
    )


def _run_config(args, with_optimizer: bool) -> RunConfig:
    optimizer = OptimizerConfig()
    if with_optimizer:
        optimizer = OptimizerConfig(
            n_agents=args.agents,
            max_iter=args.iters,
            g0=args.g0,
            alpha_decay=args.alpha_decay,
            seed=args.seed,
        )
    return RunConfig(
        dictionary=_dictionary_spec(args),
        optimizer=optimizer,
        alpha=args.p_value,
        split=args.split,
        normalize=not args.no_normalize,
        n_terms=getattr(args, "n_terms", None),
        err_threshold=getattr(args, "err_threshold", None),
    )


def _print_report(report: Report) -> None:
    print(f"method: {report.method}")
    if report.seed is not None:
        print(f"seed: {report.seed}")
    print(f"search space: 2^{report.nov} = {report.search_space_size}")
    if report.terms:
        print(f"selected {len(report.terms)} of {report.nov} terms:")
        width = max(len(t) for t in report.terms)
        for i, name in enumerate(report.terms):
            flag = "relevant" if report.relevant[i] else "irrelevant"
            line = f"  {name:<{width}}  theta={_fmt(report.theta[i])}  std_err={_fmt(report.std_errors[i])}  {flag}"
            if report.err_values is not None and i < len(report.err_values):
                line += f"  err={_fmt(report.err_values[i])}"
            print(line)
    else:
        print("selected no usable structure (degenerate winner)")
    if report.penalty_rho is not None:
        print(f"penalty rho: {_fmt(report.penalty_rho)}")
        print(f"cost (identification free-run MSE x rho): {_fmt(report.cost)}")
    if report.cumulative_err is not None:
        print(f"cumulative ERR: {_fmt(report.cumulative_err)}")
    print(f"free-run MSE (identification): {_fmt(report.mse_identification)}")
    print(f"free-run MSE (validation): {_fmt(report.mse_validation)}")
    if report.dataset.get("n_validation_out_of_range"):
        print(f"note: {report.dataset['n_validation_out_of_range']} validation samples fall outside [0, 1]")
    print(f"elapsed seconds: {report.wall_clock_seconds:.3f}")


def _write_outputs(report: Report, out_dir: str | None) -> None:
    if out_dir is None:
        return
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report_path = out / "report.json"
    save_report(report, report_path)
    print(f"report: {report_path}")
    if report.convergence:
        curve_path = out / "convergence.csv"
        write_convergence_csv(report.convergence, curve_path)
        print(f"convergence: {curve_path}")


def cmd_identify(args) -> int:
    data = load_csv(args.data, has_header=not args.no_header)
    report = run_identify(_run_config(args, with_optimizer=True), data)
    _print_report(report)
    _write_outputs(report, args.out)
    return 0


def cmd_baseline(args) -> int:
    data = load_csv(args.data, has_header=not args.no_header)
    report = run_baseline(_run_config(args, with_optimizer=False), data)
    _print_report(report)
    _write_outputs(report, args.out)
    return 0


def cmd_simulate(args) -> int:
    report = load_report(args.report)
    data = load_csv(args.data, has_header=not args.no_header)
    mse_id, mse_val = simulate_report(report, data)
    print(f"free-run MSE (identification): {_fmt(mse_id)}")
    print(f"free-run MSE (validation): {_fmt(mse_val)}")
    return 0


def cmd_dictionary(args) -> int:
    dictionary = build_dictionary(_dictionary_spec(args))
    print(f"noV: {dictionary.nov}")
    print(f"search space: 2^{dictionary.nov} = {2**dictionary.nov}")
    for i, label in enumerate(dictionary.labels()):
        print(f"  [{i}] {label}")
    return 0


_COMMANDS = {
    "identify": cmd_identify,
    "baseline": cmd_baseline,
    "simulate": cmd_simulate,
    "dictionary": cmd_dictionary,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
