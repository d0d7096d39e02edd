"""Command-line entry point: synth, fold, recover, bench, sweep, figure-data.

Exit codes: 0 success, 64 usage error, 1 domain error, 2 partial sweep
(some trials failed).  Flags override config-file values; the config file
is INI-style with sections [signal], [operator], [noise], [sweep].
"""
from __future__ import annotations

import argparse
import configparser
import os
import sys
from pathlib import Path

import numpy as np

from . import signal_io
from .bench import ExperimentConfig, MseReport, run_experiment, sweep_to_csv
from .errors import UnfoldKitError
from .nonlinear_ops import (apply_operator, clipping_operator, modulo_operator,
                            mulaw_modulo_operator)
from .presets import (SWEEP_FIGURES, WAVEFORM_FIGURES, cpf_literature_rows,
                      sweep_config, waveform_cases)
from .recovery import HODConfig, b2r2_recover, hod_recover, vandermonde_recover
from .signal_core import (SampledSignal, SamplingGrid, SynthesisConfig,
                          compute_support_bound, synthesize_sum_of_sincs)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARTIAL = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("UNFOLD_KIT_SEED")
    return int(env) if env else 0


def _check_out(path, force: bool):
    if Path(path).exists() and not force:
        raise UnfoldKitError(f"{path} exists; pass --force to overwrite")


def _operator(args):
    kind = args.operator
    if kind == "clip":
        return clipping_operator(args.lam)
    if kind == "modulo":
        return modulo_operator(args.lam)
    if kind == "mulaw_modulo":
        return mulaw_modulo_operator(args.lam, args.mu)
    raise UnfoldKitError(f"unknown operator {kind!r}")


def _read_signal(path) -> SampledSignal:
    if str(path).endswith(".bin"):
        return signal_io.read_signal_binary(path)
    return signal_io.read_signal_csv(path)


def _write_signal(sig, path):
    if str(path).endswith(".bin"):
        signal_io.write_signal_binary(sig, path)
    else:
        signal_io.write_signal_csv(sig, path)


def _cmd_synth(args) -> int:
    _check_out(args.out, args.force)
    grid = SamplingGrid(1.0 / args.of, np.pi, args.length)
    cfg = SynthesisConfig(num_sincs=args.num_sincs,
                          coefficient_seed=_default_seed(args), grid=grid,
                          center_span=args.span)
    sig = synthesize_sum_of_sincs(cfg)
    _write_signal(sig, args.out)
    return EXIT_OK


def _cmd_fold(args) -> int:
    _check_out(args.out, args.force)
    sig = _read_signal(args.input)
    _write_signal(apply_operator(sig, _operator(args)), args.out)
    return EXIT_OK


def _cmd_recover(args) -> int:
    _check_out(args.out, args.force)
    folded = _read_signal(args.input)
    op = _operator(args)
    truth = _read_signal(args.true) if args.true else None
    n_lambda = args.n_lambda
    if n_lambda is None:
        n_lambda = compute_support_bound(truth, op.lam) if truth else 0
    if args.algo == "b2r2":
        rec = b2r2_recover(folded, op, n_lambda).signal
    elif args.algo == "vand":
        rec = vandermonde_recover(folded, op, n_lambda).signal
    else:
        rec = hod_recover(folded, op.lam, HODConfig(order=args.hod_order)).signal
    signal_io.write_recovery_csv(truth if truth else rec, folded, rec, args.out)
    return EXIT_OK


def _config_experiment(args) -> ExperimentConfig:
    """Build an ExperimentConfig from the INI file, then apply flag overrides."""
    kw = {}
    if args.config:
        ini = configparser.ConfigParser()
        if not ini.read(args.config):
            raise UnfoldKitError(f"cannot read config {args.config}")
        sig = ini["signal"] if "signal" in ini else {}
        op = ini["operator"] if "operator" in ini else {}
        noise = ini["noise"] if "noise" in ini else {}
        sweep = ini["sweep"] if "sweep" in ini else {}
        if "length" in sig:
            kw["length"] = int(sig["length"])
        if "num_sincs" in sig:
            kw["num_sincs"] = int(sig["num_sincs"])
        if "center_span" in sig:
            kw["center_span"] = float(sig["center_span"])
        if "span_seconds" in sig:
            kw["span_seconds"] = float(sig["span_seconds"])
        if "kind" in op:
            kw["operator_kind"] = op["kind"]
        if "lambda" in op:
            kw["lambdas"] = tuple(float(x) for x in op["lambda"].split(","))
        if "mu" in op:
            kw["mu"] = float(op["mu"])
        if "kind" in noise:
            kw["noise_kind"] = noise["kind"]
        if "snr" in noise:
            kw["snrs_db"] = tuple(float(x) for x in noise["snr"].split(","))
        if "lambda_over_sigma" in noise:
            kw["lambda_over_sigma"] = float(noise["lambda_over_sigma"])
        if "of" in sweep:
            kw["oversampling_factors"] = tuple(
                float(x) for x in sweep["of"].split(","))
        if "trials" in sweep:
            kw["trials"] = int(sweep["trials"])
        if "seed" in sweep:
            kw["seed"] = int(sweep["seed"])
        if "algorithms" in sweep:
            kw["algorithms"] = tuple(sweep["algorithms"].split(","))
    if args.lam is not None:
        kw["lambdas"] = (args.lam,)
    if args.of is not None:
        kw["oversampling_factors"] = tuple(args.of)
    if args.snr is not None:
        kw["snrs_db"] = tuple(args.snr)
    if args.operator is not None:
        kw["operator_kind"] = args.operator
    if args.mu is not None:
        kw["mu"] = args.mu
    if args.trials is not None:
        kw["trials"] = args.trials
    if args.seed is not None or "seed" not in kw:
        kw["seed"] = _default_seed(args)
    return ExperimentConfig(**kw)


def _emit_report(report: MseReport, out, force) -> int:
    _check_out(out, force)
    sweep_to_csv(report, out)
    if any(c.fail_rate > 0 for c in report.cells):
        return EXIT_PARTIAL
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _config_experiment(args)
    return _emit_report(run_experiment(cfg, jobs=args.jobs), args.out, args.force)


def _cmd_figure_data(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    fig = args.fig
    if fig in WAVEFORM_FIGURES:
        from .bench import CellResult, compute_mse
        cells = []
        for case in waveform_cases(fig):
            folded = apply_operator(case.signal, case.op)
            n_lambda = compute_support_bound(case.signal, case.op.lam)
            if case.algorithm == "vandermonde":
                rec = vandermonde_recover(folded, case.op, n_lambda).signal
            else:
                rec = b2r2_recover(folded, case.op, n_lambda, cfg=case.pgd).signal
            path = outdir / f"fig{fig}_{case.name}.csv"
            _check_out(path, args.force)
            signal_io.write_recovery_csv(case.signal, folded, rec, path)
            cells.append(CellResult(
                algorithm=case.algorithm, lam=case.op.lam,
                oversampling=case.signal.grid.oversampling_factor,
                snr_db=np.inf, mse_db=compute_mse(case.signal, rec),
                mse_std_db=0.0, trials=1, fail_rate=0.0))
        summary = outdir / f"fig{fig}_summary.csv"
        _check_out(summary, args.force)
        sweep_to_csv(MseReport(config=None, cells=tuple(cells)), summary)
        return EXIT_OK
    if fig in SWEEP_FIGURES:
        cfg = sweep_config(fig)
        if args.trials is not None:
            from dataclasses import replace
            cfg = replace(cfg, trials=args.trials)
        out = outdir / f"fig{fig}_sweep.csv"
        code = _emit_report(run_experiment(cfg, jobs=args.jobs), out, args.force)
        if fig == 7:
            ref = outdir / "fig7_cpf_literature.csv"
            _check_out(ref, args.force)
            rows = cpf_literature_rows()
            with open(ref, "w", encoding="utf-8", newline="\n") as fh:
                cols = list(rows[0].keys())
                fh.write(",".join(cols) + "\n")
                for r in rows:
                    fh.write(",".join(r[c] for c in cols) + "\n")
        return code
    raise UnfoldKitError(f"no preset for figure {fig}")


def build_parser() -> _Parser:
    p = _Parser(prog="unfoldkit",
                description="Simulate amplitude folding of bandlimited "
                            "signals and recover the true samples.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", required=True)
        sp.add_argument("--force", action="store_true")

    def op_flags(sp):
        sp.add_argument("--operator", default="modulo",
                        choices=("clip", "modulo", "mulaw_modulo"))
        sp.add_argument("--lambda", dest="lam", type=float, default=0.25)
        sp.add_argument("--mu", type=float, default=255.0)

    sp = sub.add_parser("synth", help="synthesize a bandlimited test signal")
    sp.add_argument("--of", type=float, default=6.0)
    sp.add_argument("--length", type=int, default=1024)
    sp.add_argument("--num-sincs", type=int, default=5)
    sp.add_argument("--span", type=float, default=0.02)
    common(sp)
    sp.set_defaults(func=_cmd_synth)

    sp = sub.add_parser("fold", help="apply a folding operator to a signal file")
    sp.add_argument("--in", dest="input", required=True)
    op_flags(sp)
    common(sp)
    sp.set_defaults(func=_cmd_fold)

    sp = sub.add_parser("recover", help="recover true samples from folded ones")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--true", default=None,
                    help="ground-truth signal file (to derive N_lambda and "
                         "fill the residual column)")
    sp.add_argument("--algo", default="b2r2", choices=("b2r2", "vand", "hod"))
    sp.add_argument("--n-lambda", type=int, default=None)
    sp.add_argument("--hod-order", type=int, default=1)
    op_flags(sp)
    common(sp)
    sp.set_defaults(func=_cmd_recover)

    def sweep_flags(sp):
        sp.add_argument("--config", default=None)
        sp.add_argument("--lambda", dest="lam", type=float, default=None)
        sp.add_argument("--of", type=float, nargs="+", default=None)
        sp.add_argument("--snr", type=float, nargs="+", default=None)
        sp.add_argument("--operator", default=None,
                        choices=("clip", "modulo", "mulaw_modulo"))
        sp.add_argument("--mu", type=float, default=None)
        sp.add_argument("--trials", type=int, default=None)
        sp.add_argument("--jobs", type=int, default=1)
        common(sp)

    for name in ("bench", "sweep"):
        sp = sub.add_parser(name, help="run a Monte-Carlo MSE sweep")
        sweep_flags(sp)
        sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("figure-data",
                        help="regenerate a preset figure's data files")
    sp.add_argument("--fig", type=int, required=True,
                    choices=WAVEFORM_FIGURES + SWEEP_FIGURES)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out", required=True)
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=_cmd_figure_data)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnfoldKitError as exc:
        print(f"unfoldkit: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
