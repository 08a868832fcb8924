"""Command-line interface.

    jcm-entropy sweep --mean-photon 25 --g 1 --lambda0 0.1 --t-end 70 --steps 1401
    jcm-entropy validate --mean-photon 25 --lambda0 0.1 --grid 64

Exit status: 0 on success / PASS, 1 on usage errors, 2 when validation fails.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import JCMError
from .model import FieldSpec, ModelParams
from .sweep import OUTPUTS, SweepConfig, run_sweep, run_validate

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _model_flags(p: argparse.ArgumentParser) -> None:
    field = p.add_mutually_exclusive_group(required=True)
    field.add_argument("--mean-photon", type=float, help="coherent field with |theta|^2 = MEAN")
    field.add_argument("--fock", type=int, help="Fock field with exactly N photons")
    p.add_argument("--g", type=float, default=1.0, help="coupling constant (default 1)")
    p.add_argument("--lambda0", type=float, default=0.1, help="initial lower-level population")
    p.add_argument("--log-base", choices=("e", "2"), default="e")
    p.add_argument("--tail-eps", type=float, default=1e-12, help="discarded Poisson tail")
    p.add_argument("--cutoff", type=int, default=None, help="force the Fock cutoff N")
    p.add_argument("--t-start", type=float, default=0.0)
    p.add_argument("--t-end", type=float, default=70.0)
    p.add_argument("--out", default="stdout", help="output path or 'stdout'")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jcm-entropy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = sub.add_parser("sweep", help="tabulate mutual entropy and populations over time")
    _model_flags(sweep)
    sweep.add_argument("--steps", type=int, default=701)
    sweep.add_argument(
        "--outputs",
        default="mutual_entropy",
        help="comma separated subset of: " + ",".join(OUTPUTS),
    )
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")

    validate = sub.add_parser("validate", help="check the closed form against exact evolution")
    _model_flags(validate)
    validate.add_argument("--grid", type=int, default=64, help="number of time points")
    validate.set_defaults(t_end=65.0)
    return parser


def _params(args) -> ModelParams:
    if args.mean_photon is not None:
        field = FieldSpec.from_mean_photon(args.mean_photon, args.cutoff)
    else:
        field = FieldSpec.fock(args.fock, args.cutoff)
    return ModelParams(args.g, field, args.log_base, args.tail_eps)


def _emit(text: str, out: str) -> None:
    if out == "stdout":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = _params(args)
        if args.command == "sweep":
            outputs = tuple(s.strip() for s in args.outputs.split(",") if s.strip())
            config = SweepConfig(
                params, args.lambda0, args.t_start, args.t_end, args.steps, outputs, args.format
            )
            table = run_sweep(config)
            _emit(table.render(config.format), args.out)
            return EXIT_OK

        if args.grid < 1:
            raise ValueError("--grid must be >= 1")
        grid = np.linspace(args.t_start, args.t_end, args.grid)
        report = run_validate(params, args.lambda0, grid)
        _emit(report.table.to_csv(), args.out)
        print(report.summary(), file=sys.stderr)
        return EXIT_OK if report.passed else EXIT_FAIL
    except (JCMError, ValueError) as exc:
        print(f"jcm-entropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
