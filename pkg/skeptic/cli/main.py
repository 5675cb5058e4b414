import sys
import logging
import argparse
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from rich import box
from rich.table import Table
from rich.console import Console
from rich.logging import RichHandler

from skeptic import sim
from skeptic import audit
from skeptic import config as C
from skeptic import hindsight
from skeptic import ingest
from skeptic.errors import DataError, NumericalError, CollateralDutyError
from skeptic.game.tools import accumulate, diagnostics
from skeptic.features.tools import PRESETS, attach
from skeptic.game.structures import RoundSeries
from skeptic.cli.structures import RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is reserved for data errors here
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def setup_logging(verbosity: int):
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = C.LOG_LEVEL

    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )
    logging.captureWarnings(True)


def build_series(config: RunConfig, seed: Optional[int] = None) -> tuple[RoundSeries, Optional[pd.Series]]:
    """
    Game record of a config: a simulated scenario or a loaded file, with the configured features attached.

    Returns:
        tuple[RoundSeries, pd.Series | None]: The rounds and, for data files, their dates.
    """
    spec = config.feature_spec

    if config.case is not None:
        scenario = sim.preset(
            config.case,
            n=config.n,
            seed=config.seed if seed is None else seed,
            p11=config.p11,
            p10=config.p10,
            forecast=config.forecast,
        )
        frame = sim.generate(scenario)
        return attach(spec, frame), None

    records = ingest.load_csv(config.data, clamp_eps=config.clamp_eps)
    frame = records.df if config.n is None else records.df.iloc[: config.n]
    dates = frame.date if frame.date.notna().all() else None
    return attach(spec, frame), dates


def write_csv(df: pd.DataFrame, out: str):
    if out == "-":
        df.to_csv(sys.stdout, index=False, float_format="%.10g")
    else:
        df.to_csv(out, index=False, float_format="%.10g")
        logger.info("Wrote %d rows to %s", len(df), out)


def report_console(config: RunConfig) -> Console:
    # Keep stdout clean when the CSV goes there
    return Console(stderr=config.out == "-")


def _format(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(f"{v:.4f}" for v in value) + "]"
    if isinstance(value, float):
        return "nan" if np.isnan(value) else f"{value:.6g}"
    return str(value)


def summary_table(title: str, summary: dict) -> Table:
    table = Table(title=title, box=box.ROUNDED, show_header=True, header_style="dim")
    table.add_column("Quantity", style="white")
    table.add_column("Value", justify="right")
    for key, value in summary.items():
        table.add_row(key, _format(value))
    return table


def cmd_simulate(config: RunConfig) -> int:
    console = report_console(config)
    spec = config.feature_spec
    prior = config.prior_spec

    if config.sweep is not None:
        seeds = list(range(config.seed, config.seed + config.sweep))
        summaries = audit.sweep(
            make_series=lambda seed: build_series(config, seed=seed)[0],
            seeds=seeds,
            spec=spec,
            prior=prior,
        )
        write_csv(summaries.drop(columns=["theta_star", "posterior_mean"]), config.out)
        console.print(f"{len(seeds)} seeds, median log K^pi = {summaries.log_k_pi.median():.4f}")
        return EXIT_OK

    series, _ = build_series(config)
    result = audit.run_game(series, spec, prior=prior, trace_every=config.trace_every)
    write_csv(result.trace, config.out)
    console.print(summary_table(f"{config.case} / {spec.to_text()}", result.summary))
    return EXIT_OK


def cmd_audit(config: RunConfig) -> int:
    console = report_console(config)
    spec = config.feature_spec
    prior = config.prior_spec

    series, dates = build_series(config)
    result = audit.run_game(series, spec, prior=prior, trace_every=config.trace_every)
    write_csv(result.trace, config.out)

    console.print(summary_table(f"Audit of {config.data} / {spec.to_text()}, prior {prior.to_text()}", result.summary))
    if dates is not None:
        seasonal = ingest.seasonal_summary(result.trace, dates)
        table = Table(title="log K^pi change per month", box=box.ROUNDED, header_style="dim")
        for col in seasonal.columns:
            table.add_column(col, justify="right")
        for row in seasonal.itertuples(index=False):
            table.add_row(str(row.month), str(row.rounds), f"{row.log_capital_change:.4f}")
        console.print(table)

    return EXIT_OK


def cmd_mle(config: RunConfig) -> int:
    console = report_console(config)
    spec = config.feature_spec

    series, _ = build_series(config)
    result = hindsight.mle(series)
    state = accumulate(series)
    diag = diagnostics(state)

    summary = {
        "rounds": len(series),
        "theta_star": result.theta_star,
        "log_k_mle": result.log_capital,
        "converged": result.converged,
        "iterations": result.iterations,
        "quadratic_ratio": hindsight.quadratic_ratio(result, diag),
        "drift_ratio": hindsight.drift_ratio(diag),
    }
    if spec.logit_index is not None:
        summary["beta_star"] = float(result.theta_star[spec.logit_index] + 1)

    if not diag.degenerate:
        bound = hindsight.small_mle_bound(series, state, result)
        summary |= {
            "premise_holds": bound.premise_holds,
            "mle_norm": bound.mle_norm,
            "small_mle_bound": bound.bound,
            "bound_holds": bound.holds,
        }

    console.print(summary_table(f"Hindsight strategy / {spec.to_text()}", summary))
    return EXIT_OK


def cmd_calib(config: RunConfig) -> int:
    console = report_console(config)

    records = ingest.load_csv(config.data, clamp_eps=config.clamp_eps)
    table = ingest.calibration_table(records)

    view = Table(title=f"Calibration of {config.data}", box=box.ROUNDED, header_style="dim")
    for col in ["p (%)", "x = 1", "x = 0", "total", "ratio (%)"]:
        view.add_column(col, justify="right")
    for row in table.df.itertuples():
        view.add_row(str(row.Index), str(row.rainy), str(row.dry), str(row.total), f"{100 * row.ratio:.1f}")
    console.print(view)

    if config.out == "-":
        table.to_csv(sys.stdout, float_format="%.10g")
    else:
        table.to_csv(config.out, float_format="%.10g")

    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "audit": cmd_audit,
    "mle": cmd_mle,
    "calib": cmd_calib,
}


def make_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="Output CSV path, '-' for stdout")
    common.add_argument("--clamp-eps", type=float, default=C.CLAMP_EPS, help="Replacement for 0%% and 100%% forecasts")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs")

    strategy = ArgumentParser(add_help=False)
    strategy.add_argument("--strategy", choices=list(PRESETS), default="strategy-1", help="Side information preset")
    strategy.add_argument("--features", help="Explicit features, e.g. const,logit,lag1,exo:temp")
    strategy.add_argument("--prior", help="Uniform prior box lo:hi[,lo:hi...], log-odds coordinate on the beta scale")
    strategy.add_argument("--nodes", type=int, help="Quadrature nodes per dimension")
    strategy.add_argument("--trace-every", type=int, default=C.TRACE_EVERY, help="Rounds between hindsight checkpoints")

    scenario = ArgumentParser(add_help=False)
    scenario.add_argument("--seed", type=int, default=0)
    scenario.add_argument("--p11", type=float, default=sim.process.CASE3_P11, help="case-3: P(x=1 | previous x=1)")
    scenario.add_argument("--p10", type=float, default=sim.process.CASE3_P10, help="case-3: P(x=1 | previous x=0)")
    scenario.add_argument("--forecast", type=float, default=0.5, help="honest: the constant forecast")

    parser = ArgumentParser(prog="skeptic", description="Audit probability forecasts by betting against them.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    simulate = subparsers.add_parser("simulate", parents=[common, strategy, scenario], help="Play a simulated scenario")
    simulate.add_argument("--case", required=True, choices=sim.SCENARIOS)
    simulate.add_argument("--n", type=int, required=True, help="Number of rounds")
    simulate.add_argument("--sweep", type=int, help="Run this many consecutive seeds and write their summaries")

    audit_parser = subparsers.add_parser("audit", parents=[common, strategy], help="Bet against recorded forecasts")
    audit_parser.add_argument("--data", required=True, help="CSV with the header date,p,x[,extra...]")
    audit_parser.add_argument("--n", type=int, help="Use only the first n rounds")

    mle = subparsers.add_parser("mle", parents=[common, strategy, scenario], help="Best constant strategy in hindsight")
    source = mle.add_mutually_exclusive_group(required=True)
    source.add_argument("--case", choices=sim.SCENARIOS)
    source.add_argument("--data")
    mle.add_argument("--n", type=int)

    calib = subparsers.add_parser("calib", parents=[common], help="Calibration table of recorded forecasts")
    calib.add_argument("--data", required=True)

    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> tuple[RunConfig, int]:
    args = make_parser().parse_args(argv)
    if getattr(args, "case", None) is not None and args.n is None:
        raise UsageError(f"{args.command}: --n is required with --case")

    fields = {
        key: value
        for key, value in vars(args).items()
        if key in RunConfig.__dataclass_fields__ and value is not None
    }
    return RunConfig(**fields), args.verbose


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config, verbosity = parse_config(argv)
    except (UsageError, ValueError, KeyError) as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE

    setup_logging(verbosity)
    try:
        return COMMANDS[config.command](config)
    except (DataError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_DATA
    except (NumericalError, CollateralDutyError) as exc:
        logger.error("%s", exc)
        return EXIT_NUMERICAL
    except (ValueError, KeyError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
