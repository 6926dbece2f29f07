"""wellcs command group: figure data as CSV and the verification suite."""
import logging
from typing import Callable, Optional, Sequence, Tuple

import click

from wellcs.cli.error_handler import handle_errors
from wellcs.cli.run_config import RunConfig, load_run_config, parse_overrides
from wellcs.core.config import settings
from wellcs.core.exceptions import NumericalContractError
from wellcs.core.logging import setup_logging
from wellcs.domain.value_objects import GeCS
from wellcs.services import csv_report
from wellcs.services.dynamics import observables as compute_observables
from wellcs.services.states import build_state
from wellcs.services.verification import run_verification

logger = logging.getLogger(__name__)

DEFAULT_Z0_SWEEP = (25.0, 100.0, 400.0)


_RUN_OPTIONS = (
    click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="Run configuration"),
    click.option("--set", "overrides", multiple=True, metavar="KEY=VALUE", help="Override a dotted configuration key"),
    click.option("--out", default=None, metavar="PATH|-", help="Output file, '-' for stdout"),
    click.option("--threads", type=click.IntRange(min=1), default=settings.DEFAULT_THREADS, show_default=True),
)


def run_options(command: Callable) -> Callable:
    """--config, --set, --out and --threads, shared by every verb."""
    for option in reversed(_RUN_OPTIONS):
        command = option(command)
    return command


def _load(config_path: Optional[str], overrides: Sequence[str]) -> RunConfig:
    return load_run_config(config_path, parse_overrides(overrides))


def _emit(text: str, out: Optional[str], config: RunConfig) -> None:
    target = out if out is not None else config.output.path
    with click.open_file(target, "w", encoding="utf-8") as stream:
        stream.write(text)
    logger.debug("Output written", extra={"target": target, "bytes": len(text)})


@click.group()
@click.option("--debug", is_flag=True, default=settings.DEBUG, help="Verbose structured logs on stderr")
@click.option("--log-level", default=settings.LOG_LEVEL, show_default=True)
@click.version_option(settings.VERSION, prog_name=settings.APP_NAME)
def cli(debug: bool, log_level: str) -> None:
    """Coherent states of the infinite square well: observables, densities and checks as CSV."""
    setup_logging(debug=debug, level_name=log_level)


@cli.command()
@run_options
@handle_errors
def observables(config_path, overrides, out, threads):
    """<x>, <p>, dx, dp and dx*dp over the configured time grid."""
    config = _load(config_path, overrides)
    v = build_state(config.state, config.tolerances.rel_tail_tol)
    series = compute_observables(v, config.time, config.well, threads, config.tolerances.hermiticity)
    frame, summary = csv_report.observables_table(series)
    _emit(csv_report.render_csv(frame, summary), out, config)


@cli.command()
@run_options
@click.option("--t", "t", type=float, default=None, help="Time sample; defaults to time.start")
@handle_errors
def density(config_path, overrides, out, threads, t):
    """Exact density next to the Gaussian approximation and its Fourier pieces."""
    config = _load(config_path, overrides)
    frame, summary = csv_report.density_table(
        config.state,
        config.well,
        config.space_grid(),
        config.time.start if t is None else t,
        rel_tail_tol=config.tolerances.rel_tail_tol,
        thresholds=config.tolerances.validity,
        threads=threads,
    )
    _emit(csv_report.render_csv(frame, summary), out, config)


@cli.command()
@run_options
@click.option("--t", "t", type=float, default=None, help="Time sample; defaults to time.start")
@handle_errors
def wavefunction(config_path, overrides, out, threads, t):
    """Phase-aligned exact wavefunction next to the approximate one."""
    config = _load(config_path, overrides)
    frame, summary = csv_report.wavefunction_table(
        config.state,
        config.well,
        config.space_grid(),
        config.time.start if t is None else t,
        rel_tail_tol=config.tolerances.rel_tail_tol,
        thresholds=config.tolerances.validity,
        threads=threads,
    )
    _emit(csv_report.render_csv(frame, summary), out, config)


@cli.command()
@run_options
@click.option("--z0", "z0_values", type=float, multiple=True, help="z0 values to sweep (repeatable)")
@handle_errors
def equivalence(config_path, overrides, out, threads, z0_values: Tuple[float, ...]):
    """Generalized against Gaussian coherent states over a z0 sweep."""
    config = _load(config_path, overrides)
    if not z0_values:
        z0_values = (config.state.z0,) if isinstance(config.state, GeCS) else DEFAULT_Z0_SWEEP
    frame, summary = csv_report.equivalence_table(
        z0_values,
        phi0=config.state.phi0,
        rel_tail_tol=config.tolerances.rel_tail_tol,
        threads=threads,
    )
    _emit(csv_report.render_csv(frame, summary), out, config)


@cli.command()
@run_options
@handle_errors
def verify(config_path, overrides, out, threads):
    """Run the invariant suites; exit 3 when any check fails."""
    config = _load(config_path, overrides)
    results = run_verification(
        config.well,
        config.state,
        config.time,
        config.space_grid(),
        rel_tail_tol=config.tolerances.rel_tail_tol,
        hermiticity_tol=config.tolerances.hermiticity,
        threads=threads,
    )
    frame = csv_report.verification_frame(results)
    _emit(csv_report.render_csv(frame), out, config)

    failed = [row.check for row in results if not row.passed]
    if failed:
        raise NumericalContractError(f"{len(failed)} verification check(s) failed: {', '.join(failed)}")
