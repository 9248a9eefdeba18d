from pathlib import Path
from typing import Optional

from beam.simulator import check_weak_regime
from config import Config
from scenarios.artifacts import write_weak_value_report
from scenarios.builtins import builtin_scenarios, describe
from scenarios.parser import parse_scenario
from scenarios.runner import ORTHOGONAL_NOTE, RunArtifacts, RunOptions, load_scenario, run, weak_value_report
from tsvf.weak_values import WeakValueReport
from utils.logger import logger

UNITS_NOTE = "Spectral powers are Parseval-normalized (mean square of the signal); only ratios between peaks carry meaning."


def _show_weak_values(report: WeakValueReport) -> None:
    logger.weak_value_table(report.values, report.overlap, report.defined)


def list_scenarios_handler() -> None:
    """Print the built-in scenarios."""
    logger.scenario_table(describe(builtin_scenarios()))


def weak_values_handler(scenario: str, out: Optional[str] = None) -> WeakValueReport:
    """Compute and print the weak values of a scenario, optionally writing the report."""
    loaded = load_scenario(scenario)
    logger.scenario(loaded.name, loaded.description or "scenario file")
    report = weak_value_report(loaded)
    _show_weak_values(report)
    if not report.defined:
        logger.note(ORTHOGONAL_NOTE, "The overlap of pre- and postselected states vanishes.")
    if out is not None:
        logger.written("weak-value report", write_weak_value_report(out, report))
    return report


def simulate_handler(
    config: Config,
    scenario: str,
    out_series: Optional[str] = None,
    out_spectrum: Optional[str] = None,
    out_report: Optional[str] = None,
    plot: Optional[str] = None,
    window: Optional[int] = None,
    noise_seed: Optional[int] = None,
    noise_std: Optional[float] = None,
) -> RunArtifacts:
    """Run a scenario end to end and print the peak and weak-value reports."""
    options = RunOptions.from_config(
        config,
        window=window,
        noise_seed=noise_seed,
        noise_std=noise_std,
        out_series=out_series,
        out_spectrum=out_spectrum,
        out_report=out_report,
        plot=plot,
    )
    artifacts = run(load_scenario(scenario), options)

    logger.peak_table(
        {
            "mirror": peak.mirror,
            "frequency": peak.frequency,
            "power": peak.power,
            "relative": peak.relative,
            "present": peak.present,
        }
        for peak in artifacts.peaks
    )
    _show_weak_values(artifacts.weak_values)
    logger.info(UNITS_NOTE)

    found = ", ".join(f"{f:g} Hz" for f in artifacts.peak_frequencies) or "none"
    logger.success(f"{artifacts.scenario.name}: peaks at {found}")
    return artifacts


def validate_handler(file: str) -> None:
    """Parse a scenario file and report whether it is usable."""
    path = Path(file)
    scenario = parse_scenario(path.read_text(), name=path.stem)
    check_weak_regime(scenario.beam, scenario.vibrations)
    logger.success(
        f"{path}: {len(scenario.paths)} path(s), mirrors {' '.join(scenario.mirrors) or '-'}, "
        f"{scenario.sampling.sample_count} samples"
    )
