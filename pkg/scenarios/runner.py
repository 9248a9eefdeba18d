from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from beam.simulator import DetectorTimeSeries, simulate
from config import AnalysisConfig, Config
from scenarios.artifacts import (
    PathLike,
    write_spectrum,
    write_spectrum_plot,
    write_time_series,
    write_weak_value_report,
)
from scenarios.builtins import builtin_scenarios
from scenarios.parser import parse_scenario
from scenarios.scenario import Scenario
from spectrum.peaks import MirrorPeak, PeakComparison, compare_to_prediction, peak_report, reference_power
from spectrum.periodogram import PowerSpectrum, power_spectrum, smooth
from tsvf.errors import UndefinedWeakValue
from tsvf.weak_values import WeakValueReport, predict_peak_amplitudes, weak_values
from utils.logger import logger

ORTHOGONAL_NOTE = "Orthogonal postselection"


@dataclass
class RunOptions:
    """Analysis settings and output locations of one run."""

    window: int = 10
    half_width: int = 5
    threshold: float = 1e-4
    null_floor: float = 1e-10
    tolerance: float = 0.02
    noise_std: float = 0.0
    noise_seed: Optional[int] = None
    out_series: Optional[PathLike] = None
    out_spectrum: Optional[PathLike] = None
    out_report: Optional[PathLike] = None
    plot: Optional[PathLike] = None

    @classmethod
    def from_config(cls, config: Config, **overrides) -> "RunOptions":
        """Options from configuration, with explicit values (e.g. CLI flags) taking precedence."""
        analysis: AnalysisConfig = config.analysis
        options = cls(
            window=analysis.smoothing_window,
            half_width=analysis.peak_half_width,
            threshold=analysis.peak_threshold,
            null_floor=analysis.null_floor,
            tolerance=analysis.comparison_tolerance,
            noise_std=config.simulation.noise_std,
            noise_seed=config.simulation.noise_seed,
        )
        for key, value in overrides.items():
            if value is not None:
                setattr(options, key, value)
        return options


@dataclass
class RunArtifacts:
    """Everything a run produced, in memory and on disk."""

    scenario: Scenario
    series: DetectorTimeSeries
    spectrum: PowerSpectrum
    peaks: List[MirrorPeak]
    weak_values: WeakValueReport
    comparisons: Dict[str, PeakComparison] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    series_path: Optional[Path] = None
    spectrum_path: Optional[Path] = None
    report_path: Optional[Path] = None
    plot_path: Optional[Path] = None

    @property
    def peak_frequencies(self) -> List[float]:
        return sorted(peak.frequency for peak in self.peaks if peak.present)


def load_scenario(reference: str) -> Scenario:
    """Built-in scenario by name, or a scenario file by path.

    Raises:
        KeyError: If ``reference`` is neither a built-in name nor an existing file
        ScenarioError: If the file does not parse
    """
    scenarios = builtin_scenarios()
    if reference in scenarios:
        return scenarios[reference]
    path = Path(reference)
    if path.is_file():
        return parse_scenario(path.read_text(), name=path.stem)
    raise KeyError(f"'{reference}' is neither a built-in scenario ({', '.join(scenarios)}) nor a file")


def weak_value_report(scenario: Scenario) -> WeakValueReport:
    """Weak values of every vibrating mirror, from the attenuated path table."""
    return weak_values(scenario.detected_paths(), scenario.mirrors)


def run(scenario: Scenario, options: Optional[RunOptions] = None) -> RunArtifacts:
    """Simulate a scenario, analyse its spectrum, and write the requested files.

    Orthogonal postselection is not a failure: the weak-value report is written
    marked undefined and a note is attached instead of prediction comparisons.

    Args:
        scenario: Scenario to run
        options: Analysis settings and outputs (defaults to RunOptions())

    Returns:
        The in-memory results with the paths of the files written

    Raises:
        OSError: If an output file cannot be written
    """
    options = options or RunOptions()
    logger.scenario(scenario.name, scenario.description or "scenario file")

    series = simulate(scenario, noise_std=options.noise_std, noise_seed=options.noise_seed)
    spectrum = smooth(power_spectrum(series), options.window)

    reference = reference_power(scenario.beam, scenario.max_displacement_um, spectrum.window)
    peaks = peak_report(
        spectrum,
        scenario.vibrations,
        reference,
        threshold=options.threshold,
        null_floor=options.null_floor,
        half_width=options.half_width,
    )

    report = weak_value_report(scenario)
    artifacts = RunArtifacts(
        scenario=scenario,
        series=series,
        spectrum=spectrum,
        peaks=peaks,
        weak_values=report,
    )

    try:
        predicted = predict_peak_amplitudes(scenario.detected_paths(), scenario.vibrations, scenario.beam)
    except UndefinedWeakValue as e:
        logger.note(ORTHOGONAL_NOTE, str(e))
        artifacts.notes.append(f"{ORTHOGONAL_NOTE}: {e}")
    else:
        artifacts.comparisons = compare_to_prediction(
            spectrum,
            predicted,
            scenario.vibrations,
            tolerance=options.tolerance,
            half_width=options.half_width,
            null_threshold=options.threshold,
        )
        for mirror, comparison in artifacts.comparisons.items():
            if comparison.flagged:
                logger.warning(
                    f"Mirror {mirror}: simulated peak {comparison.simulated:.4e} disagrees with "
                    f"the weak-value prediction {comparison.predicted:.4e}"
                )

    if options.out_series is not None:
        artifacts.series_path = write_time_series(options.out_series, series)
        logger.written("time series", artifacts.series_path)
    if options.out_spectrum is not None:
        artifacts.spectrum_path = write_spectrum(options.out_spectrum, spectrum)
        logger.written("spectrum", artifacts.spectrum_path)
    if options.out_report is not None:
        artifacts.report_path = write_weak_value_report(options.out_report, report)
        logger.written("weak-value report", artifacts.report_path)
    if options.plot is not None:
        artifacts.plot_path = write_spectrum_plot(
            options.plot, spectrum, scenario.vibrations, title=f"{scenario.name}: power spectrum"
        )
        logger.written("plot", artifacts.plot_path)

    return artifacts
