import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Mapping, Optional

import numpy as np

from beam.gaussian import GaussianBeam, half_plane_difference
from beam.quadcell import displacement_matrix
from beam.vibration import VibrationSpec
from utils.logger import logger

if TYPE_CHECKING:
    from scenarios.scenario import Scenario

WEAK_REGIME_LIMIT = 1e-2


@dataclass(frozen=True)
class SamplingSpec:
    """Uniform sampling of the detector signal."""

    rate_hz: float = 2500.0
    duration_s: float = 1.0

    def __post_init__(self):
        if not (self.rate_hz > 0 and self.duration_s > 0):
            raise ValueError("rate_hz and duration_s must be positive")
        count = self.rate_hz * self.duration_s
        if abs(count - round(count)) > 1e-9 * max(1.0, count) or round(count) < 1:
            raise ValueError(f"rate_hz * duration_s = {count} is not a positive integer sample count")

    @property
    def sample_count(self) -> int:
        return int(round(self.rate_hz * self.duration_s))

    def times(self) -> np.ndarray:
        return np.arange(self.sample_count) / self.rate_hz


@dataclass(frozen=True)
class DetectorTimeSeries:
    """Sampled quad-cell signal S(t_n), t_n = n / rate."""

    sampling: SamplingSpec
    samples: np.ndarray = field(compare=False)

    def __post_init__(self):
        if len(self.samples) != self.sampling.sample_count:
            raise ValueError(
                f"Expected {self.sampling.sample_count} samples, got {len(self.samples)}"
            )

    @property
    def times(self) -> np.ndarray:
        return self.sampling.times()


def check_weak_regime(beam: GaussianBeam, vibrations: Mapping[str, VibrationSpec]) -> bool:
    """Warn about mirrors whose shift is not small compared with the waist.

    Returns:
        True if every mirror is inside the weak regime
    """
    weak = True
    for mirror, vib in sorted(vibrations.items()):
        ratio = beam.to_mm(vib.displacement_um) / beam.waist_mm
        if ratio > WEAK_REGIME_LIMIT:
            logger.warning(
                f"Mirror {mirror}: δ/Δ = {ratio:.2e} exceeds {WEAK_REGIME_LIMIT:g}; "
                "first-order weak-value predictions will be inaccurate"
            )
            weak = False
    return weak


def simulate(
    scenario: "Scenario",
    sampling: Optional[SamplingSpec] = None,
    noise_std: float = 0.0,
    noise_seed: Optional[int] = None,
) -> DetectorTimeSeries:
    """Sample the quad-cell signal of a scenario.

    Args:
        scenario: Scenario to simulate
        sampling: Overrides the scenario's sampling
        noise_std: Standard deviation of additive white noise (0 disables it)
        noise_seed: Seed for the noise generator

    Returns:
        Time series in time order
    """
    sampling = sampling or scenario.sampling
    if noise_std < 0 or not math.isfinite(noise_std):
        raise ValueError(f"noise_std must be a non-negative number, got {noise_std}")

    check_weak_regime(scenario.beam, scenario.vibrations)

    paths = scenario.detected_paths()
    amplitudes = [path.amplitude for path in paths]
    d = displacement_matrix(paths, scenario.vibrations, scenario.beam, sampling.times())
    samples = half_plane_difference(amplitudes, d, scenario.beam)

    if noise_std > 0:
        rng = np.random.default_rng(noise_seed)
        samples = samples + rng.normal(0.0, noise_std, size=samples.shape)

    return DetectorTimeSeries(sampling=sampling, samples=samples)
