import os
from dataclasses import dataclass, field
from typing import Callable, Optional, TypeVar

from dotenv import load_dotenv

load_dotenv()

T = TypeVar("T")


@dataclass
class AnalysisConfig:
    smoothing_window: int = 10
    peak_half_width: int = 5
    peak_threshold: float = 1e-4
    null_floor: float = 1e-10
    comparison_tolerance: float = 0.02


@dataclass
class SimulationConfig:
    noise_std: float = 0.0
    noise_seed: Optional[int] = None


@dataclass
class Config:
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    simulation: SimulationConfig = field(default_factory=SimulationConfig)

    @classmethod
    def from_env(cls) -> "Config":
        analysis = AnalysisConfig(
            smoothing_window=_env("SMOOTHING_WINDOW", int, 10),
            peak_half_width=_env("PEAK_HALF_WIDTH", int, 5),
            peak_threshold=_env("PEAK_THRESHOLD", float, 1e-4),
            null_floor=_env("NULL_FLOOR", float, 1e-10),
            comparison_tolerance=_env("COMPARISON_TOLERANCE", float, 0.02),
        )
        if analysis.smoothing_window < 1:
            raise ValueError("SMOOTHING_WINDOW must be a positive integer")
        if analysis.peak_half_width < 0:
            raise ValueError("PEAK_HALF_WIDTH must not be negative")

        simulation = SimulationConfig(
            noise_std=_env("NOISE_STD", float, 0.0),
            noise_seed=_env("NOISE_SEED", int, None),
        )
        if simulation.noise_std < 0:
            raise ValueError("NOISE_STD must not be negative")

        return cls(analysis=analysis, simulation=simulation)


def _env(name: str, parse: Callable[[str], T], default: Optional[T]) -> Optional[T]:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return parse(raw.strip())
    except ValueError:
        raise ValueError(f"{name}={raw!r} is not a valid {parse.__name__}")
