import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from beam.gaussian import GaussianBeam
from beam.simulator import SamplingSpec
from beam.vibration import VibrationSpec
from optics.network import OpticalNetwork
from optics.paths import OpticalPath


@dataclass(frozen=True)
class Scenario:
    """Everything needed to simulate one setup.

    ``paths`` is the amplitude table before input attenuation; ``attenuation`` is a
    power factor applied at the source. ``network`` is kept when the scenario was
    built from a topology, so the two-state vector can be computed; it does not
    take part in equality.
    """

    name: str
    paths: Tuple[OpticalPath, ...]
    beam: GaussianBeam = field(default_factory=GaussianBeam)
    vibrations: Dict[str, VibrationSpec] = field(default_factory=dict)
    sampling: SamplingSpec = field(default_factory=SamplingSpec)
    attenuation: float = 1.0
    description: str = field(default="", compare=False)
    network: Optional[OpticalNetwork] = field(default=None, compare=False)

    def __post_init__(self):
        if not (0.0 < self.attenuation <= 1.0) or math.isnan(self.attenuation):
            raise ValueError(f"attenuation must lie in (0, 1], got {self.attenuation}")
        for path in self.paths:
            if abs(path.amplitude) > 1.0 + 1e-12:
                raise ValueError(f"Path {' '.join(path.mirrors)} has |amplitude| > 1")
            for mirror in path.mirrors:
                if mirror not in self.vibrations:
                    raise ValueError(f"Path mirror '{mirror}' has no vibration spec")
        nyquist = self.sampling.rate_hz / 2
        for mirror, vib in self.vibrations.items():
            if vib.frequency_hz > nyquist:
                raise ValueError(
                    f"Mirror {mirror}: {vib.frequency_hz:g} Hz is above the Nyquist frequency {nyquist:g} Hz"
                )

    @property
    def mirrors(self) -> List[str]:
        return sorted(self.vibrations)

    def detected_paths(self) -> List[OpticalPath]:
        """Path table with the input attenuation folded into the amplitudes."""
        scale = math.sqrt(self.attenuation)
        return [path.scaled(scale) for path in self.paths]

    def amplitudes(self) -> List[complex]:
        return [path.amplitude for path in self.detected_paths()]

    @property
    def max_displacement_um(self) -> float:
        return max((vib.displacement_um for vib in self.vibrations.values()), default=0.0)
