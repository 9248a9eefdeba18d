import math
from dataclasses import dataclass
from typing import Union

import numpy as np

TimeLike = Union[float, np.ndarray]

UM_PER_M = 1e6


@dataclass(frozen=True)
class VibrationSpec:
    """Sinusoidal tilt of a mirror, expressed as the vertical beam shift it causes.

    The shift on the detector plane is ``displacement_um * sin(2π f t + phase_rad)``.
    """

    frequency_hz: float
    displacement_um: float = 0.6
    phase_rad: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.frequency_hz) or self.frequency_hz <= 0:
            raise ValueError(f"frequency_hz must be positive, got {self.frequency_hz}")
        if not math.isfinite(self.displacement_um) or self.displacement_um < 0:
            raise ValueError(f"displacement_um must not be negative, got {self.displacement_um}")
        if not math.isfinite(self.phase_rad):
            raise ValueError(f"phase_rad must be finite, got {self.phase_rad}")

    @classmethod
    def from_tilt(
        cls,
        frequency_hz: float,
        angle_rad: float,
        lever_arm_m: float,
        phase_rad: float = 0.0,
    ) -> "VibrationSpec":
        """Build a spec from a tilt amplitude and the distance to the detector.

        Args:
            frequency_hz: Vibration frequency
            angle_rad: Tilt amplitude of the mirror
            lever_arm_m: Distance over which the tilt turns into a shift

        Returns:
            Spec with displacement = angle × lever arm
        """
        if angle_rad < 0 or lever_arm_m < 0:
            raise ValueError("Tilt angle and lever arm must not be negative")
        return cls(
            frequency_hz=frequency_hz,
            displacement_um=angle_rad * lever_arm_m * UM_PER_M,
            phase_rad=phase_rad,
        )


def mirror_displacement(vib: VibrationSpec, t: TimeLike) -> TimeLike:
    """Vertical shift (µm) caused by a vibrating mirror at time(s) t."""
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise ValueError("Time must not be negative")
    shift = vib.displacement_um * np.sin(2 * np.pi * vib.frequency_hz * times + vib.phase_rad)
    return float(shift) if shift.ndim == 0 else shift
