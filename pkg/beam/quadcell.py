from typing import Mapping, Optional, Sequence

import numpy as np

from beam.gaussian import (
    GaussianBeam,
    half_plane_difference,
    integrated_intensity,
    linearized_difference,
)
from beam.vibration import TimeLike, VibrationSpec, mirror_displacement
from optics.paths import OpticalPath

Vibrations = Mapping[str, VibrationSpec]


def path_displacement(path: OpticalPath, vibrations: Vibrations, t: TimeLike) -> TimeLike:
    """Total vertical shift (µm) of a path: the sum of its mirrors' shifts.

    Raises:
        KeyError: If a mirror on the path has no vibration spec
    """
    times = np.asarray(t, dtype=float)
    total = np.zeros_like(times)
    for mirror in path.mirrors:
        if mirror not in vibrations:
            raise KeyError(f"No vibration spec for mirror '{mirror}'")
        total = total + mirror_displacement(vibrations[mirror], times)
    return float(total) if total.ndim == 0 else total


def displacement_matrix(
    paths: Sequence[OpticalPath],
    vibrations: Optional[Vibrations],
    beam: GaussianBeam,
    t: TimeLike,
) -> np.ndarray:
    """Path shifts in millimetres, shape (len(paths), len(t))."""
    times = np.atleast_1d(np.asarray(t, dtype=float))
    matrix = np.zeros((len(paths), times.size))
    if vibrations is None:
        return matrix
    for row, path in enumerate(paths):
        matrix[row] = beam.to_mm(path_displacement(path, vibrations, times))
    return matrix


def _scalar_or_array(values: np.ndarray, t: TimeLike):
    return float(values[0]) if np.ndim(t) == 0 else values


def quadcell_signal(
    paths: Sequence[OpticalPath],
    amplitudes: Sequence[complex],
    beam: GaussianBeam,
    vibrations: Vibrations,
    t: TimeLike,
):
    """Exact quad-cell signal S(t): intensity above y=0 minus intensity below."""
    d = displacement_matrix(paths, vibrations, beam, t)
    return _scalar_or_array(half_plane_difference(amplitudes, d, beam), t)


def first_order_signal(
    paths: Sequence[OpticalPath],
    amplitudes: Sequence[complex],
    beam: GaussianBeam,
    vibrations: Vibrations,
    t: TimeLike,
):
    """Linearization of quadcell_signal in the displacements."""
    d = displacement_matrix(paths, vibrations, beam, t)
    return _scalar_or_array(linearized_difference(amplitudes, d, beam), t)


def total_power(
    paths: Sequence[OpticalPath],
    amplitudes: Sequence[complex],
    beam: GaussianBeam,
    t: TimeLike = 0.0,
    vibrations: Optional[Vibrations] = None,
):
    """Detected power integrated over the full plane.

    Without vibrations every path sits at zero displacement.
    """
    d = displacement_matrix(paths, vibrations, beam, t)
    return _scalar_or_array(integrated_intensity(amplitudes, d, beam), t)
