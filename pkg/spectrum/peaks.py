from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional

from beam.gaussian import GaussianBeam, first_order_gain
from beam.vibration import VibrationSpec
from spectrum.periodogram import PowerSpectrum

# predictions this far below the loudest one count as silent
SILENT_RELATIVE = 1e-12


@dataclass(frozen=True)
class MirrorPeak:
    mirror: str
    frequency: float
    power: float
    relative: float
    present: bool


@dataclass(frozen=True)
class PeakComparison:
    mirror: str
    frequency: float
    simulated: float
    predicted: float
    ratio: Optional[float]
    flagged: bool


def peak_power(spectrum: PowerSpectrum, f: float, half_width: int = 5) -> float:
    """Largest power within ±half_width bins of frequency f.

    Raises:
        ValueError: If f lies outside [0, Nyquist] or half_width is negative
    """
    if half_width < 0:
        raise ValueError(f"half_width must not be negative, got {half_width}")
    if not 0.0 <= f <= spectrum.nyquist:
        raise ValueError(f"Frequency {f} Hz outside [0, {spectrum.nyquist}] Hz")

    centre = spectrum.bin_of(f)
    lo = max(0, centre - half_width)
    hi = min(len(spectrum.powers), centre + half_width + 1)
    return float(spectrum.powers[lo:hi].max())


def reference_power(beam: GaussianBeam, displacement_um: float, window: int = 1) -> float:
    """Peak power of one unattenuated unit beam shifted sinusoidally by ``displacement_um``."""
    amplitude = first_order_gain(beam) * beam.to_mm(displacement_um)
    return amplitude ** 2 / 2.0 / window


def peak_report(
    spectrum: PowerSpectrum,
    vibrations: Mapping[str, VibrationSpec],
    reference: float,
    threshold: float = 1e-4,
    null_floor: float = 1e-10,
    half_width: int = 5,
) -> List[MirrorPeak]:
    """Peak power at each mirror frequency and whether it counts as a peak.

    A mirror shows a peak when its power reaches ``threshold`` times the strongest
    mirror peak and ``null_floor`` times ``reference``; the floor keeps numerical
    residue of a null signal from being reported as peaks.
    """
    powers = {
        mirror: peak_power(spectrum, vib.frequency_hz, half_width)
        for mirror, vib in sorted(vibrations.items())
    }
    strongest = max(powers.values(), default=0.0)

    report = []
    for mirror, power in powers.items():
        relative = power / strongest if strongest > 0 else 0.0
        present = strongest > 0 and relative >= threshold and power >= null_floor * reference
        report.append(
            MirrorPeak(
                mirror=mirror,
                frequency=vibrations[mirror].frequency_hz,
                power=power,
                relative=relative,
                present=present,
            )
        )
    return report


def compare_to_prediction(
    spectrum: PowerSpectrum,
    predicted: Mapping[str, float],
    vibrations: Mapping[str, VibrationSpec],
    tolerance: float = 0.02,
    half_width: int = 5,
    null_threshold: float = 1e-4,
) -> Dict[str, PeakComparison]:
    """Compare simulated peaks with the weak-value prediction.

    ``predicted`` holds signal amplitudes; the expected peak power is amplitude²/2,
    divided by the smoothing window when the spectrum is smoothed. Mirrors with a
    nonzero prediction are flagged when the ratio leaves 1 ± tolerance. Mirrors
    predicted silent have no ratio and are flagged only when their simulated peak
    exceeds ``null_threshold`` of the strongest compared peak.

    Returns:
        Comparison per mirror
    """
    divisor = spectrum.window if spectrum.smoothed else 1
    simulated = {
        mirror: peak_power(spectrum, vibrations[mirror].frequency_hz, half_width)
        for mirror in predicted
    }
    strongest = max(simulated.values(), default=0.0)
    expectations = {mirror: amplitude ** 2 / 2.0 / divisor for mirror, amplitude in predicted.items()}
    loudest = max(expectations.values(), default=0.0)

    comparisons = {}
    for mirror in sorted(predicted):
        expected = expectations[mirror]
        power = simulated[mirror]
        if expected > SILENT_RELATIVE * loudest:
            ratio = power / expected
            flagged = abs(ratio - 1.0) > tolerance
        else:
            ratio = None
            flagged = strongest > 0 and power > null_threshold * strongest
        comparisons[mirror] = PeakComparison(
            mirror=mirror,
            frequency=vibrations[mirror].frequency_hz,
            simulated=power,
            predicted=expected,
            ratio=ratio,
            flagged=flagged,
        )
    return comparisons
