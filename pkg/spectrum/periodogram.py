"""One-sided periodogram of the detector signal.

Normalization: powers sum to the mean square of the series. DC and (for an even
sample count) Nyquist carry |X_k|²/N²; every other bin carries 2|X_k|²/N².
A sinusoid of amplitude A that falls on a bin therefore shows up as A²/2.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from beam.simulator import DetectorTimeSeries


@dataclass(frozen=True)
class PowerSpectrum:
    bin_width: float
    powers: np.ndarray = field(compare=False)
    smoothed: bool = False
    window: int = 1

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(len(self.powers)) * self.bin_width

    @property
    def nyquist(self) -> float:
        return (len(self.powers) - 1) * self.bin_width

    def bin_of(self, frequency_hz: float) -> int:
        return int(round(frequency_hz / self.bin_width))


def power_spectrum(series: DetectorTimeSeries) -> PowerSpectrum:
    """Rectangular-window periodogram of a time series.

    Raises:
        ValueError: If the series is empty
    """
    samples = np.asarray(series.samples, dtype=float)
    n = samples.size
    if n == 0:
        raise ValueError("Cannot take the spectrum of an empty series")

    coefficients = np.fft.rfft(samples)
    powers = np.abs(coefficients) ** 2 / n ** 2
    last = len(powers) if n % 2 else len(powers) - 1
    powers[1:last] *= 2.0

    return PowerSpectrum(bin_width=series.sampling.rate_hz / n, powers=powers)


def smooth(spectrum: PowerSpectrum, window: int = 10) -> PowerSpectrum:
    """Centered moving average over ``window`` bins, shrinking at the edges.

    Bin i averages bins i - window//2 ... i - window//2 + window - 1 that exist.

    Raises:
        ValueError: If window < 1
    """
    if int(window) != window or window < 1:
        raise ValueError(f"Smoothing window must be a positive integer, got {window}")
    window = int(window)

    powers = spectrum.powers
    n = len(powers)
    total = np.zeros(n)
    count = np.zeros(n)
    for offset in range(-(window // 2), window - window // 2):
        lo, hi = max(0, -offset), min(n, n - offset)
        if lo >= hi:
            continue
        total[lo:hi] += powers[lo + offset:hi + offset]
        count[lo:hi] += 1

    return replace(spectrum, powers=total / count, smoothed=window > 1 or spectrum.smoothed, window=window)
