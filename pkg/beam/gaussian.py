"""Closed-form quad-cell response to a superposition of vertically shifted Gaussian beams.

The field on the detector is 𝒜 Σ_p a_p exp(-(x² + (y - d_p)²) / 2Δ²). Expanding |Ψ|²
pairwise, each (p, q) term is a Gaussian in y of width Δ/√2 centred at (d_p + d_q)/2
with weight Re(a_p a_q*) · exp(-(d_p - d_q)² / 4Δ²). The x integral gives √π Δ and the
y half-plane difference gives √π Δ · erf((d_p + d_q) / 2Δ).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

UM_PER_MM = 1000.0


@dataclass(frozen=True)
class GaussianBeam:
    """Input beam 𝒜 exp(-(x² + y²) / 2Δ²) with waist Δ in millimetres."""

    amplitude: float = 1.0
    waist_mm: float = 1.2

    def __post_init__(self):
        if not math.isfinite(self.waist_mm) or self.waist_mm <= 0:
            raise ValueError(f"waist_mm must be positive, got {self.waist_mm}")
        if not math.isfinite(self.amplitude):
            raise ValueError(f"amplitude must be finite, got {self.amplitude}")

    def to_mm(self, length_um):
        return length_um / UM_PER_MM

    @property
    def norm(self) -> float:
        """Detected power of a single unit-amplitude beam: 𝒜² π Δ²."""
        return self.amplitude ** 2 * math.pi * self.waist_mm ** 2


def first_order_gain(beam: GaussianBeam) -> float:
    """Slope of the quad-cell signal per unit displacement (mm) of a single unit beam: 2√π 𝒜² Δ."""
    return 2.0 * math.sqrt(math.pi) * beam.amplitude ** 2 * beam.waist_mm


def _odd_erf(z: np.ndarray) -> np.ndarray:
    # sign(z)·erf(|z|) keeps S exactly odd in the displacements
    return np.sign(z) * erf(np.abs(z))


def _pairwise(amplitudes, displacements_mm, waist_mm: float):
    a = np.asarray(amplitudes, dtype=complex)
    d = np.asarray(displacements_mm, dtype=float)
    if d.ndim == 1:
        d = d[:, np.newaxis]
    if d.shape[0] != a.shape[0]:
        raise ValueError(f"{a.shape[0]} amplitudes but {d.shape[0]} displacement rows")

    weights = np.real(a[:, np.newaxis] * np.conj(a[np.newaxis, :]))[:, :, np.newaxis]
    separation = d[:, np.newaxis, :] - d[np.newaxis, :, :]
    centre = (d[:, np.newaxis, :] + d[np.newaxis, :, :]) / 2.0
    envelope = np.exp(-(separation ** 2) / (4.0 * waist_mm ** 2))
    return weights, envelope, centre


def half_plane_difference(amplitudes, displacements_mm, beam: GaussianBeam) -> np.ndarray:
    """Upper-minus-lower integrated intensity.

    Args:
        amplitudes: Complex amplitude per path, shape (P,)
        displacements_mm: Vertical shift per path, shape (P,) or (P, T)

    Returns:
        Signal per time sample, shape (T,)
    """
    weights, envelope, centre = _pairwise(amplitudes, displacements_mm, beam.waist_mm)
    terms = weights * envelope * _odd_erf(centre / beam.waist_mm)
    return beam.norm * terms.sum(axis=(0, 1))


def integrated_intensity(amplitudes, displacements_mm, beam: GaussianBeam) -> np.ndarray:
    """Total intensity over the whole detector plane, shape (T,)."""
    weights, envelope, _ = _pairwise(amplitudes, displacements_mm, beam.waist_mm)
    return beam.norm * (weights * envelope).sum(axis=(0, 1))


def linearized_difference(amplitudes, displacements_mm, beam: GaussianBeam) -> np.ndarray:
    """First-order expansion of half_plane_difference around zero displacement.

    erf(z) ≈ 2z/√π and the envelope ≈ 1 give gain · Σ_p d_p · Re(a_p · conj(Σ_q a_q)).
    """
    a = np.asarray(amplitudes, dtype=complex)
    d = np.asarray(displacements_mm, dtype=float)
    if d.ndim == 1:
        d = d[:, np.newaxis]
    coupling = np.real(a * np.conj(a.sum()))
    return first_order_gain(beam) * (coupling[:, np.newaxis] * d).sum(axis=0)
