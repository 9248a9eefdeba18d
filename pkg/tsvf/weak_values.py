from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

from beam.gaussian import GaussianBeam, first_order_gain
from beam.vibration import VibrationSpec
from optics.network import OpticalNetwork
from optics.paths import OpticalPath, enumerate_paths
from tsvf.errors import UndefinedWeakValue

PathSource = Union[OpticalNetwork, Sequence[OpticalPath]]

OVERLAP_RELATIVE_EPS = 1e-12


@dataclass(frozen=True)
class WeakValueReport:
    """Weak values of the mirror projectors together with the overlap they were divided by."""

    values: Dict[str, complex]
    overlap: complex
    defined: bool
    threshold: float = field(default=0.0, compare=False)


def _paths_of(source: PathSource) -> List[OpticalPath]:
    if isinstance(source, OpticalNetwork):
        return enumerate_paths(source)
    return list(source)


def _mirrors_of(source: PathSource, paths: Sequence[OpticalPath]) -> List[str]:
    if isinstance(source, OpticalNetwork):
        return sorted(source.mirror_ids)
    return sorted({mirror for path in paths for mirror in path.mirrors})


def overlap_threshold(paths: Sequence[OpticalPath]) -> float:
    """Overlap magnitude at or below which postselection counts as orthogonal."""
    return OVERLAP_RELATIVE_EPS * sum(abs(path.amplitude) for path in paths)


def weak_values(source: PathSource, mirrors: Optional[Iterable[str]] = None) -> WeakValueReport:
    """Weak values (P_X)_w for every mirror of a network or path table.

    Args:
        source: Network or path table
        mirrors: Mirrors to report (defaults to all mirrors of the source)

    Returns:
        Report; ``defined`` is False and ``values`` empty for orthogonal postselection
    """
    paths = _paths_of(source)
    overlap = sum((path.amplitude for path in paths), 0j)
    threshold = overlap_threshold(paths)
    names = sorted(mirrors) if mirrors is not None else _mirrors_of(source, paths)

    if abs(overlap) <= threshold:
        return WeakValueReport(values={}, overlap=overlap, defined=False, threshold=threshold)

    values = {
        mirror: sum((p.amplitude for p in paths if p.passes(mirror)), 0j) / overlap
        for mirror in names
    }
    return WeakValueReport(values=values, overlap=overlap, defined=True, threshold=threshold)


def weak_value(source: PathSource, mirror: str) -> complex:
    """Weak value of the projector onto one mirror.

    Args:
        source: Network or path table
        mirror: Mirror id

    Returns:
        Sum of amplitudes of the paths through the mirror divided by the sum over all paths

    Raises:
        KeyError: If ``source`` is a network without that mirror
        UndefinedWeakValue: If the postselection is orthogonal
    """
    if isinstance(source, OpticalNetwork) and mirror not in source.mirror_ids:
        raise KeyError(f"Unknown mirror: {mirror}")
    report = weak_values(source, [mirror])
    if not report.defined:
        raise UndefinedWeakValue(report.overlap, report.threshold)
    return report.values[mirror]


def predict_peak_amplitudes(
    source: PathSource,
    vibrations: Mapping[str, VibrationSpec],
    beam: Optional[GaussianBeam] = None,
) -> Dict[str, float]:
    """Expected signal amplitude at each vibrating mirror's frequency.

    The amplitude is gain · |<Phi|Psi>|² · Re[(P_X)_w] · δ_X, with the same gain
    the first-order beam model uses, so predictions are in signal units. Only the
    real part of the weak value moves the pointer (a transverse shift).

    Args:
        source: Network or path table (attenuation already folded into amplitudes)
        vibrations: Vibration of each mirror
        beam: Input beam (defaults to the experiment's beam)

    Returns:
        Signed amplitude per mirror; the spectral peak power is amplitude² / 2

    Raises:
        UndefinedWeakValue: If the postselection is orthogonal
    """
    beam = beam or GaussianBeam()
    report = weak_values(source, vibrations.keys())
    if not report.defined:
        raise UndefinedWeakValue(report.overlap, report.threshold)

    intensity = abs(report.overlap) ** 2
    gain = first_order_gain(beam)
    return {
        mirror: gain * intensity * report.values[mirror].real * beam.to_mm(vib.displacement_um)
        for mirror, vib in vibrations.items()
    }
