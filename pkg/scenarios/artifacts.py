"""Files written by a run and the readers that load them back.

Numbers are written with 17 significant digits, so reading a file reproduces the
in-memory doubles exactly.
"""

from pathlib import Path
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from beam.simulator import DetectorTimeSeries
from beam.vibration import VibrationSpec
from spectrum.periodogram import PowerSpectrum
from tsvf.weak_values import WeakValueReport

PathLike = Union[str, Path]

FLOAT_FORMAT = "%.17g"
SERIES_HEADER = "t_s,signal"
SPECTRUM_HEADER = "freq_hz,power"


def _prepare(path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _write_columns(path: PathLike, header: str, *columns: np.ndarray) -> Path:
    path = _prepare(path)
    np.savetxt(path, np.column_stack(columns), fmt=FLOAT_FORMAT, delimiter=",", header=header, comments="")
    return path


def _read_columns(path: PathLike, header: str) -> Tuple[np.ndarray, np.ndarray]:
    path = Path(path)
    with path.open() as f:
        first = f.readline().strip()
    if first != header:
        raise ValueError(f"{path}: expected header {header!r}, found {first!r}")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 0], data[:, 1]


def write_time_series(path: PathLike, series: DetectorTimeSeries) -> Path:
    return _write_columns(path, SERIES_HEADER, series.times, np.asarray(series.samples, dtype=float))


def read_time_series(path: PathLike) -> Tuple[np.ndarray, np.ndarray]:
    """Load (times, samples) from a time-series file."""
    return _read_columns(path, SERIES_HEADER)


def write_spectrum(path: PathLike, spectrum: PowerSpectrum) -> Path:
    return _write_columns(path, SPECTRUM_HEADER, spectrum.frequencies, spectrum.powers)


def read_spectrum(path: PathLike) -> Tuple[np.ndarray, np.ndarray]:
    """Load (frequencies, powers) from a spectrum file."""
    return _read_columns(path, SPECTRUM_HEADER)


def format_weak_value_report(report: WeakValueReport) -> str:
    lines = [
        f"{mirror} {format(value.real, '.17g')} {format(value.imag, '.17g')}"
        for mirror, value in report.values.items()
    ]
    lines.append(f"overlap {format(report.overlap.real, '.17g')} {format(report.overlap.imag, '.17g')}")
    lines.append(f"defined {'true' if report.defined else 'false'}")
    return "\n".join(lines) + "\n"


def write_weak_value_report(path: PathLike, report: WeakValueReport) -> Path:
    path = _prepare(path)
    path.write_text(format_weak_value_report(report))
    return path


def read_weak_value_report(path: PathLike) -> WeakValueReport:
    """Load a weak-value report.

    Raises:
        ValueError: If a line is malformed or the overlap/defined lines are missing
    """
    values: Dict[str, complex] = {}
    overlap: Optional[complex] = None
    defined: Optional[bool] = None
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        if tokens[0] == "defined" and len(tokens) == 2 and tokens[1] in ("true", "false"):
            defined = tokens[1] == "true"
        elif len(tokens) == 3:
            try:
                value = complex(float(tokens[1]), float(tokens[2]))
            except ValueError:
                raise ValueError(f"{path}:{number}: malformed number in {line!r}") from None
            if tokens[0] == "overlap":
                overlap = value
            else:
                values[tokens[0]] = value
        else:
            raise ValueError(f"{path}:{number}: malformed line {line!r}")

    if overlap is None or defined is None:
        raise ValueError(f"{path}: report needs both an 'overlap' and a 'defined' line")
    return WeakValueReport(values=values, overlap=overlap, defined=defined)


def render_svg(
    x: Sequence[float],
    y: Sequence[float],
    title: str,
    x_label: str,
    y_label: str,
    markers: Optional[Mapping[str, float]] = None,
    width: int = 800,
    height: int = 450,
) -> str:
    """Polyline plot over labelled axes, with optional labelled vertical markers."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    margin_left, margin_right, margin_top, margin_bottom = 80, 20, 40, 50
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom

    x_min, x_max = (float(x.min()), float(x.max())) if x.size else (0.0, 1.0)
    y_min, y_max = (min(0.0, float(y.min())), float(y.max())) if y.size else (0.0, 1.0)
    if x_max <= x_min:
        x_max = x_min + 1.0
    if y_max <= y_min:
        y_max = y_min + 1.0

    def px(value: float) -> float:
        return margin_left + (value - x_min) / (x_max - x_min) * plot_w

    def py(value: float) -> float:
        return margin_top + plot_h - (value - y_min) / (y_max - y_min) * plot_h

    points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
    bottom, right = margin_top + plot_h, margin_left + plot_w

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="24" text-anchor="middle" font-size="16">{title}</text>',
        f'<line x1="{margin_left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{margin_left}" y1="{margin_top}" x2="{margin_left}" y2="{bottom}" stroke="black"/>',
        f'<text x="{margin_left}" y="{bottom + 18}" font-size="11">{x_min:g}</text>',
        f'<text x="{right}" y="{bottom + 18}" text-anchor="end" font-size="11">{x_max:g}</text>',
        f'<text x="{margin_left - 6}" y="{bottom}" text-anchor="end" font-size="11">{y_min:.3g}</text>',
        f'<text x="{margin_left - 6}" y="{margin_top + 4}" text-anchor="end" font-size="11">{y_max:.3g}</text>',
        f'<text x="{margin_left + plot_w / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        f'font-size="13">{x_label}</text>',
        f'<text x="16" y="{margin_top + plot_h / 2:.0f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {margin_top + plot_h / 2:.0f})">{y_label}</text>',
    ]
    for label, position in sorted((markers or {}).items(), key=lambda item: item[1]):
        if x_min <= position <= x_max:
            mx = px(position)
            parts.append(
                f'<line x1="{mx:.2f}" y1="{margin_top}" x2="{mx:.2f}" y2="{bottom}" '
                'stroke="#bbbbbb" stroke-dasharray="4 3"/>'
            )
            parts.append(f'<text x="{mx + 3:.2f}" y="{margin_top + 12}" font-size="11">{label}</text>')
    parts.append(f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1" points="{points}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_spectrum_plot(
    path: PathLike,
    spectrum: PowerSpectrum,
    vibrations: Mapping[str, VibrationSpec],
    title: str,
    max_frequency: Optional[float] = None,
) -> Path:
    """Plot a spectrum up to ``max_frequency`` (default: 1.5 × the highest mirror frequency)."""
    highest = max((vib.frequency_hz for vib in vibrations.values()), default=spectrum.nyquist)
    limit = min(spectrum.nyquist, max_frequency if max_frequency is not None else 1.5 * highest)
    keep = spectrum.frequencies <= limit
    markers = {f"{mirror} {vib.frequency_hz:g} Hz": vib.frequency_hz for mirror, vib in vibrations.items()}
    svg = render_svg(
        spectrum.frequencies[keep],
        spectrum.powers[keep],
        title=title,
        x_label="frequency [Hz]",
        y_label="power (relative units)",
        markers=markers,
    )
    path = _prepare(path)
    path.write_text(svg)
    return path
