"""Line-oriented scenario files.

    # comment
    [beam]
    waist_mm = 1.2
    amplitude = 1
    attenuation = 1

    [sampling]
    rate_hz = 2500
    duration_s = 1

    [mirror A]
    freq_hz = 282
    displacement_um = 0.6
    vib_phase_rad = 0
    static_phase_rad = 0

    [paths]
    0.5 0 : A

Path lines give the real and imaginary part of the amplitude, then the mirrors the
path visits in order. Static mirror phases are folded into the path amplitudes.
"""

import cmath
import math
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from beam.gaussian import GaussianBeam
from beam.simulator import SamplingSpec
from beam.vibration import VibrationSpec
from optics.paths import OpticalPath
from scenarios.scenario import Scenario

NUMBER_FORMAT = ".17g"

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
TOKEN = re.compile(r"\S+")

SECTION_KEYS = {
    "beam": ("waist_mm", "amplitude", "attenuation"),
    "sampling": ("rate_hz", "duration_s"),
    "mirror": ("freq_hz", "displacement_um", "vib_phase_rad", "static_phase_rad"),
}


class ScenarioError(ValueError):
    """Base class for scenario file errors."""


class ScenarioSyntaxError(ScenarioError):
    def __init__(self, line: int, column: int, expected: str, found: str):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        super().__init__(f"line {line}, column {column}: expected {expected}, found {found!r}")


class ScenarioSemanticError(ScenarioError):
    def __init__(self, line: Optional[int], field: str, message: str):
        self.line = line
        self.field = field
        self.message = message
        where = f"line {line}" if line is not None else "scenario"
        super().__init__(f"{where}: {field}: {message}")


@dataclass
class _Section:
    kind: str
    line: int
    label: str = ""
    values: Dict[str, Tuple[float, int]] = field(default_factory=dict)
    rows: List[Tuple[complex, Tuple[str, ...], int]] = field(default_factory=list)


def _number(text: str, line: int, column: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ScenarioSyntaxError(line, column, "number", text) from None
    if not math.isfinite(value):
        raise ScenarioSyntaxError(line, column, "finite number", text)
    return value


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _header(text: str, number: int) -> _Section:
    start = text.index("[")
    if not text.endswith("]"):
        raise ScenarioSyntaxError(number, len(text) + 1, "']'", text[-1])
    tokens = list(TOKEN.finditer(text, start + 1, len(text) - 1))
    if not tokens:
        raise ScenarioSyntaxError(number, start + 2, "section name", "]")

    name = tokens[0].group()
    if name == "mirror":
        if len(tokens) != 2:
            found = tokens[2].group() if len(tokens) > 2 else "]"
            column = tokens[2].start() + 1 if len(tokens) > 2 else len(text)
            raise ScenarioSyntaxError(number, column, "mirror id", found)
        label = tokens[1]
        if not IDENTIFIER.fullmatch(label.group()):
            raise ScenarioSyntaxError(number, label.start() + 1, "mirror id", label.group())
        return _Section("mirror", number, label.group())

    if name not in ("beam", "sampling", "paths"):
        raise ScenarioSyntaxError(
            number, tokens[0].start() + 1, "beam, sampling, mirror <ID> or paths", name
        )
    if len(tokens) > 1:
        raise ScenarioSyntaxError(number, tokens[1].start() + 1, "']'", tokens[1].group())
    return _Section(name, number)


def _assignment(section: _Section, text: str, number: int) -> None:
    if "=" not in text:
        key = TOKEN.search(text)
        raise ScenarioSyntaxError(number, key.end() + 1, "'='", text[key.end():].strip() or "end of line")

    key_text, value_text = text.split("=", 1)
    key = key_text.strip()
    key_column = len(key_text) - len(key_text.lstrip()) + 1
    if not IDENTIFIER.fullmatch(key):
        raise ScenarioSyntaxError(number, key_column, "key", key or "=")

    value_tokens = list(TOKEN.finditer(value_text))
    value_offset = len(key_text) + 1
    if len(value_tokens) != 1:
        column = value_offset + (value_tokens[1].start() if value_tokens else len(value_text)) + 1
        found = value_tokens[1].group() if value_tokens else "end of line"
        raise ScenarioSyntaxError(number, column, "single value" if value_tokens else "number", found)
    token = value_tokens[0]
    value = _number(token.group(), number, value_offset + token.start() + 1)

    if key not in SECTION_KEYS[section.kind]:
        raise ScenarioSemanticError(number, key, f"unknown key in [{section.kind}]")
    if key in section.values:
        raise ScenarioSemanticError(number, key, "key given twice")
    section.values[key] = (value, number)


def _path_row(section: _Section, text: str, number: int) -> None:
    if ":" not in text:
        raise ScenarioSyntaxError(number, len(text) + 1, "':'", "end of line")
    amplitude_text, mirror_text = text.split(":", 1)

    parts = list(TOKEN.finditer(amplitude_text))
    if len(parts) != 2:
        if len(parts) > 2:
            column, found = parts[2].start() + 1, parts[2].group()
        else:
            column, found = len(amplitude_text) + 1, ":"
        raise ScenarioSyntaxError(number, column, "RE IM", found)
    re_part = _number(parts[0].group(), number, parts[0].start() + 1)
    im_part = _number(parts[1].group(), number, parts[1].start() + 1)

    mirrors = []
    offset = len(amplitude_text) + 1
    for token in TOKEN.finditer(mirror_text):
        if not IDENTIFIER.fullmatch(token.group()):
            raise ScenarioSyntaxError(number, offset + token.start() + 1, "mirror id", token.group())
        mirrors.append(token.group())
    section.rows.append((complex(re_part, im_part), tuple(mirrors), number))


def _read_sections(text: str) -> List[_Section]:
    sections: List[_Section] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        stripped = line.lstrip()
        if stripped.startswith("["):
            sections.append(_header(line, number))
            continue
        if not sections:
            first = TOKEN.search(line)
            raise ScenarioSyntaxError(number, first.start() + 1, "section header", first.group())
        current = sections[-1]
        if current.kind == "paths":
            _path_row(current, line, number)
        else:
            _assignment(current, line, number)
    return sections


def _get(section: Optional[_Section], key: str, default: Optional[float]) -> Tuple[Optional[float], Optional[int]]:
    if section is None or key not in section.values:
        return default, section.line if section else None
    return section.values[key]


def _build(sections: List[_Section], name: str) -> Scenario:
    singles: Dict[str, _Section] = {}
    mirrors: Dict[str, _Section] = {}
    for section in sections:
        if section.kind == "mirror":
            if section.label in mirrors:
                raise ScenarioSemanticError(
                    section.line, f"mirror {section.label}",
                    f"duplicate section (first given on line {mirrors[section.label].line})",
                )
            mirrors[section.label] = section
        else:
            if section.kind in singles:
                raise ScenarioSemanticError(
                    section.line, section.kind,
                    f"duplicate section (first given on line {singles[section.kind].line})",
                )
            singles[section.kind] = section

    beam_section = singles.get("beam")
    waist, waist_line = _get(beam_section, "waist_mm", 1.2)
    if waist <= 0:
        raise ScenarioSemanticError(waist_line, "waist_mm", f"must be positive, got {waist}")
    amplitude, amplitude_line = _get(beam_section, "amplitude", 1.0)
    if amplitude <= 0:
        raise ScenarioSemanticError(amplitude_line, "amplitude", f"must be positive, got {amplitude}")
    attenuation, attenuation_line = _get(beam_section, "attenuation", 1.0)
    if not 0.0 < attenuation <= 1.0:
        raise ScenarioSemanticError(attenuation_line, "attenuation", f"must lie in (0, 1], got {attenuation}")

    sampling_section = singles.get("sampling")
    rate, rate_line = _get(sampling_section, "rate_hz", 2500.0)
    if rate <= 0:
        raise ScenarioSemanticError(rate_line, "rate_hz", f"must be positive, got {rate}")
    duration, duration_line = _get(sampling_section, "duration_s", 1.0)
    if duration <= 0:
        raise ScenarioSemanticError(duration_line, "duration_s", f"must be positive, got {duration}")
    try:
        sampling = SamplingSpec(rate_hz=rate, duration_s=duration)
    except ValueError as e:
        raise ScenarioSemanticError(duration_line, "duration_s", str(e)) from None

    vibrations: Dict[str, VibrationSpec] = {}
    static_phases: Dict[str, float] = {}
    for label, section in mirrors.items():
        if "freq_hz" not in section.values:
            raise ScenarioSemanticError(section.line, "freq_hz", f"missing in [mirror {label}]")
        freq, freq_line = section.values["freq_hz"]
        if freq <= 0:
            raise ScenarioSemanticError(freq_line, "freq_hz", f"must be positive, got {freq}")
        if freq > rate / 2:
            raise ScenarioSemanticError(
                freq_line, "freq_hz", f"{freq:g} Hz is above the Nyquist frequency {rate / 2:g} Hz"
            )
        displacement, displacement_line = _get(section, "displacement_um", 0.6)
        if displacement < 0:
            raise ScenarioSemanticError(
                displacement_line, "displacement_um", f"must not be negative, got {displacement}"
            )
        phase = _get(section, "vib_phase_rad", 0.0)[0]
        static_phases[label] = _get(section, "static_phase_rad", 0.0)[0]
        vibrations[label] = VibrationSpec(frequency_hz=freq, displacement_um=displacement, phase_rad=phase)

    path_section = singles.get("paths")
    if path_section is None or not path_section.rows:
        raise ScenarioSemanticError(
            path_section.line if path_section else None, "paths", "at least one path line is required"
        )

    paths = []
    for amplitude_value, route, number in path_section.rows:
        for mirror in route:
            if mirror not in mirrors:
                raise ScenarioSemanticError(number, "paths", f"unknown mirror '{mirror}'")
        if len(set(route)) != len(route):
            raise ScenarioSemanticError(number, "paths", "a path visits each mirror at most once")
        phase = sum(static_phases[mirror] for mirror in route)
        if phase:
            amplitude_value *= cmath.exp(1j * phase)
        if abs(amplitude_value) > 1.0 + 1e-12:
            raise ScenarioSemanticError(number, "paths", f"|amplitude| = {abs(amplitude_value):g} exceeds 1")
        paths.append(OpticalPath.from_mirrors(amplitude_value, route))

    return Scenario(
        name=name,
        paths=tuple(paths),
        beam=GaussianBeam(amplitude=amplitude, waist_mm=waist),
        vibrations=vibrations,
        sampling=sampling,
        attenuation=attenuation,
    )


def parse_scenario(text: str, name: str = "custom") -> Scenario:
    """Parse a scenario file.

    Args:
        text: File contents
        name: Name given to the scenario

    Returns:
        Validated scenario with static phases folded into the path amplitudes

    Raises:
        ScenarioSyntaxError: On malformed lines (with line and column)
        ScenarioSemanticError: On unknown keys or mirrors, duplicates, or invalid values
    """
    return _build(_read_sections(text), name)


def _fmt(value: float) -> str:
    return format(value, NUMBER_FORMAT)


def serialize_scenario(scenario: Scenario) -> str:
    """Write a scenario in the file format; parse_scenario reads it back unchanged."""
    lines = [
        f"# scenario {scenario.name}",
        "",
        "[beam]",
        f"waist_mm = {_fmt(scenario.beam.waist_mm)}",
        f"amplitude = {_fmt(scenario.beam.amplitude)}",
        f"attenuation = {_fmt(scenario.attenuation)}",
        "",
        "[sampling]",
        f"rate_hz = {_fmt(scenario.sampling.rate_hz)}",
        f"duration_s = {_fmt(scenario.sampling.duration_s)}",
    ]
    for mirror in scenario.mirrors:
        vib = scenario.vibrations[mirror]
        lines += [
            "",
            f"[mirror {mirror}]",
            f"freq_hz = {_fmt(vib.frequency_hz)}",
            f"displacement_um = {_fmt(vib.displacement_um)}",
            f"vib_phase_rad = {_fmt(vib.phase_rad)}",
            "static_phase_rad = 0",
        ]
    lines += ["", "[paths]"]
    for path in scenario.paths:
        amplitude = f"{_fmt(path.amplitude.real)} {_fmt(path.amplitude.imag)}"
        lines.append(f"{amplitude} : {' '.join(path.mirrors)}".rstrip())
    return "\n".join(lines) + "\n"
