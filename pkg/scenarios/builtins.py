"""The six setups of the nested-interferometer experiment.

Topologies are built from elements; the path tables are pinned to the exact field
expressions of the setups, and tests check that the topologies reproduce them.
"""

import math
from typing import Dict, Mapping, Sequence, Tuple

from beam.gaussian import GaussianBeam
from beam.simulator import SamplingSpec
from beam.vibration import VibrationSpec
from optics.elements import Element
from optics.network import NetworkBuilder, OpticalNetwork, apply_block
from optics.paths import OpticalPath
from scenarios.scenario import Scenario

MIRROR_FREQUENCIES_HZ = {"A": 282.0, "B": 296.0, "C": 307.0, "E": 318.0, "F": 332.0}
DISPLACEMENT_UM = 0.6
WAIST_MM = 1.2

# edges blocked in the Fig. 2C and "mirror F blocked" setups
LOWER_ARM_EDGE = "C->BS3"
F_ARM_EDGE = "F->BS3"

THIRD = 1.0 / 3.0


def default_vibrations(mirrors: Sequence[str]) -> Dict[str, VibrationSpec]:
    return {m: VibrationSpec(MIRROR_FREQUENCIES_HZ[m], DISPLACEMENT_UM) for m in mirrors}


def build_mzi(phase_b: float = math.pi) -> OpticalNetwork:
    """Balanced Mach-Zehnder interferometer with mirrors A and B; all light reaches D."""
    vib = default_vibrations("AB")
    return (
        NetworkBuilder()
        .add(
            Element.source("S"),
            Element.beam_splitter("BS1", 0.5),
            Element.mirror("A", 0.0, vib["A"]),
            Element.mirror("B", phase_b, vib["B"]),
            Element.beam_splitter("BS2", 0.5),
            Element.detector("D"),
        )
        .connect("S", "BS1", target_port="a")
        .connect("BS1", "A", source_port="t")
        .connect("BS1", "B", source_port="r")
        .connect("A", "BS2", target_port="a")
        .connect("B", "BS2", target_port="b")
        .connect("BS2", "D", source_port="t")
        .build()
    )


def build_which_path() -> OpticalNetwork:
    """Interferometer with one splitter taken out: light is sent only via B.

    Mirror A is fed by a dark input, so only the backward evolving state reaches it.
    """
    vib = default_vibrations("AB")
    return (
        NetworkBuilder()
        .add(
            Element.source("S"),
            Element.block("dark"),
            Element.mirror("A", 0.0, vib["A"]),
            Element.mirror("B", 0.0, vib["B"]),
            Element.beam_splitter("BS2", 0.5),
            Element.detector("D"),
        )
        .chain("S", "B")
        .chain("dark", "A")
        .connect("A", "BS2", target_port="a")
        .connect("B", "BS2", target_port="b")
        .connect("BS2", "D", source_port="t")
        .build()
    )


def build_nested(phase_b: float = 0.0) -> OpticalNetwork:
    """Nested interferometer: one third of the power takes the lower arm (C),
    two thirds go through the inner interferometer (E, A/B, F).

    With ``phase_b`` = 0 the inner interferometer is dark towards F; with π every
    arm reaches D in phase.
    """
    vib = default_vibrations("ABCEF")
    return (
        NetworkBuilder()
        .add(
            Element.source("S"),
            Element.beam_splitter("BS0", THIRD),
            Element.mirror("C", math.pi, vib["C"]),
            Element.mirror("E", -math.pi / 2, vib["E"]),
            Element.beam_splitter("BS1", 0.5),
            Element.mirror("A", 0.0, vib["A"]),
            Element.mirror("B", phase_b, vib["B"]),
            Element.beam_splitter("BS2", 0.5),
            Element.mirror("F", math.pi / 2, vib["F"]),
            Element.beam_splitter("BS3", THIRD),
            Element.detector("D"),
        )
        .connect("S", "BS0", target_port="a")
        .connect("BS0", "E", source_port="t")
        .connect("BS0", "C", source_port="r")
        .connect("E", "BS1", target_port="a")
        .connect("BS1", "A", source_port="t")
        .connect("BS1", "B", source_port="r")
        .connect("A", "BS2", target_port="a")
        .connect("B", "BS2", target_port="b")
        .connect("BS2", "F", source_port="t")
        .connect("F", "BS3", target_port="a")
        .connect("C", "BS3", target_port="b")
        .connect("BS3", "D", source_port="t")
        .build()
    )


def _table(rows: Sequence[Tuple[complex, str]]) -> Tuple[OpticalPath, ...]:
    return tuple(OpticalPath.from_mirrors(amplitude, tuple(mirrors)) for amplitude, mirrors in rows)


def _scenario(
    name: str,
    description: str,
    network: OpticalNetwork,
    rows: Sequence[Tuple[complex, str]],
    attenuation: float = 1.0,
) -> Scenario:
    return Scenario(
        name=name,
        paths=_table(rows),
        beam=GaussianBeam(amplitude=1.0, waist_mm=WAIST_MM),
        vibrations=network.vibrations,
        sampling=SamplingSpec(rate_hz=2500.0, duration_s=1.0),
        attenuation=attenuation,
        description=description,
        network=network,
    )


def builtin_scenarios() -> Dict[str, Scenario]:
    """Fresh map of the built-in scenarios by name."""
    nested_dark = build_nested(phase_b=0.0)
    scenarios = [
        _scenario(
            "fig1a",
            "Mach-Zehnder interferometer, all light to the detector",
            build_mzi(),
            [(0.5, "A"), (0.5, "B")],
        ),
        _scenario(
            "fig1b",
            "Second beam splitter taken out: which-path setup",
            build_which_path(),
            [(complex(0.0, math.sqrt(0.5)), "B")],
        ),
        _scenario(
            "fig2a",
            "Nested interferometer, constructive everywhere, input attenuated 3x",
            build_nested(phase_b=math.pi),
            [(THIRD, "C"), (THIRD, "EAF"), (THIRD, "EBF")],
            attenuation=THIRD,
        ),
        _scenario(
            "fig2b",
            "Nested interferometer tuned dark towards F",
            nested_dark,
            [(THIRD, "C"), (THIRD, "EAF"), (-THIRD, "EBF")],
        ),
        _scenario(
            "fig2c",
            "Fig. 2B with the lower arm blocked",
            apply_block(nested_dark, LOWER_ARM_EDGE, block_id="block_C"),
            [(THIRD, "EAF"), (-THIRD, "EBF")],
        ),
        _scenario(
            "fblocked",
            "Fig. 2B with a block between mirror F and the last beam splitter",
            apply_block(nested_dark, F_ARM_EDGE, block_id="block_F"),
            [(THIRD, "C")],
        ),
    ]
    return {scenario.name: scenario for scenario in scenarios}


def describe(scenarios: Mapping[str, Scenario]):
    """Rows for the scenario listing."""
    for name, scenario in scenarios.items():
        yield {
            "name": name,
            "paths": str(len(scenario.paths)),
            "mirrors": " ".join(scenario.mirrors),
            "attenuation": f"{scenario.attenuation:.4g}",
        }
