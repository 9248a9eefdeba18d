import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beam.gaussian import GaussianBeam
from beam.simulator import SamplingSpec
from beam.vibration import VibrationSpec
from optics.paths import OpticalPath
from scenarios.builtins import builtin_scenarios
from scenarios.parser import (
    ScenarioError,
    ScenarioSemanticError,
    ScenarioSyntaxError,
    parse_scenario,
    serialize_scenario,
)
from scenarios.scenario import Scenario

MZI_TEXT = """\
# balanced interferometer
[beam]
waist_mm = 1.2

[mirror A]
freq_hz = 282

[mirror B]
freq_hz = 296
static_phase_rad = 3.141592653589793

[paths]
0.5 0 : A
-0.5 0 : B   # sign flipped back by the static phase
"""


def _with(text: str, old: str, new: str) -> str:
    assert old in text
    return text.replace(old, new, 1)


class TestBuiltins:
    def test_names(self):
        assert set(builtin_scenarios()) == {"fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fblocked"}
        assert "nosuch" not in builtin_scenarios()

    def test_nested_dark_table(self):
        fig2b = builtin_scenarios()["fig2b"]
        assert [p.mirrors for p in fig2b.paths] == [("C",), ("E", "A", "F"), ("E", "B", "F")]
        assert [p.amplitude for p in fig2b.paths] == [1 / 3, 1 / 3, -1 / 3]

    def test_attenuated_amplitudes(self):
        fig2a = builtin_scenarios()["fig2a"]
        assert fig2a.amplitudes() == pytest.approx([1 / (3 * math.sqrt(3))] * 3, rel=1e-15)

    def test_defaults(self):
        for scenario in builtin_scenarios().values():
            assert scenario.beam == GaussianBeam(amplitude=1.0, waist_mm=1.2)
            assert scenario.sampling == SamplingSpec(2500.0, 1.0)
            assert scenario.vibrations["A"] == VibrationSpec(282.0, 0.6)
            assert scenario.vibrations["B"].frequency_hz == 296.0

    def test_fresh_copies(self):
        assert builtin_scenarios() == builtin_scenarios()
        assert builtin_scenarios()["fig2b"] is not builtin_scenarios()["fig2b"]


class TestScenario:
    def test_attenuation_range(self):
        with pytest.raises(ValueError):
            Scenario(name="x", paths=(), attenuation=0.0)
        with pytest.raises(ValueError):
            Scenario(name="x", paths=(), attenuation=1.5)

    def test_path_mirror_needs_vibration(self):
        with pytest.raises(ValueError):
            Scenario(name="x", paths=(OpticalPath.from_mirrors(0.5, "A"),))

    def test_amplitude_bound(self):
        with pytest.raises(ValueError):
            Scenario(
                name="x",
                paths=(OpticalPath.from_mirrors(1.5, "A"),),
                vibrations={"A": VibrationSpec(282.0)},
            )

    def test_frequency_must_be_resolvable(self):
        with pytest.raises(ValueError, match="Nyquist"):
            Scenario(
                name="x",
                paths=(OpticalPath.from_mirrors(0.5, "A"),),
                vibrations={"A": VibrationSpec(282.0)},
                sampling=SamplingSpec(rate_hz=500.0, duration_s=1.0),
            )


class TestParse:
    def test_defaults_and_static_phase(self):
        scenario = parse_scenario(MZI_TEXT, name="mzi")
        assert scenario.name == "mzi"
        assert scenario.beam == GaussianBeam(1.0, 1.2)
        assert scenario.sampling == SamplingSpec(2500.0, 1.0)
        assert scenario.attenuation == 1.0
        assert scenario.vibrations["B"] == VibrationSpec(296.0, 0.6, 0.0)
        assert scenario.paths[0].amplitude == 0.5
        assert scenario.paths[1].amplitude == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("name", ["fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fblocked"])
    def test_builtin_round_trip(self, name):
        scenario = builtin_scenarios()[name]
        text = serialize_scenario(scenario)
        parsed = parse_scenario(text, name=name)
        assert parsed == scenario
        assert serialize_scenario(parsed) == text

    def test_normalization_is_idempotent(self):
        once = serialize_scenario(parse_scenario(MZI_TEXT, name="mzi"))
        twice = serialize_scenario(parse_scenario(once, name="mzi"))
        assert twice == once
        assert "static_phase_rad = 0" in once

    def test_comments_and_blank_lines(self):
        text = "\n# only a comment\n" + MZI_TEXT.replace("[paths]", "[paths]   # table")
        assert len(parse_scenario(text).paths) == 2

    def test_path_without_mirrors(self):
        scenario = parse_scenario("[paths]\n1 0 :\n")
        assert scenario.paths[0].mirrors == ()


class TestSyntaxErrors:
    def test_missing_equals(self):
        text = _with(MZI_TEXT, "freq_hz = 282", "freq_hz 282")
        with pytest.raises(ScenarioSyntaxError) as info:
            parse_scenario(text)
        assert (info.value.line, info.value.column) == (6, 8)
        assert info.value.expected == "'='"
        assert info.value.found == "282"

    def test_bad_number(self):
        text = _with(MZI_TEXT, "freq_hz = 282", "freq_hz = abc")
        with pytest.raises(ScenarioSyntaxError) as info:
            parse_scenario(text)
        assert (info.value.line, info.value.column) == (6, 11)
        assert info.value.expected == "number"
        assert "line 6" in str(info.value)

    def test_key_before_section(self):
        with pytest.raises(ScenarioSyntaxError) as info:
            parse_scenario("waist_mm = 1\n")
        assert info.value.expected == "section header"

    def test_unknown_section(self):
        with pytest.raises(ScenarioSyntaxError) as info:
            parse_scenario(_with(MZI_TEXT, "[beam]", "[laser]"))
        assert info.value.line == 2
        assert info.value.found == "laser"

    def test_unclosed_header(self):
        with pytest.raises(ScenarioSyntaxError) as info:
            parse_scenario(_with(MZI_TEXT, "[mirror A]", "[mirror A"))
        assert info.value.expected == "']'"

    def test_path_line_without_colon(self):
        with pytest.raises(ScenarioSyntaxError) as info:
            parse_scenario(_with(MZI_TEXT, "0.5 0 : A", "0.5 0 A"))
        assert info.value.expected == "':'"

    def test_path_amplitude_needs_two_numbers(self):
        with pytest.raises(ScenarioSyntaxError) as info:
            parse_scenario(_with(MZI_TEXT, "0.5 0 : A", "0.5 : A"))
        assert info.value.expected == "RE IM"

    def test_non_finite_number(self):
        with pytest.raises(ScenarioSyntaxError):
            parse_scenario(_with(MZI_TEXT, "freq_hz = 282", "freq_hz = nan"))


class TestSemanticErrors:
    def test_negative_frequency(self):
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario(_with(MZI_TEXT, "freq_hz = 282", "freq_hz = -3"))
        assert info.value.field == "freq_hz"
        assert info.value.line == 6
        assert "freq_hz" in str(info.value)

    def test_duplicate_mirror_section(self):
        text = MZI_TEXT.replace("[paths]", "[mirror A]\nfreq_hz = 300\n\n[paths]")
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario(text)
        assert "duplicate" in info.value.message

    def test_unknown_key(self):
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario(_with(MZI_TEXT, "waist_mm = 1.2", "waist = 1.2"))
        assert info.value.field == "waist"

    def test_duplicate_key(self):
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario(_with(MZI_TEXT, "freq_hz = 282", "freq_hz = 282\nfreq_hz = 283"))
        assert info.value.field == "freq_hz"

    def test_unknown_mirror_in_paths(self):
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario(_with(MZI_TEXT, "0.5 0 : A", "0.5 0 : A Q"))
        assert info.value.field == "paths"
        assert "'Q'" in info.value.message

    def test_missing_frequency(self):
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario(_with(MZI_TEXT, "freq_hz = 296", "displacement_um = 0.6"))
        assert info.value.field == "freq_hz"

    def test_paths_required(self):
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario("[mirror A]\nfreq_hz = 282\n")
        assert info.value.field == "paths"
        with pytest.raises(ScenarioSemanticError):
            parse_scenario("[mirror A]\nfreq_hz = 282\n[paths]\n")

    def test_amplitude_above_one(self):
        with pytest.raises(ScenarioSemanticError):
            parse_scenario(_with(MZI_TEXT, "0.5 0 : A", "1 1 : A"))

    def test_attenuation_range(self):
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario(_with(MZI_TEXT, "waist_mm = 1.2", "attenuation = 0"))
        assert info.value.field == "attenuation"

    def test_sample_count_must_be_integral(self):
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario("[sampling]\nrate_hz = 1000\nduration_s = 0.0015\n" + MZI_TEXT)
        assert info.value.field == "duration_s"

    def test_frequency_above_nyquist(self):
        with pytest.raises(ScenarioSemanticError) as info:
            parse_scenario("[sampling]\nrate_hz = 500\n" + MZI_TEXT)
        assert info.value.field == "freq_hz"
        assert info.value.line == 8
        assert "Nyquist" in info.value.message

    def test_frequency_at_nyquist(self):
        scenario = parse_scenario("[sampling]\nrate_hz = 592\n" + MZI_TEXT)
        assert scenario.vibrations["B"].frequency_hz == 296.0

    def test_repeated_mirror_on_a_path(self):
        with pytest.raises(ScenarioSemanticError):
            parse_scenario(_with(MZI_TEXT, "0.5 0 : A", "0.5 0 : A A"))

    def test_error_hierarchy(self):
        assert issubclass(ScenarioSyntaxError, ScenarioError)
        assert issubclass(ScenarioSemanticError, ScenarioError)
        assert issubclass(ScenarioError, ValueError)


mirror_ids = st.sampled_from(["A", "B", "C", "E", "F", "M_1"])


@st.composite
def scenarios(draw):
    mirrors = draw(st.lists(mirror_ids, min_size=1, max_size=4, unique=True))
    vibrations = {
        m: VibrationSpec(
            frequency_hz=draw(st.floats(min_value=1.0, max_value=1000.0)),
            displacement_um=draw(st.floats(min_value=0.0, max_value=2.0)),
            phase_rad=draw(st.floats(min_value=-math.pi, max_value=math.pi)),
        )
        for m in mirrors
    }
    paths = tuple(
        OpticalPath.from_mirrors(
            draw(st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)),
            draw(st.lists(st.sampled_from(mirrors), max_size=len(mirrors), unique=True)),
        )
        for _ in range(draw(st.integers(min_value=1, max_value=4)))
    )
    return Scenario(
        name="generated",
        paths=paths,
        beam=GaussianBeam(
            amplitude=draw(st.floats(min_value=0.1, max_value=5.0)),
            waist_mm=draw(st.floats(min_value=0.1, max_value=5.0)),
        ),
        vibrations=vibrations,
        sampling=SamplingSpec(rate_hz=float(draw(st.integers(min_value=2000, max_value=5000))), duration_s=1.0),
        attenuation=draw(st.floats(min_value=1e-3, max_value=1.0)),
    )


@settings(max_examples=100, deadline=None)
@given(scenarios())
def test_serialization_round_trip(scenario):
    text = serialize_scenario(scenario)
    parsed = parse_scenario(text, name=scenario.name)
    assert parsed == scenario
    assert serialize_scenario(parsed) == text
