import cmath
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from beam.gaussian import GaussianBeam, first_order_gain
from optics.network import apply_block
from optics.paths import OpticalPath, enumerate_paths
from scenarios.builtins import build_nested, build_which_path, builtin_scenarios
from tsvf.errors import UndefinedWeakValue
from tsvf.two_state import two_state_vector
from tsvf.weak_values import overlap_threshold, predict_peak_amplitudes, weak_value, weak_values

EXPECTED = {
    "fig2b": {"A": 1.0, "B": -1.0, "C": 1.0, "E": 0.0, "F": 0.0},
    "fig1a": {"A": 0.5, "B": 0.5},
    "fig1b": {"A": 0.0, "B": 1.0},
    "fig2a": {"A": 1 / 3, "B": 1 / 3, "C": 1 / 3, "E": 2 / 3, "F": 2 / 3},
}

# sets of mirrors every detected path crosses exactly once
CUTS = {
    "fig2b": [("C", "E"), ("C", "A", "B"), ("C", "F")],
    "fig2a": [("C", "E"), ("C", "A", "B"), ("C", "F")],
    "fig1a": [("A", "B")],
    "fig1b": [("A", "B")],
    "fblocked": [("C",)],
}


@pytest.fixture(scope="module")
def scenarios():
    return builtin_scenarios()


class TestWeakValueOracles:
    @pytest.mark.parametrize("name", sorted(EXPECTED))
    def test_path_table(self, scenarios, name):
        report = weak_values(scenarios[name].detected_paths(), scenarios[name].mirrors)
        assert report.defined
        for mirror, expected in EXPECTED[name].items():
            assert abs(report.values[mirror] - expected) <= 1e-12, mirror

    @pytest.mark.parametrize("name", sorted(EXPECTED))
    def test_network(self, scenarios, name):
        network = scenarios[name].network
        for mirror, expected in EXPECTED[name].items():
            assert abs(weak_value(network, mirror) - expected) <= 1e-12, mirror

    def test_lower_arm_blocked_is_undefined(self, scenarios):
        fig2c = scenarios["fig2c"]
        with pytest.raises(UndefinedWeakValue) as info:
            weak_value(fig2c.paths, "A")
        assert abs(info.value.overlap) <= info.value.threshold
        report = weak_values(fig2c.network)
        assert not report.defined
        assert report.values == {}

    def test_unknown_mirror_on_network(self, scenarios):
        with pytest.raises(KeyError):
            weak_value(scenarios["fig2b"].network, "Q")

    @pytest.mark.parametrize("name", sorted(CUTS))
    def test_cut_completeness(self, scenarios, name):
        report = weak_values(scenarios[name].detected_paths(), scenarios[name].mirrors)
        for cut in CUTS[name]:
            total = sum(report.values[mirror] for mirror in cut)
            assert abs(total - 1.0) <= 1e-12, cut

    def test_attenuation_does_not_change_weak_values(self, scenarios):
        fig2a = scenarios["fig2a"]
        assert weak_values(fig2a.paths).values == pytest.approx(weak_values(fig2a.detected_paths()).values)

    def test_slight_detuning_gives_large_defined_weak_values(self):
        leaky = apply_block(build_nested(phase_b=0.01), "C->BS3")
        report = weak_values(leaky)
        assert report.defined
        assert abs(report.values["A"]) > 10
        assert abs(report.values["E"] - 1.0) <= 1e-9

    def test_threshold_scales_with_amplitudes(self):
        paths = [OpticalPath.from_mirrors(0.5, "A"), OpticalPath.from_mirrors(-0.5, "B")]
        assert overlap_threshold(paths) == pytest.approx(1e-12)
        assert not weak_values(paths).defined


class TestTwoStateVector:
    def test_products_match_path_sums(self):
        network = build_nested(phase_b=0.0)
        tsv = two_state_vector(network)
        paths = enumerate_paths(network)
        assert tsv.overlap == pytest.approx(sum(p.amplitude for p in paths), abs=1e-12)
        for mirror in network.mirror_ids:
            through = sum((p.amplitude for p in paths if p.passes(mirror)), 0j)
            assert tsv.product(mirror) == pytest.approx(through, abs=1e-12)

    def test_which_path_states(self):
        tsv = two_state_vector(build_which_path())
        assert tsv.forward["A"] == 0
        assert abs(tsv.forward["B"]) == pytest.approx(1.0)
        assert abs(tsv.backward["A"]) == pytest.approx(math.sqrt(0.5))
        assert abs(tsv.backward["B"]) == pytest.approx(math.sqrt(0.5))
        assert tsv.overlap == pytest.approx(1j * math.sqrt(0.5))

    def test_inner_interferometer_is_dark_towards_f(self):
        tsv = two_state_vector(build_nested(phase_b=0.0))
        assert tsv.forward["F"] == pytest.approx(0, abs=1e-12)
        assert abs(tsv.forward["E"]) > 0.5


class TestPrediction:
    def test_nested_dark_prediction(self, scenarios):
        fig2b = scenarios["fig2b"]
        predicted = predict_peak_amplitudes(fig2b.detected_paths(), fig2b.vibrations, fig2b.beam)
        k = first_order_gain(fig2b.beam) / 9.0
        shift = fig2b.beam.to_mm(0.6)
        assert predicted["A"] == pytest.approx(k * shift)
        assert predicted["B"] == pytest.approx(-k * shift)
        assert predicted["C"] == pytest.approx(k * shift)
        assert predicted["E"] == pytest.approx(0, abs=1e-15)

    def test_orthogonal_postselection_raises(self, scenarios):
        fig2c = scenarios["fig2c"]
        with pytest.raises(UndefinedWeakValue):
            predict_peak_amplitudes(fig2c.detected_paths(), fig2c.vibrations, GaussianBeam())


amplitude = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(
    amplitudes=st.lists(amplitude, min_size=1, max_size=4),
    theta=st.floats(min_value=-math.pi, max_value=math.pi),
)
def test_weak_values_ignore_global_phase(amplitudes, theta):
    assume(abs(sum(amplitudes)) > 1e-3)
    paths = [
        OpticalPath.from_mirrors(a, [f"M{i}", "Z"] if i % 2 else [f"M{i}"])
        for i, a in enumerate(amplitudes)
    ]
    base = weak_values(paths)
    rotated = weak_values([p.scaled(cmath.exp(1j * theta)) for p in paths])
    assert base.defined and rotated.defined
    for mirror, value in base.values.items():
        assert rotated.values[mirror] == pytest.approx(value, rel=1e-9, abs=1e-9)
