import pytest

from scenarios.builtins import builtin_scenarios
from scenarios.runner import RunOptions, run


@pytest.fixture(scope="session")
def scenarios():
    return builtin_scenarios()


@pytest.fixture(scope="session")
def runs(scenarios):
    """One default run of every built-in scenario, shared by the whole suite."""
    return {name: run(scenario, RunOptions()) for name, scenario in scenarios.items()}
