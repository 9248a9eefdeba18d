from config import Config
from cli.handlers import list_scenarios_handler, simulate_handler, validate_handler, weak_values_handler
from cli.registry import Command, CommandRegistry

SCENARIO_ARGUMENT = {"help": "Built-in scenario name or path to a scenario file"}


def create_list_scenarios_command() -> Command:
    """Create list-scenarios command."""
    return Command(
        name="list-scenarios",
        description="List the built-in scenarios.",
        parameters={},
        handler=list_scenarios_handler,
    )


def create_weak_values_command() -> Command:
    """Create weak-values command."""
    return Command(
        name="weak-values",
        description="Compute the weak values of the mirror projectors.",
        parameters={
            "scenario": SCENARIO_ARGUMENT,
            "--out": {"metavar": "PATH", "help": "Write the weak-value report to PATH"},
        },
        handler=weak_values_handler,
    )


def create_simulate_command(config: Config) -> Command:
    """Create simulate command; unset flags fall back to the configuration."""
    return Command(
        name="simulate",
        description="Simulate the quad-cell signal and analyse its power spectrum.",
        parameters={
            "scenario": SCENARIO_ARGUMENT,
            "--out-series": {"metavar": "PATH", "help": "Write the time series (CSV)"},
            "--out-spectrum": {"metavar": "PATH", "help": "Write the smoothed spectrum (CSV)"},
            "--out-report": {"metavar": "PATH", "help": "Write the weak-value report"},
            "--plot": {"metavar": "PATH", "help": "Write an SVG plot of the spectrum"},
            "--window": {"type": int, "metavar": "N", "help": "Smoothing window in bins"},
            "--noise-seed": {"type": int, "metavar": "K", "help": "Seed of the additive noise"},
            "--noise-std": {"type": float, "metavar": "X", "help": "Standard deviation of additive noise"},
        },
        handler=lambda **kwargs: simulate_handler(config, **kwargs),
    )


def create_validate_command() -> Command:
    """Create validate command."""
    return Command(
        name="validate",
        description="Check a scenario file for syntax and semantic errors.",
        parameters={"file": {"help": "Scenario file"}},
        handler=validate_handler,
    )


def create_registry(config: Config) -> CommandRegistry:
    registry = CommandRegistry()
    registry.register(create_list_scenarios_command())
    registry.register(create_weak_values_command())
    registry.register(create_simulate_command(config))
    registry.register(create_validate_command())
    return registry
