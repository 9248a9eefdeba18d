from typing import Dict, Iterable, Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table


class RunLogger:
    """Pretty terminal logging for simulation runs."""

    def __init__(self):
        self.console = Console()

    def scenario(self, name: str, description: str) -> None:
        """Log the scenario a run is about to process."""
        panel = Panel(
            f"[bold white]{description}[/bold white]",
            title=f"🔬 {name}",
            border_style="blue",
            box=box.ROUNDED,
        )
        self.console.print(panel)

    def scenario_table(self, rows: Iterable[Dict[str, str]]) -> None:
        """Render the scenario listing."""
        table = Table(box=box.SIMPLE_HEAD)
        table.add_column("Scenario", style="bold")
        table.add_column("Paths", justify="right")
        table.add_column("Mirrors")
        table.add_column("Attenuation", justify="right")
        for row in rows:
            table.add_row(row["name"], row["paths"], row["mirrors"], row["attenuation"])
        self.console.print(table)

    def weak_value_table(self, values: Dict[str, complex], overlap: complex, defined: bool) -> None:
        """Render a weak-value report."""
        table = Table(box=box.SIMPLE_HEAD, title="Weak values (P_X)_w")
        table.add_column("Mirror", style="bold")
        table.add_column("Re", justify="right")
        table.add_column("Im", justify="right")
        for mirror, value in values.items():
            table.add_row(mirror, f"{value.real:+.6f}", f"{value.imag:+.6f}")
        self.console.print(table)
        self.console.print(f"  [dim]overlap ⟨Φ|Ψ⟩ = {overlap.real:+.6f} {overlap.imag:+.6f}i[/dim]")
        if not defined:
            self.warning("Weak values are not defined: postselection is orthogonal to the preselected state")

    def peak_table(self, rows: Iterable[Dict[str, object]]) -> None:
        """Render the per-mirror peak report."""
        table = Table(box=box.SIMPLE_HEAD, title="Spectral peaks")
        table.add_column("Mirror", style="bold")
        table.add_column("f [Hz]", justify="right")
        table.add_column("Power", justify="right")
        table.add_column("Relative", justify="right")
        table.add_column("Peak")
        for row in rows:
            present = "[green]yes[/green]" if row["present"] else "[dim]no[/dim]"
            table.add_row(
                str(row["mirror"]),
                f"{row['frequency']:g}",
                f"{row['power']:.4e}",
                f"{row['relative']:.3e}",
                present,
            )
        self.console.print(table)

    def error(self, error: str) -> None:
        """Log an error."""
        self.console.print(f"  [bold red]❌ Error: {error}[/bold red]")

    def info(self, message: str) -> None:
        """Log an info message."""
        self.console.print(f"  [dim]ℹ {message}[/dim]")

    def success(self, summary: str) -> None:
        """Log successful completion."""
        panel = Panel(
            f"[bold green]{summary}[/bold green]",
            title="✅ Done",
            border_style="green",
            box=box.ROUNDED,
        )
        self.console.print()
        self.console.print(panel)

    def failure(self, reason: str) -> None:
        """Log a failed command."""
        panel = Panel(
            f"[bold red]{reason}[/bold red]",
            title="❌ Failed",
            border_style="red",
            box=box.ROUNDED,
        )
        self.console.print()
        self.console.print(panel)

    def note(self, title: str, message: str) -> None:
        """Log a structured note that is not a failure."""
        panel = Panel(
            f"[yellow]{message}[/yellow]",
            title=f"📝 {title}",
            border_style="yellow",
            box=box.ROUNDED,
        )
        self.console.print(panel)

    def written(self, kind: str, path: Optional[object]) -> None:
        """Log an artifact written to disk."""
        if path is not None:
            self.console.print(f"  [green]→[/green] {kind}: {path}")

    def warning(self, message: str) -> None:
        """Log a warning."""
        self.console.print(f"  [yellow]⚠ {message}[/yellow]")


logger = RunLogger()
