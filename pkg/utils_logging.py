import logging
import os
import sys
from typing import Optional
from rich.logging import RichHandler
from rich.progress import Progress, SpinnerColumn, TextColumn, BarColumn, TaskProgressColumn, TimeElapsedColumn
from rich.console import Console

LOG_LEVEL_ENV = "RIGHTSETS_LOG_LEVEL"

# Todo el diagnóstico va a stderr; stdout queda para las tablas
console = Console(stderr=True)

logging.basicConfig(
    level=os.getenv(LOG_LEVEL_ENV, "INFO").upper(),
    format="%(message)s",
    datefmt="[%X]",
    handlers=[RichHandler(console=console, rich_tracebacks=True, show_path=False)]
)

logger = logging.getLogger("rightsets")

_quiet = False

_STYLES = {
    "info": "blue",
    "success": "green",
    "warning": "yellow",
    "error": "red",
}


def set_quiet_mode(enabled: bool) -> None:
    """
    Silence progress bars and informational messages.

    Warnings and errors still reach stderr.
    """
    global _quiet
    _quiet = enabled
    console.quiet = enabled
    logger.setLevel(logging.WARNING if enabled else os.getenv(LOG_LEVEL_ENV, "INFO").upper())


class ProgressManager:
    """Progress bar over a known number of steps (candidates, rows)."""

    def __init__(self, description: str, total: int):
        self.progress = Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            TimeElapsedColumn(),
            console=console,
            disable=_quiet or not sys.stderr.isatty(),
            transient=True,
        )
        self.description = description
        self.total = total
        self.task_id = None

    def __enter__(self):
        self.progress.start()
        self.task_id = self.progress.add_task(self.description, total=self.total)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.progress.stop()

    def update(self, advance: int = 1):
        if self.task_id is not None:
            self.progress.update(self.task_id, advance=advance)


def show_cache_error(file_name: str, error_message: str, hint: Optional[str] = None) -> None:
    """
    Muestra en rojo un problema con un archivo de caché.

    Args:
        file_name: Nombre del archivo de caché
        error_message: Descripción del problema
        hint: Sugerencia para el usuario
    """
    text = f"Caché {file_name} no utilizable:\n→ {error_message}"
    if hint:
        text += f"\nSugerencia: {hint}"
    console.print(f"[red]{text}[/red]")


def show_progress_message(message: str, style: str = "info") -> None:
    color = _STYLES.get(style, "white")
    console.print(f"[{color}]{message}[/{color}]")
