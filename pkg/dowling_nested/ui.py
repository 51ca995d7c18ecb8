"""Console output helpers, spinner and report tables (all on stderr)."""

from __future__ import annotations

from rich.console import Console
from rich.table import Table
from rich.theme import Theme

from dowling_nested.state import config


# ── Rich console ────────────────────────────────────────────────────────────

_theme = Theme({
    "dim": "dim",
    "ok": "bold green",
    "fail": "bold red",
    "warn": "bold yellow",
    "debug": "yellow",
})
console = Console(theme=_theme, highlight=False, stderr=True)


# ── Output helpers ──────────────────────────────────────────────────────────

def dim(msg: str):
    console.print(f"  [dim]{msg}[/dim]")


def error(msg: str):
    console.print(f"  [fail][Error] {msg}[/fail]")


def warn(msg: str):
    console.print(f"  [warn]{msg}[/warn]")


def success(msg: str):
    console.print(f"  [ok]{msg}[/ok]")


def dbg(msg: str):
    if config.debug:
        console.print(f"[debug][DEBUG] {msg}[/debug]")


def dbg_block(label: str, content: str):
    if config.debug:
        preview = content[:500] + ("..." if len(content) > 500 else "")
        console.print(f"[debug]── {label} ──[/debug]")
        console.print(f"[dim]{preview}[/dim]", markup=False)


# ── Spinner ─────────────────────────────────────────────────────────────────

class SpinnerContext:
    """Status spinner for blocking builds; silent when stderr is not a terminal."""

    def __init__(self, msg: str):
        self.msg = msg
        self._status = None

    def __enter__(self):
        if console.is_terminal:
            self._status = console.status(f"[dim]{self.msg}[/dim]", spinner="dots")
            self._status.__enter__()
        return self

    def update(self, msg: str):
        self.msg = msg
        if self._status is not None:
            self._status.update(f"[dim]{msg}[/dim]")

    def __exit__(self, *args):
        if self._status is not None:
            self._status.__exit__(*args)
            self._status = None


# ── Report table ────────────────────────────────────────────────────────────

def print_report_table(results: list) -> None:
    """One row per check: suite, case, anchor, verdict."""
    table = Table(show_header=True, header_style="bold", box=None, pad_edge=False)
    table.add_column("suite")
    table.add_column("case")
    table.add_column("anchor", style="dim")
    table.add_column("verdict")
    for r in results:
        if r.informational:
            verdict = "[warn]info[/warn]"
        else:
            verdict = "[ok]pass[/ok]" if r.passed else "[fail]FAIL[/fail]"
        table.add_row(r.suite, r.case, r.anchor, verdict)
    console.print(table)
