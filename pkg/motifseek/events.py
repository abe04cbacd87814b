"""Structured run events: the JSONL event log and console rendering."""

import json
import os
import time
from collections.abc import Callable

from rich.console import Console

console = Console()

EventCallback = Callable[[dict], None]


class EventLog:
    """Appends every event as one JSON line; write failures are ignored."""

    def __init__(self, path: str = "~/.motifseek/events.jsonl", enabled: bool = True):
        self.enabled = enabled
        self.path = os.path.expanduser(path)
        if enabled:
            directory = os.path.dirname(self.path)
            if directory:
                os.makedirs(directory, exist_ok=True)

    def __call__(self, event: dict) -> None:
        if not self.enabled:
            return
        try:
            entry = {"ts": time.strftime("%Y-%m-%dT%H:%M:%S"), **event}
            with open(self.path, "a") as f:
                f.write(json.dumps(entry, default=str) + "\n")
        except Exception:
            pass  # Logging must never break a run


def fan_out(*callbacks: EventCallback | None) -> EventCallback:
    """One callback forwarding to several; None entries are skipped."""
    targets = [cb for cb in callbacks if cb is not None]

    def forward(event: dict) -> None:
        for cb in targets:
            try:
                cb(event)
            except Exception:
                pass

    return forward


def render_event(event: dict, out: Console = console) -> None:
    """Print one pipeline or benchmark event in the CLI's style."""
    kind = event.get("type")
    if kind == "started":
        regime = (
            "[green]inside guarantee regime[/green]"
            if event.get("guarantee_regime")
            else "[yellow]outside guarantee regime[/yellow]"
        )
        out.print(
            f"[dim]{event['algo']}: k1={event['k1']} pairs, k2={event['k2']}, "
            f"w={event['window']}[/dim] {regime}"
        )
    elif kind == "initial_boundaries":
        if event.get("found"):
            out.print(
                f"  [cyan]pair {event['pair']}[/cyan] rough boundaries "
                f"[{event['left']}, {event['right']}]"
            )
        else:
            out.print(f"  [yellow]pair {event['pair']}: no collision[/yellow]")
    elif kind == "motif_length":
        out.print(f"  motif length estimate [bold]{event['l_motif']}[/bold], L={event['L']}")
    elif kind == "anchor":
        out.print(
            f"  anchor {event['anchor']}: {event['z2_known']}/{event['k2']} "
            "Z2 boundaries located"
        )
    elif kind == "extract":
        if event.get("candidate") is None:
            out.print(f"  [yellow]anchor {event['anchor']}: no candidate[/yellow]")
        else:
            a, b = event["candidate"]
            out.print(f"  candidate [{a}, {b}] with {event['empty']} empty region(s)")
    elif kind == "voted":
        out.print(f"  [green]voted consensus of length {event['length']}[/green]")
    elif kind == "failed":
        out.print(f"  [red]recovery failed: {event['reason']}[/red]")
    elif kind == "trial":
        mark = "[green]exact[/green]" if event.get("exact_match") else "[red]miss[/red]"
        out.print(f"  trial {event['trial']}: {mark} ({event['mismatch_count']} mismatches)")
    elif kind == "scaling_point":
        out.print(
            f"  n={event['n']}: preprocessing work {event['preprocessing_work']:.0f}"
        )
