import json

from rich.console import Console

from motifseek.events import EventLog, fan_out, render_event


def test_event_log_appends_json_lines(tmp_path):
    path = tmp_path / "logs" / "events.jsonl"
    log = EventLog(str(path))
    log({"type": "started", "k1": 1})
    log({"type": "failed", "reason": "no collision"})
    lines = [json.loads(line) for line in path.read_text().splitlines()]
    assert [e["type"] for e in lines] == ["started", "failed"]
    assert all("ts" in e for e in lines)


def test_disabled_log_writes_nothing(tmp_path):
    path = tmp_path / "events.jsonl"
    EventLog(str(path), enabled=False)({"type": "started"})
    assert not path.exists()


def test_fan_out_isolates_failures():
    seen = []

    def broken(event):
        raise RuntimeError("boom")

    forward = fan_out(broken, None, seen.append)
    forward({"type": "voted", "length": 3})
    assert seen == [{"type": "voted", "length": 3}]


def test_render_every_event_kind():
    out = Console(record=True, width=120)
    events = [
        {"type": "started", "algo": "deterministic", "k1": 1, "k2": 5, "window": 11,
         "guarantee_regime": False},
        {"type": "initial_boundaries", "pair": 0, "found": True, "left": 9, "right": 29},
        {"type": "initial_boundaries", "pair": 1, "found": False, "left": None, "right": None},
        {"type": "motif_length", "l_motif": 20, "L": 5},
        {"type": "anchor", "anchor": 0, "z2_known": 5, "k2": 5},
        {"type": "extract", "anchor": 0, "candidate": [11, 26], "empty": 1},
        {"type": "extract", "anchor": 1, "candidate": None},
        {"type": "voted", "anchor": 0, "length": 16, "counters": {}},
        {"type": "failed", "reason": "every Z1 anchor returned no candidate"},
        {"type": "trial", "trial": 3, "exact_match": True, "mismatch_count": 0},
        {"type": "scaling_point", "n": 4096, "preprocessing_work": 1234.0},
        {"type": "something_else"},
    ]
    for event in events:
        render_event(event, out)
    text = out.export_text()
    assert "outside guarantee regime" in text
    assert "[9, 29]" in text
    assert "candidate [11, 26]" in text
    assert "length 16" in text
    assert "n=4096" in text
