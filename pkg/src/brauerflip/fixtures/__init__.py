"""Bundled S-graph fixtures, loadable by name."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from ..sgraph_core import SGraph, SGraphError, from_json


def names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__package__).iterdir() if p.name.endswith(".json"))


def raw(name: str) -> dict:
    path = resources.files(__package__) / f"{name}.json"
    if not path.is_file():
        raise SGraphError(f"unknown fixture {name!r}; known: {', '.join(names())}")
    return json.loads(path.read_text(encoding="utf-8"))


def load(name: str) -> SGraph:
    return from_json(raw(name))


def default_n(name: str) -> int:
    """The fixture's preferred ``n``; the lcm of its internal degrees if unset."""
    from ..rgb_algebra import minimal_n
    n = raw(name).get("n")
    return n if n is not None else minimal_n(load(name))


def resolve(ref: str) -> SGraph:
    """A fixture name or a path to an S-graph JSON file."""
    from ..sgraph_core import load as load_path
    p = Path(ref)
    if p.suffix == ".json" or p.exists():
        return load_path(p)
    return load(ref)
