"""Built-in examples with expected values, stored as JSON next to this module.

Set ``SCHEMESPINLAB_CATALOG`` to a directory to load entries from there instead.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import UnknownEntry

KINDS = ("matrix", "scheme", "leonard_pair", "spin_model")
SOURCES = ("display", "computed", "convention")
ENV_VAR = "SCHEMESPINLAB_CATALOG"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    title: str
    payload: dict
    expected: dict
    version: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"entry {self.id}: unknown kind {self.kind!r}")
        for name, item in self.expected.items():
            if not isinstance(item, dict) or "value" not in item or item.get("source") not in SOURCES:
                raise ValueError(f"entry {self.id}: expected value {name!r} needs a value and a source")

    @classmethod
    def from_dict(cls, obj: dict) -> CatalogEntry:
        known = {"id", "kind", "title", "payload", "expected", "version"}
        return cls(obj["id"], obj["kind"], obj.get("title", ""), obj["payload"], obj.get("expected", {}),
                   int(obj.get("version", 1)), {k: v for k, v in obj.items() if k not in known})

    def to_dict(self) -> dict:
        out = {"id": self.id, "kind": self.kind, "title": self.title, "version": self.version}
        out.update(self.extra)
        out["payload"] = self.payload
        out["expected"] = self.expected
        return out


def _data_dir():
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return resources.files(__name__).joinpath("data")


def _load_all() -> dict[str, CatalogEntry]:
    base = _data_dir()
    out = {}
    for item in sorted(base.iterdir(), key=lambda p: p.name):
        if item.name.endswith(".json"):
            entry = CatalogEntry.from_dict(json.loads(item.read_text()))
            out[entry.id] = entry
    return out


def list_entries() -> list[str]:
    return sorted(_load_all())


def get(entry_id: str) -> CatalogEntry:
    entries = _load_all()
    if entry_id not in entries:
        raise UnknownEntry(entry_id)
    return entries[entry_id]


def compact_json(obj, indent: int = 1, level: int = 0) -> str:
    """JSON with lists of scalars kept on one line; keys in file order."""
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {compact_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return json.dumps(obj)
        if all(isinstance(v, list) and all(not isinstance(u, (dict, list)) for u in v) for v in obj):
            return "[" + ", ".join(json.dumps(v) for v in obj) + "]"
        items = [pad + compact_json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(obj)


def save(entry: CatalogEntry, directory: str | os.PathLike) -> Path:
    path = Path(directory) / f"{entry.id}.json"
    path.write_text(compact_json(entry.to_dict()) + "\n")
    return path


from .golden import GoldenCheck, GoldenReport, build, run_golden  # noqa: E402

__all__ = [
    "CatalogEntry", "GoldenCheck", "GoldenReport", "KINDS", "ENV_VAR", "get", "list_entries", "build",
    "run_golden", "compact_json", "save",
]
