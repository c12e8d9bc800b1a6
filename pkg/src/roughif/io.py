"""JSON instance files and CSV information tables.

Instance file layout (degrees are decimal strings, never floats)::

    {
      "universe": ["x1", "x2", ...],
      "partition": [["x1", "x2"], ...],          # optional with --table
      "sets": {"X": {"x1": ["0.2", "0.7"], ...}, ...},
      "params": {"alpha": "0.1", "beta": "0.8"},  # optional
      "property": "5.4.9"                         # optional, witnesses only
    }
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import CutParams, IFSet, Partition, Universe, format_degree, to_ticks
from .errors import DuplicateObjectId, MissingElement, UnknownAttribute, UnknownSet, ValidationError


@dataclass(frozen=True)
class InstanceFile:
    universe: Universe
    partition: Partition | None
    sets: dict[str, IFSet]
    params: CutParams | None = None
    property: str | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def get(self, name: str) -> IFSet:
        try:
            return self.sets[name]
        except KeyError:
            known = ", ".join(self.sets) or "none"
            raise UnknownSet(f"no set named {name!r} (available: {known})") from None

    def with_partition(self, partition: Partition) -> "InstanceFile":
        return InstanceFile(self.universe, partition, self.sets, self.params, self.property,
                            self.extra)

    def require_partition(self) -> Partition:
        if self.partition is None:
            raise ValidationError("instance has no partition; give one in the file or use --table")
        return self.partition


def _degree(v, where: str) -> int:
    if not isinstance(v, str):
        raise ValidationError(f"{where}: degrees must be decimal strings, got {v!r}")
    try:
        return to_ticks(v)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None


def parse_instance(data: dict) -> InstanceFile:
    if not isinstance(data, dict):
        raise ValidationError("instance file must hold a JSON object")
    for key in ("universe", "sets"):
        if key not in data:
            raise ValidationError(f"instance file lacks {key!r}")
    universe = Universe(tuple(data["universe"]))
    partition = None
    if data.get("partition") is not None:
        partition = Partition(universe, tuple(tuple(b) for b in data["partition"]))
    if not isinstance(data["sets"], dict):
        raise ValidationError("'sets' must map set names to element degrees")
    sets = {}
    for name, degrees in data["sets"].items():
        if not isinstance(degrees, dict):
            raise ValidationError(f"set {name!r} must map elements to [mu, nu]")
        unknown = sorted(set(degrees) - set(universe.elements))
        if unknown:
            raise ValidationError(f"set {name!r}: elements not in universe: {unknown}")
        mu, nu = [], []
        for e in universe:
            if e not in degrees:
                raise MissingElement(f"set {name!r}: no degrees given for element {e!r}")
            pair = degrees[e]
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ValidationError(f"set {name!r}, element {e!r}: expected [mu, nu]")
            where = f"set {name!r}, element {e!r}"
            mu.append(_degree(pair[0], where))
            nu.append(_degree(pair[1], where))
        try:
            sets[name] = IFSet(universe, np.array(mu), np.array(nu))
        except ValidationError as exc:
            raise ValidationError(f"set {name!r}: {exc}") from None
    params = None
    if data.get("params") is not None:
        p = data["params"]
        params = CutParams(_degree(p["alpha"], "params.alpha"), _degree(p["beta"], "params.beta"))
    known = {"universe", "partition", "sets", "params", "property"}
    extra = {k: v for k, v in data.items() if k not in known}
    return InstanceFile(universe, partition, sets, params, data.get("property"), extra)


def loads(text: str) -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from None
    return parse_instance(data)


def load(path: str | Path) -> InstanceFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def instance_dict(universe: Universe, partition: Partition | None, sets: dict[str, IFSet],
                  params: CutParams | None = None, property: str | None = None) -> dict:
    out: dict = {"universe": list(universe.elements)}
    if partition is not None:
        out["partition"] = [list(b) for b in partition.blocks]
    out["sets"] = {name: {e: list(pair) for e, pair in s.to_mapping().items()}
                   for name, s in sets.items()}
    if params is not None:
        out["params"] = {"alpha": format_degree(params.alpha), "beta": format_degree(params.beta)}
    if property is not None:
        out["property"] = property
    return out


def to_dict(inst: InstanceFile) -> dict:
    return instance_dict(inst.universe, inst.partition, inst.sets, inst.params, inst.property)


def dumps(obj) -> str:
    if isinstance(obj, InstanceFile):
        obj = to_dict(obj)
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def dump(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


@dataclass(frozen=True)
class InfoTable:
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        width = len(self.header)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValidationError(f"row {i + 1} has {len(row)} cells, header has {width}")
        seen = set()
        for row in self.rows:
            if row[0] in seen:
                raise DuplicateObjectId(f"object id {row[0]!r} appears twice")
            seen.add(row[0])

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(r[0] for r in self.rows)


def read_table(path: str | Path) -> InfoTable:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [tuple(r) for r in csv.reader(fh) if r]
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    if not rows:
        raise ValidationError(f"{path}: empty table")
    header, body = rows[0], rows[1:]
    if not header or header[0] != "id":
        raise ValidationError(f"{path}: first column must be 'id'")
    return InfoTable(tuple(header), tuple(body))


def partition_from_attributes(t: InfoTable, attrs: Sequence[str]) -> Partition:
    """Group objects with identical values on ``attrs``; an empty list gives one block."""
    cols = []
    for a in attrs:
        if a not in t.header[1:]:
            raise UnknownAttribute(f"unknown attribute {a!r}")
        cols.append(t.header.index(a))
    groups: dict[tuple, list[str]] = {}
    for row in t.rows:
        groups.setdefault(tuple(row[c] for c in cols), []).append(row[0])
    return Partition(Universe(t.ids), tuple(tuple(g) for g in groups.values()))
