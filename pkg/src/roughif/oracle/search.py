"""Checking registered properties on instances, spaces, and by search."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

import numpy as np

from .. import io
from ..core import CutParams, IFSet, Partition
from ..errors import ValidationError
from .generate import (
    MAX_EXHAUSTIVE_INSTANCES, Instance, InstanceBatch, InstanceSpec, exhaustive_batches,
    random_chunks, step_ticks,
)
from .properties import (
    ALGEBRA, CONJECTURE, GUARANTEED, NON_THEOREM, THEOREM, Property, evaluate, get,
)

EXHAUSTIVE_STRATUM = 300_000


class Status(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    WITNESS_FOUND = "WitnessFound"
    NO_WITNESS = "NoWitnessInSpace"


@dataclass
class PropertyReport:
    property_id: str
    kind: str
    status: Status
    checked_count: int
    vacuous_count: int = 0
    witness: dict | None = None
    note: str | None = None
    reading_dependent: bool = False

    def __post_init__(self):
        if self.status in (Status.FAILS, Status.WITNESS_FOUND) and self.witness is None:
            raise ValueError(f"{self.status.value} report must carry a witness")

    @property
    def ok(self) -> bool:
        """False only for a failed theorem."""
        return not (self.kind == THEOREM and self.status is Status.FAILS)

    def to_dict(self) -> dict:
        out = {
            "property": self.property_id,
            "kind": self.kind,
            "status": self.status.value,
            "checked": self.checked_count,
            "vacuous": self.vacuous_count,
        }
        if self.reading_dependent:
            out["reading_dependent"] = True
        if self.note:
            out["note"] = self.note
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def line(self) -> str:
        extra = f", vacuous {self.vacuous_count}" if self.vacuous_count else ""
        tag = " [reading-dependent]" if self.reading_dependent else ""
        s = f"{self.property_id:<18} {self.kind:<11} {self.status.value:<16} checked {self.checked_count}{extra}{tag}"
        if self.note:
            s += f"  ({self.note})"
        return s


def witness_dict(inst: Instance, property_id: str) -> dict:
    return io.instance_dict(inst.universe, inst.partition, inst.sets, inst.params, property_id)


def _hit_status(prop: Property, found: bool, searching: bool) -> Status:
    if prop.kind == NON_THEOREM:
        return Status.WITNESS_FOUND if found else Status.NO_WITNESS
    if found:
        return Status.FAILS
    return Status.NO_WITNESS if searching else Status.HOLDS


def _strict_note(prop: Property, batch: InstanceBatch, backend: str) -> str | None:
    """For the inclusion laws, name the first params where inclusion is strict."""
    partner = {"5.3.2": "5.3.2-strict", "5.3.3": "5.3.3-strict"}.get(prop.id)
    if partner is None:
        return None
    hyp, concl = evaluate(get(partner), batch, backend)
    rows = np.flatnonzero(hyp & ~concl)
    if not rows.size:
        return None
    i = rows[0]
    return f"strict at {CutParams(int(batch.alpha[i]), int(batch.beta[i]))}"


def check_batches(prop: Property | str, batches: Iterable[InstanceBatch],
                  backend: str = "brute") -> PropertyReport:
    """Evaluate a property on every row; the first offending row is the witness."""
    prop = get(prop) if isinstance(prop, str) else prop
    checked = vacuous = 0
    best = None  # (index, batch, row)
    note = None
    for batch in batches:
        hyp, concl = evaluate(prop, batch, backend)
        checked += len(batch)
        vacuous += int((~hyp).sum())
        bad = np.flatnonzero(hyp & ~concl)
        if bad.size:
            keys = batch.index[bad] if batch.index is not None else bad + checked
            j = int(np.argmin(keys))
            if best is None or keys[j] < best[0]:
                best = (int(keys[j]), batch, int(bad[j]))
        if note is None:
            note = _strict_note(prop, batch, backend)
    witness = None
    if best is not None:
        witness = witness_dict(best[1].instance(best[2]), prop.id)
    status = _hit_status(prop, best is not None, searching=False)
    if prop.kind != NON_THEOREM and status is Status.HOLDS and checked and vacuous == checked:
        note = (note + "; " if note else "") + "every case vacuous"
    return PropertyReport(prop.id, prop.kind, status, checked, vacuous, witness, note,
                          prop.reading_dependent)


def _roles_batch(inst: Instance, roles: tuple[str, ...]) -> InstanceBatch:
    sets = {r: inst.sets[r] for r in roles}
    return Instance(inst.partition, sets, inst.params).to_batch()


def check_instance(prop: Property | str, inst: Instance, backend: str = "brute") -> PropertyReport:
    prop = get(prop) if isinstance(prop, str) else prop
    missing = [r for r in prop.roles if r not in inst.sets]
    if missing:
        return PropertyReport(prop.id, prop.kind, _hit_status(prop, False, False), 0, 0,
                              note=f"needs sets {', '.join(missing)}",
                              reading_dependent=prop.reading_dependent)
    return check_batches(prop, [_roles_batch(inst, prop.roles)], backend)


def check_algebra(r: Partition, x: IFSet, y: IFSet, p: CutParams) -> list[PropertyReport]:
    inst = Instance(r, {"X": x, "Y": y}, p)
    return [check_instance(pid, inst) for pid in ALGEBRA]


def check_guaranteed(inst: Instance) -> list[PropertyReport]:
    return [check_instance(pid, inst) for pid in GUARANTEED]


def check_lattice(inst: Instance) -> PropertyReport:
    return check_instance("lattice", inst)


# search -------------------------------------------------------------------

def search_counterexample(property_id: str, spec: InstanceSpec, seed: int = 0,
                          budget: int = 1_000_000, backend: str = "kernel") -> PropertyReport:
    """Look for a row where the hypothesis holds and the conclusion fails.

    Small strata (one universe size, all partitions) are enumerated in
    canonical order first; the rest of the budget goes to seeded random draws
    with |U| from 1 to ``spec.universe_size``. The first hit in that order
    wins, and is re-checked with the brute-force backend before reporting.
    """
    prop = get(property_id)
    spec = replace(spec, set_count=prop.arity, step=spec.step)
    params = spec.param_list()
    sizes = [spec.universe_size] if spec.partition is not None else range(1, spec.universe_size + 1)
    checked = 0
    for n in sizes:
        size = spec.space_size(n)
        if size > EXHAUSTIVE_STRATUM or checked + size > budget:
            continue
        batches = exhaustive_batches(n, prop.arity, spec.step, spec.partition_list(n), params,
                                     start=checked)
        hit = _first_hit(prop, batches, backend)
        if hit is not None:
            return _found(prop, hit)
        checked += size
    remaining = budget - checked
    if remaining > 0:
        rspec = replace(spec, up_to=spec.partition is None)
        for group in random_chunks(rspec, seed, remaining, start=checked):
            hit = _first_hit(prop, group, backend)
            if hit is not None:
                return _found(prop, hit)
        checked = budget
    return PropertyReport(prop.id, prop.kind, Status.NO_WITNESS, checked,
                          reading_dependent=prop.reading_dependent)


def _first_hit(prop: Property, batches: Iterable[InstanceBatch], backend: str):
    best = None
    for batch in batches:
        hyp, concl = evaluate(prop, batch, backend)
        bad = np.flatnonzero(hyp & ~concl)
        if bad.size:
            j = int(np.argmin(batch.index[bad]))
            key = int(batch.index[bad[j]])
            if best is None or key < best[0]:
                best = (key, batch.instance(int(bad[j])))
    return best


def _found(prop: Property, hit) -> PropertyReport:
    key, inst = hit
    confirm = check_instance(prop, inst, backend="brute")
    if confirm.witness is None:
        raise AssertionError(f"kernel and brute-force evaluation disagree on {prop.id}")
    status = _hit_status(prop, True, searching=True)
    return PropertyReport(prop.id, prop.kind, status, key + 1, 0,
                          witness_dict(inst, prop.id), reading_dependent=prop.reading_dependent)


def replay(witness: dict | io.InstanceFile, property_id: str | None = None) -> PropertyReport:
    """Re-evaluate a serialized witness instance with the brute-force backend."""
    f = io.parse_instance(witness) if isinstance(witness, dict) else witness
    pid = property_id or f.property
    if pid is None:
        raise ValidationError("witness names no property")
    if f.params is None:
        raise ValidationError("witness carries no (alpha, beta)")
    inst = Instance(f.require_partition(), dict(f.sets), f.params)
    return check_instance(pid, inst, backend="brute")


# the standard verification space -------------------------------------------

def standard_batches(arity: int, *, exhaustive_max: int = 4, exhaustive_step="0.25",
                     random_count: int = 10_000, random_max: int = 8, random_step="0.1",
                     seed: int = 0) -> Iterator[InstanceBatch]:
    """Exhaustive small universes at a coarse grid, then seeded random draws.

    The exhaustive part covers every size n <= ``exhaustive_max`` whose full
    space (all partitions, all set tuples, all grid params) stays within
    ``MAX_EXHAUSTIVE_INSTANCES``; larger sizes are left to the random part.
    """
    step = step_ticks(exhaustive_step)
    offset = 0
    for n in range(1, exhaustive_max + 1):
        spec = InstanceSpec(n, arity, step)
        size = spec.space_size()
        if size > MAX_EXHAUSTIVE_INSTANCES:
            break
        yield from exhaustive_batches(n, arity, step, spec.partition_list(), spec.param_list(),
                                      start=offset)
        offset += size
    if random_count:
        rspec = InstanceSpec(random_max, arity, random_step, up_to=True)
        for group in random_chunks(rspec, seed, random_count, start=offset):
            yield from group


def exhaustive_extent(arity: int, exhaustive_max: int = 4, exhaustive_step="0.25") -> int:
    """Largest universe size fully enumerated by ``standard_batches``."""
    step = step_ticks(exhaustive_step)
    best = 0
    for n in range(1, exhaustive_max + 1):
        if InstanceSpec(n, arity, step).space_size() > MAX_EXHAUSTIVE_INSTANCES:
            break
        best = n
    return best


def verify(property_ids: Iterable[str], backend: str = "brute", **space) -> list[PropertyReport]:
    return [check_batches(pid, standard_batches(get(pid).arity, **space), backend)
            for pid in property_ids]
