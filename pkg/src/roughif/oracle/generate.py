"""Instance spaces: set partitions, degree grids and instance streams.

An instance is a partition of a small universe, ``set_count`` IF sets on a
degree grid, and one (alpha, beta) pair. Space sizes are known up front:

    partitions of n elements      Bell(n)
    grid pairs at step 1/m        (m + 1)(m + 2) / 2
    instances                     Bell(n) * pairs**(set_count * n) * |params|

Exhaustive enumeration is refused beyond the documented bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from ..core import DTYPE, SCALE, CutParams, IFSet, Partition, Universe, format_degree, to_ticks
from ..errors import SpaceTooLarge, ValidationError

ROLES = ("X", "Y", "X'", "Y'")

MAX_EXHAUSTIVE_SIZE = 4
MIN_EXHAUSTIVE_STEP = 2500
MAX_EXHAUSTIVE_INSTANCES = 20_000_000
BATCH = 1 << 16


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    # Bell triangle
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of range(n) as label strings, in lexicographic order."""
    if n == 0:
        yield ()
        return
    labels = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(labels)
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab))

    labels[0] = 0
    yield from rec(1, 0)


@lru_cache(maxsize=16)
def _partitions(n: int) -> tuple[Partition, ...]:
    u = Universe.of_size(n)
    return tuple(Partition.from_labels(u, rgs) for rgs in restricted_growth_strings(n))


def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``x1..xn`` in canonical order."""
    return _partitions(n)


def step_ticks(step) -> int:
    t = step if isinstance(step, int) else to_ticks(step)
    if t <= 0 or SCALE % t:
        raise ValidationError(f"grid step {format_degree(t)} must divide 1 exactly")
    return t


@lru_cache(maxsize=None)
def grid_pairs(step: int) -> np.ndarray:
    """All (mu, nu) on the grid with mu + nu <= 1, ordered by mu then nu."""
    m = SCALE // step
    pairs = [(i * step, j * step) for i in range(m + 1) for j in range(m + 1 - i)]
    out = np.array(pairs, dtype=DTYPE)
    out.setflags(write=False)
    return out


def grid_params(step: int) -> tuple[CutParams, ...]:
    return tuple(CutParams(int(a), int(b)) for a, b in grid_pairs(step))


@dataclass(frozen=True)
class InstanceSpec:
    universe_size: int
    set_count: int = 2
    step: int | str = "0.1"
    partition: Partition | None = None
    params: tuple[CutParams, ...] | None = None
    up_to: bool = False  # random mode: draw |U| uniformly from 1..universe_size

    def __post_init__(self):
        object.__setattr__(self, "step", step_ticks(self.step))
        if not 1 <= self.universe_size <= 8:
            raise ValidationError("universe_size must be between 1 and 8")
        if not 1 <= self.set_count <= len(ROLES):
            raise ValidationError(f"set_count must be between 1 and {len(ROLES)}")
        if self.partition is not None and len(self.partition.universe) != self.universe_size:
            raise ValidationError("explicit partition does not match universe_size")
        if self.params is not None:
            object.__setattr__(self, "params", tuple(self.params))

    @property
    def roles(self) -> tuple[str, ...]:
        return ROLES[: self.set_count]

    def param_list(self) -> tuple[CutParams, ...]:
        return self.params if self.params is not None else grid_params(self.step)

    def partition_list(self, n: int | None = None) -> tuple[Partition, ...]:
        if self.partition is not None and (n is None or n == self.universe_size):
            return (self.partition,)
        return partitions(self.universe_size if n is None else n)

    def space_size(self, n: int | None = None) -> int:
        n = self.universe_size if n is None else n
        pairs = len(grid_pairs(self.step))
        return len(self.partition_list(n)) * pairs ** (self.set_count * n) * len(self.param_list())


@dataclass(frozen=True)
class Instance:
    partition: Partition
    sets: dict[str, IFSet]
    params: CutParams

    @property
    def universe(self) -> Universe:
        return self.partition.universe

    def to_batch(self) -> "InstanceBatch":
        roles = tuple(self.sets)
        mu = np.stack([self.sets[r].mu for r in roles])[:, None, :]
        nu = np.stack([self.sets[r].nu for r in roles])[:, None, :]
        return InstanceBatch(
            self.partition, roles, mu, nu,
            np.array([self.params.alpha], DTYPE), np.array([self.params.beta], DTYPE),
        )


@dataclass(frozen=True, eq=False)
class InstanceBatch:
    """``mu``/``nu`` shaped (roles, batch, n); one partition for the whole batch."""

    partition: Partition
    roles: tuple[str, ...]
    mu: np.ndarray
    nu: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    index: np.ndarray | None = field(default=None)  # canonical position of each row

    def __len__(self) -> int:
        return self.mu.shape[1]

    def instance(self, i: int) -> Instance:
        u = self.partition.universe
        sets = {r: IFSet(u, self.mu[k, i], self.nu[k, i]) for k, r in enumerate(self.roles)}
        return Instance(self.partition, sets, CutParams(int(self.alpha[i]), int(self.beta[i])))

    def subset(self, rows) -> "InstanceBatch":
        idx = None if self.index is None else self.index[rows]
        return InstanceBatch(self.partition, self.roles, self.mu[:, rows], self.nu[:, rows],
                             self.alpha[rows], self.beta[rows], idx)


def _digits(flat: np.ndarray, base: int, width: int) -> np.ndarray:
    """Most-significant-first base-``base`` digits of each entry of ``flat``."""
    out = np.empty((flat.size, width), dtype=np.int64)
    rest = flat.astype(np.int64)
    for w in range(width - 1, -1, -1):
        out[:, w] = rest % base
        rest = rest // base
    return out


def exhaustive_batches(n: int, set_count: int, step: int, parts: Sequence[Partition],
                       params: Sequence[CutParams], batch: int = BATCH,
                       start: int = 0) -> Iterator[InstanceBatch]:
    """Every instance of one universe size, in canonical order.

    Order: partition, then the set tuple (each element's grid pair, roles
    outermost), then params. ``index`` carries the running position.
    """
    grid = grid_pairs(step)
    P = len(grid)
    width = set_count * n
    n_tuples = P ** width
    pa = np.array([p.alpha for p in params], DTYPE)
    pb = np.array([p.beta for p in params], DTYPE)
    per_part = n_tuples * len(params)
    if per_part >= 2**62:
        raise SpaceTooLarge("instance space overflows 64-bit indexing")
    roles = ROLES[:set_count]
    offset = start
    for part in parts:
        for lo in range(0, per_part, batch):
            t = np.arange(lo, min(lo + batch, per_part), dtype=np.int64)
            tup, pi = np.divmod(t, len(params))
            d = _digits(tup, P, width).reshape(-1, set_count, n)
            pairs = grid[d]  # (B, k, n, 2)
            mu = np.ascontiguousarray(pairs[..., 0].transpose(1, 0, 2))
            nu = np.ascontiguousarray(pairs[..., 1].transpose(1, 0, 2))
            yield InstanceBatch(part, roles, mu, nu, pa[pi], pb[pi], offset + t)
        offset += per_part


def random_batches(spec: InstanceSpec, seed: int, count: int, chunk: int = 8192,
                   start: int = 0) -> Iterator[InstanceBatch]:
    """``count`` seeded random instances, yielded grouped by partition.

    Rows carry their sample number in ``index`` so callers can recover the
    draw order across groups.
    """
    for group in random_chunks(spec, seed, count, chunk, start):
        yield from group


def random_chunks(spec: InstanceSpec, seed: int, count: int, chunk: int = 8192,
                  start: int = 0) -> Iterator[list[InstanceBatch]]:
    rng = np.random.default_rng(seed)
    grid = grid_pairs(spec.step)
    params = spec.param_list()
    pa = np.array([p.alpha for p in params], DTYPE)
    pb = np.array([p.beta for p in params], DTYPE)
    k = spec.set_count
    N = spec.universe_size
    done = 0
    while done < count:
        c = min(chunk, count - done)
        if spec.up_to:
            sizes = rng.integers(1, N + 1, size=c)
        else:
            sizes = np.full(c, N)
        part_idx = np.array([rng.integers(len(spec.partition_list(int(n)))) for n in sizes])
        digits = rng.integers(len(grid), size=(c, k, N))
        pidx = rng.integers(len(params), size=c)
        sample_no = start + done + np.arange(c)
        keys = sizes * 10_000 + part_idx
        group = []
        for key in np.unique(keys):
            rows = np.flatnonzero(keys == key)
            n = int(sizes[rows[0]])
            part = spec.partition_list(n)[int(part_idx[rows[0]])]
            pairs = grid[digits[rows][:, :, :n]]
            mu = np.ascontiguousarray(pairs[..., 0].transpose(1, 0, 2))
            nu = np.ascontiguousarray(pairs[..., 1].transpose(1, 0, 2))
            group.append(InstanceBatch(part, spec.roles, mu, nu, pa[pidx[rows]],
                                       pb[pidx[rows]], sample_no[rows]))
        yield group
        done += c


def check_exhaustive(spec: InstanceSpec) -> None:
    if spec.universe_size > MAX_EXHAUSTIVE_SIZE:
        raise SpaceTooLarge(f"exhaustive mode needs universe_size <= {MAX_EXHAUSTIVE_SIZE}")
    if spec.step < MIN_EXHAUSTIVE_STEP:
        raise SpaceTooLarge("exhaustive mode needs grid step >= 0.25")
    size = spec.space_size()
    if size > MAX_EXHAUSTIVE_INSTANCES:
        raise SpaceTooLarge(
            f"exhaustive space has {size:,} instances (limit {MAX_EXHAUSTIVE_INSTANCES:,})"
        )


def gen_batches(spec: InstanceSpec, mode: str = "exhaustive", seed: int = 0,
                count: int = 10_000) -> Iterator[InstanceBatch]:
    if mode == "exhaustive":
        check_exhaustive(spec)
        return exhaustive_batches(spec.universe_size, spec.set_count, spec.step,
                                  spec.partition_list(), spec.param_list())
    if mode == "random":
        return random_batches(spec, seed, count)
    raise ValueError(f"unknown mode {mode!r}")


def gen_instances(spec: InstanceSpec, mode: str = "exhaustive", seed: int = 0,
                  count: int = 10_000) -> Iterator[Instance]:
    """Stream single instances; deterministic for a given (spec, mode, seed)."""
    if mode == "random":
        for group in random_chunks(spec, seed, count):
            drawn = {int(b.index[i]): b.instance(i) for b in group for i in range(len(b))}
            for key in sorted(drawn):
                yield drawn[key]
        return
    for b in gen_batches(spec, mode, seed, count):
        for i in range(len(b)):
            yield b.instance(i)
