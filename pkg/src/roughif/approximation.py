"""Lower and upper rough approximations of crisp, fuzzy and IF sets.

For IF sets the lower approximation of a block takes the smallest membership
and the largest non-membership found in the block; the upper one the largest
membership and smallest non-membership. ``block_values`` returns those values
per block, ``lower_if``/``upper_if`` copy them back onto every element.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import _kernels
from .core import SCALE, CrispSet, IFSet, Partition, embed_fuzzy, format_degree
from .errors import KindMismatch, UniverseMismatch


class Side(str, enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


def _check(r: Partition, x) -> None:
    if r.universe != x.universe:
        raise UniverseMismatch("set and partition are defined over different universes")


@dataclass(frozen=True, eq=False)
class BlockApproximation:
    partition: Partition
    side: Side
    mu: np.ndarray
    nu: np.ndarray

    def __getitem__(self, j: int) -> tuple[str, str]:
        return format_degree(self.mu[j]), format_degree(self.nu[j])

    def values(self) -> list[tuple[str, str]]:
        return [self[j] for j in range(len(self.partition))]

    def lift(self) -> IFSet:
        labels = self.partition.labels
        return IFSet(self.partition.universe, self.mu[labels], self.nu[labels])


@dataclass(frozen=True)
class RoughIFPair:
    lower: IFSet
    upper: IFSet


def block_values(r: Partition, x: IFSet, side: Side | str) -> BlockApproximation:
    _check(r, x)
    side = Side(side)
    bmu, bnu = _kernels.block_extrema(x.mu, x.nu, r.labels, len(r), side is Side.LOWER)
    return BlockApproximation(r, side, bmu[0], bnu[0])


def lower_if(r: Partition, x: IFSet) -> IFSet:
    return block_values(r, x, Side.LOWER).lift()


def upper_if(r: Partition, x: IFSet) -> IFSet:
    return block_values(r, x, Side.UPPER).lift()


def approximate(r: Partition, x: IFSet) -> RoughIFPair:
    return RoughIFPair(lower_if(r, x), upper_if(r, x))


def _as_fuzzy(r: Partition, m) -> IFSet:
    if isinstance(m, IFSet):
        if not m.is_fuzzy:
            raise KindMismatch("IF set is not a fuzzy set (nu != 1 - mu somewhere)")
        return m
    return embed_fuzzy(m, r.universe)


def lower_fuzzy(r: Partition, m: Mapping[str, object] | IFSet) -> IFSet:
    """Lower approximation of a fuzzy set, returned in its IF embedding."""
    out = lower_if(r, _as_fuzzy(r, m))
    assert np.all(out.mu + out.nu == SCALE)
    return out


def upper_fuzzy(r: Partition, m: Mapping[str, object] | IFSet) -> IFSet:
    out = upper_if(r, _as_fuzzy(r, m))
    assert np.all(out.mu + out.nu == SCALE)
    return out


def lower_crisp(r: Partition, x: CrispSet) -> CrispSet:
    _check(r, x)
    keep = [e for b in r.blocks if set(b) <= x.members for e in b]
    return CrispSet(r.universe, frozenset(keep))


def upper_crisp(r: Partition, x: CrispSet) -> CrispSet:
    _check(r, x)
    keep = [e for b in r.blocks if not x.members.isdisjoint(b) for e in b]
    return CrispSet(r.universe, frozenset(keep))


def boundary_crisp(r: Partition, x: CrispSet) -> CrispSet:
    return CrispSet(r.universe, upper_crisp(r, x).members - lower_crisp(r, x).members)


def is_definable(r: Partition, x: CrispSet) -> bool:
    return boundary_crisp(r, x).is_empty


def batch_approx(mu, nu, r: Partition, side: Side | str):
    """Lifted approximations for a batch of sets shaped ``(batch, n)``."""
    side = Side(side)
    bmu, bnu = _kernels.block_extrema(mu, nu, r.labels, len(r), side is Side.LOWER)
    return bmu[:, r.labels], bnu[:, r.labels]
