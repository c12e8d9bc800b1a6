"""Universe, partition and (intuitionistic) fuzzy set algebra on exact degrees.

Degrees are stored as integer ticks of 1/10000, so 0.2 is ``2000``. Every
operation the library performs on degrees (min, max, 1 - x, comparisons) is
closed over that grid; nothing is ever rounded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import MissingElement, UniverseMismatch, ValidationError, CutParamsOutOfJ

SCALE = 10_000
DTYPE = np.int32


def to_ticks(value) -> int:
    """Convert a degree given as str, Decimal, int or float to integer ticks.

    Floats go through ``repr`` so ``0.3`` means the decimal 0.3. More than four
    fractional digits is an error, never a rounding.
    """
    if isinstance(value, (bool, np.bool_)):
        raise ValidationError(f"degree must be numeric, got {value!r}")
    if isinstance(value, (int, np.integer)):
        d = Decimal(int(value))
    elif isinstance(value, float):
        d = Decimal(repr(value))
    elif isinstance(value, Decimal):
        d = value
    elif isinstance(value, str):
        try:
            d = Decimal(value.strip())
        except InvalidOperation:
            raise ValidationError(f"not a decimal degree: {value!r}") from None
    else:
        raise ValidationError(f"unsupported degree type: {type(value).__name__}")
    if not d.is_finite():
        raise ValidationError(f"degree must be finite: {value!r}")
    scaled = d * SCALE
    if scaled != scaled.to_integral_value():
        raise ValidationError(f"degree {value!r} has more than 4 fractional digits")
    ticks = int(scaled)
    if not 0 <= ticks <= SCALE:
        raise ValidationError(f"degree {value!r} outside [0, 1]")
    return ticks


def to_decimal(ticks: int) -> Decimal:
    return (Decimal(int(ticks)) / SCALE).normalize() if ticks else Decimal(0)


def format_degree(ticks: int) -> str:
    """Shortest decimal rendering: 2000 -> '0.2', 10000 -> '1', 0 -> '0'."""
    d = to_decimal(ticks)
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s


@dataclass(frozen=True)
class Universe:
    elements: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise ValidationError("universe must contain at least one element")
        for e in elements:
            if not isinstance(e, str) or not e:
                raise ValidationError(f"element ids must be non-empty strings, got {e!r}")
        if len(set(elements)) != len(elements):
            dupes = sorted({e for e in elements if elements.count(e) > 1})
            raise ValidationError(f"duplicate element ids: {dupes}")
        object.__setattr__(self, "index", {e: i for i, e in enumerate(elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e) -> bool:
        return e in self.index

    @classmethod
    def of_size(cls, n: int) -> "Universe":
        return cls(tuple(f"x{i}" for i in range(1, n + 1)))


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=DTYPE)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Partition:
    """Equivalence classes of a universe; ``labels[i]`` is the block of element i."""

    universe: Universe
    blocks: tuple[tuple[str, ...], ...]
    labels: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        blocks = tuple(tuple(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        labels = np.full(len(self.universe), -1, dtype=DTYPE)
        for j, block in enumerate(blocks):
            if not block:
                raise ValidationError(f"block {j} is empty")
            for e in block:
                if e not in self.universe:
                    raise ValidationError(f"block {j} names unknown element {e!r}")
                i = self.universe.index[e]
                if labels[i] != -1:
                    raise ValidationError(f"element {e!r} appears in more than one block")
                labels[i] = j
        missing = [self.universe.elements[i] for i in np.flatnonzero(labels < 0)]
        if missing:
            raise ValidationError(f"blocks do not cover the universe; missing {missing}")
        object.__setattr__(self, "labels", _readonly(labels))

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.universe == other.universe and {frozenset(b) for b in self.blocks} == {
            frozenset(b) for b in other.blocks
        }

    def __hash__(self):
        return hash((self.universe, frozenset(frozenset(b) for b in self.blocks)))

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, element: str) -> tuple[str, ...]:
        return self.blocks[int(self.labels[self.universe.index[element]])]

    @classmethod
    def from_labels(cls, universe: Universe, labels: Sequence[int]) -> "Partition":
        """Blocks ordered by first appearance of their label."""
        order: dict[int, list[str]] = {}
        for e, lab in zip(universe.elements, labels):
            order.setdefault(int(lab), []).append(e)
        return cls(universe, tuple(tuple(b) for b in order.values()))

    @classmethod
    def discrete(cls, universe: Universe) -> "Partition":
        return cls(universe, tuple((e,) for e in universe))

    @classmethod
    def indiscrete(cls, universe: Universe) -> "Partition":
        return cls(universe, (universe.elements,))


@dataclass(frozen=True, eq=False)
class CrispSet:
    universe: Universe
    members: frozenset[str]

    def __post_init__(self):
        members = frozenset(self.members)
        unknown = sorted(members - set(self.universe.elements))
        if unknown:
            raise ValidationError(f"elements not in universe: {unknown}")
        object.__setattr__(self, "members", members)

    def __eq__(self, other):
        if isinstance(other, CrispSet):
            return self.universe == other.universe and self.members == other.members
        if isinstance(other, (set, frozenset)):
            return self.members == other
        return NotImplemented

    def __hash__(self):
        return hash((self.universe, self.members))

    def __contains__(self, e) -> bool:
        return e in self.members

    def __iter__(self):
        # universe order, not hash order
        return (e for e in self.universe if e in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "CrispSet") -> bool:
        return self.members <= other.members

    def __repr__(self):
        return "{" + ", ".join(self) + "}"

    @property
    def is_empty(self) -> bool:
        return not self.members

    @property
    def is_full(self) -> bool:
        return len(self.members) == len(self.universe)

    def sorted(self) -> list[str]:
        return list(self)

    @classmethod
    def from_mask(cls, universe: Universe, mask) -> "CrispSet":
        return cls(universe, frozenset(e for e, m in zip(universe.elements, mask) if m))


@dataclass(frozen=True, eq=False)
class IFSet:
    """Total map element -> (membership, non-membership), both in ticks.

    ``mu`` and ``nu`` are read-only int arrays in universe order.
    """

    universe: Universe
    mu: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        mu, nu = _readonly(self.mu), _readonly(self.nu)
        n = len(self.universe)
        if mu.shape != (n,) or nu.shape != (n,):
            raise ValidationError(f"degree arrays must have shape ({n},)")
        if (mu < 0).any() or (nu < 0).any() or (mu > SCALE).any() or (nu > SCALE).any():
            raise ValidationError("degrees must lie in [0, 1]")
        bad = np.flatnonzero(mu + nu > SCALE)
        if bad.size:
            e = self.universe.elements[bad[0]]
            raise ValidationError(
                f"membership + non-membership exceeds 1 at {e!r} "
                f"({format_degree(mu[bad[0]])} + {format_degree(nu[bad[0]])})"
            )
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @classmethod
    def from_mapping(cls, universe: Universe, degrees: Mapping[str, Sequence]) -> "IFSet":
        unknown = sorted(set(degrees) - set(universe.elements))
        if unknown:
            raise ValidationError(f"elements not in universe: {unknown}")
        mu = np.empty(len(universe), dtype=DTYPE)
        nu = np.empty(len(universe), dtype=DTYPE)
        for i, e in enumerate(universe):
            if e not in degrees:
                raise MissingElement(f"no degrees given for element {e!r}")
            pair = degrees[e]
            if len(pair) != 2:
                raise ValidationError(f"element {e!r}: expected (mu, nu), got {pair!r}")
            mu[i], nu[i] = to_ticks(pair[0]), to_ticks(pair[1])
        return cls(universe, mu, nu)

    @classmethod
    def empty(cls, universe: Universe) -> "IFSet":
        n = len(universe)
        return cls(universe, np.zeros(n, DTYPE), np.full(n, SCALE, DTYPE))

    @classmethod
    def full(cls, universe: Universe) -> "IFSet":
        n = len(universe)
        return cls(universe, np.full(n, SCALE, DTYPE), np.zeros(n, DTYPE))

    def __getitem__(self, e: str) -> tuple[Decimal, Decimal]:
        i = self.universe.index[e]
        return to_decimal(self.mu[i]), to_decimal(self.nu[i])

    def ticks(self, e: str) -> tuple[int, int]:
        i = self.universe.index[e]
        return int(self.mu[i]), int(self.nu[i])

    def items(self):
        for e in self.universe:
            yield e, self[e]

    def to_mapping(self) -> dict[str, tuple[str, str]]:
        return {
            e: (format_degree(m), format_degree(v))
            for e, m, v in zip(self.universe.elements, self.mu, self.nu)
        }

    def __eq__(self, other):
        if not isinstance(other, IFSet):
            return NotImplemented
        return (
            self.universe == other.universe
            and np.array_equal(self.mu, other.mu)
            and np.array_equal(self.nu, other.nu)
        )

    def __hash__(self):
        return hash((self.universe, self.mu.tobytes(), self.nu.tobytes()))

    def __repr__(self):
        body = ", ".join(f"({e}, {m}, {v})" for e, (m, v) in self.to_mapping().items())
        return "{" + body + "}"

    @property
    def is_fuzzy(self) -> bool:
        return bool(np.all(self.mu + self.nu == SCALE))

    @property
    def is_crisp(self) -> bool:
        return self.is_fuzzy and bool(np.all((self.mu == 0) | (self.mu == SCALE)))

    def __or__(self, other):
        return union_if(self, other)

    def __and__(self, other):
        return intersect_if(self, other)

    def __invert__(self):
        return complement_if(self)

    def __le__(self, other):
        return subset_if(self, other)


@dataclass(frozen=True)
class CutParams:
    """An (alpha, beta) pair from J, in ticks."""

    alpha: int
    beta: int

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= v <= SCALE:
                raise ValidationError(f"{name} must be a tick count in [0, {SCALE}], got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.alpha + self.beta > SCALE:
            raise CutParamsOutOfJ(
                f"alpha+beta exceeds 1 ({format_degree(self.alpha)} + {format_degree(self.beta)})"
            )

    @classmethod
    def of(cls, alpha, beta) -> "CutParams":
        return cls(to_ticks(alpha), to_ticks(beta))

    def __str__(self):
        return f"({format_degree(self.alpha)}, {format_degree(self.beta)})"


def _same_universe(a, b) -> None:
    if a.universe != b.universe:
        raise UniverseMismatch("operands are defined over different universes")


def crisp(universe: Universe, members: Iterable[str]) -> CrispSet:
    return CrispSet(universe, frozenset(members))


def embed_crisp(s: CrispSet) -> IFSet:
    inside = np.array([e in s.members for e in s.universe], dtype=bool)
    mu = np.where(inside, SCALE, 0)
    return IFSet(s.universe, mu, SCALE - mu)


def embed_fuzzy(m: Mapping[str, object], u: Universe) -> IFSet:
    """Fuzzy set as an IF set with non-membership 1 - membership."""
    mu = np.empty(len(u), dtype=DTYPE)
    for i, e in enumerate(u):
        if e not in m:
            raise MissingElement(f"no membership given for element {e!r}")
        mu[i] = to_ticks(m[e])
    unknown = sorted(set(m) - set(u.elements))
    if unknown:
        raise ValidationError(f"elements not in universe: {unknown}")
    return IFSet(u, mu, SCALE - mu)


def complement_if(x: IFSet) -> IFSet:
    return IFSet(x.universe, x.nu, x.mu)


def union_if(x: IFSet, y: IFSet) -> IFSet:
    _same_universe(x, y)
    return IFSet(x.universe, np.maximum(x.mu, y.mu), np.minimum(x.nu, y.nu))


def intersect_if(x: IFSet, y: IFSet) -> IFSet:
    _same_universe(x, y)
    return IFSet(x.universe, np.minimum(x.mu, y.mu), np.maximum(x.nu, y.nu))


def subset_if(x: IFSet, y: IFSet) -> bool:
    _same_universe(x, y)
    return bool(np.all(x.mu <= y.mu) and np.all(x.nu >= y.nu))
