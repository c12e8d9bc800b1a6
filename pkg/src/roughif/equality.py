"""(alpha, beta)-cuts and the four leveled approximate equalities.

Both cut inequalities are strict: an element whose membership equals alpha,
or whose non-membership equals beta, is left out of the cut.

Bottom comparisons look at cuts of lower approximations, top comparisons at
cuts of upper approximations. Per side, ``equal`` means the two cuts coincide
and ``equivalent`` means they are empty together (bottom) or the whole
universe together (top). The four kinds combine one flag from each side:

    ============================  ===========  ===========
    kind                          bottom       top
    ============================  ===========  ===========
    rough equality                equal        equal
    approximate rough equality    equal        equivalent
    approximate rough equivalence equivalent   equal
    rough equivalence             equivalent   equivalent
    ============================  ===========  ===========
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import _kernels
from .approximation import lower_crisp, lower_if, upper_crisp, upper_if, _as_fuzzy
from .core import CrispSet, CutParams, IFSet, Partition, Universe, embed_fuzzy, to_ticks
from .errors import UniverseMismatch


class Side(str, enum.Enum):
    BOTTOM = "bottom"
    TOP = "top"


class Mode(str, enum.Enum):
    BOTTOM = "bottom"
    TOP = "top"
    FULL = "full"


class Kind(str, enum.Enum):
    ROUGH_EQUALITY = "rough_equality"
    APPROXIMATE_ROUGH_EQUALITY = "approximate_rough_equality"
    APPROXIMATE_ROUGH_EQUIVALENCE = "approximate_rough_equivalence"
    ROUGH_EQUIVALENCE = "rough_equivalence"


KIND_LABELS = {
    Kind.ROUGH_EQUALITY: "Rough equality",
    Kind.APPROXIMATE_ROUGH_EQUALITY: "Approximate rough equality",
    Kind.APPROXIMATE_ROUGH_EQUIVALENCE: "Approximate rough equivalence",
    Kind.ROUGH_EQUIVALENCE: "Rough equivalence",
}


@dataclass(frozen=True)
class SideVerdict:
    side: Side
    equal: bool
    equivalent: bool
    left_cut: CrispSet
    right_cut: CrispSet


@dataclass(frozen=True)
class EqualityVerdict:
    bottom: SideVerdict
    top: SideVerdict

    @property
    def kinds(self) -> dict[Kind, bool]:
        return kinds_from_flags(
            self.bottom.equal, self.bottom.equivalent, self.top.equal, self.top.equivalent
        )

    def __getitem__(self, kind: Kind | str) -> bool:
        return self.kinds[Kind(kind)]

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        k = self.kinds
        return tuple(k[kind] for kind in Kind)


def kinds_from_flags(b_equal, b_equiv, t_equal, t_equiv) -> dict[Kind, object]:
    # works elementwise on numpy bool arrays too
    return {
        Kind.ROUGH_EQUALITY: b_equal & t_equal,
        Kind.APPROXIMATE_ROUGH_EQUALITY: b_equal & t_equiv,
        Kind.APPROXIMATE_ROUGH_EQUIVALENCE: b_equiv & t_equal,
        Kind.ROUGH_EQUIVALENCE: b_equiv & t_equiv,
    }


def _check(r: Partition, *sets) -> None:
    for s in sets:
        if s.universe != r.universe:
            raise UniverseMismatch("sets and partition are defined over different universes")


def cut(a: IFSet, p: CutParams) -> CrispSet:
    return CrispSet.from_mask(a.universe, _kernels.cut_mask(a.mu, a.nu, p.alpha, p.beta))


def alpha_cut(a: Mapping[str, object] | IFSet, alpha, universe: Universe | None = None) -> CrispSet:
    """Elements of a fuzzy set with membership strictly greater than ``alpha``.

    A plain mapping is read over ``universe`` (default: its own key order).
    """
    if not isinstance(a, IFSet):
        a = embed_fuzzy(a, universe if universe is not None else Universe(tuple(a)))
    t = alpha if isinstance(alpha, int) else to_ticks(alpha)
    return CrispSet.from_mask(a.universe, a.mu > t)


def _approx(r: Partition, x: IFSet, side: Side) -> IFSet:
    return lower_if(r, x) if side is Side.BOTTOM else upper_if(r, x)


def side_from_cuts(side: Side, left: CrispSet, right: CrispSet) -> SideVerdict:
    if side is Side.BOTTOM:
        equivalent = left.is_empty == right.is_empty
    else:
        equivalent = left.is_full == right.is_full
    return SideVerdict(side, left == right, equivalent, left, right)


def side_verdict(x: IFSet, y: IFSet, r: Partition, p: CutParams, side: Side | str) -> SideVerdict:
    _check(r, x, y)
    side = Side(side)
    return side_from_cuts(side, cut(_approx(r, x, side), p), cut(_approx(r, y, side), p))


def classify(x: IFSet, y: IFSet, r: Partition, p: CutParams) -> EqualityVerdict:
    return EqualityVerdict(
        side_verdict(x, y, r, p, Side.BOTTOM), side_verdict(x, y, r, p, Side.TOP)
    )


def included(x: IFSet, y: IFSet, r: Partition, p: CutParams, mode: Mode | str = Mode.FULL) -> bool:
    _check(r, x, y)
    mode = Mode(mode)
    if mode is Mode.FULL:
        return included(x, y, r, p, Mode.BOTTOM) and included(x, y, r, p, Mode.TOP)
    side = Side(mode.value)
    return cut(_approx(r, x, side), p) <= cut(_approx(r, y, side), p)


def comparable(x: IFSet, y: IFSet, r: Partition, p: CutParams, mode: Mode | str = Mode.FULL) -> bool:
    mode = Mode(mode)
    if mode is Mode.FULL:
        return comparable(x, y, r, p, Mode.BOTTOM) and comparable(x, y, r, p, Mode.TOP)
    return included(x, y, r, p, mode) or included(y, x, r, p, mode)


def classify_fuzzy(x, y, r: Partition, alpha) -> EqualityVerdict:
    """Fuzzy classification from alpha-cuts of the lifted approximations."""
    fx, fy = _as_fuzzy(r, x), _as_fuzzy(r, y)
    sides = []
    for side in Side:
        left = alpha_cut(_approx(r, fx, side), alpha)
        right = alpha_cut(_approx(r, fy, side), alpha)
        sides.append(side_from_cuts(side, left, right))
    return EqualityVerdict(*sides)


def classify_crisp(x: CrispSet, y: CrispSet, r: Partition) -> EqualityVerdict:
    """Crisp classification straight from lower/upper approximations of sets."""
    _check(r, x, y)
    return EqualityVerdict(
        side_from_cuts(Side.BOTTOM, lower_crisp(r, x), lower_crisp(r, y)),
        side_from_cuts(Side.TOP, upper_crisp(r, x), upper_crisp(r, y)),
    )


# batched forms -------------------------------------------------------------

def cut_batch(mu, nu, r: Partition, side: Side | str, alpha, beta) -> np.ndarray:
    """Cut masks ``(batch, n)`` of lower (bottom) or upper (top) approximations."""
    side = Side(side)
    return _kernels.approx_cut(mu, nu, r.labels, len(r), side is Side.BOTTOM, alpha, beta)


@dataclass(frozen=True)
class BatchVerdict:
    bottom_equal: np.ndarray
    bottom_equivalent: np.ndarray
    top_equal: np.ndarray
    top_equivalent: np.ndarray
    bottom_included: np.ndarray
    bottom_included_rev: np.ndarray
    top_included: np.ndarray
    top_included_rev: np.ndarray

    @property
    def kinds(self) -> dict[Kind, np.ndarray]:
        return kinds_from_flags(
            self.bottom_equal, self.bottom_equivalent, self.top_equal, self.top_equivalent
        )


def classify_batch(xmu, xnu, ymu, ynu, r: Partition, alpha, beta) -> BatchVerdict:
    """Vectorised ``classify``/``included`` over a batch sharing one partition."""
    lx = cut_batch(xmu, xnu, r, Side.BOTTOM, alpha, beta)
    ly = cut_batch(ymu, ynu, r, Side.BOTTOM, alpha, beta)
    ux = cut_batch(xmu, xnu, r, Side.TOP, alpha, beta)
    uy = cut_batch(ymu, ynu, r, Side.TOP, alpha, beta)
    return BatchVerdict(
        bottom_equal=(lx == ly).all(axis=1),
        bottom_equivalent=lx.any(axis=1) == ly.any(axis=1),
        top_equal=(ux == uy).all(axis=1),
        top_equivalent=ux.all(axis=1) == uy.all(axis=1),
        bottom_included=(~lx | ly).all(axis=1),
        bottom_included_rev=(~ly | lx).all(axis=1),
        top_included=(~ux | uy).all(axis=1),
        top_included_rev=(~uy | ux).all(axis=1),
    )
