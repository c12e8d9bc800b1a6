"""Registry of the algebraic and approximate-equality properties.

Every property is an implication ``hypothesis => conclusion`` evaluated on a
batch of instances. What differs is what we expect of it:

* ``theorem``: claimed to always hold; any row with the hypothesis true and
  the conclusion false is a failure.
* ``non-theorem``: claimed to fail sometimes; such a row is a witness.
* ``conjecture``: further claims (sufficiency conditions outside the core
  list, replacement variants, readings of dangling references). Checked like
  theorems, but reported separately and never gate an exit code.

"Bottom related" means the cuts of the lower approximations are equal or
empty together; "top related" means the cuts of the upper approximations are
equal or both the whole universe or both not. phi and U are the empty and
full IF sets, -X is the complement.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import _kernels
from ..approximation import batch_approx
from ..core import SCALE
from ..errors import UnknownProperty
from .brute import BruteForce

THEOREM = "theorem"
NON_THEOREM = "non-theorem"
CONJECTURE = "conjecture"


class KernelBackend:
    """The library's own batched path (compiled kernels when available)."""

    name = "kernel"

    def __init__(self, partition):
        self.partition = partition

    def approx(self, mu, nu, lower):
        return batch_approx(mu, nu, self.partition, "lower" if lower else "upper")

    def cut(self, mu, nu, alpha, beta):
        return _kernels.cut_mask(mu, nu, alpha, beta)

    def cut_approx(self, mu, nu, lower, alpha, beta):
        p = self.partition
        return _kernels.approx_cut(mu, nu, p.labels, len(p), lower, alpha, beta)


BACKENDS = {"kernel": KernelBackend, "brute": BruteForce}


class S:
    """A batch of IF sets, shaped (batch, n), with memoised cuts."""

    __slots__ = ("mu", "nu", "_cl", "_cu")

    def __init__(self, mu, nu):
        self.mu = mu
        self.nu = nu
        self._cl = None
        self._cu = None

    def __or__(self, other):
        return S(np.maximum(self.mu, other.mu), np.minimum(self.nu, other.nu))

    def __and__(self, other):
        return S(np.minimum(self.mu, other.mu), np.maximum(self.nu, other.nu))

    def __neg__(self):
        return S(self.nu, self.mu)


class Ctx:
    def __init__(self, backend, sets: dict[str, S], alpha, beta):
        self.b = backend
        self.sets = sets
        self.alpha = alpha
        self.beta = beta
        shape = next(iter(sets.values())).mu.shape
        self.size = shape[0]
        self.EMPTY = S(np.zeros(shape, np.int32), np.full(shape, SCALE, np.int32))
        self.FULL = S(np.full(shape, SCALE, np.int32), np.zeros(shape, np.int32))

    def __getitem__(self, role: str) -> S:
        return self.sets[role]

    # approximations and cuts
    def lower(self, s: S) -> S:
        return S(*self.b.approx(s.mu, s.nu, True))

    def upper(self, s: S) -> S:
        return S(*self.b.approx(s.mu, s.nu, False))

    def cut(self, s: S) -> np.ndarray:
        return self.b.cut(s.mu, s.nu, self.alpha, self.beta)

    def cl(self, s: S) -> np.ndarray:
        if s._cl is None:
            s._cl = self.b.cut_approx(s.mu, s.nu, True, self.alpha, self.beta)
        return s._cl

    def cu(self, s: S) -> np.ndarray:
        if s._cu is None:
            s._cu = self.b.cut_approx(s.mu, s.nu, False, self.alpha, self.beta)
        return s._cu

    # relations between two batches of sets
    def beq(self, a, b):
        return (self.cl(a) == self.cl(b)).all(axis=1)

    def teq(self, a, b):
        return (self.cu(a) == self.cu(b)).all(axis=1)

    def bequiv(self, a, b):
        return self.cl(a).any(axis=1) == self.cl(b).any(axis=1)

    def tequiv(self, a, b):
        return self.cu(a).all(axis=1) == self.cu(b).all(axis=1)

    def brel(self, a, b):
        return self.beq(a, b) | self.bequiv(a, b)

    def trel(self, a, b):
        return self.teq(a, b) | self.tequiv(a, b)

    def bincl(self, a, b):
        return (~self.cl(a) | self.cl(b)).all(axis=1)

    def tincl(self, a, b):
        return (~self.cu(a) | self.cu(b)).all(axis=1)

    def bcomp(self, a, b):
        return self.bincl(a, b) | self.bincl(b, a)

    def tcomp(self, a, b):
        return self.tincl(a, b) | self.tincl(b, a)

    def subset(self, a, b):
        return ((a.mu <= b.mu) & (a.nu >= b.nu)).all(axis=1)

    @staticmethod
    def same(m1, m2):
        return (m1 == m2).all(axis=1)

    @staticmethod
    def contains(big, small):
        return (~small | big).all(axis=1)

    # (5.3.x) sides
    def lower_of_union(self, x, y):
        return self.cut(self.lower(x | y)), self.cut(self.lower(x) | self.lower(y))

    def upper_of_intersection(self, x, y):
        return self.cut(self.upper(x & y)), self.cut(self.upper(x) & self.upper(y))

    def eq532(self, x, y):
        return self.same(*self.lower_of_union(x, y))

    def eq533(self, x, y):
        return self.same(*self.upper_of_intersection(x, y))


Pred = Callable[[Ctx], np.ndarray]


def _true(c: Ctx):
    return np.ones(c.size, dtype=bool)


@dataclass(frozen=True)
class Property:
    id: str
    kind: str
    roles: tuple[str, ...]
    statement: str
    hypothesis: Pred
    conclusion: Pred
    group: str = "general"
    reading_dependent: bool = False

    @property
    def arity(self) -> int:
        return len(self.roles)


REGISTRY: dict[str, Property] = {}

XY = ("X", "Y")
XY4 = ("X", "Y", "X'", "Y'")


def _reg(id, kind, roles, statement, hyp, concl, **kw):
    REGISTRY[id] = Property(id, kind, roles, statement, hyp, concl, **kw)


def _lattice(c: Ctx):
    x, y = c["X"], c["Y"]
    be, bv, te, tv = c.beq(x, y), c.bequiv(x, y), c.teq(x, y), c.tequiv(x, y)
    req, areq, arev, rev = be & te, be & tv, bv & te, bv & tv
    return (~req | areq) & (~req | arev) & (~req | rev) & (~areq | rev) & (~arev | rev)


# algebra of approximations under cuts
_reg("5.3.1", THEOREM, XY, "cut of lower(X and Y) equals cut of lower X and lower Y",
     _true, lambda c: c.same(c.cut(c.lower(c["X"] & c["Y"])),
                             c.cut(c.lower(c["X"]) & c.lower(c["Y"]))), group="algebra")
_reg("5.3.2", THEOREM, XY, "cut of lower(X or Y) contains cut of lower X or lower Y",
     _true, lambda c: c.contains(*c.lower_of_union(c["X"], c["Y"])), group="algebra")
_reg("5.3.3", THEOREM, XY, "cut of upper(X and Y) is inside cut of upper X and upper Y",
     _true, lambda c: c.contains(*reversed(c.upper_of_intersection(c["X"], c["Y"]))),
     group="algebra")
_reg("5.3.4", THEOREM, XY, "cut of upper(X or Y) equals cut of upper X or upper Y",
     _true, lambda c: c.same(c.cut(c.upper(c["X"] | c["Y"])),
                             c.cut(c.upper(c["X"]) | c.upper(c["Y"]))), group="algebra")
_reg("5.3.2-strict", NON_THEOREM, XY, "the (5.3.2) inclusion can be strict",
     _true, lambda c: c.eq532(c["X"], c["Y"]), group="algebra")
_reg("5.3.3-strict", NON_THEOREM, XY, "the (5.3.3) inclusion can be strict",
     _true, lambda c: c.eq533(c["X"], c["Y"]), group="algebra")

# general properties
_reg("5.4.1.i", THEOREM, XY, "X and Y bottom related to X, Y => X bottom related to Y",
     lambda c: c.brel(c["X"] & c["Y"], c["X"]) & c.brel(c["X"] & c["Y"], c["Y"]),
     lambda c: c.brel(c["X"], c["Y"]))
_reg("5.4.1.ii-converse", NON_THEOREM, XY,
     "X bottom related to Y need not make X and Y bottom related to both",
     lambda c: c.brel(c["X"], c["Y"]),
     lambda c: c.brel(c["X"] & c["Y"], c["X"]) & c.brel(c["X"] & c["Y"], c["Y"]))
_reg("5.4.1.ii", CONJECTURE, XY,
     "bottom comparable and bottom related => X and Y bottom related to both",
     lambda c: c.brel(c["X"], c["Y"]) & c.bcomp(c["X"], c["Y"]),
     lambda c: c.brel(c["X"] & c["Y"], c["X"]) & c.brel(c["X"] & c["Y"], c["Y"]))
_reg("5.4.1.ii-nn", NON_THEOREM, XY,
     "bottom comparability is not necessary for the converse of 5.4.1(i)",
     lambda c: c.brel(c["X"], c["Y"]) & ~c.bcomp(c["X"], c["Y"]),
     lambda c: ~(c.brel(c["X"] & c["Y"], c["X"]) & c.brel(c["X"] & c["Y"], c["Y"])))
_reg("5.4.2.i", THEOREM, XY, "X or Y top related to X, Y => X top related to Y",
     lambda c: c.trel(c["X"] | c["Y"], c["X"]) & c.trel(c["X"] | c["Y"], c["Y"]),
     lambda c: c.trel(c["X"], c["Y"]))
_reg("5.4.2.ii-converse", NON_THEOREM, XY,
     "X top related to Y need not make X or Y top related to both",
     lambda c: c.trel(c["X"], c["Y"]),
     lambda c: c.trel(c["X"] | c["Y"], c["X"]) & c.trel(c["X"] | c["Y"], c["Y"]))
_reg("5.4.2.ii", CONJECTURE, XY,
     "top comparable and top related => X or Y top related to both",
     lambda c: c.trel(c["X"], c["Y"]) & c.tcomp(c["X"], c["Y"]),
     lambda c: c.trel(c["X"] | c["Y"], c["X"]) & c.trel(c["X"] | c["Y"], c["Y"]))


def _t_pairs(c):
    return c.trel(c["X"], c["X'"]) & c.trel(c["Y"], c["Y'"])


def _b_pairs(c):
    return c.brel(c["X"], c["X'"]) & c.brel(c["Y"], c["Y'"])


def _union_trel(c):
    return c.trel(c["X"] | c["Y"], c["X'"] | c["Y'"])


def _inter_brel(c):
    return c.brel(c["X"] & c["Y"], c["X'"] & c["Y'"])


def _union_brel(c):
    return c.brel(c["X"] | c["Y"], c["X'"] | c["Y'"])


def _inter_trel(c):
    return c.trel(c["X"] & c["Y"], c["X'"] & c["Y'"])


_reg("5.4.3.i", NON_THEOREM, XY4, "top related pairs need not give top related unions",
     _t_pairs, _union_trel)
_reg("5.4.3.ii", THEOREM, XY4,
     "top related pairs, both pairs top comparable => unions top related",
     lambda c: _t_pairs(c) & c.tcomp(c["X"], c["Y"]) & c.tcomp(c["X'"], c["Y'"]), _union_trel)
_reg("5.4.3.ii-nn", NON_THEOREM, XY4,
     "top comparability is not necessary for unions to be top related",
     lambda c: _t_pairs(c) & ~(c.tcomp(c["X"], c["Y"]) & c.tcomp(c["X'"], c["Y'"])),
     lambda c: ~_union_trel(c))
_reg("5.4.4.i", NON_THEOREM, XY4,
     "bottom related pairs need not give bottom related intersections", _b_pairs, _inter_brel)
_reg("5.4.4.ii", THEOREM, XY4,
     "bottom related pairs, both pairs bottom comparable => intersections bottom related",
     lambda c: _b_pairs(c) & c.bcomp(c["X"], c["Y"]) & c.bcomp(c["X'"], c["Y'"]), _inter_brel)
_reg("5.4.4.ii-nn", NON_THEOREM, XY4,
     "bottom comparability is not necessary for intersections to be bottom related",
     lambda c: _b_pairs(c) & ~(c.bcomp(c["X"], c["Y"]) & c.bcomp(c["X'"], c["Y'"])),
     lambda c: ~_inter_brel(c))
_reg("5.4.5.i", NON_THEOREM, XY, "X top related to Y need not make X or -Y top related to U",
     lambda c: c.trel(c["X"], c["Y"]), lambda c: c.trel(c["X"] | -c["Y"], c.FULL))
_reg("5.4.5.ii", CONJECTURE, XY,
     "top related and bottom rough equal => X or -Y top related to U",
     lambda c: c.trel(c["X"], c["Y"]) & c.beq(c["X"], c["Y"]),
     lambda c: c.trel(c["X"] | -c["Y"], c.FULL))
_reg("5.4.6.i", NON_THEOREM, XY,
     "X bottom related to Y need not make X and -Y bottom related to phi",
     lambda c: c.brel(c["X"], c["Y"]), lambda c: c.brel(c["X"] & -c["Y"], c.EMPTY))
_reg("5.4.6.ii", CONJECTURE, XY,
     "bottom related and top rough equal => X and -Y bottom related to phi",
     lambda c: c.brel(c["X"], c["Y"]) & c.teq(c["X"], c["Y"]),
     lambda c: c.brel(c["X"] & -c["Y"], c.EMPTY))
_reg("5.4.7", THEOREM, XY, "X inside Y, Y bottom related to phi => X bottom related to phi",
     lambda c: c.subset(c["X"], c["Y"]) & c.brel(c["Y"], c.EMPTY),
     lambda c: c.brel(c["X"], c.EMPTY))
_reg("5.4.8", THEOREM, XY, "X inside Y, X top related to U => Y top related to U",
     lambda c: c.subset(c["X"], c["Y"]) & c.trel(c["X"], c.FULL),
     lambda c: c.trel(c["Y"], c.FULL))
_reg("5.4.9", THEOREM, XY, "X top related to Y iff -X bottom related to -Y",
     _true, lambda c: c.trel(c["X"], c["Y"]) == c.brel(-c["X"], -c["Y"]))
_reg("5.4.10", THEOREM, XY,
     "X and Y bottom related to phi => X and Y (intersection) bottom related to phi",
     lambda c: c.brel(c["X"], c.EMPTY) & c.brel(c["Y"], c.EMPTY),
     lambda c: c.brel(c["X"] & c["Y"], c.EMPTY))
_reg("5.4.11", THEOREM, XY, "X or Y top related to U => the union top related to U",
     lambda c: c.trel(c["X"], c.FULL) | c.trel(c["Y"], c.FULL),
     lambda c: c.trel(c["X"] | c["Y"], c.FULL))

# replacement properties (bottom and top interchanged)
_reg("5.5.1.i", THEOREM, XY, "X and Y top related to X, Y => X top related to Y",
     lambda c: c.trel(c["X"] & c["Y"], c["X"]) & c.trel(c["X"] & c["Y"], c["Y"]),
     lambda c: c.trel(c["X"], c["Y"]), group="replacement")
_reg("5.5.1.ii-converse", NON_THEOREM, XY,
     "X top related to Y need not make X and Y top related to both",
     lambda c: c.trel(c["X"], c["Y"]),
     lambda c: c.trel(c["X"] & c["Y"], c["X"]) & c.trel(c["X"] & c["Y"], c["Y"]),
     group="replacement")
_reg("5.5.1.ii", CONJECTURE, XY,
     "top related with equality in (5.3.3) => X and Y top related to both",
     lambda c: c.trel(c["X"], c["Y"]) & c.eq533(c["X"], c["Y"]),
     lambda c: c.trel(c["X"] & c["Y"], c["X"]) & c.trel(c["X"] & c["Y"], c["Y"]),
     group="replacement", reading_dependent=True)
_reg("5.5.2.i", THEOREM, XY, "X or Y bottom related to X, Y => X bottom related to Y",
     lambda c: c.brel(c["X"] | c["Y"], c["X"]) & c.brel(c["X"] | c["Y"], c["Y"]),
     lambda c: c.brel(c["X"], c["Y"]), group="replacement")
_reg("5.5.2.ii-converse", NON_THEOREM, XY,
     "X bottom related to Y need not make X or Y bottom related to both",
     lambda c: c.brel(c["X"], c["Y"]),
     lambda c: c.brel(c["X"] | c["Y"], c["X"]) & c.brel(c["X"] | c["Y"], c["Y"]),
     group="replacement")
_reg("5.5.2.ii", CONJECTURE, XY,
     "bottom related with equality in (5.3.2) => X or Y bottom related to both",
     lambda c: c.brel(c["X"], c["Y"]) & c.eq532(c["X"], c["Y"]),
     lambda c: c.brel(c["X"] | c["Y"], c["X"]) & c.brel(c["X"] | c["Y"], c["Y"]),
     group="replacement", reading_dependent=True)
_reg("5.5.3.i", NON_THEOREM, XY4, "bottom related pairs need not give bottom related unions",
     _b_pairs, _union_brel, group="replacement")
_reg("5.5.3.ii", CONJECTURE, XY4,
     "bottom related pairs with equality in (5.3.2) for both => unions bottom related",
     lambda c: _b_pairs(c) & c.eq532(c["X"], c["Y"]) & c.eq532(c["X'"], c["Y'"]),
     _union_brel, group="replacement", reading_dependent=True)
_reg("5.5.4.i", NON_THEOREM, XY4, "top related pairs need not give top related intersections",
     _t_pairs, _inter_trel, group="replacement")
_reg("5.5.4.ii", CONJECTURE, XY4,
     "top related pairs with equality in (5.3.3) for both => intersections top related",
     lambda c: _t_pairs(c) & c.eq533(c["X"], c["Y"]) & c.eq533(c["X'"], c["Y'"]),
     _inter_trel, group="replacement", reading_dependent=True)
_reg("5.5.5", NON_THEOREM, XY,
     "X bottom related to Y need not make X or -Y bottom related to U",
     lambda c: c.brel(c["X"], c["Y"]), lambda c: c.brel(c["X"] | -c["Y"], c.FULL),
     group="replacement")
_reg("5.5.6", NON_THEOREM, XY,
     "X top related to Y need not make X and -Y top related to phi",
     lambda c: c.trel(c["X"], c["Y"]), lambda c: c.trel(c["X"] & -c["Y"], c.EMPTY),
     group="replacement")
_reg("5.4.7r", CONJECTURE, XY, "X inside Y, Y top related to phi => X top related to phi",
     lambda c: c.subset(c["X"], c["Y"]) & c.trel(c["Y"], c.EMPTY),
     lambda c: c.trel(c["X"], c.EMPTY), group="replacement")
_reg("5.4.8r", CONJECTURE, XY, "X inside Y, X bottom related to U => Y bottom related to U",
     lambda c: c.subset(c["X"], c["Y"]) & c.brel(c["X"], c.FULL),
     lambda c: c.brel(c["Y"], c.FULL), group="replacement")
_reg("5.4.9r", CONJECTURE, XY, "X bottom related to Y iff -X top related to -Y",
     _true, lambda c: c.brel(c["X"], c["Y"]) == c.trel(-c["X"], -c["Y"]), group="replacement")
_reg("5.4.10r", CONJECTURE, XY,
     "X and Y top related to phi => their intersection top related to phi",
     lambda c: c.trel(c["X"], c.EMPTY) & c.trel(c["Y"], c.EMPTY),
     lambda c: c.trel(c["X"] & c["Y"], c.EMPTY), group="replacement")
_reg("5.4.11r", CONJECTURE, XY, "X or Y bottom related to U => the union bottom related to U",
     lambda c: c.brel(c["X"], c.FULL) | c.brel(c["Y"], c.FULL),
     lambda c: c.brel(c["X"] | c["Y"], c.FULL), group="replacement")

_reg("lattice", THEOREM, XY, "rough equality implies the other kinds; each implies rough equivalence",
     _true, _lattice, group="lattice")

ALGEBRA = ("5.3.1", "5.3.2", "5.3.3", "5.3.4")
GUARANTEED = ("5.4.1.i", "5.4.2.i", "5.4.3.ii", "5.4.4.ii", "5.4.7", "5.4.8", "5.4.9",
              "5.4.10", "5.4.11", "5.5.1.i", "5.5.2.i")
NON_THEOREMS = ("5.3.2-strict", "5.3.3-strict", "5.4.1.ii-converse", "5.4.3.i", "5.4.4.i",
                "5.4.5.i", "5.4.6.i", "5.5.3.i", "5.5.4.i", "5.5.5", "5.5.6")


def get(property_id: str) -> Property:
    try:
        return REGISTRY[property_id]
    except KeyError:
        raise UnknownProperty(f"unknown property {property_id!r}") from None


def evaluate(prop: Property, batch, backend: str = "brute") -> tuple[np.ndarray, np.ndarray]:
    """Hypothesis and conclusion masks of ``prop`` over an InstanceBatch."""
    missing = [r for r in prop.roles if r not in batch.roles]
    if missing:
        raise ValueError(f"property {prop.id} needs roles {missing}")
    be = BACKENDS[backend](batch.partition)
    sets = {r: S(batch.mu[k], batch.nu[k]) for k, r in enumerate(batch.roles)}
    c = Ctx(be, sets, batch.alpha, batch.beta)
    hyp = np.asarray(prop.hypothesis(c), dtype=bool)
    concl = np.asarray(prop.conclusion(c), dtype=bool)
    return hyp, concl
