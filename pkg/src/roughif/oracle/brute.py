"""Brute-force reference for approximations, cuts and verdicts.

Nothing here touches the block-label array or the compiled kernels: each
element finds its equivalence class by scanning the block list, then folds
its class members one at a time. Work is vectorised only across the batch
axis, so the same code checks one instance or a million.
"""
from __future__ import annotations

import numpy as np

from ..core import CrispSet, CutParams, IFSet, Partition
from ..errors import UniverseMismatch


class BruteForce:
    name = "brute"

    def __init__(self, partition: Partition):
        u = partition.universe
        self.n = len(u)
        self.blocks = [[u.index[e] for e in block] for block in partition.blocks]

    def _members(self, i: int) -> list[int]:
        for block in self.blocks:
            if i in block:
                return block
        raise AssertionError(f"element {i} in no block")

    def approx(self, mu: np.ndarray, nu: np.ndarray, lower: bool):
        out_mu = np.empty_like(mu)
        out_nu = np.empty_like(nu)
        for i in range(self.n):
            members = self._members(i)
            m = mu[:, members[0]].copy()
            v = nu[:, members[0]].copy()
            for j in members[1:]:
                if lower:
                    m = np.where(mu[:, j] < m, mu[:, j], m)
                    v = np.where(nu[:, j] > v, nu[:, j], v)
                else:
                    m = np.where(mu[:, j] > m, mu[:, j], m)
                    v = np.where(nu[:, j] < v, nu[:, j], v)
            out_mu[:, i] = m
            out_nu[:, i] = v
        return out_mu, out_nu

    def cut(self, mu: np.ndarray, nu: np.ndarray, alpha, beta) -> np.ndarray:
        alpha = np.broadcast_to(alpha, mu.shape[:1])
        beta = np.broadcast_to(beta, mu.shape[:1])
        out = np.zeros(mu.shape, dtype=bool)
        for i in range(self.n):
            out[:, i] = (mu[:, i] > alpha) & (nu[:, i] < beta)
        return out

    def cut_approx(self, mu, nu, lower: bool, alpha, beta) -> np.ndarray:
        return self.cut(*self.approx(mu, nu, lower), alpha, beta)

    def verdicts(self, xmu, xnu, ymu, ynu, alpha, beta) -> dict[str, np.ndarray]:
        """Side flags and inclusions for a batch of pairs, from first principles."""
        lx = self.cut_approx(xmu, xnu, True, alpha, beta)
        ly = self.cut_approx(ymu, ynu, True, alpha, beta)
        ux = self.cut_approx(xmu, xnu, False, alpha, beta)
        uy = self.cut_approx(ymu, ynu, False, alpha, beta)
        batch = lx.shape[0]
        flags = {k: np.ones(batch, dtype=bool) for k in (
            "bottom_equal", "top_equal", "bottom_included", "bottom_included_rev",
            "top_included", "top_included_rev")}
        any_lx = np.zeros(batch, dtype=bool)
        any_ly = np.zeros(batch, dtype=bool)
        all_ux = np.ones(batch, dtype=bool)
        all_uy = np.ones(batch, dtype=bool)
        for i in range(self.n):
            flags["bottom_equal"] &= lx[:, i] == ly[:, i]
            flags["top_equal"] &= ux[:, i] == uy[:, i]
            flags["bottom_included"] &= ~lx[:, i] | ly[:, i]
            flags["bottom_included_rev"] &= ~ly[:, i] | lx[:, i]
            flags["top_included"] &= ~ux[:, i] | uy[:, i]
            flags["top_included_rev"] &= ~uy[:, i] | ux[:, i]
            any_lx |= lx[:, i]
            any_ly |= ly[:, i]
            all_ux &= ux[:, i]
            all_uy &= uy[:, i]
        flags["bottom_equivalent"] = any_lx == any_ly
        flags["top_equivalent"] = all_ux == all_uy
        flags["rough_equality"] = flags["bottom_equal"] & flags["top_equal"]
        flags["approximate_rough_equality"] = flags["bottom_equal"] & flags["top_equivalent"]
        flags["approximate_rough_equivalence"] = flags["bottom_equivalent"] & flags["top_equal"]
        flags["rough_equivalence"] = flags["bottom_equivalent"] & flags["top_equivalent"]
        return flags


def _check(r: Partition, *sets: IFSet) -> None:
    for s in sets:
        if s.universe != r.universe:
            raise UniverseMismatch("sets and partition are defined over different universes")


def oracle_approx(r: Partition, x: IFSet, side: str) -> IFSet:
    """Reference lower ("lower"/"bottom") or upper ("upper"/"top") approximation."""
    _check(r, x)
    lower = str(getattr(side, "value", side)) in ("lower", "bottom")
    mu, nu = BruteForce(r).approx(x.mu[None, :], x.nu[None, :], lower)
    return IFSet(r.universe, mu[0], nu[0])


def oracle_cut(a: IFSet, p: CutParams) -> CrispSet:
    part = Partition.discrete(a.universe)
    mask = BruteForce(part).cut(a.mu[None, :], a.nu[None, :], p.alpha, p.beta)[0]
    return CrispSet.from_mask(a.universe, mask)


def oracle_verdict(x: IFSet, y: IFSet, r: Partition, p: CutParams) -> dict[str, bool]:
    _check(r, x, y)
    flags = BruteForce(r).verdicts(x.mu[None, :], x.nu[None, :], y.mu[None, :], y.nu[None, :],
                                   p.alpha, p.beta)
    return {k: bool(v[0]) for k, v in flags.items()}
