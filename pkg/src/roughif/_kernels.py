"""Batched integer kernels for block-wise approximation and cuts.

Arrays are int32 ticks shaped ``(batch, n)``; ``labels`` maps each of the n
elements to its block. Each kernel has a numba implementation and a plain
numpy one with identical results. Set ``ROUGHIF_DISABLE_NUMBA=1`` to force
the numpy path (also used automatically when numba is not importable).
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("ROUGHIF_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised with the env flag in CI
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _np_block_extrema(mu, nu, labels, nblocks, lower):
    """Per-block (min mu, max nu) if ``lower`` else (max mu, min nu)."""
    order = np.argsort(labels, kind="stable")
    sorted_labels = labels[order]
    starts = np.searchsorted(sorted_labels, np.arange(nblocks))
    mu_s = mu[:, order]
    nu_s = nu[:, order]
    if lower:
        return (np.minimum.reduceat(mu_s, starts, axis=1),
                np.maximum.reduceat(nu_s, starts, axis=1))
    return (np.maximum.reduceat(mu_s, starts, axis=1),
            np.minimum.reduceat(nu_s, starts, axis=1))


def _np_approx_cut(mu, nu, labels, nblocks, lower, alpha, beta):
    bmu, bnu = _np_block_extrema(mu, nu, labels, nblocks, lower)
    inside = (bmu > alpha[:, None]) & (bnu < beta[:, None])
    return inside[:, labels]


if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_block_extrema(mu, nu, labels, nblocks, lower):
        batch, n = mu.shape
        bmu = np.empty((batch, nblocks), dtype=mu.dtype)
        bnu = np.empty((batch, nblocks), dtype=nu.dtype)
        for b in range(batch):
            seen = np.zeros(nblocks, dtype=np.bool_)
            for i in range(n):
                j = labels[i]
                m = mu[b, i]
                v = nu[b, i]
                if not seen[j]:
                    bmu[b, j] = m
                    bnu[b, j] = v
                    seen[j] = True
                elif lower:
                    if m < bmu[b, j]:
                        bmu[b, j] = m
                    if v > bnu[b, j]:
                        bnu[b, j] = v
                else:
                    if m > bmu[b, j]:
                        bmu[b, j] = m
                    if v < bnu[b, j]:
                        bnu[b, j] = v
        return bmu, bnu

    @njit(cache=True)
    def _nb_approx_cut(mu, nu, labels, nblocks, lower, alpha, beta):
        bmu, bnu = _nb_block_extrema(mu, nu, labels, nblocks, lower)
        batch, n = mu.shape
        out = np.empty((batch, n), dtype=np.bool_)
        for b in range(batch):
            a = alpha[b]
            c = beta[b]
            for i in range(n):
                j = labels[i]
                out[b, i] = bmu[b, j] > a and bnu[b, j] < c
        return out

    _block_extrema_impl = _nb_block_extrema
    _approx_cut_impl = _nb_approx_cut
else:
    _block_extrema_impl = _np_block_extrema
    _approx_cut_impl = _np_approx_cut


def _prep(mu, nu, labels):
    mu = np.ascontiguousarray(mu, dtype=np.int32)
    nu = np.ascontiguousarray(nu, dtype=np.int32)
    if mu.ndim == 1:
        mu, nu = mu[None, :], nu[None, :]
    return mu, nu, np.ascontiguousarray(labels, dtype=np.int32)


def block_extrema(mu, nu, labels, nblocks: int, lower: bool):
    mu, nu, labels = _prep(mu, nu, labels)
    return _block_extrema_impl(mu, nu, labels, int(nblocks), bool(lower))


def approx_cut(mu, nu, labels, nblocks: int, lower: bool, alpha, beta):
    """Membership mask of the (alpha, beta)-cut of the lifted approximation."""
    mu, nu, labels = _prep(mu, nu, labels)
    batch = mu.shape[0]
    alpha = np.ascontiguousarray(np.broadcast_to(alpha, (batch,)), dtype=np.int32)
    beta = np.ascontiguousarray(np.broadcast_to(beta, (batch,)), dtype=np.int32)
    return _approx_cut_impl(mu, nu, labels, int(nblocks), bool(lower), alpha, beta)


def cut_mask(mu, nu, alpha, beta):
    """Elements with mu > alpha and nu < beta, both strict."""
    mu = np.asarray(mu)
    alpha = np.asarray(alpha)
    beta = np.asarray(beta)
    if mu.ndim == 2:
        alpha = np.broadcast_to(alpha, mu.shape[:1])[:, None]
        beta = np.broadcast_to(beta, mu.shape[:1])[:, None]
    return (mu > alpha) & (np.asarray(nu) < beta)
