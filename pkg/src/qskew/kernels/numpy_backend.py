"""Vectorized numpy implementation of the pair-sum kernels.

Both backends share these contracts. Inputs are stacked eigensystem data:
``lams`` (T, n) strictly positive ascending eigenvalues, ``a`` and ``b``
(T, n, n) complex Hermitian matrices expressed in that eigenbasis and
already centered. Callers chunk T to bound the (G, T, n, n) temporaries.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def power_pair_sums(lams, alphas, a, b):
    """Per-alpha spectral pair sums.

    Returns (ia, sa, ib, sb, cross), each (G, T):
      ia[g,t]    = sum_{j<k} (l_j^a - l_k^a)(l_j^(1-a) - l_k^(1-a)) |a_jk|^2
      sa[g,t]    = sum_{j,k} l_j^a l_k^(1-a) |a_jk|^2
      cross[g,t] = sum_{j,k} l_j^a l_k^(1-a) a_jk b_kj

    ia/ib are sums of non-negative terms, so they stay >= 0 in floating
    point; the skew information is ia itself and J = V + sa.
    """
    alphas = np.asarray(alphas, dtype=float)
    p = lams[None, :, :] ** alphas[:, None, None]
    q = lams[None, :, :] ** (1.0 - alphas)[:, None, None]
    aa = a.real**2 + a.imag**2
    bb = b.real**2 + b.imag**2
    ab = a * np.swapaxes(b, -1, -2)
    r = p[..., :, None] * q[..., None, :]
    sa = np.einsum("gtjk,tjk->gt", r, aa)
    sb = np.einsum("gtjk,tjk->gt", r, bb)
    cross = np.einsum("gtjk,tjk->gt", r, ab)
    dpq = (p[..., :, None] - p[..., None, :]) * (q[..., :, None] - q[..., None, :])
    ia = 0.5 * np.einsum("gtjk,tjk->gt", dpq, aa)
    ib = 0.5 * np.einsum("gtjk,tjk->gt", dpq, bb)
    return ia, sa, ib, sb, cross


def weighted_pair_sums(w, a, b):
    """Weighted pair sums for (F, T, n, n) real weight stacks.

    Returns (wa, wb, wab), each (F, T):
      wa[f,t]  = sum_{j,k} w[f,t,j,k] |a_jk|^2
      wab[f,t] = sum_{j,k} w[f,t,j,k] a_jk b_kj
    """
    aa = a.real**2 + a.imag**2
    bb = b.real**2 + b.imag**2
    ab = a * np.swapaxes(b, -1, -2)
    wa = np.einsum("ftjk,tjk->ft", w, aa)
    wb = np.einsum("ftjk,tjk->ft", w, bb)
    wab = np.einsum("ftjk,tjk->ft", w, ab)
    return wa, wb, wab
