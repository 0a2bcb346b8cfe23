"""Metric-adjusted skew information and correlation built from matrix means.

For an invertible state rho with eigensystem {l_j, |phi_j>} and a catalog
function f, the mean superoperator pairing and the monotone metric are

    C^g(A, B)    = sum_{j,k} m_g(l_j, l_k) a_jk b_kj
    <X, Y>_{rho,f} = sum_{j,k} conj(x_jk) y_jk / m_f(l_j, l_k)

with matrix entries taken in the eigenbasis. For regular f the adjusted
correlation measure is Corr^f(A, B) = (f(0)/2) <i[rho,A], i[rho,B]>_{rho,f},
with the equivalent routes

    pairing:   Re Tr[rho A0 B0] - C^ftilde(A0, B0)
    spectral:  sum_{j,k} w_jk a_jk b_kj,   w_jk = f(0)(l_j - l_k)^2 / (2 m_f)

and the derived quartet I^f = Corr^f(A, A), J^f = V + C^ftilde(A0),
U^f = sqrt(V^2 - (V - I^f)^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import diagnostics
from .linalg import DensityMatrix, Observable, _check_same_dim, as_matrix, center, to_eigenbasis
from .monotone import MonotoneFunction
from .skew import variance


def pair_weights(f: MonotoneFunction, lams: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalue-pair weights (w, mtilde) for a regular f.

    ``w[..., j, k] = f(0)(l_j - l_k)^2 / (2 m_f(l_j, l_k))`` is the spectral
    weight of Corr^f and I^f (non-negative term by term), and ``mtilde`` is
    the matching mean of ftilde, ``(l_j + l_k)/2 - w``. Accepts stacked
    eigenvalue arrays of shape (..., n).
    """
    if not f.regular:
        raise ValueError(f"{f.label()} is not regular")
    x = lams[..., :, None]
    y = lams[..., None, :]
    w = f.f0 * (x - y) ** 2 / (2.0 * f.mean(x, y))
    return w, (x + y) / 2.0 - w


def _eigen_data(rho: DensityMatrix, *observables: Observable):
    rho.require_strictly_positive()
    dec = rho.spectrum
    rotated = [to_eigenbasis(center(rho, o), dec) for o in observables]
    return dec.eigenvalues, rotated


def mean_pairing(rho: DensityMatrix, g, a, b) -> complex:
    """C^g(A, B) = Tr[m_g(L_rho, R_rho)(A) B] for a mean carrier g.

    ``g`` is a MonotoneFunction or a TildeTransform; A and B are matrices
    (not necessarily Hermitian). Requires a strictly positive state.
    """
    rho.require_strictly_positive()
    _check_same_dim(rho, a)
    _check_same_dim(a, b)
    dec = rho.spectrum
    lam = dec.eigenvalues
    am = to_eigenbasis(as_matrix(a), dec)
    bm = to_eigenbasis(as_matrix(b), dec)
    m = g.mean(lam[:, None], lam[None, :])
    return complex(np.sum(m * am * bm.T))


def monotone_metric(rho: DensityMatrix, f: MonotoneFunction, x, y) -> complex:
    """<X, Y>_{rho,f}, the inverse-mean quadratic form; positive definite."""
    rho.require_strictly_positive()
    _check_same_dim(rho, x)
    _check_same_dim(x, y)
    dec = rho.spectrum
    lam = dec.eigenvalues
    xm = to_eigenbasis(as_matrix(x), dec)
    ym = to_eigenbasis(as_matrix(y), dec)
    m = f.mean(lam[:, None], lam[None, :])
    return complex(np.sum(np.conj(xm) * ym / m))


def corr_f(
    rho: DensityMatrix,
    f: MonotoneFunction,
    a: Observable,
    b: Observable,
    *,
    method: str = "metric",
    allow_nonregular: bool = False,
) -> complex:
    """Metric adjusted correlation measure Corr^f(A, B), real for observables.

    ``method`` selects among the three equivalent routes ("metric",
    "pairing", "spectral"); they agree to rounding and the choice exists for
    cross-checking. A non-regular f has f(0) = 0 and makes the measure
    vanish identically; that degenerate case is refused unless
    ``allow_nonregular=True``, which returns 0 and records a diagnostic.
    """
    _check_same_dim(a, b)
    if not f.regular:
        if allow_nonregular:
            diagnostics.record("corr_f_nonregular", 0.0)
            return 0.0 + 0.0j
        raise ValueError(f"{f.label()} is not regular; Corr^f degenerates to 0")
    if method == "metric":
        rm = rho.mat
        ca = 1j * (rm @ a.mat - a.mat @ rm)
        cb = 1j * (rm @ b.mat - b.mat @ rm)
        return (f.f0 / 2.0) * monotone_metric(rho, f, ca, cb)
    if method == "pairing":
        a0 = center(rho, a)
        b0 = center(rho, b)
        cov = complex(np.trace(rho.mat @ a0.mat @ b0.mat))
        return 0.5 * (cov + np.conj(cov)) - mean_pairing(rho, f.tilde, a0, b0)
    if method == "spectral":
        lam, (am, bm) = _eigen_data(rho, a, b)
        w, _ = pair_weights(f, lam)
        return complex(np.sum(w * am * bm.T))
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class MetricQuantities:
    """The quartet (I^f, J^f, U^f, C^ftilde(A0)) for one (rho, A, f)."""

    i_f: float
    j_f: float
    u_f: float
    c_tilde: float


def metric_quantities(rho: DensityMatrix, f: MonotoneFunction, a: Observable) -> MetricQuantities:
    """I^f, J^f, U^f and the pairing term for one observable.

    I^f comes from the metric route and c_tilde from the pairing route, so
    the identity I^f = V - c_tilde genuinely crosses two computation paths.
    """
    if not f.regular:
        raise ValueError(f"{f.label()} is not regular")
    v = variance(rho, a)
    i_f = corr_f(rho, f, a, a, method="metric").real
    i_f = diagnostics.clamp_nonnegative(i_f, "metric_skew_information")
    a0 = center(rho, a)
    c_tilde = mean_pairing(rho, f.tilde, a0, a0).real
    radicand = v * v - (v - i_f) ** 2
    u_f = float(np.sqrt(diagnostics.clamp_nonnegative(radicand, "u_f_radicand")))
    return MetricQuantities(i_f=i_f, j_f=v + c_tilde, u_f=u_f, c_tilde=c_tilde)
