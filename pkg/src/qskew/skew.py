"""Variance, covariance, and the alpha-parametrized skew-information family.

For a state rho, a centered observable H0 = H - Tr[rho H] I and a in [0, 1]:

    V(H)      = Tr[rho H0^2]
    I_a(H)    = Tr[rho H0^2] - Tr[rho^a H0 rho^(1-a) H0]
    J_a(H)    = Tr[rho H0^2] + Tr[rho^a H0 rho^(1-a) H0]
    U_a(H)    = sqrt(V^2 - (V - I_a)^2)
    Corr_a(X, Y)       = Tr[rho X Y] - Tr[rho^a X rho^(1-a) Y]
    Corr_{a,g}(X, Y)   = g Corr_a(X, Y) + (1-g) Corr_{1-a}(X, Y)
    Corr^sym_{a,g}(X, Y) = g Corr_a(X, Y) + (1-g) Corr_a(Y, X)

The trace formulas above are the primary computation path. Each of I and J
also has a spectral-sum route over the eigensystem of rho (``method=
"spectral"``), kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import diagnostics
from .linalg import DensityMatrix, Observable, _check_same_dim, center, fractional_power, to_eigenbasis


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")


@dataclass(frozen=True)
class AlphaGamma:
    """Parameter pair for the two-parameter correlation measures."""

    alpha: float
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")


def variance(rho: DensityMatrix, a: Observable) -> float:
    """Tr[rho A0^2] for the centered observable A0."""
    a0 = center(rho, a).mat
    val = float(np.trace(rho.mat @ a0 @ a0).real)
    return diagnostics.clamp_nonnegative(val, "variance")


def covariance(rho: DensityMatrix, a: Observable, b: Observable) -> complex:
    """Tr[rho A0 B0]; Hermitian-symmetric: Cov(B, A) = conj(Cov(A, B))."""
    _check_same_dim(a, b)
    a0 = center(rho, a).mat
    b0 = center(rho, b).mat
    return complex(np.trace(rho.mat @ a0 @ b0))


def cross_term(rho: DensityMatrix, x: Observable, y: Observable, alpha: float) -> complex:
    """Tr[rho^a X rho^(1-a) Y], the mixed-power trace behind Corr_a."""
    _check_same_dim(rho, x)
    _check_same_dim(x, y)
    _check_alpha(alpha)
    ra = fractional_power(rho, alpha)
    rb = fractional_power(rho, 1.0 - alpha)
    return complex(np.trace(ra @ x.mat @ rb @ y.mat))


def _spectral_pair_sums(rho: DensityMatrix, h: Observable, alpha: float) -> tuple[float, float]:
    """(minus, plus) pair sums over the eigensystem of rho.

    minus = sum_{j<k} (l_j^a - l_k^a)(l_j^(1-a) - l_k^(1-a)) |h_jk|^2, which
    equals I_a(H) term by term with every term non-negative; plus is the full
    sum_{j,k} l_j^a l_k^(1-a) |h_jk|^2, so that J_a = V + plus.
    """
    dec = rho.spectrum
    lam = np.where(dec.eigenvalues < rho.eps_pos, 0.0, dec.eigenvalues)
    h0 = to_eigenbasis(center(rho, h), dec)
    habs2 = h0.real**2 + h0.imag**2
    pa = np.zeros_like(lam)
    pb = np.zeros_like(lam)
    pos = lam > 0
    pa[pos] = lam[pos] ** alpha
    pb[pos] = lam[pos] ** (1.0 - alpha)
    dpa = pa[:, None] - pa[None, :]
    dpb = pb[:, None] - pb[None, :]
    minus = 0.5 * float(np.sum(dpa * dpb * habs2))
    plus = float(np.sum(pa[:, None] * pb[None, :] * habs2))
    return minus, plus


def wyd_skew_information(rho: DensityMatrix, h: Observable, alpha: float, *, method: str = "trace") -> float:
    """I_a(H); symmetric in a <-> 1-a and zero whenever rho and H commute."""
    _check_same_dim(rho, h)
    _check_alpha(alpha)
    if method == "trace":
        h0 = center(rho, h)
        val = variance(rho, h) - cross_term(rho, h0, h0, alpha).real
        return diagnostics.clamp_nonnegative(val, "skew_information")
    if method == "spectral":
        minus, _ = _spectral_pair_sums(rho, h, alpha)
        return minus
    raise ValueError(f"unknown method {method!r}")


def wyd_j(rho: DensityMatrix, h: Observable, alpha: float, *, method: str = "trace") -> float:
    """J_a(H) = V(H) + Tr[rho^a H0 rho^(1-a) H0]; satisfies J_a = 2V - I_a."""
    _check_same_dim(rho, h)
    _check_alpha(alpha)
    if method == "trace":
        h0 = center(rho, h)
        return variance(rho, h) + cross_term(rho, h0, h0, alpha).real
    if method == "spectral":
        _, plus = _spectral_pair_sums(rho, h, alpha)
        return variance(rho, h) + plus
    raise ValueError(f"unknown method {method!r}")


def u_alpha(rho: DensityMatrix, h: Observable, alpha: float) -> float:
    """U_a(H) = sqrt(V^2 - (V - I_a)^2); equals sqrt(I_a J_a)."""
    v = variance(rho, h)
    i = wyd_skew_information(rho, h, alpha)
    radicand = v * v - (v - i) ** 2
    return float(np.sqrt(diagnostics.clamp_nonnegative(radicand, "u_radicand")))


def corr_alpha(rho: DensityMatrix, x: Observable, y: Observable, alpha: float) -> complex:
    """Corr_a(X, Y); invariant under centering of either argument."""
    _check_same_dim(x, y)
    val = complex(np.trace(rho.mat @ x.mat @ y.mat))
    return val - cross_term(rho, x, y, alpha)


def corr_alpha_gamma(rho: DensityMatrix, x: Observable, y: Observable, params: AlphaGamma) -> complex:
    """Convex mix of Corr_a and Corr_{1-a}; diagonal gives I_a back."""
    ca = corr_alpha(rho, x, y, params.alpha)
    cb = corr_alpha(rho, x, y, 1.0 - params.alpha)
    return params.gamma * ca + (1.0 - params.gamma) * cb


def corr_sym(rho: DensityMatrix, x: Observable, y: Observable, params: AlphaGamma) -> complex:
    """Convex mix of Corr_a(X, Y) and Corr_a(Y, X).

    For self-adjoint arguments Corr_a(Y, X) = conj(Corr_a(X, Y)), so the
    measure is symmetric in (X, Y) exactly at gamma = 1/2; elsewhere the
    swap flips the mixing weights, which is surfaced as a diagnostic rather
    than asserted away.
    """
    ca = corr_alpha(rho, x, y, params.alpha)
    cb = corr_alpha(rho, y, x, params.alpha)
    if params.gamma != 0.5:
        diagnostics.record("corr_sym_asymmetry", abs((2.0 * params.gamma - 1.0) * (ca - cb).imag))
    return params.gamma * ca + (1.0 - params.gamma) * cb
