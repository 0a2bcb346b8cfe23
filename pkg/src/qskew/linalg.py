"""Dense complex Hermitian primitives: validated state/observable types,
eigendecomposition with a deterministic phase convention, fractional powers,
centering, and (anti)commutators.

All operations are pure functions of immutable inputs. Matrices are kept at
desk scale (n <= 64) and double precision throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

MAX_DIM = 64
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIG_NEG_TOL = 1e-12
RESIDUAL_TOL = 1e-10
DEFAULT_EPS_POS = 1e-10

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
for _p in (PAULI_X, PAULI_Y, PAULI_Z):
    _p.setflags(write=False)


class ValidationError(ValueError):
    """An input failed a structural invariant; ``invariant`` names which one."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class SingularStateError(ValidationError):
    """State is not strictly positive enough for metric-adjusted quantities."""

    def __init__(self, message: str):
        ValueError.__init__(self, f"strictly_positive: {message}")
        self.invariant = "strictly_positive"


def matrix_scale(m: np.ndarray) -> float:
    """max(1, max |entry|), the reference scale of the tolerance contracts."""
    return max(1.0, float(np.abs(m).max()))


def as_matrix(x) -> np.ndarray:
    """Unwrap Observable/DensityMatrix or coerce to a complex ndarray."""
    m = getattr(x, "mat", x)
    return np.asarray(m, dtype=np.complex128)


def _as_square(m, name: str) -> np.ndarray:
    arr = np.array(m, dtype=np.complex128, order="C")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError("square", f"{name} must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if not 1 <= n <= MAX_DIM:
        raise ValidationError("dimension", f"{name} needs 1 <= n <= {MAX_DIM}, got n={n}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValidationError("finite", f"{name} contains non-finite entries")
    return arr


def _check_hermitian(arr: np.ndarray, name: str) -> None:
    dev = float(np.abs(arr - arr.conj().T).max())
    if dev > HERMITIAN_TOL * matrix_scale(arr):
        raise ValidationError("hermitian", f"{name} deviates from Hermitian by {dev:.3e}")


def _check_same_dim(a, b) -> None:
    na, nb = as_matrix(a).shape[0], as_matrix(b).shape[0]
    if na != nb:
        raise ValidationError("dimension_match", f"dimension mismatch: {na} vs {nb}")


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian matrix, the measured quantity of every relation here."""

    mat: np.ndarray

    def __post_init__(self):
        arr = _as_square(self.mat, "observable")
        _check_hermitian(arr, "observable")
        arr.setflags(write=False)
        object.__setattr__(self, "mat", arr)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Unit-trace positive semidefinite Hermitian matrix.

    ``eps_pos`` is the strict-positivity floor demanded by the metric-adjusted
    quantities; plain variance/skew-information formulas also accept singular
    states (eigenvalues below the floor are treated as exactly zero when
    powers are taken).
    """

    mat: np.ndarray
    eps_pos: float = DEFAULT_EPS_POS

    def __post_init__(self):
        arr = _as_square(self.mat, "state")
        _check_hermitian(arr, "state")
        tr = complex(np.trace(arr))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError("unit_trace", f"state trace is {tr:.17g}, expected 1")
        eigs = np.linalg.eigvalsh(arr)
        if float(eigs[0]) < -EIG_NEG_TOL:
            raise ValidationError(
                "positive_semidefinite", f"state has eigenvalue {eigs[0]:.3e} < -{EIG_NEG_TOL:g}"
            )
        arr.setflags(write=False)
        eigs.setflags(write=False)
        object.__setattr__(self, "mat", arr)
        object.__setattr__(self, "_eigs", eigs)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def min_eigenvalue(self) -> float:
        return float(self._eigs[0])

    def require_strictly_positive(self) -> None:
        if self.min_eigenvalue < self.eps_pos:
            raise SingularStateError(
                f"min eigenvalue {self.min_eigenvalue:.3e} below eps_pos={self.eps_pos:g}"
            )

    @cached_property
    def spectrum(self) -> "SpectralDecomposition":
        return hermitian_eigendecompose(self)


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Ascending eigenvalues and a phase-fixed unitary eigenbasis (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    # Phase convention: in each column the first entry of largest magnitude is
    # made real and non-negative, so repeated runs emit identical bases.
    idx = np.argmax(np.abs(vecs), axis=-2)
    lead = np.take_along_axis(vecs, idx[..., None, :], axis=-2)[..., 0, :]
    mag = np.abs(lead)
    phase = np.where(mag > 0, lead / np.where(mag > 0, mag, 1.0), 1.0)
    return vecs / phase[..., None, :]


def hermitian_eigendecompose(operator) -> SpectralDecomposition:
    """Eigensystem of a Hermitian matrix with ascending eigenvalues.

    Raises RuntimeError when the solver fails to converge (pathological
    input) and ValidationError when the residual or unitarity bound of the
    decomposition is not met.
    """
    arr = as_matrix(operator)
    _check_hermitian(arr, "operator")
    try:
        w, v = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"hermitian eigendecomposition did not converge: {exc}") from exc
    v = _fix_phases(v)
    scale = matrix_scale(arr)
    residual = float(np.abs(arr @ v - v * w).max())
    unitarity = float(np.abs(v.conj().T @ v - np.eye(arr.shape[0])).max())
    if residual > RESIDUAL_TOL * scale or unitarity > RESIDUAL_TOL:
        raise ValidationError(
            "eigendecomposition",
            f"residual {residual:.3e} / unitarity {unitarity:.3e} out of tolerance",
        )
    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)


def eigh_stack(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched Hermitian eigendecomposition for stacked (T, n, n) input.

    No phase convention is applied: every downstream pair sum is invariant
    under column phases, and the hot path skips the extra work.
    """
    return np.linalg.eigh(mats)


def center(rho: DensityMatrix, a: Observable) -> Observable:
    """Subtract the state mean: A - Tr[rho A] I."""
    _check_same_dim(rho, a)
    mean = float(np.trace(rho.mat @ a.mat).real)
    return Observable(a.mat - mean * np.eye(rho.dim))


def commutator(a, b) -> np.ndarray:
    """[A, B] = AB - BA; anti-Hermitian for Hermitian inputs."""
    _check_same_dim(a, b)
    ma, mb = as_matrix(a), as_matrix(b)
    return ma @ mb - mb @ ma


def anticommutator(a, b) -> np.ndarray:
    """{A, B} = AB + BA; Hermitian for Hermitian inputs."""
    _check_same_dim(a, b)
    ma, mb = as_matrix(a), as_matrix(b)
    return ma @ mb + mb @ ma


def to_eigenbasis(m, basis: SpectralDecomposition) -> np.ndarray:
    """V^dagger M V for the given eigenbasis."""
    arr = as_matrix(m)
    if arr.shape[0] != basis.dim:
        raise ValidationError("dimension_match", f"dimension mismatch: {arr.shape[0]} vs {basis.dim}")
    v = basis.eigenvectors
    return v.conj().T @ arr @ v


def fractional_power(rho: DensityMatrix, s: float) -> np.ndarray:
    """rho**s for s in [0, 1], with eigenvalues below eps_pos clamped to 0.

    The zero eigenvalues stay zero for every s, including s = 0, so the
    s = 0 power is the projector onto the support of rho.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"power must lie in [0, 1], got {s}")
    dec = rho.spectrum
    lam = np.where(dec.eigenvalues < rho.eps_pos, 0.0, dec.eigenvalues)
    powered = np.zeros_like(lam)
    pos = lam > 0
    powered[pos] = lam[pos] ** s
    v = dec.eigenvectors
    out = (v * powered) @ v.conj().T
    return (out + out.conj().T) / 2
