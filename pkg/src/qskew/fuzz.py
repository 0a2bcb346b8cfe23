"""Deterministic randomized stress-testing of the inequality registry.

Randomness is counter based: every draw is a pure function of
(seed, trial index, draw index), mixed through a splitmix64-style finalizer
cascade, so trial t yields identical samples no matter how trials are
chunked, ordered, or parallelized. numpy's keyed bit generators cover the
single-stream case but cannot be evaluated across a vector of trial keys at
once, which is what the batched sampler needs.

Per trial the draw layout is fixed: the state consumes standard normals
[0, 2n^2) (real block then imaginary block, row major), observable A
consumes [2n^2, 4n^2), observable B consumes [4n^2, 6n^2). States are
Ginibre-style: rho = (1-d) GG*/Tr[GG*] + d I/n with mix floor d, which
bounds the smallest eigenvalue below by d/n.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .fixtures import get_fixture
from .inequalities import (
    TOLERANCE_FACTOR,
    BatchQuantities,
    InequalitySpec,
    TraceQuantities,
    get_spec,
    margin_tolerance,
)
from .linalg import DensityMatrix, Observable
from .monotone import MonotoneFunction, WYD_ALPHA_MARGIN, wyd

_U64 = np.uint64
_GOLD = _U64(0x9E3779B97F4A7C15)
_MIX1 = _U64(0xBF58476D1CE4E5B9)
_MIX2 = _U64(0x94D049BB133111EB)
_MASK64 = 0xFFFFFFFFFFFFFFFF


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U64(30))) * _MIX1
    z = (z ^ (z >> _U64(27))) * _MIX2
    return z ^ (z >> _U64(31))


def keyed_uniforms(seed: int, trials, start: int, count: int) -> np.ndarray:
    """Uniforms in (0, 1] at draw indices [start, start+count) per trial."""
    trials = np.atleast_1d(np.asarray(trials)).astype(np.uint64)
    d = np.arange(start, start + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        keys = _mix64(_U64(seed & _MASK64) + (trials + _U64(1)) * _GOLD)
        raw = _mix64(keys[:, None] + (d[None, :] + _U64(1)) * _GOLD)
    return ((raw >> _U64(11)).astype(np.float64) + 1.0) * 2.0**-53


def keyed_normals(seed: int, trials, start: int, count: int) -> np.ndarray:
    """Standard normals; normal m consumes the uniform pair (2m, 2m+1)."""
    u = keyed_uniforms(seed, trials, 2 * start, 2 * count)
    u1 = u[:, 0::2]
    u2 = u[:, 1::2]
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


@dataclass
class TrialStream:
    """Sequential view of one trial's keyed normal stream."""

    seed: int
    trial: int
    cursor: int = 0

    def normals(self, count: int) -> np.ndarray:
        z = keyed_normals(self.seed, [self.trial], self.cursor, count)[0]
        self.cursor += count
        return z


def sample_density(stream: TrialStream, n: int, mix_floor: float = 0.05) -> DensityMatrix:
    """Draw one mixed state; its smallest eigenvalue is >= mix_floor/n."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not 0.0 < mix_floor < 1.0:
        raise ValueError("mix_floor must lie in (0, 1)")
    z = stream.normals(2 * n * n)
    g = (z[: n * n] + 1j * z[n * n :]).reshape(n, n)
    w = g @ g.conj().T
    rho = (1.0 - mix_floor) * w / np.trace(w).real + mix_floor * np.eye(n) / n
    return DensityMatrix((rho + rho.conj().T) / 2)


def sample_observable(stream: TrialStream, n: int, scale: float = 1.0) -> Observable:
    """Draw one Gaussian Hermitian observable, linearly scaled."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not scale > 0.0:
        raise ValueError("scale must be positive")
    z = stream.normals(2 * n * n)
    m = (z[: n * n] + 1j * z[n * n :]).reshape(n, n)
    return Observable(scale * (m + m.conj().T) / 2)


def sample_stack(seed: int, trials, n: int, mix_floor: float, scale: float):
    """Vectorized (rho, A, B) stacks with the same layout as the single ops."""
    trials = np.asarray(trials)
    z = keyed_normals(seed, trials, 0, 6 * n * n)
    t = trials.shape[0]
    nn = n * n

    def block(k):
        return (z[:, k * nn : (k + 1) * nn] + 1j * z[:, (k + 1) * nn : (k + 2) * nn]).reshape(t, n, n)

    g = block(0)
    w = g @ np.conj(np.swapaxes(g, 1, 2))
    tr = np.einsum("tii->t", w).real
    rho = (1.0 - mix_floor) * w / tr[:, None, None] + (mix_floor / n) * np.eye(n)
    rho = (rho + np.conj(np.swapaxes(rho, 1, 2))) / 2
    ma = block(2)
    mb = block(4)
    a = scale * (ma + np.conj(np.swapaxes(ma, 1, 2))) / 2
    b = scale * (mb + np.conj(np.swapaxes(mb, 1, 2))) / 2
    return rho, a, b


def _default_alpha_grid() -> tuple[float, ...]:
    return tuple(np.linspace(0.0, 1.0, 11))


@dataclass(frozen=True)
class RandomModelConfig:
    """Sampling plan for one fuzz run; fully determines its output."""

    seed: int
    dim: int = 2
    trials: int = 1000
    mix_floor: float = 0.05
    scale: float = 1.0
    alpha_grid: tuple = field(default_factory=_default_alpha_grid)
    gamma_grid: tuple = (0.5,)
    inequality_ids: tuple = ()
    f_grid: Optional[tuple] = None
    pin_fixture: Optional[str] = None

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if not 2 <= self.dim <= 16:
            raise ValueError("dim must lie in [2, 16]")
        if not 0.0 < self.mix_floor < 1.0:
            raise ValueError("mix_floor must lie in (0, 1)")
        if not self.scale > 0.0:
            raise ValueError("scale must be positive")
        for name, grid in (("alpha_grid", self.alpha_grid), ("gamma_grid", self.gamma_grid)):
            vals = tuple(float(v) for v in grid)
            if not vals:
                raise ValueError(f"{name} must not be empty")
            if any(not 0.0 <= v <= 1.0 for v in vals):
                raise ValueError(f"{name} entries must lie in [0, 1]")
            object.__setattr__(self, name, vals)
        ids = tuple(get_spec(i).id for i in self.inequality_ids)
        object.__setattr__(self, "inequality_ids", ids)
        if self.f_grid is not None:
            object.__setattr__(self, "f_grid", tuple(self.f_grid))
        if self.pin_fixture is not None:
            fx = get_fixture(self.pin_fixture)
            if fx.rho.dim != self.dim:
                raise ValueError(
                    f"fixture {fx.name} has dimension {fx.rho.dim}, config has {self.dim}"
                )
            object.__setattr__(self, "pin_fixture", fx.name)

    def resolved_f_grid(self) -> tuple[MonotoneFunction, ...]:
        if self.f_grid is not None:
            return self.f_grid
        fs = [MonotoneFunction("WY")]
        fs += [wyd(a) for a in self.alpha_grid if WYD_ALPHA_MARGIN <= a <= 1.0 - WYD_ALPHA_MARGIN]
        return tuple(fs)


def _param_points(spec: InequalitySpec, config: RandomModelConfig):
    """Fixed-order (alpha, gamma, f, params_dict) points for one entry."""
    if spec.params_kind == "none":
        return [(None, None, None, {})]
    if spec.params_kind == "alpha":
        if spec.id == "COR4":
            grid = [a for a in config.alpha_grid if WYD_ALPHA_MARGIN <= a <= 1.0 - WYD_ALPHA_MARGIN]
        else:
            grid = list(config.alpha_grid)
        return [(a, None, None, {"alpha": a}) for a in grid]
    if spec.params_kind == "alpha_gamma":
        return [
            (a, g, None, {"alpha": a, "gamma": g})
            for a in config.alpha_grid
            for g in config.gamma_grid
        ]
    if spec.params_kind == "f":
        return [(None, None, f, {"f": f.label()}) for f in config.resolved_f_grid()]
    raise AssertionError(spec.params_kind)


@dataclass
class IdSummary:
    """Aggregate over all (trial, parameter) margins of one inequality."""

    id: str
    points: int = 0
    min_margin: float = np.inf
    argmin_trial: int = -1
    argmin_params: dict = field(default_factory=dict)
    violations: int = 0
    out_region_failures: int = 0

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "points": self.points,
            "min_margin": None if self.points == 0 else self.min_margin,
            "argmin_trial": None if self.points == 0 else self.argmin_trial,
            "argmin_params": self.argmin_params,
            "violations": self.violations,
            "out_region_failures": self.out_region_failures,
        }


@dataclass
class FuzzReport:
    """Outcome of one fuzz run; identical for identical configs."""

    seed: int
    dim: int
    trials: int
    inequality_ids: tuple
    per_id: dict
    pinned: Optional[str] = None
    elapsed_s: float = field(default=0.0, compare=False)

    @property
    def total_violations(self) -> int:
        return sum(s.violations for s in self.per_id.values())

    @property
    def total_failures(self) -> int:
        return sum(s.violations + s.out_region_failures for s in self.per_id.values())

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "dim": self.dim,
            "trials": self.trials,
            "inequality_ids": list(self.inequality_ids),
            "pinned": self.pinned,
            "total_violations": self.total_violations,
            "per_id": {k: v.to_dict() for k, v in self.per_id.items()},
            "elapsed_s": self.elapsed_s,
        }


def run_fuzz(
    config: RandomModelConfig,
    *,
    backend: Optional[str] = None,
    chunk_size: int = 8192,
    tol_factor: float = TOLERANCE_FACTOR,
) -> FuzzReport:
    """Sample seeded trials and aggregate margins for every configured id.

    A violation is an in-region point whose margin falls below the relative
    tolerance; failures outside the validity region are tallied separately
    (the registered counterexamples live there). The report is independent
    of ``chunk_size`` and of the kernel backend up to rounding.
    """
    started = time.perf_counter()
    ids = config.inequality_ids or ()
    specs = [get_spec(i) for i in ids]
    summaries = {s.id: IdSummary(id=s.id) for s in specs}

    alphas_needed = set()
    fs_needed: list[MonotoneFunction] = []
    for spec in specs:
        for al, ga, f, _ in _param_points(spec, config):
            if spec.params_kind in ("alpha", "alpha_gamma") and spec.id != "COR4":
                alphas_needed.add(al)
            if spec.id == "COR4":
                fs_needed.append(wyd(al))
            if spec.id in ("LUO", "WY_SCHR"):
                alphas_needed.add(0.5)
            if f is not None:
                fs_needed.append(f)
    fs_needed = list(dict.fromkeys(fs_needed))

    pinned = None
    if config.pin_fixture is not None:
        pinned = get_fixture(config.pin_fixture)

    for start in range(0, config.trials, chunk_size):
        idx = np.arange(start, min(start + chunk_size, config.trials))
        rho, a, b = sample_stack(config.seed, idx, config.dim, config.mix_floor, config.scale)
        if pinned is not None and start == 0:
            rho[0] = pinned.rho.mat
            a[0] = pinned.a.mat
            b[0] = pinned.b.mat
        q = BatchQuantities.from_matrices(rho, a, b, backend=backend)
        if alphas_needed:
            q.prepare_alphas(alphas_needed)
        if fs_needed:
            q.prepare_functions(fs_needed)
        for spec in specs:
            summary = summaries[spec.id]
            for p_idx, (al, ga, f, params) in enumerate(_param_points(spec, config)):
                lhs, rhs = spec.evaluate(q, al, ga, f)
                margin = lhs - rhs
                tol = tol_factor * np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
                fails = int(np.count_nonzero(margin < -tol))
                in_region = bool(spec.region(al, ga, f))
                summary.points += margin.size
                if in_region:
                    summary.violations += fails
                else:
                    summary.out_region_failures += fails
                mn = float(margin.min())
                cand_trial = int(idx[margin == mn].min())
                better = mn < summary.min_margin or (
                    mn == summary.min_margin and cand_trial < summary.argmin_trial
                )
                if better:
                    summary.min_margin = mn
                    summary.argmin_trial = cand_trial
                    summary.argmin_params = dict(params)

    return FuzzReport(
        seed=config.seed,
        dim=config.dim,
        trials=config.trials,
        inequality_ids=tuple(s.id for s in specs),
        per_id=summaries,
        pinned=config.pin_fixture,
        elapsed_s=time.perf_counter() - started,
    )


@dataclass(frozen=True)
class ScanRow:
    alpha: float
    gamma: float
    margin: float
    in_region: bool


def scan_grid(
    rho: DensityMatrix,
    a: Observable,
    b: Observable,
    inequality_id: str,
    alpha_grid,
    gamma_grid,
) -> list[ScanRow]:
    """Margin landscape of one inequality over an (alpha, gamma) grid.

    Emits one row per grid point in row-major (alpha outer) order; entries
    that ignore gamma or alpha repeat their margin across the free axis.
    For the function-parametrized entries alpha selects the WYD exponent.
    """
    spec = get_spec(inequality_id)
    alphas = [float(v) for v in alpha_grid]
    gammas = [float(v) for v in gamma_grid]
    if not alphas or not gammas:
        raise ValueError("grids must not be empty")
    if spec.needs_positive:
        rho.require_strictly_positive()
    q = TraceQuantities(rho, a, b)
    rows = []
    for al in alphas:
        for ga in gammas:
            if spec.params_kind == "f":
                f = wyd(al)
                lhs, rhs = spec.evaluate(q, None, None, f)
                in_region = spec.region(None, None, f)
            else:
                eff_a = al if spec.params_kind in ("alpha", "alpha_gamma") else None
                eff_g = ga if spec.params_kind == "alpha_gamma" else None
                if spec.params_kind in ("alpha", "alpha_gamma") and not 0.0 <= al <= 1.0:
                    raise ValueError(f"alpha must lie in [0, 1], got {al}")
                if spec.id == "COR4":
                    wyd(al)  # domain check
                lhs, rhs = spec.evaluate(q, eff_a, eff_g, None)
                in_region = spec.region(eff_a, eff_g, None)
            rows.append(ScanRow(alpha=al, gamma=ga, margin=float(lhs - rhs), in_region=bool(in_region)))
    return rows
