"""Registry of uncertainty-relation inequalities evaluated as signed margins.

Each entry states lhs >= rhs together with the parameter region where the
bound is a theorem. ``check_inequality`` evaluates the margin lhs - rhs on a
single instance through the trace-formula quantities; ``BatchQuantities``
provides the same margins over stacked instances through the spectral-sum
kernels (the route the fuzz harness drives). Margins are reported even
outside the validity region, with ``in_region=False``; that is how the
stored counterexamples are reproduced.

Registered ids:

  HEIS      V(A)V(B) >= |Tr rho[A,B]|^2 / 4
  SCHR      V(A)V(B) - (Re Cov)^2 >= |Tr rho[A,B]|^2 / 4
  LUO       U(A)U(B) >= |Tr rho[A,B]|^2 / 4            (alpha = 1/2)
  YANAGI_A  U_a(A)U_a(B) >= a(1-a) |Tr rho[A,B]|^2
  WY_SCHR   U(A)U(B) >= |Corr_(1/2)(A,B)|^2            (alpha = 1/2)
  THM2      U_a U_a >= 4a(1-a)|Corr_a|^2               [a in [1/2,1]]
  COR2      U_a U_a - 4a(1-a)((Re Corr_a)^2 - (Im cross_a)^2)
                >= a(1-a)|Tr rho[A,B]|^2               [a in [1/2,1]]
  ORD22     diagnostic: (Re Corr_a)^2 - (Im cross_a)^2 (no ordering claim)
  THM3      U_a U_a >= 4a(1-a)|Corr_(a,g)|^2           [(a,g) in a corner box]
  COR3      U_a U_a >= 4a(1-a)|Corr_(a,1/2)|^2         [any a]
  THM3S     U_a U_a >= 4a(1-a)|Corr^sym_(a,g)|^2       [a in [1/2,1], any g]
  THM4      U^f U^f >= 4 f(0)|Corr^f|^2                [(x+1)/2 + ftilde >= 2f]
  REM4H     U^f U^f >= f(0)|Tr rho[A,B]|^2             [same hypothesis]
  COR4      U^fwyd U^fwyd >= 4a(1-a)|Corr^fwyd|^2      [any a in (0,1)]

where cross_a = Tr[rho^a A rho^(1-a) B].
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import diagnostics, kernels, metric, skew
from .fixtures import Fixture, get_fixture
from .linalg import DensityMatrix, Observable, commutator, eigh_stack
from .monotone import MonotoneFunction, check_scalar_inequality, wyd

TOLERANCE_FACTOR = 1e-8
REGION_EPS = 1e-12


class UnknownInequalityError(ValueError):
    pass


@dataclass(frozen=True)
class AlphaStats:
    """Per-alpha quantities of one instance or a stack (arrays broadcast)."""

    ia: object
    ja: object
    ua: object
    ib: object
    jb: object
    ub: object
    corr: object
    cross: object


@dataclass(frozen=True)
class MetricStats:
    """Per-function metric-adjusted quantities (same broadcast convention)."""

    f0: float
    ia: object
    ja: object
    ua: object
    ib: object
    jb: object
    ub: object
    corr: object


class TraceQuantities:
    """Single-instance quantities through the trace-formula route."""

    def __init__(self, rho: DensityMatrix, a: Observable, b: Observable):
        self.rho, self.a, self.b = rho, a, b
        self.va = skew.variance(rho, a)
        self.vb = skew.variance(rho, b)
        self.cov = skew.covariance(rho, a, b)
        self.trcomm_sq = abs(complex(np.trace(rho.mat @ commutator(a, b)))) ** 2
        self._alpha_cache: dict[float, AlphaStats] = {}
        self._metric_cache: dict[MonotoneFunction, MetricStats] = {}

    def alpha(self, al: float) -> AlphaStats:
        st = self._alpha_cache.get(al)
        if st is None:
            ia = skew.wyd_skew_information(self.rho, self.a, al)
            ja = skew.wyd_j(self.rho, self.a, al)
            ib = skew.wyd_skew_information(self.rho, self.b, al)
            jb = skew.wyd_j(self.rho, self.b, al)
            st = AlphaStats(
                ia=ia,
                ja=ja,
                ua=skew.u_alpha(self.rho, self.a, al),
                ib=ib,
                jb=jb,
                ub=skew.u_alpha(self.rho, self.b, al),
                corr=skew.corr_alpha(self.rho, self.a, self.b, al),
                cross=skew.cross_term(self.rho, self.a, self.b, al),
            )
            self._alpha_cache[al] = st
        return st

    def metric(self, f: MonotoneFunction) -> MetricStats:
        st = self._metric_cache.get(f)
        if st is None:
            qa = metric.metric_quantities(self.rho, f, self.a)
            qb = metric.metric_quantities(self.rho, f, self.b)
            st = MetricStats(
                f0=f.f0,
                ia=qa.i_f,
                ja=qa.j_f,
                ua=qa.u_f,
                ib=qb.i_f,
                jb=qb.j_f,
                ub=qb.u_f,
                corr=metric.corr_f(self.rho, f, self.a, self.b),
            )
            self._metric_cache[f] = st
        return st


class BatchQuantities:
    """Stacked-instance quantities through the spectral-sum kernels.

    Construct with ``from_matrices`` on (T, n, n) stacks; call
    ``prepare_alphas`` / ``prepare_functions`` once per grid so that margin
    evaluation is pure array arithmetic afterwards.
    """

    def __init__(self, lams, a, b, backend=None):
        self._kb = kernels.get_backend(backend)
        self._lams = lams
        self._a = a
        self._b = b
        t, n = lams.shape
        wl = np.ascontiguousarray(np.broadcast_to(lams[None, :, :, None], (1, t, n, n)))
        va, vb, cov = self._kb.weighted_pair_sums(wl, a, b)
        self.va, self.vb, self.cov = va[0], vb[0], cov[0]
        # Tr rho [A,B] = 2i Im Tr[rho A0 B0]
        self.trcomm_sq = 4.0 * self.cov.imag**2
        self._alpha_cache: dict[float, AlphaStats] = {}
        self._metric_cache: dict[MonotoneFunction, MetricStats] = {}

    @classmethod
    def from_matrices(cls, rho_stack, a_stack, b_stack, backend=None) -> "BatchQuantities":
        lams, vecs = eigh_stack(rho_stack)
        vh = np.conj(np.swapaxes(vecs, -1, -2))
        a = np.ascontiguousarray(vh @ a_stack @ vecs)
        b = np.ascontiguousarray(vh @ b_stack @ vecs)
        n = lams.shape[-1]
        diag = np.arange(n)
        mean_a = np.einsum("tj,tjj->t", lams, a)
        mean_b = np.einsum("tj,tjj->t", lams, b)
        a[:, diag, diag] -= mean_a[:, None]
        b[:, diag, diag] -= mean_b[:, None]
        return cls(np.ascontiguousarray(lams), a, b, backend=backend)

    def prepare_alphas(self, alphas) -> None:
        todo = sorted({float(al) for al in alphas} - set(self._alpha_cache))
        if not todo:
            return
        grid = np.asarray(todo, dtype=float)
        ia, sa, ib, sb, cross = self._kb.power_pair_sums(self._lams, grid, self._a, self._b)
        ja = self.va[None, :] + sa
        jb = self.vb[None, :] + sb
        for g, al in enumerate(todo):
            self._alpha_cache[al] = AlphaStats(
                ia=ia[g],
                ja=ja[g],
                ua=np.sqrt(ia[g] * ja[g]),
                ib=ib[g],
                jb=jb[g],
                ub=np.sqrt(ib[g] * jb[g]),
                corr=self.cov - cross[g],
                cross=cross[g],
            )

    def prepare_functions(self, fs) -> None:
        todo = [f for f in fs if f not in self._metric_cache]
        if not todo:
            return
        t, n = self._lams.shape
        w = np.empty((2 * len(todo), t, n, n))
        for i, f in enumerate(todo):
            w[2 * i], w[2 * i + 1] = metric.pair_weights(f, self._lams)
        wa, wb, wab = self._kb.weighted_pair_sums(w, self._a, self._b)
        for i, f in enumerate(todo):
            ia, ib, corr = wa[2 * i], wb[2 * i], wab[2 * i]
            ja = self.va + wa[2 * i + 1]
            jb = self.vb + wb[2 * i + 1]
            self._metric_cache[f] = MetricStats(
                f0=f.f0,
                ia=ia,
                ja=ja,
                ua=np.sqrt(ia * ja),
                ib=ib,
                jb=jb,
                ub=np.sqrt(ib * jb),
                corr=corr,
            )

    def alpha(self, al: float) -> AlphaStats:
        al = float(al)
        if al not in self._alpha_cache:
            self.prepare_alphas([al])
        return self._alpha_cache[al]

    def metric(self, f: MonotoneFunction) -> MetricStats:
        if f not in self._metric_cache:
            self.prepare_functions([f])
        return self._metric_cache[f]


def _abs2(z):
    return np.real(z) ** 2 + np.imag(z) ** 2


@lru_cache(maxsize=None)
def cond41_report(f: MonotoneFunction):
    """Cached sweep of the (x+1)/2 + ftilde(x) >= 2 f(x) hypothesis."""
    return check_scalar_inequality("COND41", f=f)


def _ev_heis(q, al, ga, f):
    return q.va * q.vb, 0.25 * q.trcomm_sq


def _ev_schr(q, al, ga, f):
    return q.va * q.vb - np.real(q.cov) ** 2, 0.25 * q.trcomm_sq


def _ev_luo(q, al, ga, f):
    s = q.alpha(0.5)
    return s.ua * s.ub, 0.25 * q.trcomm_sq


def _ev_yanagi(q, al, ga, f):
    s = q.alpha(al)
    return s.ua * s.ub, al * (1.0 - al) * q.trcomm_sq


def _ev_wy_schr(q, al, ga, f):
    s = q.alpha(0.5)
    return s.ua * s.ub, _abs2(s.corr)


def _ev_thm2(q, al, ga, f):
    s = q.alpha(al)
    return s.ua * s.ub, 4.0 * al * (1.0 - al) * _abs2(s.corr)


def _ev_cor2(q, al, ga, f):
    s = q.alpha(al)
    lhs = s.ua * s.ub - 4.0 * al * (1.0 - al) * (np.real(s.corr) ** 2 - np.imag(s.cross) ** 2)
    return lhs, al * (1.0 - al) * q.trcomm_sq


def _ev_ord22(q, al, ga, f):
    s = q.alpha(al)
    return np.real(s.corr) ** 2, np.imag(s.cross) ** 2


def _ev_thm3(q, al, ga, f):
    s = q.alpha(al)
    # Corr_(1-a) = cov - conj(cross_a): the mixed trace conjugates under
    # alpha <-> 1-alpha for self-adjoint arguments.
    corr_ag = ga * s.corr + (1.0 - ga) * (q.cov - np.conj(s.cross))
    return s.ua * s.ub, 4.0 * al * (1.0 - al) * _abs2(corr_ag)


def _ev_cor3(q, al, ga, f):
    s = q.alpha(al)
    corr_half = q.cov - np.real(s.cross)
    return s.ua * s.ub, 4.0 * al * (1.0 - al) * _abs2(corr_half)


def _ev_thm3s(q, al, ga, f):
    s = q.alpha(al)
    csym = ga * s.corr + (1.0 - ga) * np.conj(s.corr)
    return s.ua * s.ub, 4.0 * al * (1.0 - al) * _abs2(csym)


def _ev_thm4(q, al, ga, f):
    m = q.metric(f)
    return m.ua * m.ub, 4.0 * m.f0 * _abs2(m.corr)


def _ev_rem4h(q, al, ga, f):
    m = q.metric(f)
    return m.ua * m.ub, m.f0 * q.trcomm_sq


def _ev_cor4(q, al, ga, f):
    m = q.metric(wyd(al))
    return m.ua * m.ub, 4.0 * al * (1.0 - al) * _abs2(m.corr)


def _always(al, ga, f):
    return True


def _never(al, ga, f):
    return False


def _alpha_upper_half(al, ga, f):
    return al >= 0.5 - REGION_EPS


def _corner_boxes(al, ga, f):
    low = al <= 0.5 + REGION_EPS and ga <= 0.5 + REGION_EPS
    high = al >= 0.5 - REGION_EPS and ga >= 0.5 - REGION_EPS
    return low or high


def _cond41_region(al, ga, f):
    return bool(cond41_report(f).holds)


@dataclass(frozen=True)
class InequalitySpec:
    """One registry entry: the statement, parameters, and validity region."""

    id: str
    statement: str
    params_kind: str  # "none" | "alpha" | "alpha_gamma" | "f"
    evaluate: Callable
    region: Callable
    needs_positive: bool = False


REGISTRY: dict[str, InequalitySpec] = {}


def _register(spec: InequalitySpec) -> None:
    REGISTRY[spec.id] = spec


_register(InequalitySpec("HEIS", "V(A)V(B) >= |Tr rho[A,B]|^2/4", "none", _ev_heis, _always))
_register(InequalitySpec("SCHR", "V(A)V(B) - (Re Cov)^2 >= |Tr rho[A,B]|^2/4", "none", _ev_schr, _always))
_register(InequalitySpec("LUO", "U(A)U(B) >= |Tr rho[A,B]|^2/4 at alpha=1/2", "none", _ev_luo, _always))
_register(InequalitySpec("YANAGI_A", "U_a(A)U_a(B) >= a(1-a)|Tr rho[A,B]|^2", "alpha", _ev_yanagi, _always))
_register(InequalitySpec("WY_SCHR", "U(A)U(B) >= |Corr_(1/2)|^2 at alpha=1/2", "none", _ev_wy_schr, _always))
_register(InequalitySpec("THM2", "U_a U_a >= 4a(1-a)|Corr_a|^2 for a in [1/2,1]", "alpha", _ev_thm2, _alpha_upper_half))
_register(
    InequalitySpec(
        "COR2",
        "U_a U_a - 4a(1-a)((Re Corr_a)^2 - (Im cross_a)^2) >= a(1-a)|Tr rho[A,B]|^2",
        "alpha",
        _ev_cor2,
        _alpha_upper_half,
    )
)
_register(
    InequalitySpec(
        "ORD22", "diagnostic: (Re Corr_a)^2 - (Im cross_a)^2, no ordering", "alpha", _ev_ord22, _never
    )
)
_register(
    InequalitySpec(
        "THM3",
        "U_a U_a >= 4a(1-a)|Corr_(a,g)|^2 on [0,1/2]^2 or [1/2,1]^2",
        "alpha_gamma",
        _ev_thm3,
        _corner_boxes,
    )
)
_register(InequalitySpec("COR3", "U_a U_a >= 4a(1-a)|Corr_(a,1/2)|^2 for any a", "alpha", _ev_cor3, _always))
_register(
    InequalitySpec(
        "THM3S",
        "U_a U_a >= 4a(1-a)|Corr^sym_(a,g)|^2 for a in [1/2,1]",
        "alpha_gamma",
        _ev_thm3s,
        _alpha_upper_half,
    )
)
_register(
    InequalitySpec(
        "THM4",
        "U^f U^f >= 4 f(0)|Corr^f|^2 under (x+1)/2 + ftilde(x) >= 2f(x)",
        "f",
        _ev_thm4,
        _cond41_region,
        needs_positive=True,
    )
)
_register(
    InequalitySpec(
        "REM4H",
        "U^f U^f >= f(0)|Tr rho[A,B]|^2 under the same hypothesis",
        "f",
        _ev_rem4h,
        _cond41_region,
        needs_positive=True,
    )
)
_register(
    InequalitySpec(
        "COR4",
        "U^fwyd U^fwyd >= 4a(1-a)|Corr^fwyd|^2 for any a in (0,1)",
        "alpha",
        _ev_cor4,
        _always,
        needs_positive=True,
    )
)


def registry_ids() -> tuple[str, ...]:
    return tuple(REGISTRY)


def get_spec(inequality_id: str) -> InequalitySpec:
    key = inequality_id.strip().upper()
    if key not in REGISTRY:
        raise UnknownInequalityError(
            f"unknown inequality id {inequality_id!r}; known: {', '.join(REGISTRY)}"
        )
    return REGISTRY[key]


def validate_params(
    spec: InequalitySpec,
    alpha: Optional[float],
    gamma: Optional[float],
    f: Optional[MonotoneFunction],
) -> tuple[Optional[float], Optional[float], Optional[MonotoneFunction]]:
    """Check that exactly the parameters the entry consumes are usable."""
    if spec.params_kind in ("alpha", "alpha_gamma"):
        if alpha is None:
            raise ValueError(f"{spec.id} needs alpha")
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
        if spec.id == "COR4":
            # delegated to the WYD exponent domain
            wyd(alpha)
    if spec.params_kind == "alpha_gamma":
        if gamma is None:
            raise ValueError(f"{spec.id} needs gamma")
        if not 0.0 <= gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    if spec.params_kind == "f":
        if f is None:
            raise ValueError(f"{spec.id} needs a monotone function")
        if not f.regular:
            raise ValueError(f"{spec.id} needs a regular function, got {f.label()}")
    return alpha, gamma, f


@dataclass(frozen=True)
class CheckResult:
    """One inequality evaluation as a signed margin."""

    id: str
    lhs: float
    rhs: float
    margin: float
    holds: bool
    tolerance: float
    in_region: bool
    input_digest: str
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "tolerance": self.tolerance,
            "in_region": self.in_region,
            "input_digest": self.input_digest,
            "diagnostics": self.diagnostics,
        }


def input_digest(rho, a, b, inequality_id, alpha=None, gamma=None, f=None) -> str:
    """Stable hash of an instance: matrices, id, and parameters."""
    h = hashlib.sha256()
    for m in (rho.mat, a.mat, b.mat):
        h.update(np.ascontiguousarray(m).tobytes())
    label = f.label() if f is not None else None
    h.update(repr((inequality_id, alpha, gamma, label)).encode())
    return h.hexdigest()[:16]


def margin_tolerance(lhs: float, rhs: float, tol_factor: float = TOLERANCE_FACTOR) -> float:
    return tol_factor * max(1.0, abs(lhs), abs(rhs))


def check_inequality(
    inequality_id: str,
    rho: DensityMatrix,
    a: Observable,
    b: Observable,
    *,
    alpha: Optional[float] = None,
    gamma: Optional[float] = None,
    f: Optional[MonotoneFunction] = None,
    tol_factor: float = TOLERANCE_FACTOR,
) -> CheckResult:
    """Evaluate one registered inequality on one instance.

    The margin is lhs - rhs; ``holds`` is margin >= -tolerance with the
    relative tolerance tol_factor * max(1, |lhs|, |rhs|). ``in_region``
    reports whether the parameters satisfy the theorem's hypothesis; the
    margin is evaluated either way.
    """
    spec = get_spec(inequality_id)
    alpha, gamma, f = validate_params(spec, alpha, gamma, f)
    if spec.needs_positive:
        rho.require_strictly_positive()
    extra: dict = {}
    with diagnostics.collect_clamps() as events:
        q = TraceQuantities(rho, a, b)
        lhs, rhs = spec.evaluate(q, alpha, gamma, f)
    if events:
        extra["clamps"] = [{"label": lab, "value": val} for lab, val in events]
    if spec.id in ("THM4", "REM4H"):
        rep = cond41_report(f)
        extra["cond41_min_slack"] = rep.min_slack
    lhs, rhs = float(lhs), float(rhs)
    margin = lhs - rhs
    tol = margin_tolerance(lhs, rhs, tol_factor)
    return CheckResult(
        id=spec.id,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        holds=margin >= -tol,
        tolerance=tol,
        in_region=bool(spec.region(alpha, gamma, f)),
        input_digest=input_digest(rho, a, b, spec.id, alpha, gamma, f),
        diagnostics=extra,
    )


def reproduce_example(name: str, *, tol_factor: float = TOLERANCE_FACTOR) -> tuple[CheckResult, Fixture]:
    """Run one stored fixture and attach its reference value.

    Returns the CheckResult (diagnostics carry the reference value and the
    reference tolerance) together with the fixture itself.
    """
    fx = get_fixture(name)
    result = check_inequality(
        fx.inequality_id, fx.rho, fx.a, fx.b, alpha=fx.alpha, tol_factor=tol_factor
    )
    diag = dict(result.diagnostics)
    diag.update(
        {
            "fixture": fx.name,
            "reference_value": fx.reference,
            "reference_tolerance": fx.tolerance,
            "reference_abs_error": abs(result.margin - fx.reference),
            "matches_reference": abs(result.margin - fx.reference) <= fx.tolerance,
        }
    )
    return (
        CheckResult(
            id=result.id,
            lhs=result.lhs,
            rhs=result.rhs,
            margin=result.margin,
            holds=result.holds,
            tolerance=result.tolerance,
            in_region=result.in_region,
            input_digest=result.input_digest,
            diagnostics=diag,
        ),
        fx,
    )
