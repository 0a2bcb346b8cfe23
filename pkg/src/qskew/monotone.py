"""Catalog of symmetric normalized operator monotone functions.

Five kinds are provided::

    RLD  2x/(x+1)          f(0) = 0
    SLD  (x+1)/2           f(0) = 1/2
    BKM  (x-1)/log x       f(0) = 0
    WY   ((sqrt x + 1)/2)^2    f(0) = 1/4
    WYD  a(1-a)(x-1)^2 / ((x^a - 1)(x^(1-a) - 1)),  a in (0, 1);  f(0) = a(1-a)

A function is regular when f(0) != 0. Regular functions carry the transform

    ftilde(x) = ((x+1) - (x-1)^2 f(0)/f(x)) / 2,

which is non-regular. Each function induces the scalar mean
m_f(x, y) = y f(x/y); the mean of ftilde has the closed form
(x+y)/2 - f(0)(x-y)^2 / (2 m_f(x, y)), which is the cancellation-safe route
used for eigenvalue pairs.

BKM and WYD have a removable singularity at x = 1; within |x-1| < 1e-6 both
switch to the shared second-order expansion 1 + u/2 + u^2 (a(1-a) - 1)/12
(with a(1-a) = 0 for BKM), which covers both branches of the cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

KINDS = ("RLD", "SLD", "BKM", "WY", "WYD")
REGULAR_KINDS = ("SLD", "WY", "WYD")
WYD_ALPHA_MARGIN = 1e-6
TAYLOR_WINDOW = 1e-6
SCALAR_HOLD_TOL = 1e-12


def _eval_kind(kind: str, alpha: Optional[float], x: np.ndarray) -> np.ndarray:
    if np.any(x <= 0):
        raise ValueError("operator monotone functions are evaluated on x > 0 only")
    if kind == "SLD":
        return (x + 1.0) / 2.0
    if kind == "RLD":
        return 2.0 * x / (x + 1.0)
    if kind == "WY":
        return (np.sqrt(x) + 1.0) ** 2 / 4.0
    b2 = 0.0 if kind == "BKM" else alpha * (1.0 - alpha)
    out = np.empty_like(x)
    u = x - 1.0
    near = np.abs(u) < TAYLOR_WINDOW
    un = u[near]
    out[near] = 1.0 + un / 2.0 + un * un * (b2 - 1.0) / 12.0
    xf = x[~near]
    if kind == "BKM":
        out[~near] = (xf - 1.0) / np.log(xf)
    else:
        out[~near] = b2 * (xf - 1.0) ** 2 / ((xf**alpha - 1.0) * (xf ** (1.0 - alpha) - 1.0))
    return out


def _maybe_scalar(x_in, value: np.ndarray):
    if np.ndim(x_in) == 0:
        return float(value)
    return value


@dataclass(frozen=True)
class MonotoneFunction:
    """One member of the catalog; WYD additionally carries its exponent."""

    kind: str
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}, expected one of {KINDS}")
        if self.kind == "WYD":
            if self.alpha is None:
                raise ValueError("WYD requires an exponent alpha")
            if not WYD_ALPHA_MARGIN <= self.alpha <= 1.0 - WYD_ALPHA_MARGIN:
                raise ValueError(
                    f"WYD exponent must lie in [{WYD_ALPHA_MARGIN:g}, {1 - WYD_ALPHA_MARGIN:g}],"
                    f" got {self.alpha}"
                )
        elif self.alpha is not None:
            raise ValueError(f"{self.kind} takes no exponent")

    @property
    def regular(self) -> bool:
        return self.kind in REGULAR_KINDS

    @property
    def f0(self) -> float:
        """f(0), the limit of f at zero."""
        if self.kind == "SLD":
            return 0.5
        if self.kind == "WY":
            return 0.25
        if self.kind == "WYD":
            return self.alpha * (1.0 - self.alpha)
        return 0.0

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        return _maybe_scalar(x, _eval_kind(self.kind, self.alpha, arr))

    def mean(self, x, y):
        """Scalar mean m_f(x, y) = y f(x/y) for x, y > 0."""
        xa, ya = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        if np.any(xa <= 0) or np.any(ya <= 0):
            raise ValueError("means need strictly positive arguments")
        val = ya * _eval_kind(self.kind, self.alpha, xa / ya)
        if np.ndim(x) == 0 and np.ndim(y) == 0:
            return float(val)
        return val

    @property
    def tilde(self) -> "TildeTransform":
        if not self.regular:
            raise ValueError(f"{self.label()} is not regular; its tilde transform is undefined")
        return TildeTransform(self)

    def label(self) -> str:
        if self.kind == "WYD":
            return f"WYD({self.alpha:g})"
        return self.kind


@dataclass(frozen=True)
class TildeTransform:
    """ftilde of a regular catalog function; a mean carrier like its base."""

    base: MonotoneFunction

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        val = 0.5 * ((arr + 1.0) - (arr - 1.0) ** 2 * self.base.f0 / _eval_kind(self.base.kind, self.base.alpha, arr))
        return _maybe_scalar(x, val)

    @property
    def f0(self) -> float:
        return 0.0

    def mean(self, x, y):
        """m_ftilde(x, y) = (x+y)/2 - f(0)(x-y)^2 / (2 m_f(x, y)); closed form."""
        xa, ya = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        val = (xa + ya) / 2.0 - self.base.f0 * (xa - ya) ** 2 / (2.0 * self.base.mean(xa, ya))
        if np.ndim(x) == 0 and np.ndim(y) == 0:
            return float(val)
        return val

    def mean_from_definition(self, x, y):
        """y ftilde(x/y), the direct route; agrees with .mean to rounding."""
        xa, ya = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        val = ya * self(xa / ya)
        if np.ndim(x) == 0 and np.ndim(y) == 0:
            return float(val)
        return val

    def label(self) -> str:
        return f"tilde({self.base.label()})"


def sld() -> MonotoneFunction:
    return MonotoneFunction("SLD")


def rld() -> MonotoneFunction:
    return MonotoneFunction("RLD")


def bkm() -> MonotoneFunction:
    return MonotoneFunction("BKM")


def wy() -> MonotoneFunction:
    return MonotoneFunction("WY")


def wyd(alpha: float) -> MonotoneFunction:
    return MonotoneFunction("WYD", alpha)


def parse_function(text: str) -> MonotoneFunction:
    """Parse "KIND" or "WYD:0.3" style function specifications."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().upper()
    if kind == "WYD":
        if not rest:
            raise ValueError("WYD needs an exponent, e.g. WYD:0.3")
        return MonotoneFunction("WYD", float(rest))
    if rest:
        raise ValueError(f"{kind} takes no exponent")
    return MonotoneFunction(kind)


def default_log_grid(lo: float = 1e-3, hi: float = 1e3, points: int = 2001) -> np.ndarray:
    """Logarithmic x grid with the point x = 1 always included."""
    grid = np.geomspace(lo, hi, points)
    return np.unique(np.concatenate([grid, [1.0]]))


@dataclass(frozen=True)
class ScalarCheckReport:
    """Result of one scalar inequality sweep over a grid."""

    inequality_id: str
    grid_size: int
    min_slack: float
    worst_point: tuple
    holds: bool
    params: dict


SCALAR_INEQUALITIES = ("COND41", "LEM22", "EQ33", "LEM41")


def check_scalar_inequality(
    inequality_id: str,
    *,
    f: Optional[MonotoneFunction] = None,
    alpha: Optional[float] = None,
    gamma: Optional[float] = None,
    x_grid: Optional[np.ndarray] = None,
) -> ScalarCheckReport:
    """Sweep one scalar inequality over a grid and report the minimum slack.

    Every inequality here is scale covariant in (x, y), so the sweep runs
    over the ratio x with y = 1. Callers may pass parameters outside the
    region where the inequality is known to hold; the report then simply
    exhibits the failure.

    Ids:
      COND41  (x+1)/2 + ftilde(x) - 2 f(x) >= 0                (needs f, regular)
      LEM22   (1-2a)^2 (x-1)^2 - (x^a - x^(1-a))^2 >= 0        (needs alpha)
      EQ33    |x-y| - g(x^a+y^a)|x^(1-a)-y^(1-a)|
                    - (1-g)(x^(1-a)+y^(1-a))|x^a-y^a| >= 0     (needs alpha, gamma)
      LEM41   ((x+y)/2)^2 - m_ftilde(x,y)^2 - f(0)(x-y)^2 >= 0 (needs f, regular)
    """
    x = default_log_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    if np.any(x <= 0):
        raise ValueError("grid points must be strictly positive")
    params: dict = {}
    if inequality_id == "COND41":
        if f is None or not f.regular:
            raise ValueError("COND41 needs a regular function")
        slack = (x + 1.0) / 2.0 + f.tilde(x) - 2.0 * f(x)
        params["f"] = f.label()
    elif inequality_id == "LEM22":
        if alpha is None or not 0.0 <= alpha <= 1.0:
            raise ValueError("LEM22 needs alpha in [0, 1]")
        slack = (1.0 - 2.0 * alpha) ** 2 * (x - 1.0) ** 2 - (x**alpha - x ** (1.0 - alpha)) ** 2
        params["alpha"] = alpha
    elif inequality_id == "EQ33":
        if alpha is None or gamma is None:
            raise ValueError("EQ33 needs alpha and gamma")
        if not (0.0 <= alpha <= 1.0 and 0.0 <= gamma <= 1.0):
            raise ValueError("EQ33 needs alpha, gamma in [0, 1]")
        lhs = gamma * (x**alpha + 1.0) * np.abs(x ** (1.0 - alpha) - 1.0)
        lhs = lhs + (1.0 - gamma) * (x ** (1.0 - alpha) + 1.0) * np.abs(x**alpha - 1.0)
        slack = np.abs(x - 1.0) - lhs
        params["alpha"] = alpha
        params["gamma"] = gamma
    elif inequality_id == "LEM41":
        if f is None or not f.regular:
            raise ValueError("LEM41 needs a regular function")
        mt = f.tilde.mean(x, np.ones_like(x))
        slack = ((x + 1.0) / 2.0) ** 2 - mt**2 - f.f0 * (x - 1.0) ** 2
        params["f"] = f.label()
    else:
        raise ValueError(f"unknown scalar inequality {inequality_id!r}")

    worst = int(np.argmin(slack))
    min_slack = float(slack[worst])
    return ScalarCheckReport(
        inequality_id=inequality_id,
        grid_size=int(x.size),
        min_slack=min_slack,
        worst_point=(float(x[worst]),),
        holds=min_slack >= -SCALAR_HOLD_TOL,
        params=params,
    )
