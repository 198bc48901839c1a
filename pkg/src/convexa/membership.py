"""Grid-search membership tester for the generalized convexity classes.

A grid cannot prove membership, so the passing verdict is deliberately
worded NoViolationAtResolution. Scan order is fixed (x outer, y middle,
t inner, all ascending) and the first violating cell is certified, which
makes the result deterministic and exactly reproducible.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .expr import FunctionDef
from .quadrature import Interval
from .weights import WeightSystem


@dataclass(frozen=True)
class GridSpec:
    nx: int = 41
    ny: int = 41
    nt: int = 99
    t_min: float = 1e-4
    tol: float = 1e-9

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2 or self.nt < 2:
            raise DomainError("grid point counts nx, ny, nt must be >= 2")
        if not 0.0 < self.t_min < 1.0:
            raise DomainError(f"t_min must lie in (0, 1), got {self.t_min}")
        if not self.tol > 0.0:
            raise DomainError(f"tol must be positive, got {self.tol}")


class Verdict(enum.Enum):
    NO_VIOLATION_AT_RESOLUTION = "NoViolationAtResolution"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class ViolationCertificate:
    """A concrete (x, y, t) where the defining inequality fails.

    lhs is f(tx+(1-t)y), rhs the weighted side; gap is the violated margin
    (lhs - rhs for the convex check, rhs - lhs for the concave one). All
    values recompute bit-identically from (x, y, t).
    """

    x: float
    y: float
    t: float
    lhs: float
    rhs: float
    gap: float


@dataclass(frozen=True)
class MembershipReport:
    verdict: Verdict
    certificate: ViolationCertificate | None
    samples: int
    max_slack: float  # max over the grid of the satisfied-side margin
    max_gap: float  # max over the grid of the violated-side margin


def _certificate_at(f, ws, x, y, t, sign) -> ViolationCertificate:
    # scalar recomputation through the same evaluation path as the grid scan
    wx, wy = ws.eval_arrays(np.array([t]))
    lhs = f(t * x + (1.0 - t) * y)
    rhs = float(wx[0]) * f(x) + float(wy[0]) * f(y)
    return ViolationCertificate(x, y, t, lhs, rhs, sign * (lhs - rhs))


def _scan(f, interval: Interval, ws: WeightSystem, grid: GridSpec, sign: float):
    xs = np.linspace(interval.a, interval.b, grid.nx)
    ys = np.linspace(interval.a, interval.b, grid.ny)
    ts = np.linspace(grid.t_min, 1.0, grid.nt)
    wx, wy = ws.eval_arrays(ts)
    fx = f(xs)
    fy = f(ys)
    points = ts[None, None, :] * xs[:, None, None] + (1.0 - ts[None, None, :]) * ys[
        None, :, None
    ]
    lhs = f(points)
    rhs = (
        wx[None, None, :] * fx[:, None, None]
        + wy[None, None, :] * fy[None, :, None]
    )
    gap = sign * (lhs - rhs)
    samples = grid.nx * grid.ny * grid.nt
    max_slack = float(np.max(-gap))
    max_gap = float(np.max(gap))
    certificate = None
    for flat in np.flatnonzero(gap > grid.tol):
        i, j, k = np.unravel_index(int(flat), gap.shape)
        cert = _certificate_at(
            f, ws, float(xs[i]), float(ys[j]), float(ts[k]), sign
        )
        if cert.gap > grid.tol:
            certificate = cert
            break
    if certificate is None:
        return MembershipReport(
            Verdict.NO_VIOLATION_AT_RESOLUTION, None, samples, max_slack, max_gap
        )
    return MembershipReport(Verdict.VIOLATED, certificate, samples, max_slack, max_gap)


def check_convex(
    f: FunctionDef,
    interval: Interval,
    ws: WeightSystem,
    grid: GridSpec = GridSpec(),
) -> MembershipReport:
    """Test f(tx+(1-t)y) <= w_x(t) f(x) + w_y(t) f(y) over the grid."""
    return _scan(f, interval, ws, grid, 1.0)


def check_concave(
    f: FunctionDef,
    interval: Interval,
    ws: WeightSystem,
    grid: GridSpec = GridSpec(),
) -> MembershipReport:
    """Test the reversed inequality over the grid."""
    return _scan(f, interval, ws, grid, -1.0)


def nonnegativity_witness(
    f: FunctionDef, interval: Interval, resolution: int
) -> float | None:
    """First grid point with f < 0, if any (class members must be nonnegative)."""
    if resolution < 2:
        raise DomainError(f"resolution must be >= 2, got {resolution}")
    xs = np.linspace(interval.a, interval.b, resolution)
    values = f(xs)
    negative = values < 0.0
    if not negative.any():
        return None
    return float(xs[int(np.argmax(negative))])
