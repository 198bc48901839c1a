"""Weight systems for generalized convexity classes.

A weight system is the pair (w_x, w_y) of functions of t in (0, 1] that
multiply f(x) and f(y) in a convexity definition. Three systems are
provided: the classical pair (t, 1-t), the Young pair derived from Young's
inequality with exponent p > 1, and the Nesbitt pair derived from Nesbitt's
inequality. Weight moments (integrals over [0, 1] of the weights and their
products) generate every Hadamard-type theorem constant; they are available
both as closed forms and through the quadrature oracle.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError
from .quadrature import QuadSpec, integrate_unit

LN3 = math.log(3.0)


class WeightKind(enum.Enum):
    CLASSICAL = "classical"
    YOUNG = "young"
    NESBITT = "nesbitt"


class MomentMethod(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class WeightPair:
    wx: float
    wy: float
    t: float


@dataclass(frozen=True)
class Moment:
    """A weight moment value, or a divergence marker (defined=False)."""

    value: float
    defined: bool = True


@dataclass(frozen=True)
class MomentTable:
    m10: Moment  # int w_x
    m01: Moment  # int w_y
    m20: Moment  # int w_x^2
    m02: Moment  # int w_y^2
    m11: Moment  # int w_x * w_y
    method: MomentMethod

    def entries(self) -> dict[str, Moment]:
        return {
            "m10": self.m10,
            "m01": self.m01,
            "m20": self.m20,
            "m02": self.m02,
            "m11": self.m11,
        }


@dataclass(frozen=True)
class WeightSystem:
    kind: WeightKind
    p: float | None = None

    def __post_init__(self):
        if self.kind is WeightKind.YOUNG:
            if self.p is None or not self.p > 1.0:
                raise DomainError(f"Young weights require p > 1, got p={self.p}")
        elif self.p is not None:
            raise DomainError(f"{self.kind.value} weights take no exponent p")

    def label(self) -> str:
        if self.kind is WeightKind.YOUNG:
            return f"young(p={self.p:g})"
        return self.kind.value

    # -- pointwise evaluation ------------------------------------------------

    def eval_arrays(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(w_x, w_y) on an array of t values in (0, 1].

        Single evaluation path for both the scalar API and grid scans, so a
        violation certificate recomputes bit-identically.
        """
        t = np.asarray(t, dtype=float)
        if t.size and (np.min(t) <= 0.0 or np.max(t) > 1.0):
            bad = t[(t <= 0.0) | (t > 1.0)].flat[0]
            raise DomainError(f"weights are defined for t in (0, 1], got t={bad}")
        if self.kind is WeightKind.CLASSICAL:
            return t, 1.0 - t
        if self.kind is WeightKind.YOUNG:
            p = self.p
            wx = (1.0 / p) * t ** (1.0 / p) + ((p - 1.0) / p) * t ** (1.0 + 1.0 / p)
            wy = ((p - 1.0) / p) * (1.0 - t) * t ** (1.0 / p) + (1.0 / p) * t ** (
                1.0 / p - 1.0
            ) * (1.0 - t)
            return wx, wy
        wx = 2.0 * t**2 / (3.0 - 2.0 * t) + 2.0 * t * (1.0 - t) / (1.0 + 2.0 * t)
        wy = 2.0 * t * (1.0 - t) / (3.0 - 2.0 * t) + 2.0 * (1.0 - t) ** 2 / (
            1.0 + 2.0 * t
        )
        return wx, wy

    def eval(self, t: float) -> WeightPair:
        wx, wy = self.eval_arrays(np.array([t]))
        return WeightPair(float(wx[0]), float(wy[0]), t)

    def lemma_rhs_arrays(self, t: np.ndarray) -> np.ndarray:
        """Right-hand side of the defining lemma inequality (>= 1 on (0, 1])."""
        t = np.asarray(t, dtype=float)
        if t.size and (np.min(t) <= 0.0 or np.max(t) > 1.0):
            bad = t[(t <= 0.0) | (t > 1.0)].flat[0]
            raise DomainError(f"lemma_rhs is defined for t in (0, 1], got t={bad}")
        if self.kind is WeightKind.CLASSICAL:
            return np.ones_like(t)
        if self.kind is WeightKind.YOUNG:
            p = self.p
            return (1.0 / p) * t ** (1.0 / p - 1.0) + (1.0 - 1.0 / p) * t ** (1.0 / p)
        return 2.0 * t / (3.0 - 2.0 * t) + 2.0 * (1.0 - t) / (1.0 + 2.0 * t)

    def lemma_rhs(self, t: float) -> float:
        return float(self.lemma_rhs_arrays(np.array([t]))[0])

    # -- moments ---------------------------------------------------------------

    def moments_closed_form(self) -> MomentTable:
        """Moment table from the closed-form (rational / Beta / log) constants.

        The Young cross moment uses the Beta combination confirmed by the
        quadrature oracle (the one appearing in the product-bound proof);
        see `theorems.constants_table` for the alternative display. The
        Young m02 entry diverges for p >= 2.
        """
        if self.kind is WeightKind.CLASSICAL:
            return MomentTable(
                Moment(0.5),
                Moment(0.5),
                Moment(1.0 / 3.0),
                Moment(1.0 / 3.0),
                Moment(1.0 / 6.0),
                MomentMethod.CLOSED_FORM,
            )
        if self.kind is WeightKind.NESBITT:
            m_same = 1.5 * LN3 - 1.0
            m_sq = 125.0 / 6.0 - (147.0 / 8.0) * LN3
            m_cross = (117.0 / 8.0) * LN3 - 95.0 / 6.0
            return MomentTable(
                Moment(m_same),
                Moment(m_same),
                Moment(m_sq),
                Moment(m_sq),
                Moment(m_cross),
                MomentMethod.CLOSED_FORM,
            )
        p = self.p
        m10 = (p * p + 2.0 * p) / ((p + 1.0) * (2.0 * p + 1.0))
        m01 = 3.0 * p * p / ((p + 1.0) * (2.0 * p + 1.0))
        m20 = (
            1.0 / (p * (2.0 + p))
            + (p - 1.0) / (p * (1.0 + p))
            + (p - 1.0) ** 2 / (p * (2.0 + 3.0 * p))
        )
        m11 = young_cross_moment_proof_display(p)
        if 2.0 / p - 1.0 > 0.0:
            m02 = Moment(
                ((p - 1.0) / p) ** 2 * specfun.beta(2.0 / p + 1.0, 3.0).value
                + 2.0 * (p - 1.0) / p**2 * specfun.beta(2.0 / p, 3.0).value
                + 1.0 / p**2 * specfun.beta(2.0 / p - 1.0, 3.0).value
            )
        else:
            m02 = Moment(math.nan, defined=False)
        return MomentTable(
            Moment(m10), Moment(m01), Moment(m20), m02, Moment(m11),
            MomentMethod.CLOSED_FORM,
        )

    def moments(self, spec: QuadSpec = QuadSpec()) -> MomentTable:
        """Moment table from the adaptive-quadrature oracle.

        Singularity hints follow the weight exponents: w_y carries
        t^(1/p - 1) for Young, so its moments need desingularization, and
        m02 genuinely diverges for p >= 2 (reported, not guessed).
        """

        def run(g, exponent=None) -> Moment:
            hint = None
            if exponent is not None and -1.0 < exponent < 0.0:
                hint = exponent
            local = QuadSpec(
                abs_tol=spec.abs_tol,
                rel_tol=spec.rel_tol,
                max_subdivisions=spec.max_subdivisions,
                left_singularity_exponent=hint,
            )
            res = integrate_unit(g, local, vectorized=True)
            if not res.converged:
                return Moment(math.nan, defined=False)
            return Moment(res.value)

        def wx(t):
            return self.eval_arrays(t)[0]

        def wy(t):
            return self.eval_arrays(t)[1]

        if self.kind is WeightKind.YOUNG:
            e_y = 1.0 / self.p - 1.0
            e_yy = 2.0 / self.p - 2.0
            e_xy = 2.0 / self.p - 1.0
        else:
            e_y = e_yy = e_xy = None
        return MomentTable(
            run(wx),
            run(wy, e_y),
            run(lambda t: wx(t) ** 2),
            run(lambda t: wy(t) ** 2, e_yy),
            run(lambda t: wx(t) * wy(t), e_xy),
            MomentMethod.QUADRATURE,
        )


def classical() -> WeightSystem:
    return WeightSystem(WeightKind.CLASSICAL)


def young(p: float) -> WeightSystem:
    return WeightSystem(WeightKind.YOUNG, p)


def nesbitt() -> WeightSystem:
    return WeightSystem(WeightKind.NESBITT)


def young_cross_moment_proof_display(p: float) -> float:
    """int w_x w_y per the Beta combination the product-bound proof derives."""
    return (
        2.0 * (p - 1.0) / p**2 * specfun.beta(2.0 / p + 1.0, 2.0).value
        + ((p - 1.0) / p) ** 2 * specfun.beta(2.0 / p + 2.0, 2.0).value
        + 1.0 / p**2 * specfun.beta(2.0 / p, 2.0).value
    )


def young_cross_moment_theorem_display(p: float) -> float:
    """The cross coefficient as displayed in the product-bound theorem.

    Coincides with the proof display at p = 2 but differs elsewhere; it is
    kept only so the discrepancy can be tabulated, and is never used in a
    bound.
    """
    return (
        (p - 1.0) / p**2 * specfun.beta(2.0 / p, 2.0).value
        + ((p - 1.0) / p) ** 2 * specfun.beta(2.0 / p + 2.0, 2.0).value
        + 1.0 / p * specfun.beta(2.0 / p + 1.0, 2.0).value
    )


def _pow_to_inf(base: float, exponent: float) -> float:
    # positive base: treat float overflow as IEEE +inf instead of raising
    try:
        return base**exponent
    except OverflowError:
        return math.inf


def young_inequality(a: float, b: float, p: float) -> float:
    """Gap a^p/p + b^q/q - ab with 1/p + 1/q = 1; zero iff a^p = b^q."""
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"young_inequality requires a, b > 0, got ({a}, {b})")
    if not p > 1.0:
        raise DomainError(f"young_inequality requires p > 1, got {p}")
    q = p / (p - 1.0)
    return _pow_to_inf(a, p) / p + _pow_to_inf(b, q) / q - a * b


def nesbitt_inequality(a: float, b: float, c: float) -> float:
    """Gap a/(b+c) + b/(a+c) + c/(a+b) - 3/2, nonnegative for positive inputs."""
    if not (a > 0.0 and b > 0.0 and c > 0.0):
        raise DomainError(
            f"nesbitt_inequality requires positive inputs, got ({a}, {b}, {c})"
        )
    return a / (b + c) + b / (a + c) + c / (a + b) - 1.5


def dominates_classical(ws: WeightSystem, resolution: int) -> tuple[bool, float]:
    """Check w_x(t) >= t and w_y(t) >= 1-t on the grid {k/resolution}.

    Pointwise domination of the classical weights means every nonnegative
    classically convex function is also convex in the ws sense; the margin
    is the grid minimum of the two slacks (exact zero for the classical
    system itself).
    """
    if resolution < 2:
        raise DomainError(f"resolution must be >= 2, got {resolution}")
    t = np.arange(1, resolution + 1, dtype=float) / float(resolution)
    wx, wy = ws.eval_arrays(t)
    margin = float(min(np.min(wx - t), np.min(wy - (1.0 - t))))
    return margin >= -1e-12, margin
