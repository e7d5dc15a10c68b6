"""Observables, expectation values and the CHSH correlation function.

The expectation value for retarder settings (tL, tR) with interference
contrast c = cos(2*mu*lambda) is

    E(tL, tR) = -cos tL cos tR - sin tL sin tR * c

which reduces to -cos(tL - tR) at c = 1. The CHSH statistic combines four
expectation values; two slot-to-role assignments are shipped because the
two natural labelings of the four angles are both in circulation and they
disagree on which fixed angle tuples are optimal (see
:class:`RoleAssignment`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .entangled import DetectionDistribution

TSIRELSON_BOUND = 2.0 * np.sqrt(2.0)

#: Fixed angle tuple (0, pi/4, 3pi/4, pi/2) that maximizes the literal
#: combination at full contrast.
CANONICAL_ANGLES_TUPLE = (0.0, np.pi / 4, 3 * np.pi / 4, np.pi / 2)


@dataclass(frozen=True)
class BellAngles:
    """The four retarder settings (tL, tR, tL', tR') in radians."""

    theta_l: float
    theta_r: float
    theta_lp: float
    theta_rp: float

    def __post_init__(self):
        for name in ("theta_l", "theta_r", "theta_lp", "theta_rp"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.theta_l, self.theta_r, self.theta_lp, self.theta_rp)


class RoleAssignment(enum.Enum):
    """Bijection from the angle slots (tL, tR, tL', tR') to CHSH roles (a, a', b, b').

    LITERAL pairs the slots exactly as the combination is conventionally
    printed for this interferometer family:
    |E(tL,tR) - E(tL,tL')| + |E(tR',tR) + E(tR',tL')|, i.e. a = tL,
    a' = tR', b = tR, b' = tL'. STANDARD uses the textbook reading a = tL,
    a' = tL', b = tR, b' = tR'. Both span the same function family, so the
    global maximum over all angles is identical; they differ on which
    fixed angle tuples attain it.
    """

    LITERAL = "literal"
    STANDARD = "standard"

    def slots(self, angles: BellAngles) -> tuple[float, float, float, float]:
        """Return (a, a_prime, b, b_prime) for these angles."""
        if self is RoleAssignment.LITERAL:
            return (angles.theta_l, angles.theta_rp, angles.theta_r, angles.theta_lp)
        return (angles.theta_l, angles.theta_lp, angles.theta_r, angles.theta_rp)


def canonical_angles() -> BellAngles:
    """The fixed angle tuple (0, pi/4, 3pi/4, pi/2)."""
    return BellAngles(*CANONICAL_ANGLES_TUPLE)


def _check_contrast(c) -> None:
    if np.any(np.abs(c) > 1.0 + 1e-12):
        raise ValueError("contrast c must lie in [-1, 1]")


def expectation_from_distribution(dist: DetectionDistribution) -> float:
    """Observable product expectation from a joint detection distribution.

    Each side's observable assigns +1 to its D0 detector and -1 to its D1
    detector, so E = p(D0',D0) - p(D0',D1) - p(D1',D0) + p(D1',D1).
    """
    return float(dist.p_d0p_d0 - dist.p_d0p_d1 - dist.p_d1p_d0 + dist.p_d1p_d1)


def expectation_closed_form(theta_l, theta_r, c):
    """E(tL, tR) = -cos tL cos tR - sin tL sin tR * c. Broadcasts over arrays."""
    _check_contrast(c)
    return -np.cos(theta_l) * np.cos(theta_r) - np.sin(theta_l) * np.sin(theta_r) * c


def chsh_terms(angles: BellAngles, c: float,
               roles: RoleAssignment) -> tuple[float, float]:
    """The two absolute-value arguments of the CHSH combination.

    Returns (E(a,b) - E(a,b'), E(a',b) + E(a',b')); the statistic is the
    sum of their absolute values. Exposed separately so kink detection can
    look at the arguments before the absolute value is taken.
    """
    a, ap, b, bp = roles.slots(angles)
    first = expectation_closed_form(a, b, c) - expectation_closed_form(a, bp, c)
    second = expectation_closed_form(ap, b, c) + expectation_closed_form(ap, bp, c)
    return float(first), float(second)


def chsh_S_values(theta_l, theta_r, theta_lp, theta_rp, c,
                  roles: RoleAssignment):
    """CHSH statistic over angle arrays (broadcasting), given slot arrays."""
    _check_contrast(c)
    if roles is RoleAssignment.LITERAL:
        a, ap, b, bp = theta_l, theta_rp, theta_r, theta_lp
    else:
        a, ap, b, bp = theta_l, theta_lp, theta_r, theta_rp
    e_ab = expectation_closed_form(a, b, c)
    e_abp = expectation_closed_form(a, bp, c)
    e_apb = expectation_closed_form(ap, b, c)
    e_apbp = expectation_closed_form(ap, bp, c)
    return np.abs(e_ab - e_abp) + np.abs(e_apb + e_apbp)


def chsh_S(angles: BellAngles, c: float, roles: RoleAssignment) -> float:
    """CHSH statistic |E(a,b) - E(a,b')| + |E(a',b) + E(a',b')| at contrast c."""
    return float(chsh_S_values(*angles.as_tuple(), c, roles))


def fixed_angle_curve_S(mu_lambda) -> float | np.ndarray:
    """S at the canonical angles under LITERAL roles, as a function of mu*lambda.

    Equals sqrt(2) + sqrt(2)*|cos(2*mu*lambda)|: full contrast gives
    2*sqrt(2), vanishing contrast sqrt(2). Even in mu*lambda and periodic
    with period pi.
    """
    curve = np.sqrt(2.0) * (1.0 + np.abs(np.cos(2.0 * np.asarray(mu_lambda, dtype=float))))
    return float(curve) if np.ndim(mu_lambda) == 0 else curve


def contrast(mu_lambda: float) -> float:
    """Interference contrast c = cos(2*mu*lambda)."""
    return float(np.cos(2.0 * float(mu_lambda)))


def analytic_max_S(c: float) -> float:
    """Largest attainable S at contrast c: 2*sqrt(1 + c^2).

    This is the re-optimized maximum over all four angles; it is attained
    by :func:`analytic_optimal_angles` under STANDARD roles and confirmed
    numerically by the grid search in :mod:`topobell.oracle`.
    """
    _check_contrast(c)
    return float(2.0 * np.sqrt(1.0 + float(c) ** 2))


def analytic_optimal_angles(mu_lambda: float) -> BellAngles:
    """Extremal angle tuple (0, arctan c, pi/2, pi - arctan c) for c = cos(2*mu*lambda).

    Under STANDARD roles these angles attain 2*sqrt(1 + c^2). The mirrored
    solution with arctan replaced by its negative attains the same value.
    """
    c = contrast(mu_lambda)
    t = float(np.arctan(c))
    return BellAngles(0.0, t, np.pi / 2, np.pi - t)
