"""Closed-form joint-detection distributions.

Pure trigonometric evaluations, deliberately free of any matrix or
pipeline code so they can serve as one side of an independent cross-check
against the simulators in :mod:`topobell.entangled` and
:mod:`topobell.oracle`.
"""

from __future__ import annotations

import numpy as np

from .entangled import DetectionDistribution


def scenario_a_distribution(theta_l: float, theta_r: float) -> DetectionDistribution:
    """Open-geometry probabilities (cos^2, sin^2, sin^2, cos^2)/2 of half the difference."""
    half = 0.5 * (float(theta_l) - float(theta_r))
    c2, s2 = np.cos(half) ** 2, np.sin(half) ** 2
    return DetectionDistribution(0.5 * c2, 0.5 * s2, 0.5 * s2, 0.5 * c2)


def scenario_b_distribution(theta_l: float, theta_r: float) -> DetectionDistribution:
    """Interferometer probabilities (sin^2, cos^2, cos^2, sin^2)/2 of half the difference."""
    half = 0.5 * (float(theta_l) - float(theta_r))
    c2, s2 = np.cos(half) ** 2, np.sin(half) ** 2
    return DetectionDistribution(0.5 * s2, 0.5 * c2, 0.5 * c2, 0.5 * s2)


def scenario_c_distribution(theta_l: float, theta_r: float,
                            two_mu_lambda: float) -> DetectionDistribution:
    """Spin-conditioned loop-phase probabilities.

    p(D0',D0) = p(D1',D1) = (1 - cos tL cos tR - sin tL sin tR cos(2 mu lambda))/4
    p(D0',D1) = p(D1',D0) = (1 + cos tL cos tR + sin tL sin tR cos(2 mu lambda))/4

    The diagonal/antidiagonal detector symmetry is itself checked against
    the simulated pipeline in the verification suites rather than assumed.
    """
    tl, tr = float(theta_l), float(theta_r)
    k = np.cos(float(two_mu_lambda))
    same = 0.25 * (1.0 - np.cos(tl) * np.cos(tr) - np.sin(tl) * np.sin(tr) * k)
    diff = 0.25 * (1.0 + np.cos(tl) * np.cos(tr) + np.sin(tl) * np.sin(tr) * k)
    return DetectionDistribution(same, diff, diff, same)
