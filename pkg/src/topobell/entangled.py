"""Branch-decomposed two-quanton states and the interferometer scenarios.

A source emits a spatially correlated pair in the path singlet
(|0>_L |1>_R - |1>_L |0>_R)/sqrt(2). Each singlet term is tracked as a
:class:`SpinBranch`: the spin pair (+1,-1) or (-1,+1) rides along with the
term it descended from and conditions any spin-dependent loop phase, while
splitters and retarders act on the path amplitudes only. Detection reads
out paths, not spins, and the branches interfere coherently; this is what
makes the spin-conditioned loop phase observable in scenario C.

Scenarios:

* A: source, retarders, one splitter per side (open geometry). The two
  sides are mirror images, so the right-hand detectors are labeled
  opposite to the right splitter's ports; the swap commutes with the
  splitter, so it is applied to the readout column.
* B: full splitter-retarder-splitter interferometer per side.
* C: scenario B with a confined field source between the interferometers;
  each branch picks up exp(-i*s*mu*lambda) per side.
* AB: scenario B with a spin-independent flux phase, identical for both
  branches, hence invisible in every joint probability.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .optics import beam_splitter, path_phase_operator, phase_retarder, spin_loop_phase

NORM_TOL = 1e-12
PROB_TOL = 1e-12


class PhaseMode(enum.Enum):
    """How the topological phase couples to the quantons."""

    SPIN_CONDITIONED = "spin-conditioned"
    SPIN_INDEPENDENT_AB = "spin-independent-ab"
    PATH_INTEGRALS = "path-integrals"


class Scenario(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    AB = "AB"


@dataclass(frozen=True)
class TopoPhaseSpec:
    """Parameters of the topological phase, one populated field set per mode.

    SPIN_CONDITIONED: dipole magnitude ``mu`` and per-side closed-loop
    integrals ``lambda_l``, ``lambda_r``. SPIN_INDEPENDENT_AB: a single
    ``flux`` value with the charge factor already folded in.
    PATH_INTEGRALS: ``mu`` plus the four per-arm line integrals.

    ``mu`` is a magnetic dipole encircling an electric line source; the
    dual configuration (electric dipole around a magnetic line source) is
    the same numbers with the field roles swapped, so it needs no mode of
    its own.
    """

    mode: PhaseMode
    mu: float | None = None
    lambda_l: float | None = None
    lambda_r: float | None = None
    flux: float | None = None
    i_u_l: float | None = None
    i_d_l: float | None = None
    i_u_r: float | None = None
    i_d_r: float | None = None

    _FIELDS_BY_MODE = {
        PhaseMode.SPIN_CONDITIONED: ("mu", "lambda_l", "lambda_r"),
        PhaseMode.SPIN_INDEPENDENT_AB: ("flux",),
        PhaseMode.PATH_INTEGRALS: ("mu", "i_u_l", "i_d_l", "i_u_r", "i_d_r"),
    }

    def __post_init__(self):
        wanted = self._FIELDS_BY_MODE[self.mode]
        for name in ("mu", "lambda_l", "lambda_r", "flux", "i_u_l", "i_d_l", "i_u_r", "i_d_r"):
            value = getattr(self, name)
            if name in wanted:
                if value is None:
                    raise ValueError(f"{self.mode.value} mode requires field {name!r}")
                if not np.isfinite(value):
                    raise ValueError(f"field {name!r} must be finite")
            elif value is not None:
                raise ValueError(f"field {name!r} is not part of {self.mode.value} mode")

    @classmethod
    def spin_conditioned(cls, mu: float, lambda_l: float, lambda_r: float) -> "TopoPhaseSpec":
        return cls(PhaseMode.SPIN_CONDITIONED, mu=float(mu),
                   lambda_l=float(lambda_l), lambda_r=float(lambda_r))

    @classmethod
    def aharonov_bohm(cls, flux: float) -> "TopoPhaseSpec":
        return cls(PhaseMode.SPIN_INDEPENDENT_AB, flux=float(flux))

    @classmethod
    def path_integrals(cls, mu: float, i_u_l: float, i_d_l: float,
                       i_u_r: float, i_d_r: float) -> "TopoPhaseSpec":
        return cls(PhaseMode.PATH_INTEGRALS, mu=float(mu),
                   i_u_l=float(i_u_l), i_d_l=float(i_d_l),
                   i_u_r=float(i_u_r), i_d_r=float(i_d_r))


@dataclass(frozen=True)
class SpinBranch:
    """One singlet term: a spin pair and its 4-component joint path amplitude."""

    spin_l: int
    spin_r: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.spin_l not in (1, -1) or self.spin_r not in (1, -1):
            raise ValueError("spin labels must be +1 or -1")
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (4,):
            raise ValueError(f"branch amplitudes must have shape (4,), got {amp.shape}")
        if not np.all(np.isfinite(amp.view(float))):
            raise ValueError("branch amplitudes must be finite")
        amp = amp.copy()
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def spin_pair(self) -> tuple[int, int]:
        return (self.spin_l, self.spin_r)


@dataclass(frozen=True)
class TwoQuantonState:
    """At most two spin branches with unit total norm."""

    branches: tuple[SpinBranch, ...]

    def __post_init__(self):
        branches = tuple(self.branches)
        if not 1 <= len(branches) <= 2:
            raise ValueError("a two-quanton state holds one or two spin branches")
        pairs = [b.spin_pair for b in branches]
        if len(set(pairs)) != len(pairs):
            raise ValueError("branch spin pairs must be distinct")
        total = sum(float(np.sum(np.abs(b.amplitudes) ** 2)) for b in branches)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"total squared norm is {total}, expected 1")
        object.__setattr__(self, "branches", branches)

    def coherent_amplitudes(self) -> np.ndarray:
        """Path amplitudes summed coherently over branches."""
        total = np.zeros(4, dtype=complex)
        for b in self.branches:
            total = total + b.amplitudes
        return total

    def joint_path_probabilities(self) -> np.ndarray:
        """Detection probabilities over the joint path basis."""
        return np.abs(self.coherent_amplitudes()) ** 2

    def swapped_sides(self) -> "TwoQuantonState":
        """Exchange the left and right labels of both quantons."""
        swapped = []
        for b in self.branches:
            amp = b.amplitudes.reshape(2, 2).T.reshape(4)
            swapped.append(SpinBranch(b.spin_r, b.spin_l, amp))
        return TwoQuantonState(tuple(swapped))


@dataclass(frozen=True)
class DetectionDistribution:
    """Joint detection probabilities indexed (D0',D0), (D0',D1), (D1',D0), (D1',D1)."""

    p_d0p_d0: float
    p_d0p_d1: float
    p_d1p_d0: float
    p_d1p_d1: float

    def __post_init__(self):
        values = self.as_array()
        if np.any(values < -PROB_TOL) or np.any(values > 1.0 + PROB_TOL):
            raise ValueError(f"probabilities out of [0, 1]: {values.tolist()}")
        total = float(values.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {total}, expected 1")

    def as_array(self) -> np.ndarray:
        return np.array([self.p_d0p_d0, self.p_d0p_d1, self.p_d1p_d0, self.p_d1p_d1])

    @classmethod
    def from_array(cls, p: np.ndarray) -> "DetectionDistribution":
        arr = np.asarray(p, dtype=float)
        if arr.shape != (4,):
            raise ValueError(f"expected 4 probabilities, got shape {arr.shape}")
        return cls(*(float(x) for x in arr))


def singlet_source() -> TwoQuantonState:
    """Path singlet (|0,1> - |1,0>)/sqrt(2) with anticorrelated spin labels."""
    up_down = np.zeros(4, dtype=complex)
    up_down[1] = 1.0 / np.sqrt(2.0)
    down_up = np.zeros(4, dtype=complex)
    down_up[2] = -1.0 / np.sqrt(2.0)
    return TwoQuantonState((
        SpinBranch(1, -1, up_down),
        SpinBranch(-1, 1, down_up),
    ))


# shared read-only instances for the scenario hot paths
_SINGLET = singlet_source()
_BS = beam_splitter()
_BS.setflags(write=False)


def _apply_sides(amp: np.ndarray, m_l: np.ndarray, m_r: np.ndarray) -> np.ndarray:
    """Apply per-side 2x2 operators to a joint 4-amplitude (L index major)."""
    return (m_l @ amp.reshape(2, 2) @ m_r.T).reshape(4)


def _require_mode(topo: TopoPhaseSpec, mode: PhaseMode, scenario: str) -> None:
    if not isinstance(topo, TopoPhaseSpec) or topo.mode is not mode:
        got = topo.mode.value if isinstance(topo, TopoPhaseSpec) else type(topo).__name__
        raise ValueError(f"scenario {scenario} requires a {mode.value} phase spec, got {got}")


def run_scenario_a(theta_l: float, theta_r: float,
                   topo: TopoPhaseSpec | None = None) -> DetectionDistribution:
    """Open geometry: source, retarders, one splitter per side.

    With zero (or symmetric) arm integrals the joint probabilities are
    (cos^2, sin^2, sin^2, cos^2)/2 of half the retarder difference. The
    quarter-wave offset against scenario B comes from the single splitter
    per side together with the mirrored right-hand detector labels.
    """
    if topo is not None:
        _require_mode(topo, PhaseMode.PATH_INTEGRALS, "A")
        t_l = path_phase_operator(topo.i_u_l, topo.i_d_l, topo.mu)
        t_r = path_phase_operator(topo.i_u_r, topo.i_d_r, topo.mu)
    else:
        t_l = t_r = np.eye(2, dtype=complex)
    p_l, p_r = phase_retarder(theta_l), phase_retarder(theta_r)

    total = np.zeros(4, dtype=complex)
    for branch in _SINGLET.branches:
        amp = _apply_sides(branch.amplitudes, p_l, p_r)
        amp = _apply_sides(amp, t_l, t_r)
        amp = _apply_sides(amp, _BS, _BS)
        total = total + amp
    # mirrored right side: detector j reads splitter port 1-j
    probs = np.abs(total.reshape(2, 2)[:, ::-1].reshape(4)) ** 2
    return DetectionDistribution.from_array(probs)


def run_scenario_b(theta_l: float, theta_r: float) -> DetectionDistribution:
    """Full interferometer per side: splitter, retarder, splitter."""
    p_l, p_r = phase_retarder(theta_l), phase_retarder(theta_r)

    total = np.zeros(4, dtype=complex)
    for branch in _SINGLET.branches:
        amp = _apply_sides(branch.amplitudes, _BS, _BS)
        amp = _apply_sides(amp, p_l, p_r)
        amp = _apply_sides(amp, _BS, _BS)
        total = total + amp
    return DetectionDistribution.from_array(np.abs(total) ** 2)


def run_scenario_c(theta_l: float, theta_r: float,
                   topo: TopoPhaseSpec) -> DetectionDistribution:
    """Scenario B with a spin-conditioned loop phase between the splitters.

    Branch (s_l, s_r) is multiplied by
    exp(-i*mu*(s_l*lambda_l + s_r*lambda_r)); only lambda_l - lambda_r
    survives in the probabilities.
    """
    _require_mode(topo, PhaseMode.SPIN_CONDITIONED, "C")
    p_l, p_r = phase_retarder(theta_l), phase_retarder(theta_r)

    total = np.zeros(4, dtype=complex)
    for branch in _SINGLET.branches:
        amp = _apply_sides(branch.amplitudes, _BS, _BS)
        amp = _apply_sides(amp, p_l, p_r)
        amp = amp * (spin_loop_phase(branch.spin_l, topo.mu, topo.lambda_l)
                     * spin_loop_phase(branch.spin_r, topo.mu, topo.lambda_r))
        amp = _apply_sides(amp, _BS, _BS)
        total = total + amp
    return DetectionDistribution.from_array(np.abs(total) ** 2)


def run_scenario_ab(theta_l: float, theta_r: float,
                    topo: TopoPhaseSpec) -> DetectionDistribution:
    """Scenario B with a spin-independent flux phase.

    Both branches acquire the same factor exp(-i*flux), a global phase,
    so the distribution equals scenario B for every flux.
    """
    _require_mode(topo, PhaseMode.SPIN_INDEPENDENT_AB, "AB")
    p_l, p_r = phase_retarder(theta_l), phase_retarder(theta_r)
    flux_phase = np.exp(-1j * topo.flux)

    total = np.zeros(4, dtype=complex)
    for branch in _SINGLET.branches:
        amp = _apply_sides(branch.amplitudes, _BS, _BS)
        amp = _apply_sides(amp, p_l, p_r)
        amp = amp * flux_phase
        amp = _apply_sides(amp, _BS, _BS)
        total = total + amp
    return DetectionDistribution.from_array(np.abs(total) ** 2)


def run_scenario(scenario: Scenario, theta_l: float, theta_r: float,
                 topo: TopoPhaseSpec | None = None) -> DetectionDistribution:
    """Dispatch to the scenario runners with mode validation."""
    if scenario is Scenario.A:
        return run_scenario_a(theta_l, theta_r, topo)
    if scenario is Scenario.B:
        if topo is not None:
            raise ValueError("scenario B takes no topological phase spec")
        return run_scenario_b(theta_l, theta_r)
    if scenario is Scenario.C:
        if topo is None:
            raise ValueError("scenario C requires a spin-conditioned phase spec")
        return run_scenario_c(theta_l, theta_r, topo)
    if scenario is Scenario.AB:
        if topo is None:
            raise ValueError("scenario AB requires a flux phase spec")
        return run_scenario_ab(theta_l, theta_r, topo)
    raise ValueError(f"unknown scenario {scenario!r}")
