"""T-shaped junction of three pairwise-coupled semi-infinite chains.

The generic 3x3 scattering solve is the primary computation; the analytic
closed forms for the symmetric junction are kept as an independent
validation path, together with the circulator condition report and the
band-overlap bookkeeping used to annotate total-reflection regions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .dispersion import assemble_result, wave_number
from .errors import DomainError, SingularMatrixError
from .types import TWO_PI, CrwParams, NodeParams, ScatteringResult, angular_distance

SINGULAR_TOL = 1e-14

#: port cycles for the two circulation senses
CLOCKWISE = ("a", "b", "c")
COUNTERCLOCKWISE = ("a", "c", "b")


@dataclass(frozen=True)
class ThreePortSystem:
    """Three chains meeting at a lossless node (no dissipative cavity).

    ``node.omega_c`` is not used here; the frequency of chain c's cavities
    comes from ``crw_c.omega``.
    """

    crw_a: CrwParams
    crw_b: CrwParams
    crw_c: CrwParams
    node: NodeParams

    def __post_init__(self):
        if self.node.gamma != 0.0:
            raise DomainError("three-port junction is lossless; node.gamma must be 0")


def symmetric_three_port(xi: float = 1.0, xi_c: float = 1.0, j_c: float = 1.0,
                         phi: float = 0.0, j_ab: float | None = None,
                         omega: float = 0.0) -> ThreePortSystem:
    """Builder for the symmetric junction: equal frequencies, a/b chains alike."""
    crw = CrwParams(omega=omega, xi=xi)
    crw_c = CrwParams(omega=omega, xi=xi_c)
    node = NodeParams(j_ab=xi if j_ab is None else j_ab, j_bc=j_c, j_ca=j_c,
                      phi=phi, omega_c=omega, gamma=0.0)
    return ThreePortSystem(crw_a=crw, crw_b=crw, crw_c=crw_c, node=node)


def _waves(sys: ThreePortSystem, energy: float):
    return (wave_number(sys.crw_a, energy),
            wave_number(sys.crw_b, energy),
            wave_number(sys.crw_c, energy))


def smatrix_three_port(sys: ThreePortSystem, energy: float) -> ScatteringResult:
    """3x3 scattering matrix from the direct node solve at one energy.

    Channels whose band excludes the energy enter with their complex wave
    number; their outgoing flows are exactly zero and their columns (no
    incident flux) are NaN.
    """
    e = np.array([energy], dtype=np.float64)
    phi = np.array([sys.node.phi], dtype=np.float64)
    s, _, det_ratio = kernels.three_port_smatrix_batch(
        e, phi, sys.crw_a.omega, sys.crw_a.xi, sys.crw_b.omega, sys.crw_b.xi,
        sys.crw_c.omega, sys.crw_c.xi, sys.node.j_ab, sys.node.j_bc, sys.node.j_ca)
    dr = float(det_ratio[0])
    if not math.isfinite(dr) or dr < SINGULAR_TOL:
        raise SingularMatrixError(
            f"node matrix is singular at energy {energy} (ratio {dr:.3e})")
    return assemble_result(energy, ("a", "b", "c"), s[0], _waves(sys, energy), dr)


def _require_symmetric(sys: ThreePortSystem, tol: float = 1e-12):
    checks = {
        "omega_a == omega_b": abs(sys.crw_a.omega - sys.crw_b.omega),
        "omega_a == omega_c": abs(sys.crw_a.omega - sys.crw_c.omega),
        "xi_a == xi_b": abs(sys.crw_a.xi - sys.crw_b.xi),
        "j_ab == xi_a": abs(sys.node.j_ab - sys.crw_a.xi),
        "j_bc == j_ca": abs(sys.node.j_bc - sys.node.j_ca),
    }
    broken = [name for name, dev in checks.items() if dev > tol]
    if broken:
        raise DomainError(
            "symmetric-junction assumptions violated: " + ", ".join(broken))


def smatrix_three_port_closed_form(sys: ThreePortSystem, energy: float) -> ScatteringResult:
    """Analytic amplitudes for the symmetric junction.

    Valid when all chains share one frequency, chains a and b are
    identical with hopping equal to the a-b coupling, and both chain-c
    couplings agree; the incident energy must lie in the a/b band.
    """
    _require_symmetric(sys)
    waves = _waves(sys, energy)
    if not waves[0].propagating:
        raise DomainError(
            f"energy {energy} is outside the propagating band of chains a/b")
    e = np.array([energy], dtype=np.float64)
    phi = np.array([sys.node.phi], dtype=np.float64)
    s, _, d_ratio = kernels.three_port_closed_form_batch(
        e, phi, sys.crw_a.omega, sys.crw_a.xi, sys.crw_c.xi, sys.node.j_bc)
    dr = float(d_ratio[0])
    if not math.isfinite(dr) or dr < SINGULAR_TOL:
        raise SingularMatrixError(
            f"closed-form denominator vanishes at energy {energy} (ratio {dr:.3e})")
    return assemble_result(energy, ("a", "b", "c"), s[0], waves, dr)


@dataclass(frozen=True)
class CirculatorConditions:
    """Whether and where the junction routes photons perfectly in a cycle."""

    achievable: bool
    regime: str | None  # "equal_couplings" | "matched_couplings" | None
    k_perfect: float | None
    phi: float
    direction: str | None  # "clockwise" | "counterclockwise"
    cycle: tuple[str, ...] | None
    reason: str


def circulator_conditions(sys: ThreePortSystem, tol: float = 1e-10) -> CirculatorConditions:
    """Classify the junction against the perfect-circulation conditions.

    Equal couplings (``j_c == xi_c == xi``) circulate perfectly at
    ``k = k_c = phi`` (phase below pi, clockwise a->b->c->a) or at
    ``k = 2*pi - phi`` (phase above pi, counterclockwise). With unequal
    couplings a perfect point survives only at band centre ``k = pi/2``
    for phases pi/2 or 3*pi/2 and ``j_c**2 == xi * xi_c``.
    """
    _require_symmetric(sys)
    xi = sys.crw_a.xi
    xi_c = sys.crw_c.xi
    j_c = sys.node.j_bc
    phi = sys.node.phi

    if angular_distance(phi, 0.0) <= tol or angular_distance(phi, math.pi) <= tol:
        return CirculatorConditions(
            achievable=False, regime=None, k_perfect=None, phi=phi, direction=None,
            cycle=None, reason="phase is a multiple of pi: transport is reciprocal")

    if phi < math.pi:
        direction, cycle, k_perfect = "clockwise", CLOCKWISE, phi
    else:
        direction, cycle, k_perfect = "counterclockwise", COUNTERCLOCKWISE, TWO_PI - phi

    if abs(j_c - xi_c) <= tol and abs(j_c - xi) <= tol:
        return CirculatorConditions(
            achievable=True, regime="equal_couplings", k_perfect=k_perfect, phi=phi,
            direction=direction, cycle=cycle,
            reason="equal couplings: perfect circulation at k = k_c matching the phase")

    matched = abs(j_c ** 2 - xi * xi_c) <= tol
    at_quarter = (angular_distance(phi, math.pi / 2) <= tol
                  or angular_distance(phi, 3 * math.pi / 2) <= tol)
    if matched and at_quarter:
        return CirculatorConditions(
            achievable=True, regime="matched_couplings", k_perfect=math.pi / 2, phi=phi,
            direction=direction, cycle=cycle,
            reason="j_c**2 == xi*xi_c: perfect circulation at band centre k = k_c = pi/2")

    if matched:
        reason = "j_c**2 == xi*xi_c holds but the phase is not pi/2 or 3*pi/2"
    else:
        reason = (f"couplings break both conditions: j_c={j_c:g}, xi={xi:g}, "
                  f"xi_c={xi_c:g} (need j_c == xi_c == xi, or j_c**2 == xi*xi_c "
                  "with phase pi/2 or 3*pi/2)")
    return CirculatorConditions(
        achievable=False, regime=None, k_perfect=None, phi=phi, direction=None,
        cycle=None, reason=reason)


@dataclass(frozen=True)
class BandOverlap:
    """Per-chain propagating bands, their intersection and the wave-number
    windows that map onto the intersection."""

    bands: dict[str, tuple[float, float]]
    overlap: tuple[float, float] | None
    k_ranges: dict[str, tuple[float, float]]


def band_overlap(sys: ThreePortSystem) -> BandOverlap:
    """Energy bands of the three chains and their common window.

    Outside the common window at least one chain is evanescent, so
    incident photons there reflect totally; ``k_ranges`` gives, per chain,
    the wave numbers whose energies fall inside the window.
    """
    chains = {"a": sys.crw_a, "b": sys.crw_b, "c": sys.crw_c}
    bands = {name: crw.band for name, crw in chains.items()}
    lo = max(b[0] for b in bands.values())
    hi = min(b[1] for b in bands.values())
    if lo >= hi:
        return BandOverlap(bands=bands, overlap=None, k_ranges={})
    k_ranges = {}
    for name, crw in chains.items():
        # cos(k) decreases with energy, so the window order swaps
        c_hi = (crw.omega - lo) / (2.0 * crw.xi)
        c_lo = (crw.omega - hi) / (2.0 * crw.xi)
        k_ranges[name] = (math.acos(min(1.0, max(-1.0, c_hi))),
                          math.acos(min(1.0, max(-1.0, c_lo))))
    return BandOverlap(bands=bands, overlap=(lo, hi), k_ranges=k_ranges)


__all__ = [
    "ThreePortSystem",
    "symmetric_three_port",
    "smatrix_three_port",
    "smatrix_three_port_closed_form",
    "CirculatorConditions",
    "circulator_conditions",
    "BandOverlap",
    "band_overlap",
    "CLOCKWISE",
    "COUNTERCLOCKWISE",
    "SINGULAR_TOL",
]
