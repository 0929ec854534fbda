"""Two coupled semi-infinite chains with a shared dissipative end cavity.

The closed-form scattering matrix of the junction, the effective couplings
the dissipative cavity induces between the chain ends, and the analytic
parameter sets that make the transport perfectly one-way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .dispersion import assemble_result, wave_number
from .errors import DomainError, PoleError, SingularMatrixError
from .types import TWO_PI, CrwParams, NodeParams, ScatteringResult

SINGULAR_TOL = 1e-14


@dataclass(frozen=True)
class TwoPortSystem:
    """Chains a and b plus the node parameters (dissipative cavity allowed)."""

    crw_a: CrwParams
    crw_b: CrwParams
    node: NodeParams

    @property
    def delta(self) -> float:
        """Detuning of the dissipative cavity from chain a's cavities."""
        return self.node.omega_c - self.crw_a.omega


def symmetric_two_port(xi: float = 1.0, j_c: float = 1.0, gamma: float = 0.0,
                       delta: float = 0.0, phi: float = 0.0, j_ab: float | None = None,
                       omega: float = 0.0) -> TwoPortSystem:
    """Convenience builder for identical chains symmetrically coupled to the cavity."""
    crw = CrwParams(omega=omega, xi=xi)
    node = NodeParams(j_ab=xi if j_ab is None else j_ab, j_bc=j_c, j_ca=j_c,
                      phi=phi, omega_c=omega + delta, gamma=gamma)
    return TwoPortSystem(crw_a=crw, crw_b=crw, node=node)


@dataclass(frozen=True)
class EffectiveCouplings:
    """Couplings between the chain ends mediated by the dissipative cavity."""

    j_ba_eff: complex
    j_aa_eff: complex
    j_bb_eff: complex


def effective_couplings(sys: TwoPortSystem, energy: float) -> EffectiveCouplings:
    """Cavity-mediated couplings at a given photon energy.

    They share the resonant denominator ``E - omega_c + i gamma`` and
    therefore satisfy ``j_ba_eff**2 == j_aa_eff * j_bb_eff`` identically.
    """
    den = energy - sys.node.omega_c + 1j * sys.node.gamma
    if den == 0.0:
        raise PoleError("energy sits exactly on the undamped cavity resonance")
    return EffectiveCouplings(
        j_ba_eff=sys.node.j_bc * sys.node.j_ca / den,
        j_aa_eff=sys.node.j_ca ** 2 / den,
        j_bb_eff=sys.node.j_bc ** 2 / den,
    )


def smatrix_two_port(sys: TwoPortSystem, energy: float) -> ScatteringResult:
    """Full 2x2 scattering matrix of the junction at one energy.

    Amplitudes are defined whenever the denominator is regular; flows are
    reported per incident channel and are NaN for a column whose channel
    cannot propagate at this energy.
    """
    if energy == sys.node.omega_c and sys.node.gamma == 0.0:
        raise PoleError("energy sits exactly on the undamped cavity resonance")
    e = np.array([energy], dtype=np.float64)
    phi = np.array([sys.node.phi], dtype=np.float64)
    oc = np.array([sys.node.omega_c], dtype=np.float64)
    s, _, d_ratio = kernels.two_port_smatrix_batch(
        e, phi, oc, sys.crw_a.omega, sys.crw_a.xi, sys.crw_b.omega, sys.crw_b.xi,
        sys.node.j_ab, sys.node.j_bc, sys.node.j_ca, sys.node.gamma)
    dr = float(d_ratio[0])
    if not math.isfinite(dr) or dr < SINGULAR_TOL:
        raise SingularMatrixError(
            f"scattering denominator vanishes at energy {energy} (ratio {dr:.3e})")
    waves = (wave_number(sys.crw_a, energy), wave_number(sys.crw_b, energy))
    return assemble_result(energy, ("a", "b"), s[0], waves, dr)


@dataclass(frozen=True)
class NonreciprocityConditions:
    """Analytic parameter set for perfect one-way transport.

    ``phi_forward`` sends a->b perfectly (unit forward flow, zero reverse)
    at wave number ``k_perfect``; the mirrored phase ``phi_backward``
    reverses the direction at the same wave number. Both phases require
    the same detuning ``delta_required`` and ``j_ab_required`` hopping.
    ``balanced`` is set when ``j_c**2 == gamma * xi`` so the perfect point
    sits at phase pi/2 with zero detuning.
    """

    xi: float
    j_c: float
    gamma: float
    phi_forward: float
    phi_backward: float
    k_perfect: float
    delta_required: float
    j_ab_required: float
    balanced: bool
    delta_given: float | None = None
    delta_matches: bool | None = None


def nonreciprocity_conditions(xi: float, j_c: float, gamma: float,
                              delta: float | None = None,
                              tol: float = 1e-10) -> NonreciprocityConditions:
    """Phases, wave number and detuning for perfect nonreciprocity.

    Requires ``gamma * xi <= j_c**2``; otherwise no real phase solves the
    one-way condition.
    """
    if xi <= 0.0:
        raise DomainError("xi must be positive")
    if j_c <= 0.0:
        raise DomainError("j_c must be positive for a one-way point to exist")
    if gamma < 0.0:
        raise DomainError("gamma must be >= 0")
    ratio = gamma * xi / j_c ** 2
    if ratio > 1.0:
        raise DomainError(
            f"gamma*xi = {gamma * xi:g} exceeds j_c**2 = {j_c ** 2:g}; no real phase")
    phi_fwd = math.asin(ratio)
    delta_req = (j_c ** 2 - 2.0 * xi ** 2) * math.cos(phi_fwd) / xi
    matches = None if delta is None else bool(abs(delta - delta_req) <= tol)
    return NonreciprocityConditions(
        xi=xi, j_c=j_c, gamma=gamma,
        phi_forward=phi_fwd,
        phi_backward=TWO_PI - phi_fwd,
        k_perfect=phi_fwd,
        delta_required=delta_req,
        j_ab_required=xi,
        balanced=abs(j_c ** 2 - gamma * xi) <= tol,
        delta_given=delta,
        delta_matches=matches,
    )


def params_for_detuning(xi: float, delta: float, phi: float) -> tuple[float, float]:
    """Couplings (j_c, gamma) that keep the perfect point at phase ``phi``
    for a prescribed cavity detuning ``delta``.

    Singular at phase pi/2: there the detuning is forced to zero and any
    pair with ``j_c**2 == gamma * xi`` works instead; this function refuses
    that phase. For phases above pi the returned rate is negative (gain
    would be required); mirror the phase to ``2*pi - phi`` for the passive
    device.
    """
    if xi <= 0.0:
        raise DomainError("xi must be positive")
    c = math.cos(phi)
    if abs(c) < 1e-12:
        raise DomainError(
            "phase pi/2 leaves the coupling undetermined: the detuning must be "
            "zero and any j_c**2 == gamma*xi is optimal there")
    radicand = delta * xi / c + 2.0 * xi ** 2
    if radicand <= 0.0:
        raise DomainError(
            f"detuning {delta:g} at phase {phi:g} gives a nonpositive radicand "
            f"({radicand:g}); no real coupling strength exists")
    j_c = math.sqrt(radicand)
    gamma = j_c ** 2 * math.sin(phi) / xi
    return j_c, gamma


__all__ = [
    "TwoPortSystem",
    "symmetric_two_port",
    "EffectiveCouplings",
    "effective_couplings",
    "smatrix_two_port",
    "NonreciprocityConditions",
    "nonreciprocity_conditions",
    "params_for_detuning",
    "SINGULAR_TOL",
]
