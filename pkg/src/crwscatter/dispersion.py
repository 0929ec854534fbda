"""Dispersion relation, wave-number branch selection and flow bookkeeping.

All functions here are pure; they are safe to call concurrently.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .types import ChannelWave, CrwParams, ScatteringResult


def dispersion_energy(crw: CrwParams, k: float) -> float:
    """Energy of a propagating wave with wave number ``k`` in chain ``crw``.

    Parameters
    ----------
    crw : CrwParams
        The chain.
    k : float
        Wave number, strictly inside (0, pi).

    Returns
    -------
    float
        ``omega - 2 * xi * cos(k)``.
    """
    if not (0.0 < k < math.pi):
        raise DomainError(f"wave number must lie in (0, pi), got k={k}")
    return crw.omega - 2.0 * crw.xi * math.cos(k)


def wave_number(crw: CrwParams, energy: float) -> ChannelWave:
    """Invert the dispersion relation, selecting the decaying branch off band.

    Inside the band the real solution ``k = arccos((omega - E) / (2 xi))``
    in [0, pi] is returned. Outside the band the wave number is complex
    with Im(k) > 0, chosen so that exp(i k j) decays as j grows: below the
    band ``k = i kappa``, above it ``k = pi + i kappa`` with
    ``cosh(kappa) = |omega - E| / (2 xi)``. Exact band edges come back
    with ``propagating=False`` because their group velocity vanishes.
    """
    c = (crw.omega - energy) / (2.0 * crw.xi)
    if abs(c) <= 1.0:
        k = complex(math.acos(c), 0.0)
        return ChannelWave(energy=energy, k=k, xi=crw.xi, propagating=abs(c) < 1.0)
    if c > 1.0:  # below the band
        k = 1j * math.acosh(c)
    else:  # above the band
        k = math.pi + 1j * math.acosh(-c)
    return ChannelWave(energy=energy, k=k, xi=crw.xi, propagating=False)


def flow(amplitude: complex, outgoing: ChannelWave, incident: ChannelWave) -> float:
    """Outgoing flux carried by ``amplitude``, normalized to unit incident flux.

    The normalization weighs the squared modulus by the group-velocity
    ratio ``(xi_out sin k_out) / (xi_in sin k_in)`` of the two channels.
    Evanescent outgoing waves carry exactly zero flux. An evanescent
    incident wave has no flux to normalize by and is refused.
    """
    if not incident.propagating:
        raise DomainError("incident channel is not propagating; flow is undefined")
    if not outgoing.propagating:
        return 0.0
    return abs(amplitude) ** 2 * outgoing.group_velocity / incident.group_velocity


def assemble_result(energy: float, labels: tuple[str, ...], amplitudes: np.ndarray,
                    waves: tuple[ChannelWave, ...], d_ratio: float) -> ScatteringResult:
    """Build a ScatteringResult, filling flows column by incident channel."""
    n = len(labels)
    flows = np.full((n, n), np.nan)
    for j in range(n):
        if not waves[j].propagating:
            continue
        for i in range(n):
            flows[i, j] = flow(amplitudes[i, j], waves[i], waves[j])
    return ScatteringResult(energy=energy, labels=labels, amplitudes=amplitudes,
                            flows=flows, channels=tuple(waves), d_ratio=d_ratio)


__all__ = ["dispersion_energy", "wave_number", "flow", "assemble_result"]
