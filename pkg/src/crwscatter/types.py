"""Domain types shared by the two-port and three-port configurations.

Units: every frequency, energy and coupling strength is expressed in units
of the reference hopping strength of chain a (set ``xi = 1`` there by
default), matching the dimensionless parameterization used throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi

#: default absolute tolerance for invariant checks (configurable per call)
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class CrwParams:
    """One semi-infinite coupled-resonator chain.

    ``omega`` is the common on-site frequency of the chain's cavities and
    ``xi`` the nearest-neighbour hopping strength (> 0). The chain supports
    propagating states in the band ``[omega - 2 xi, omega + 2 xi]``.
    """

    omega: float = 0.0
    xi: float = 1.0

    def __post_init__(self):
        if not (self.xi > 0.0):
            raise DomainError(f"hopping strength must be positive, got xi={self.xi}")

    @property
    def band(self) -> tuple[float, float]:
        return (self.omega - 2.0 * self.xi, self.omega + 2.0 * self.xi)

    def contains(self, energy: float) -> bool:
        lo, hi = self.band
        return lo <= energy <= hi


@dataclass(frozen=True)
class NodeParams:
    """The three coupled end cavities where scattering happens.

    ``phi`` is the single gauge-invariant total phase around the coupling
    loop; the individual link phases have no separate physical meaning and
    are never stored. ``phi`` is normalized into [0, 2*pi). ``omega_c`` and
    ``gamma`` describe the dissipative cavity and are only meaningful for
    the two-port junction (the three-port replaces that cavity with a
    third chain and requires ``gamma == 0``).
    """

    j_ab: float
    j_bc: float
    j_ca: float
    phi: float = 0.0
    omega_c: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("j_ab", "j_bc", "j_ca"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"coupling strength {name} must be >= 0")
        if self.gamma < 0.0:
            raise DomainError(f"damping rate must be >= 0, got gamma={self.gamma}")
        object.__setattr__(self, "phi", self.phi % TWO_PI)


@dataclass(frozen=True)
class ChannelWave:
    """A single-photon wave in one chain at a fixed energy.

    For a propagating wave ``k`` is real in (0, pi) and satisfies the
    dispersion relation of the chain. Outside the band the wave number is
    complex with Im(k) > 0 so that exp(i k j) decays toward infinity; such
    a channel carries no flux. Exact band edges (zero group velocity) are
    reported as non-propagating.
    """

    energy: float
    k: complex
    xi: float
    propagating: bool

    @property
    def group_velocity(self) -> float:
        """Flux weight ``xi * sin(k)``; zero for non-propagating waves."""
        if not self.propagating:
            return 0.0
        return self.xi * math.sin(self.k.real)


@dataclass(frozen=True)
class ScatteringResult:
    """Amplitudes and flows of a single-energy scattering evaluation.

    ``amplitudes[i, j]`` is the outgoing amplitude in channel ``labels[i]``
    for a unit photon incident from channel ``labels[j]``; ``flows`` holds
    the flux-normalized counterparts. Columns whose incident channel is
    non-propagating have NaN flows (no incident flux to normalize by).
    ``d_ratio`` is the denominator magnitude relative to the size of its
    additive terms, a cheap conditioning measure for sweep flagging.
    """

    energy: float
    labels: tuple[str, ...]
    amplitudes: np.ndarray
    flows: np.ndarray
    channels: tuple[ChannelWave, ...]
    d_ratio: float = 1.0

    def __post_init__(self):
        n = len(self.labels)
        if self.amplitudes.shape != (n, n) or self.flows.shape != (n, n):
            raise DomainError("amplitude/flow matrices must be square over the channel labels")

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"unknown channel label {label!r}; have {self.labels}") from None

    def amplitude(self, out_label: str, in_label: str) -> complex:
        return complex(self.amplitudes[self.index(out_label), self.index(in_label)])

    def flow(self, out_label: str, in_label: str) -> float:
        return float(self.flows[self.index(out_label), self.index(in_label)])

    def column_sum(self, in_label: str) -> float:
        """Total outgoing flow for a given incident channel."""
        return float(np.sum(self.flows[:, self.index(in_label)]))

    def absorption(self, in_label: str) -> float:
        """Flux deficit 1 - sum of outgoing flows (dissipative loss)."""
        return 1.0 - self.column_sum(in_label)


def angular_distance(a: float, b: float) -> float:
    """Distance between two angles on the circle, in [0, pi]."""
    d = (a - b) % TWO_PI
    return min(d, TWO_PI - d)


__all__ = [
    "CrwParams",
    "NodeParams",
    "ChannelWave",
    "ScatteringResult",
    "angular_distance",
    "DEFAULT_TOL",
    "TWO_PI",
]
