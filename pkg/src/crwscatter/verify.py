"""Randomized cross-checks between the closed forms and the lattice solver."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dispersion import dispersion_energy
from .lattice import compare, solve_scattering
from .threeport import (ThreePortSystem, smatrix_three_port,
                        smatrix_three_port_closed_form, symmetric_three_port)
from .twoport import TwoPortSystem, smatrix_two_port
from .types import CrwParams, NodeParams

#: keep sampled wave numbers a little off the band edges
K_MARGIN = 0.15


def random_two_port(rng: np.random.Generator) -> tuple[TwoPortSystem, float, str]:
    """A well-conditioned random junction plus an in-band energy and incidence."""
    xi_a = rng.uniform(0.5, 2.0)
    xi_b = rng.uniform(0.5, 2.0)
    crw_a = CrwParams(omega=0.0, xi=xi_a)
    crw_b = CrwParams(omega=rng.uniform(-0.5, 0.5), xi=xi_b)
    node = NodeParams(j_ab=rng.uniform(0.1, 1.5), j_bc=rng.uniform(0.1, 1.5),
                      j_ca=rng.uniform(0.1, 1.5), phi=rng.uniform(0.0, 2.0 * math.pi),
                      omega_c=rng.uniform(-1.0, 1.0), gamma=rng.uniform(0.0, 1.5))
    sys = TwoPortSystem(crw_a=crw_a, crw_b=crw_b, node=node)
    incident = "a" if rng.random() < 0.5 else "b"
    crw = crw_a if incident == "a" else crw_b
    k = rng.uniform(K_MARGIN, math.pi - K_MARGIN)
    return sys, dispersion_energy(crw, k), incident


def random_three_port(rng: np.random.Generator) -> tuple[ThreePortSystem, float, str]:
    """A random lossless T junction plus an in-band energy and incidence."""
    crw_a = CrwParams(omega=0.0, xi=rng.uniform(0.5, 2.0))
    crw_b = CrwParams(omega=rng.uniform(-0.5, 0.5), xi=rng.uniform(0.5, 2.0))
    crw_c = CrwParams(omega=rng.uniform(-0.5, 0.5), xi=rng.uniform(0.5, 2.0))
    node = NodeParams(j_ab=rng.uniform(0.1, 1.5), j_bc=rng.uniform(0.1, 1.5),
                      j_ca=rng.uniform(0.1, 1.5), phi=rng.uniform(0.0, 2.0 * math.pi),
                      omega_c=crw_c.omega, gamma=0.0)
    sys = ThreePortSystem(crw_a=crw_a, crw_b=crw_b, crw_c=crw_c, node=node)
    incident = ("a", "b", "c")[rng.integers(0, 3)]
    crw = {"a": crw_a, "b": crw_b, "c": crw_c}[incident]
    k = rng.uniform(K_MARGIN, math.pi - K_MARGIN)
    return sys, dispersion_energy(crw, k), incident


def random_symmetric_three_port(rng: np.random.Generator) -> tuple[ThreePortSystem, float]:
    """A random junction satisfying the closed-form assumptions, plus an energy."""
    xi = rng.uniform(0.5, 2.0)
    sys = symmetric_three_port(xi=xi, xi_c=rng.uniform(0.4, 2.5),
                               j_c=rng.uniform(0.3, 2.0),
                               phi=rng.uniform(0.0, 2.0 * math.pi))
    k = rng.uniform(K_MARGIN, math.pi - K_MARGIN)
    return sys, dispersion_energy(sys.crw_a, k)


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    tol: float
    n_two: int
    n_three: int
    max_dev_two: float
    max_dev_three: float

    @property
    def passed(self) -> bool:
        return self.max_dev_two < self.tol and self.max_dev_three < self.tol


def verify_against_oracle(seed: int = 0, n_two: int = 500, n_three: int = 500,
                          n_sites: int = 16, tol: float = 1e-9) -> VerifyReport:
    """Compare closed-form amplitudes against the lattice solver.

    Draws ``n_two`` two-port and ``n_three`` three-port systems with
    in-band incident energies and reports the worst amplitude deviation
    of each family.
    """
    rng = np.random.default_rng(seed)
    dev_two = 0.0
    for _ in range(n_two):
        sys, energy, incident = random_two_port(rng)
        analytic = smatrix_two_port(sys, energy)
        oracle = solve_scattering(sys, energy, incident, n_sites=n_sites)
        dev_two = max(dev_two, compare(analytic, oracle))
    dev_three = 0.0
    for _ in range(n_three):
        sys, energy, incident = random_three_port(rng)
        analytic = smatrix_three_port(sys, energy)
        oracle = solve_scattering(sys, energy, incident, n_sites=n_sites)
        dev_three = max(dev_three, compare(analytic, oracle))
    return VerifyReport(seed=seed, tol=tol, n_two=n_two, n_three=n_three,
                        max_dev_two=dev_two, max_dev_three=dev_three)


def verify_closed_form(seed: int = 0, n: int = 500, tol: float = 1e-12) -> float:
    """Worst deviation between the analytic symmetric-junction amplitudes
    and the direct matrix solve over ``n`` random systems."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        sys, energy = random_symmetric_three_port(rng)
        direct = smatrix_three_port(sys, energy)
        closed = smatrix_three_port_closed_form(sys, energy)
        worst = max(worst, float(np.max(np.abs(direct.amplitudes - closed.amplitudes))))
    return worst


__all__ = [
    "VerifyReport",
    "verify_against_oracle",
    "verify_closed_form",
    "random_two_port",
    "random_three_port",
    "random_symmetric_three_port",
]
