"""Independent lattice solver used to cross-check the closed forms.

This module never touches the derived scattering formulas. It assembles
the raw coupled amplitude equations on a truncated chain, splits the field
into the known incident plane wave plus an unknown scattered part, closes
each chain at the truncation site with the exact outgoing relation
``v(N) = exp(i k) v(N-1)``, and solves the sparse linear system directly.
Because that closure is exact for a homogeneous chain, the result is
independent of the truncation length down to round-off.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.linalg import MatrixRankWarning, spsolve

from .dispersion import flow, wave_number
from .errors import ConvergenceError, DomainError, SingularMatrixError
from .threeport import ThreePortSystem
from .twoport import TwoPortSystem
from .types import ChannelWave

RESIDUAL_LIMIT = 1e-8


@dataclass(frozen=True)
class LatticeSolution:
    """Per-site amplitudes and the scattering amplitudes extracted from them."""

    labels: tuple[str, ...]
    incident: str
    energy: float
    n_sites: int
    u: dict[str, np.ndarray]            # total field per chain, sites 0..n_sites
    amplitudes: dict[str, complex]      # outgoing label -> amplitude
    channels: dict[str, ChannelWave]
    u_c0: complex | None                # dissipative-cavity amplitude (two-port)
    max_residual: float


def _chains(system):
    if isinstance(system, TwoPortSystem):
        return ("a", "b"), (system.crw_a, system.crw_b)
    if isinstance(system, ThreePortSystem):
        return ("a", "b", "c"), (system.crw_a, system.crw_b, system.crw_c)
    raise DomainError(f"unsupported system type {type(system).__name__}")


def solve_scattering(system, energy: float, incident: str, n_sites: int = 50) -> LatticeSolution:
    """Solve the scattering problem on a truncated lattice.

    Parameters
    ----------
    system : TwoPortSystem or ThreePortSystem
    energy : float
        Photon energy; must lie inside the incident chain's band.
    incident : str
        Label of the chain the photon comes from.
    n_sites : int
        Truncation site per chain (>= 3). The answer does not depend on it
        beyond round-off.
    """
    labels, crws = _chains(system)
    if incident not in labels:
        raise DomainError(f"incident channel {incident!r} not in {labels}")
    if n_sites < 3:
        raise DomainError(f"n_sites must be >= 3, got {n_sites}")

    node = system.node
    two_port = isinstance(system, TwoPortSystem)
    waves = {lab: wave_number(crw, energy) for lab, crw in zip(labels, crws)}
    if not waves[incident].propagating:
        raise DomainError(
            f"incident channel {incident!r} is not propagating at energy {energy}")

    n_chain = len(labels)
    per = n_sites + 1
    n_unknowns = n_chain * per + (1 if two_port else 0)
    col_c0 = n_chain * per  # two-port dissipative cavity slot

    def col(ci, j):
        return ci * per + j

    inc_idx = labels.index(incident)
    k_inc = waves[incident].k

    def incident_field(ci, j):
        if ci != inc_idx:
            return 0.0 + 0.0j
        return cmath.exp(-1j * k_inc * j)

    rows, cols, vals = [], [], []
    b = np.zeros(n_unknowns, dtype=np.complex128)
    row = 0

    def physical(ci, j, coef):
        # coefficient acts on the total field: move the incident part to b
        rows.append(row)
        cols.append(col(ci, j))
        vals.append(coef)
        b[row] -= coef * incident_field(ci, j)

    # node equations, one per chain end
    phases = {("a", "b"): node.j_ab * cmath.exp(1j * node.phi),
              ("b", "a"): node.j_ab * cmath.exp(-1j * node.phi)}
    for ci, lab in enumerate(labels[:2]):
        other = "b" if lab == "a" else "a"
        crw = crws[ci]
        physical(ci, 0, crw.omega - energy)
        physical(ci, 1, -crw.xi)
        physical(labels.index(other), 0, phases[(lab, other)])
        j_to_c = node.j_ca if lab == "a" else node.j_bc
        if two_port:
            rows.append(row)
            cols.append(col_c0)
            vals.append(j_to_c)
        else:
            physical(2, 0, j_to_c)
        row += 1

    if two_port:
        # dissipative cavity equation
        rows.append(row)
        cols.append(col_c0)
        vals.append(node.omega_c - energy - 1j * node.gamma)
        physical(0, 0, node.j_ca)
        physical(1, 0, node.j_bc)
        row += 1
    else:
        crw_c = crws[2]
        physical(2, 0, crw_c.omega - energy)
        physical(2, 1, -crw_c.xi)
        physical(1, 0, node.j_bc)
        physical(0, 0, node.j_ca)
        row += 1

    # interior sites
    for ci, crw in enumerate(crws):
        for j in range(1, n_sites):
            physical(ci, j, crw.omega - energy)
            physical(ci, j + 1, -crw.xi)
            physical(ci, j - 1, -crw.xi)
            row += 1

    # outgoing closure on the scattered part only
    for ci, lab in enumerate(labels):
        rows.append(row)
        cols.append(col(ci, n_sites))
        vals.append(1.0 + 0.0j)
        rows.append(row)
        cols.append(col(ci, n_sites - 1))
        vals.append(-cmath.exp(1j * waves[lab].k))
        row += 1

    assert row == n_unknowns
    a = csr_matrix((vals, (rows, cols)), shape=(n_unknowns, n_unknowns),
                   dtype=np.complex128)
    with warnings.catch_warnings():
        warnings.simplefilter("error", MatrixRankWarning)
        try:
            x = spsolve(a, b)
        except MatrixRankWarning:
            raise SingularMatrixError("lattice system is singular") from None
    if not np.all(np.isfinite(x)):
        raise SingularMatrixError("lattice solve produced non-finite amplitudes")

    u = {}
    amplitudes = {}
    for ci, lab in enumerate(labels):
        v = x[col(ci, 0):col(ci, 0) + per]
        total = v.copy()
        if ci == inc_idx:
            total = total + np.exp(-1j * k_inc * np.arange(per))
        u[lab] = total
        amplitudes[lab] = complex(v[0])
    u_c0 = complex(x[col_c0]) if two_port else None

    residual = _max_residual(system, energy, labels, crws, u, u_c0)
    if residual > RESIDUAL_LIMIT:
        raise ConvergenceError(
            f"lattice residual {residual:.3e} exceeds {RESIDUAL_LIMIT:g}")

    return LatticeSolution(labels=labels, incident=incident, energy=energy,
                           n_sites=n_sites, u=u, amplitudes=amplitudes,
                           channels=waves, u_c0=u_c0, max_residual=residual)


def _max_residual(system, energy, labels, crws, u, u_c0):
    """Largest violation of the raw coupled equations by the solved field."""
    node = system.node
    two_port = u_c0 is not None
    ua, ub = u["a"], u["b"]
    uc0 = u_c0 if two_port else u["c"][0]
    res = [
        abs((crws[0].omega - energy) * ua[0] - crws[0].xi * ua[1]
            + node.j_ab * cmath.exp(1j * node.phi) * ub[0] + node.j_ca * uc0),
        abs((crws[1].omega - energy) * ub[0] - crws[1].xi * ub[1]
            + node.j_ab * cmath.exp(-1j * node.phi) * ua[0] + node.j_bc * uc0),
    ]
    if two_port:
        res.append(abs((node.omega_c - energy - 1j * node.gamma) * uc0
                       + node.j_ca * ua[0] + node.j_bc * ub[0]))
    else:
        uc = u["c"]
        res.append(abs((crws[2].omega - energy) * uc[0] - crws[2].xi * uc[1]
                       + node.j_bc * ub[0] + node.j_ca * ua[0]))
    for lab, crw in zip(labels, crws):
        field = u[lab]
        interior = ((crw.omega - energy) * field[1:-1]
                    - crw.xi * field[2:] - crw.xi * field[:-2])
        res.append(float(np.max(np.abs(interior))) if interior.size else 0.0)
    return max(res)


def flows_from_solution(solution: LatticeSolution) -> dict[str, float]:
    """Outgoing flows per channel for the solved incident wave."""
    inc = solution.channels[solution.incident]
    return {lab: flow(solution.amplitudes[lab], solution.channels[lab], inc)
            for lab in solution.labels}


def absorbed_fraction(system: TwoPortSystem, solution: LatticeSolution) -> float:
    """Dissipated flux fraction from the cavity amplitude.

    The steady-state loss rate ``2 gamma |u_c0|^2`` divided by the incident
    flux ``2 xi sin(k)`` of the unit-amplitude incoming wave.
    """
    if solution.u_c0 is None:
        raise DomainError("absorbed_fraction needs a two-port lattice solution")
    inc = solution.channels[solution.incident]
    return (system.node.gamma * abs(solution.u_c0) ** 2
            / (inc.xi * math.sin(inc.k.real)))


def compare(analytic, oracle: LatticeSolution) -> float:
    """Maximum elementwise amplitude deviation between the two routes."""
    if tuple(analytic.labels) != tuple(oracle.labels):
        raise DomainError(
            f"channel labels differ: {analytic.labels} vs {oracle.labels}")
    if not math.isclose(analytic.energy, oracle.energy, rel_tol=1e-12, abs_tol=1e-12):
        raise DomainError(
            f"energies differ: {analytic.energy} vs {oracle.energy}")
    j = analytic.index(oracle.incident)
    return max(abs(analytic.amplitudes[i, j] - oracle.amplitudes[lab])
               for i, lab in enumerate(analytic.labels))


__all__ = [
    "LatticeSolution",
    "solve_scattering",
    "flows_from_solution",
    "absorbed_fraction",
    "compare",
    "RESIDUAL_LIMIT",
]
