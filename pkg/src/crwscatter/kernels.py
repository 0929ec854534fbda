"""Batched scattering kernels: numba-jitted hot loops with a numpy fallback.

The jitted path is the default. Set the environment variable
``CRWSCATTER_NO_NUMBA=1`` before import (or run without numba installed)
to select the pure-numpy implementations instead; both paths produce the
same numbers to round-off and are compared by ``benchmarks/bench_kernels.py``
and the kernel tests.

Every kernel takes per-sample arrays for the quantities sweeps vary
(energy, total phase, dissipative-cavity frequency) and scalars for the
rest, and returns

* ``s``       -- (n, q, q) complex amplitude matrices, ``s[i, out, in]``
* ``k``       -- (n, q) complex wave numbers per channel
* ``d_ratio`` -- (n,) denominator magnitude relative to its additive
  terms (two-port) or |det M| over the product of row norms (three-port);
  values near zero mark near-singular samples, NaN marks a hard pole.
"""

from __future__ import annotations

import cmath
import math
import os

import numpy as np


def numba_disabled(env: str | None) -> bool:
    """Interpret the CRWSCATTER_NO_NUMBA environment value."""
    if env is None:
        return False
    return env.strip().lower() not in ("", "0", "false", "no")


_FORCE_NUMPY = numba_disabled(os.environ.get("CRWSCATTER_NO_NUMBA"))

try:
    if _FORCE_NUMPY:
        raise ImportError("numba disabled via CRWSCATTER_NO_NUMBA")
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:
    NUMBA_ENABLED = False


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

def wave_numbers_numpy(omega: float, xi: float, energies: np.ndarray) -> np.ndarray:
    """Complex wave numbers for an array of energies (decaying branch off band)."""
    e = np.asarray(energies, dtype=np.float64)
    c = (omega - e) / (2.0 * xi)
    k = np.empty(c.shape, dtype=np.complex128)
    inside = np.abs(c) <= 1.0
    below = c > 1.0
    above = c < -1.0
    k[inside] = np.arccos(c[inside])
    k[below] = 1j * np.arccosh(c[below])
    k[above] = np.pi + 1j * np.arccosh(-c[above])
    return k


def propagating_mask(omega: float, xi: float, energies: np.ndarray) -> np.ndarray:
    """True where the energy lies strictly inside the chain band."""
    c = (np.asarray(energies, dtype=np.float64) - omega) / (2.0 * xi)
    return np.abs(c) < 1.0


def two_port_smatrix_numpy(energies, phis, omega_cs, omega_a, xi_a, omega_b, xi_b,
                           j_ab, j_bc, j_ca, gamma):
    """Two-port amplitudes for per-sample (energy, phi, omega_c) triples."""
    e = np.asarray(energies, dtype=np.float64)
    phi = np.asarray(phis, dtype=np.float64)
    oc = np.asarray(omega_cs, dtype=np.float64)
    n = e.shape[0]

    ka = wave_numbers_numpy(omega_a, xi_a, e)
    kb = wave_numbers_numpy(omega_b, xi_b, e)
    k = np.stack([ka, kb], axis=1)

    den = e - oc + 1j * gamma
    pole = den == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = np.where(pole, np.nan + 0j, 1.0 / np.where(pole, 1.0, den))
    j_ba_eff = j_bc * j_ca * inv
    j_aa_eff = j_ca * j_ca * inv
    j_bb_eff = j_bc * j_bc * inv

    eip = np.exp(1j * phi)
    eka = np.exp(1j * ka)
    ekb = np.exp(1j * kb)
    gp = j_ab * eip + j_ba_eff
    gm = j_ab / eip + j_ba_eff
    am = xi_a / eka + j_aa_eff
    ap = xi_a * eka + j_aa_eff
    bm = xi_b / ekb + j_bb_eff
    bp = xi_b * ekb + j_bb_eff

    d = am * bm - gp * gm
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.empty((n, 2, 2), dtype=np.complex128)
        s[:, 0, 0] = (gp * gm - ap * bm) / d
        s[:, 0, 1] = xi_b * (ekb - 1.0 / ekb) * gp / d
        s[:, 1, 0] = xi_a * (eka - 1.0 / eka) * gm / d
        s[:, 1, 1] = (gp * gm - am * bp) / d
        scale = np.abs(am * bm) + np.abs(gp * gm)
        d_ratio = np.where(scale > 0.0, np.abs(d) / np.where(scale > 0.0, scale, 1.0), 0.0)
    d_ratio = np.where(pole, np.nan, d_ratio)
    s[pole] = np.nan + 0j
    return s, k, d_ratio


def three_port_smatrix_numpy(energies, phis, omega_a, xi_a, omega_b, xi_b,
                             omega_c, xi_c, j_ab, j_bc, j_ca):
    """Three-port amplitudes from the 3x3 node solve, batched over samples."""
    e = np.asarray(energies, dtype=np.float64)
    phi = np.asarray(phis, dtype=np.float64)
    n = e.shape[0]

    ka = wave_numbers_numpy(omega_a, xi_a, e)
    kb = wave_numbers_numpy(omega_b, xi_b, e)
    kc = wave_numbers_numpy(omega_c, xi_c, e)
    k = np.stack([ka, kb, kc], axis=1)

    eip = np.exp(1j * phi)
    eka = np.exp(1j * ka)
    ekb = np.exp(1j * kb)
    ekc = np.exp(1j * kc)

    m = np.empty((n, 3, 3), dtype=np.complex128)
    m[:, 0, 0] = xi_a / eka
    m[:, 0, 1] = j_ab * eip
    m[:, 0, 2] = j_ca
    m[:, 1, 0] = j_ab / eip
    m[:, 1, 1] = xi_b / ekb
    m[:, 1, 2] = j_bc
    m[:, 2, 0] = j_ca
    m[:, 2, 1] = j_bc
    m[:, 2, 2] = xi_c / ekc

    rhs = np.empty((n, 3, 3), dtype=np.complex128)
    rhs[:] = -m
    rhs[:, 0, 0] = -xi_a * eka
    rhs[:, 1, 1] = -xi_b * ekb
    rhs[:, 2, 2] = -xi_c * ekc

    det = np.linalg.det(m)
    row_norms = np.sqrt(np.sum(np.abs(m) ** 2, axis=2))
    hadamard = np.prod(row_norms, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        det_ratio = np.where(hadamard > 0.0, np.abs(det) / np.where(hadamard > 0.0, hadamard, 1.0), 0.0)

    # guard exactly singular samples so the batched solve cannot raise
    bad = ~(np.abs(det) > 0.0)
    if np.any(bad):
        m = m.copy()
        m[bad] = np.eye(3)
    s = np.linalg.solve(m, rhs)
    if np.any(bad):
        s[bad] = np.nan + 0j
        det_ratio = det_ratio.copy()
        det_ratio[bad] = 0.0
    return s, k, det_ratio


def three_port_closed_form_numpy(energies, phis, omega, xi, xi_c, j_c):
    """Symmetric-junction amplitudes from the analytic expressions.

    Assumes a common on-site frequency, chains a and b identical with
    hopping equal to the a-b coupling, and equal chain-c couplings.
    """
    e = np.asarray(energies, dtype=np.float64)
    phi = np.asarray(phis, dtype=np.float64)
    n = e.shape[0]

    ka = wave_numbers_numpy(omega, xi, e)
    kc = wave_numbers_numpy(omega, xi_c, e)
    k = np.stack([ka, ka, kc], axis=1)

    eip = np.exp(1j * phi)
    eim = 1.0 / eip
    ek = np.exp(1j * ka)
    emk = 1.0 / ek
    ekc = np.exp(1j * kc)
    emkc = 1.0 / ekc
    jc2 = j_c * j_c

    d = xi * jc2 * (eip + eim - 2.0 * emk) + xi * xi * xi_c * emkc * (emk * emk - 1.0)

    s = np.empty((n, 3, 3), dtype=np.complex128)
    with np.errstate(divide="ignore", invalid="ignore"):
        s[:, 0, 0] = -xi * jc2 * (eip + eim - emk - ek) / d
        s[:, 1, 0] = xi * emkc * (xi * xi_c * eim - jc2 * ekc) * (ek - emk) / d
        s[:, 2, 0] = xi * xi * j_c * (emk - ek) * (eim - emk) / d
        s[:, 0, 1] = xi * emkc * (xi * xi_c * eip - jc2 * ekc) * (ek - emk) / d
        s[:, 1, 1] = -xi * jc2 * (eip + eim - ek - emk) / d
        s[:, 2, 1] = xi * xi * j_c * (emk - ek) * (eip - emk) / d
        s[:, 0, 2] = xi * j_c * xi_c * (emkc - ekc) * (eip - emk) / d
        s[:, 1, 2] = xi * j_c * xi_c * (emkc - ekc) * (eim - emk) / d
        s[:, 2, 2] = (xi * jc2 * (2.0 * emk - eip - eim)
                      + xi * xi * xi_c * ekc * (1.0 - emk * emk)) / d
        scale = (np.abs(xi * jc2 * (eip + eim - 2.0 * emk))
                 + np.abs(xi * xi * xi_c * emkc * (emk * emk - 1.0)))
        d_ratio = np.where(scale > 0.0, np.abs(d) / np.where(scale > 0.0, scale, 1.0), 0.0)
    return s, k, d_ratio


# ---------------------------------------------------------------------------
# numba implementations (mirrors of the numpy path, one sample per iteration)
# ---------------------------------------------------------------------------

if NUMBA_ENABLED:

    @njit(cache=True)
    def _wavenum(omega, xi, energy):
        c = (omega - energy) / (2.0 * xi)
        if abs(c) <= 1.0:
            return math.acos(c) + 0.0j
        if c > 1.0:
            return 1j * math.acosh(c)
        return math.pi + 1j * math.acosh(-c)

    @njit(cache=True)
    def _two_port_smatrix_numba(energies, phis, omega_cs, omega_a, xi_a, omega_b,
                                xi_b, j_ab, j_bc, j_ca, gamma):
        n = energies.shape[0]
        s = np.empty((n, 2, 2), dtype=np.complex128)
        k = np.empty((n, 2), dtype=np.complex128)
        d_ratio = np.empty(n, dtype=np.float64)
        for i in range(n):
            e = energies[i]
            ka = _wavenum(omega_a, xi_a, e)
            kb = _wavenum(omega_b, xi_b, e)
            k[i, 0] = ka
            k[i, 1] = kb
            den = e - omega_cs[i] + 1j * gamma
            if den == 0.0:
                s[i, 0, 0] = complex(np.nan, np.nan)
                s[i, 0, 1] = complex(np.nan, np.nan)
                s[i, 1, 0] = complex(np.nan, np.nan)
                s[i, 1, 1] = complex(np.nan, np.nan)
                d_ratio[i] = np.nan
                continue
            inv = 1.0 / den
            j_ba_eff = j_bc * j_ca * inv
            j_aa_eff = j_ca * j_ca * inv
            j_bb_eff = j_bc * j_bc * inv
            eip = cmath.exp(1j * phis[i])
            eka = cmath.exp(1j * ka)
            ekb = cmath.exp(1j * kb)
            gp = j_ab * eip + j_ba_eff
            gm = j_ab / eip + j_ba_eff
            am = xi_a / eka + j_aa_eff
            ap = xi_a * eka + j_aa_eff
            bm = xi_b / ekb + j_bb_eff
            bp = xi_b * ekb + j_bb_eff
            d = am * bm - gp * gm
            s[i, 0, 0] = (gp * gm - ap * bm) / d
            s[i, 0, 1] = xi_b * (ekb - 1.0 / ekb) * gp / d
            s[i, 1, 0] = xi_a * (eka - 1.0 / eka) * gm / d
            s[i, 1, 1] = (gp * gm - am * bp) / d
            scale = abs(am * bm) + abs(gp * gm)
            d_ratio[i] = abs(d) / scale if scale > 0.0 else 0.0
        return s, k, d_ratio

    @njit(cache=True)
    def _three_port_smatrix_numba(energies, phis, omega_a, xi_a, omega_b, xi_b,
                                  omega_c, xi_c, j_ab, j_bc, j_ca):
        n = energies.shape[0]
        s = np.empty((n, 3, 3), dtype=np.complex128)
        k = np.empty((n, 3), dtype=np.complex128)
        det_ratio = np.empty(n, dtype=np.float64)
        m = np.empty((3, 3), dtype=np.complex128)
        rhs = np.empty((3, 3), dtype=np.complex128)
        adj = np.empty((3, 3), dtype=np.complex128)
        for i in range(n):
            e = energies[i]
            ka = _wavenum(omega_a, xi_a, e)
            kb = _wavenum(omega_b, xi_b, e)
            kc = _wavenum(omega_c, xi_c, e)
            k[i, 0] = ka
            k[i, 1] = kb
            k[i, 2] = kc
            eip = cmath.exp(1j * phis[i])
            eka = cmath.exp(1j * ka)
            ekb = cmath.exp(1j * kb)
            ekc = cmath.exp(1j * kc)

            m[0, 0] = xi_a / eka
            m[0, 1] = j_ab * eip
            m[0, 2] = j_ca
            m[1, 0] = j_ab / eip
            m[1, 1] = xi_b / ekb
            m[1, 2] = j_bc
            m[2, 0] = j_ca
            m[2, 1] = j_bc
            m[2, 2] = xi_c / ekc
            for r in range(3):
                for c in range(3):
                    rhs[r, c] = -m[r, c]
            rhs[0, 0] = -xi_a * eka
            rhs[1, 1] = -xi_b * ekb
            rhs[2, 2] = -xi_c * ekc

            # cofactor solve of the 3x3 system
            adj[0, 0] = m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
            adj[0, 1] = m[0, 2] * m[2, 1] - m[0, 1] * m[2, 2]
            adj[0, 2] = m[0, 1] * m[1, 2] - m[0, 2] * m[1, 1]
            adj[1, 0] = m[1, 2] * m[2, 0] - m[1, 0] * m[2, 2]
            adj[1, 1] = m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
            adj[1, 2] = m[0, 2] * m[1, 0] - m[0, 0] * m[1, 2]
            adj[2, 0] = m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]
            adj[2, 1] = m[0, 1] * m[2, 0] - m[0, 0] * m[2, 1]
            adj[2, 2] = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            det = m[0, 0] * adj[0, 0] + m[0, 1] * adj[1, 0] + m[0, 2] * adj[2, 0]

            hadamard = 1.0
            for r in range(3):
                row = math.sqrt(abs(m[r, 0]) ** 2 + abs(m[r, 1]) ** 2 + abs(m[r, 2]) ** 2)
                hadamard *= row
            if abs(det) == 0.0:
                for r in range(3):
                    for c in range(3):
                        s[i, r, c] = complex(np.nan, np.nan)
                det_ratio[i] = 0.0
                continue
            det_ratio[i] = abs(det) / hadamard if hadamard > 0.0 else 0.0
            for r in range(3):
                for c in range(3):
                    acc = 0.0 + 0.0j
                    for t in range(3):
                        acc += adj[r, t] * rhs[t, c]
                    s[i, r, c] = acc / det
        return s, k, det_ratio

    @njit(cache=True)
    def _three_port_closed_form_numba(energies, phis, omega, xi, xi_c, j_c):
        n = energies.shape[0]
        s = np.empty((n, 3, 3), dtype=np.complex128)
        k = np.empty((n, 3), dtype=np.complex128)
        d_ratio = np.empty(n, dtype=np.float64)
        jc2 = j_c * j_c
        for i in range(n):
            e = energies[i]
            ka = _wavenum(omega, xi, e)
            kc = _wavenum(omega, xi_c, e)
            k[i, 0] = ka
            k[i, 1] = ka
            k[i, 2] = kc
            eip = cmath.exp(1j * phis[i])
            eim = 1.0 / eip
            ek = cmath.exp(1j * ka)
            emk = 1.0 / ek
            ekc = cmath.exp(1j * kc)
            emkc = 1.0 / ekc

            t1 = xi * jc2 * (eip + eim - 2.0 * emk)
            t2 = xi * xi * xi_c * emkc * (emk * emk - 1.0)
            d = t1 + t2
            s[i, 0, 0] = -xi * jc2 * (eip + eim - emk - ek) / d
            s[i, 1, 0] = xi * emkc * (xi * xi_c * eim - jc2 * ekc) * (ek - emk) / d
            s[i, 2, 0] = xi * xi * j_c * (emk - ek) * (eim - emk) / d
            s[i, 0, 1] = xi * emkc * (xi * xi_c * eip - jc2 * ekc) * (ek - emk) / d
            s[i, 1, 1] = -xi * jc2 * (eip + eim - ek - emk) / d
            s[i, 2, 1] = xi * xi * j_c * (emk - ek) * (eip - emk) / d
            s[i, 0, 2] = xi * j_c * xi_c * (emkc - ekc) * (eip - emk) / d
            s[i, 1, 2] = xi * j_c * xi_c * (emkc - ekc) * (eim - emk) / d
            s[i, 2, 2] = (xi * jc2 * (2.0 * emk - eip - eim)
                          + xi * xi * xi_c * ekc * (1.0 - emk * emk)) / d
            scale = abs(t1) + abs(t2)
            d_ratio[i] = abs(d) / scale if scale > 0.0 else 0.0
        return s, k, d_ratio

    def _as_f8(x):
        return np.ascontiguousarray(x, dtype=np.float64)

    def two_port_smatrix_numba(energies, phis, omega_cs, omega_a, xi_a, omega_b,
                               xi_b, j_ab, j_bc, j_ca, gamma):
        return _two_port_smatrix_numba(_as_f8(energies), _as_f8(phis), _as_f8(omega_cs),
                                       float(omega_a), float(xi_a), float(omega_b),
                                       float(xi_b), float(j_ab), float(j_bc),
                                       float(j_ca), float(gamma))

    def three_port_smatrix_numba(energies, phis, omega_a, xi_a, omega_b, xi_b,
                                 omega_c, xi_c, j_ab, j_bc, j_ca):
        return _three_port_smatrix_numba(_as_f8(energies), _as_f8(phis),
                                         float(omega_a), float(xi_a), float(omega_b),
                                         float(xi_b), float(omega_c), float(xi_c),
                                         float(j_ab), float(j_bc), float(j_ca))

    def three_port_closed_form_numba(energies, phis, omega, xi, xi_c, j_c):
        return _three_port_closed_form_numba(_as_f8(energies), _as_f8(phis),
                                             float(omega), float(xi), float(xi_c),
                                             float(j_c))

    two_port_smatrix_batch = two_port_smatrix_numba
    three_port_smatrix_batch = three_port_smatrix_numba
    three_port_closed_form_batch = three_port_closed_form_numba
else:
    two_port_smatrix_numba = None
    three_port_smatrix_numba = None
    three_port_closed_form_numba = None

    two_port_smatrix_batch = two_port_smatrix_numpy
    three_port_smatrix_batch = three_port_smatrix_numpy
    three_port_closed_form_batch = three_port_closed_form_numpy


def flows_from_amplitudes(s: np.ndarray, k: np.ndarray, prop: np.ndarray,
                          xis: np.ndarray) -> np.ndarray:
    """Flux-normalized flows for batched amplitudes.

    ``flows[n, i, j] = |s[n, i, j]|^2 * v_i / v_j`` with ``v = xi sin(Re k)``,
    zero for evanescent outgoing channels and NaN for columns whose
    incident channel carries no flux.
    """
    v = np.asarray(xis, dtype=np.float64) * np.sin(k.real)
    v_safe = np.where(prop, v, 1.0)
    ratio = v_safe[:, :, None] / v_safe[:, None, :]
    flows = np.abs(s) ** 2 * ratio
    flows = np.where(prop[:, :, None], flows, 0.0)
    flows = np.where(prop[:, None, :], flows, np.nan)
    return flows


__all__ = [
    "NUMBA_ENABLED",
    "numba_disabled",
    "wave_numbers_numpy",
    "propagating_mask",
    "two_port_smatrix_numpy",
    "three_port_smatrix_numpy",
    "three_port_closed_form_numpy",
    "two_port_smatrix_numba",
    "three_port_smatrix_numba",
    "three_port_closed_form_numba",
    "two_port_smatrix_batch",
    "three_port_smatrix_batch",
    "three_port_closed_form_batch",
    "flows_from_amplitudes",
]
