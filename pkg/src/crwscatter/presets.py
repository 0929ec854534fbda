"""Ready-made sweep configurations for every flow panel.

Each preset regenerates the tabulated data behind one panel with the
panel's exact parameters. Panels that share a configuration (the three
incidence panels of a T-junction figure) produce identical tables. The
ratio panels emit forward/backward flow ratios for their three sibling
configurations instead of raw flows.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConfigError
from .sweep import SweepSpec, SweepTable, merge_flags, run_sweep
from .twoport import params_for_detuning

K_SAMPLES = 403          # 0..pi grid containing pi/3, pi/2 and 2*pi/3 exactly
PHI_SAMPLES = 481        # 0..2*pi grid containing the same phases

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)


def _two_port_k(phi, j_c, gamma, delta=0.0):
    return {"mode": "two_port",
            "params": {"xi": 1.0, "j_ab": 1.0, "j_c": j_c, "gamma": gamma,
                       "delta": delta, "phi": phi},
            "sweep": {"variable": "k", "start": 0.0, "stop": math.pi,
                      "samples": K_SAMPLES}}


def _two_port_phi(k, j_c, gamma, delta=0.0):
    return {"mode": "two_port",
            "params": {"xi": 1.0, "j_ab": 1.0, "j_c": j_c, "gamma": gamma,
                       "delta": delta, "k": k},
            "sweep": {"variable": "phi", "start": 0.0, "stop": 2.0 * math.pi,
                      "samples": PHI_SAMPLES}}


def _three_port_k(phi, j_c, xi_c):
    return {"mode": "three_port",
            "params": {"xi": 1.0, "xi_c": xi_c, "j_ab": 1.0, "j_c": j_c,
                       "phi": phi},
            "sweep": {"variable": "k", "start": 0.0, "stop": math.pi,
                      "samples": K_SAMPLES}}


def _detuned(delta):
    j_c, gamma = params_for_detuning(1.0, delta, math.pi / 3.0)
    return _two_port_k(math.pi / 3.0, j_c, gamma, delta=delta)


def _configs() -> dict[str, dict]:
    cfg = {
        "fig2a": _two_port_k(math.pi / 2, 1.0, 1.0),
        "fig2b": _two_port_k(3 * math.pi / 2, 1.0, 1.0),
        "fig2c": _two_port_phi(math.pi / 2, 1.0, 1.0),
        "fig2d": _two_port_k(math.pi / 3, _SQRT2, _SQRT3),
        "fig2e": _two_port_k(5 * math.pi / 3, _SQRT2, _SQRT3),
        "fig2f": _two_port_phi(math.pi / 3, _SQRT2, _SQRT3),
        "fig3a": _two_port_k(math.pi / 2, 0.5, 0.25),
        "fig3b": _two_port_k(math.pi / 2, 1.0, 1.0),
        "fig3c": _two_port_k(math.pi / 2, 2.0, 4.0),
        "fig3e": _detuned(-0.9),
        "fig3f": _detuned(0.1),
        "fig3g": _detuned(2.0),
    }
    for panel in "abc":
        cfg[f"fig5{panel}"] = _three_port_k(math.pi / 2, 1.0, 1.0)
    for panel in "def":
        cfg[f"fig5{panel}"] = _three_port_k(2 * math.pi / 3, 1.0, 1.0)
    for panel in "ghi":
        cfg[f"fig5{panel}"] = _three_port_k(3 * math.pi / 2, 1.0, 1.0)
    for panel in "abc":
        cfg[f"fig6{panel}"] = _three_port_k(math.pi / 2, 1.0 / _SQRT2, 0.5)
    for panel in "def":
        cfg[f"fig6{panel}"] = _three_port_k(math.pi / 2, _SQRT2, 2.0)
    return cfg


_RATIOS = {
    "fig3d": (("fig3a", "fig3b", "fig3c"), ("ratio_a", "ratio_b", "ratio_c")),
    "fig3h": (("fig3e", "fig3f", "fig3g"), ("ratio_e", "ratio_f", "ratio_g")),
}

FIGURE_NAMES: tuple[str, ...] = tuple(sorted(list(_configs()) + list(_RATIOS)))


def _ratio_table(name: str) -> SweepTable:
    sources, labels = _RATIOS[name]
    cfgs = _configs()
    tables = [run_sweep(SweepSpec.from_dict(cfgs[src])) for src in sources]
    k = tables[0].column("k")
    columns = {"k": k}
    with np.errstate(divide="ignore", invalid="ignore"):
        for table, label in zip(tables, labels):
            columns[label] = table.column("I_ab") / table.column("I_ba")
    data = np.column_stack(list(columns.values()))
    return SweepTable(mode="two_port", variable="k", columns=list(columns),
                      csv_columns=list(columns), data=data,
                      flags=merge_flags(*(t.flags for t in tables)))


def figure_preset(name: str) -> SweepTable:
    """Run the named panel's sweep and return its table."""
    cfgs = _configs()
    if name in _RATIOS:
        return _ratio_table(name)
    if name not in cfgs:
        raise ConfigError(
            f"unknown figure {name!r}; valid names: {', '.join(FIGURE_NAMES)}")
    return run_sweep(SweepSpec.from_dict(cfgs[name]))


def figure_config(name: str) -> dict:
    """The sweep configuration behind a (non-ratio) panel."""
    cfgs = _configs()
    if name not in cfgs:
        raise ConfigError(
            f"no plain sweep config for {name!r}; valid names: "
            f"{', '.join(sorted(cfgs))}")
    return cfgs[name]


__all__ = ["FIGURE_NAMES", "figure_preset", "figure_config",
           "K_SAMPLES", "PHI_SAMPLES"]
