"""Parameter sweeps over wave number, phase, detuning or energy.

A sweep is described by a single JSON document::

    {
      "mode": "two_port" | "three_port",
      "params": { ... system parameters and fixed bindings ... },
      "sweep": {"variable": "k", "start": 0.0, "stop": 3.14159, "samples": 403},
      "output": {"path": "out.csv", "format": "csv"}
    }

Rows are evaluated per incident channel: a row of a ``k`` (or ``k_c``)
sweep drives every incident chain at that wave number in its own band,
which is how the flow panels are parameterized; an ``energy`` sweep drives
all chains at one common energy. Rows at band edges or with a singular
scattering matrix carry NaN values and a flag instead of aborting.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ConfigError, DomainError
from .threeport import ThreePortSystem
from .twoport import SINGULAR_TOL, TwoPortSystem
from .types import CrwParams, NodeParams

TWO_PI = 2.0 * math.pi

_VARIABLES = {
    "two_port": ("k", "phi", "delta", "energy"),
    "three_port": ("k", "k_c", "phi", "energy"),
}

_TWO_PORT_KEYS = {"xi", "xi_a", "xi_b", "omega", "omega_a", "omega_b", "j_ab",
                  "j_c", "j_bc", "j_ca", "phi", "delta", "omega_c", "gamma",
                  "k", "energy"}
_THREE_PORT_KEYS = {"xi", "xi_a", "xi_b", "xi_c", "omega", "omega_a", "omega_b",
                    "omega_c", "j_ab", "j_c", "j_bc", "j_ca", "phi",
                    "k", "k_c", "energy"}

_FLAG_RANK = {"ok": 0, "off_band": 1, "band_edge": 2, "singular": 3}


def _number(params, key, default=None):
    if key not in params:
        return default
    value = params[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"parameter '{key}' must be a number, got {value!r}")
    if not math.isfinite(float(value)):
        raise ConfigError(f"parameter '{key}' must be finite, got {value!r}")
    return float(value)


def _check_keys(params, allowed, mode):
    unknown = sorted(set(params) - allowed)
    if unknown:
        raise ConfigError(
            f"unknown parameter(s) {unknown} for {mode} mode; "
            f"valid keys: {sorted(allowed)}")


def build_two_port(params: dict) -> tuple[TwoPortSystem, dict]:
    """Construct a two-port system plus fixed bindings from config keys."""
    _check_keys(params, _TWO_PORT_KEYS, "two_port")
    xi = _number(params, "xi", 1.0)
    xi_a = _number(params, "xi_a", xi)
    xi_b = _number(params, "xi_b", xi)
    omega = _number(params, "omega", 0.0)
    omega_a = _number(params, "omega_a", omega)
    omega_b = _number(params, "omega_b", omega)
    if "delta" in params and "omega_c" in params:
        raise ConfigError("give either 'delta' or 'omega_c', not both")
    omega_c = _number(params, "omega_c",
                      omega_a + _number(params, "delta", 0.0))
    j_c = _number(params, "j_c")
    j_bc = _number(params, "j_bc", j_c)
    j_ca = _number(params, "j_ca", j_c)
    if j_bc is None or j_ca is None:
        raise ConfigError("missing coupling: give 'j_c' or both 'j_bc' and 'j_ca'")
    j_ab = _number(params, "j_ab", xi_a)
    try:
        sys = TwoPortSystem(
            crw_a=CrwParams(omega=omega_a, xi=xi_a),
            crw_b=CrwParams(omega=omega_b, xi=xi_b),
            node=NodeParams(j_ab=j_ab, j_bc=j_bc, j_ca=j_ca,
                            phi=_number(params, "phi", 0.0),
                            omega_c=omega_c, gamma=_number(params, "gamma", 0.0)))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    bindings = {"k": _number(params, "k"), "energy": _number(params, "energy")}
    if bindings["k"] is not None and bindings["energy"] is not None:
        raise ConfigError("give either 'k' or 'energy' as the fixed binding, not both")
    return sys, bindings


def build_three_port(params: dict) -> tuple[ThreePortSystem, dict]:
    """Construct a three-port system plus fixed bindings from config keys."""
    _check_keys(params, _THREE_PORT_KEYS, "three_port")
    xi = _number(params, "xi", 1.0)
    xi_a = _number(params, "xi_a", xi)
    xi_b = _number(params, "xi_b", xi)
    xi_c = _number(params, "xi_c", xi)
    omega = _number(params, "omega", 0.0)
    omega_a = _number(params, "omega_a", omega)
    omega_b = _number(params, "omega_b", omega)
    omega_c = _number(params, "omega_c", omega)
    j_c = _number(params, "j_c")
    j_bc = _number(params, "j_bc", j_c)
    j_ca = _number(params, "j_ca", j_c)
    if j_bc is None or j_ca is None:
        raise ConfigError("missing coupling: give 'j_c' or both 'j_bc' and 'j_ca'")
    j_ab = _number(params, "j_ab", xi_a)
    try:
        sys = ThreePortSystem(
            crw_a=CrwParams(omega=omega_a, xi=xi_a),
            crw_b=CrwParams(omega=omega_b, xi=xi_b),
            crw_c=CrwParams(omega=omega_c, xi=xi_c),
            node=NodeParams(j_ab=j_ab, j_bc=j_bc, j_ca=j_ca,
                            phi=_number(params, "phi", 0.0),
                            omega_c=omega_c, gamma=0.0))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    bindings = {"k": _number(params, "k"), "k_c": _number(params, "k_c"),
                "energy": _number(params, "energy")}
    if bindings["energy"] is not None and (bindings["k"] is not None
                                           or bindings["k_c"] is not None):
        raise ConfigError("give either wave-number bindings or 'energy', not both")
    return sys, bindings


@dataclass(frozen=True)
class SweepSpec:
    """One validated sweep: a system, a swept variable and its sampling."""

    mode: str
    params: dict
    variable: str
    start: float
    stop: float
    samples: int
    out_path: str | None = None
    out_format: str = "csv"

    def __post_init__(self):
        if self.mode not in _VARIABLES:
            raise ConfigError(f"mode must be 'two_port' or 'three_port', got {self.mode!r}")
        if self.variable not in _VARIABLES[self.mode]:
            raise ConfigError(
                f"variable {self.variable!r} is not sweepable in {self.mode} mode; "
                f"choose one of {_VARIABLES[self.mode]}")
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ConfigError(f"samples must be a positive integer, got {self.samples!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ConfigError("sweep range must be finite")
        if self.start > self.stop:
            raise ConfigError(f"sweep start {self.start} exceeds stop {self.stop}")
        if self.variable in ("k", "k_c") and (self.start < 0.0 or self.stop > math.pi):
            raise ConfigError("wave-number sweeps must stay within [0, pi]")
        if self.variable == "phi" and (self.start < 0.0 or self.stop > TWO_PI):
            raise ConfigError("phase sweeps must stay within [0, 2*pi]")
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"output format must be 'csv' or 'json', got {self.out_format!r}")

    @classmethod
    def from_dict(cls, doc: dict) -> "SweepSpec":
        for section in ("mode", "params", "sweep"):
            if section not in doc:
                raise ConfigError(f"config is missing the '{section}' section")
        sweep = doc["sweep"]
        for key in ("variable", "start", "stop", "samples"):
            if key not in sweep:
                raise ConfigError(f"sweep section is missing '{key}'")
        output = doc.get("output", {})
        return cls(mode=doc["mode"], params=dict(doc["params"]),
                   variable=sweep["variable"], start=float(sweep["start"]),
                   stop=float(sweep["stop"]), samples=sweep["samples"],
                   out_path=output.get("path"),
                   out_format=output.get("format", "csv"))

    @classmethod
    def from_json(cls, path) -> "SweepSpec":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
        return cls.from_dict(doc)


def _format_value(x: float) -> str:
    return "nan" if not math.isfinite(x) else f"{x:.17g}"


@dataclass
class SweepTable:
    """Columnar sweep output; CSV keeps the fixed schema, JSON keeps everything."""

    mode: str
    variable: str
    columns: list[str]
    csv_columns: list[str]
    data: np.ndarray
    flags: list[str] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    @property
    def n_rows(self) -> int:
        return self.data.shape[0]

    def all_singular(self) -> bool:
        return all(f == "singular" for f in self.flags)

    def to_csv(self) -> str:
        idx = [self.columns.index(c) for c in self.csv_columns]
        lines = [",".join(self.csv_columns + ["flag"])]
        for r in range(self.n_rows):
            cells = [_format_value(self.data[r, i]) for i in idx]
            cells.append(self.flags[r])
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = [[None if not math.isfinite(v) else v for v in row]
                for row in self.data.tolist()]
        doc = {"mode": self.mode, "variable": self.variable,
               "columns": self.columns, "rows": rows, "flags": self.flags}
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"

    def write(self, path, fmt: str = "csv"):
        text = self.to_csv() if fmt == "csv" else self.to_json()
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _edge_flags(prop_in: np.ndarray, values: np.ndarray, variable: str,
                d_ratios: np.ndarray, amp_finite: np.ndarray) -> list[str]:
    """Per-row flag from incident-channel propagation and conditioning."""
    n = prop_in.shape[0]
    flags = []
    for r in range(n):
        bad_cond = (not np.all(np.isfinite(d_ratios[r]))
                    or np.any(d_ratios[r] < SINGULAR_TOL)
                    or not amp_finite[r])
        if bad_cond:
            flags.append("singular")
        elif not np.all(prop_in[r]):
            if variable in ("k", "k_c") and (
                    abs(values[r]) < 1e-12 or abs(values[r] - math.pi) < 1e-12):
                flags.append("band_edge")
            else:
                flags.append("off_band")
        else:
            flags.append("ok")
    return flags


def _two_port_columns(sys: TwoPortSystem, bindings, variable, values):
    n = values.shape[0]
    node = sys.node
    phi_arr = np.full(n, node.phi)
    oc_arr = np.full(n, node.omega_c)
    k_bind = bindings.get("k")
    e_bind = bindings.get("energy")

    if variable == "k":
        e_a = sys.crw_a.omega - 2.0 * sys.crw_a.xi * np.cos(values)
        e_b = sys.crw_b.omega - 2.0 * sys.crw_b.xi * np.cos(values)
        k_col = values
    elif variable == "energy":
        e_a = e_b = values
    else:  # phi or delta: a fixed operating point is required
        if k_bind is None and e_bind is None:
            raise ConfigError(
                f"sweeping '{variable}' requires a fixed 'k' or 'energy' in params")
        if k_bind is not None:
            e_a = np.full(n, sys.crw_a.omega - 2.0 * sys.crw_a.xi * math.cos(k_bind))
            e_b = np.full(n, sys.crw_b.omega - 2.0 * sys.crw_b.xi * math.cos(k_bind))
            k_col = np.full(n, k_bind)
        else:
            e_a = e_b = np.full(n, e_bind)
        if variable == "phi":
            phi_arr = values
        else:
            oc_arr = sys.crw_a.omega + values

    xis = np.array([sys.crw_a.xi, sys.crw_b.xi])
    out = {}
    prop_in = np.empty((n, 2), dtype=bool)
    d_ratios = np.empty((n, 2))
    amp_ok = np.ones(n, dtype=bool)
    for ci, (lab, e_in) in enumerate((("a", e_a), ("b", e_b))):
        s, k, dr = kernels.two_port_smatrix_batch(
            e_in, phi_arr, oc_arr, sys.crw_a.omega, sys.crw_a.xi,
            sys.crw_b.omega, sys.crw_b.xi, node.j_ab, node.j_bc, node.j_ca,
            node.gamma)
        prop = np.stack([kernels.propagating_mask(sys.crw_a.omega, sys.crw_a.xi, e_in),
                         kernels.propagating_mask(sys.crw_b.omega, sys.crw_b.xi, e_in)],
                        axis=1)
        flows = kernels.flows_from_amplitudes(s, k, prop, xis)
        for oi, out_lab in enumerate(("a", "b")):
            out[f"I_{out_lab}{lab}"] = flows[:, oi, ci]
            out[f"s2_{out_lab}{lab}"] = np.abs(s[:, oi, ci]) ** 2
        prop_in[:, ci] = prop[:, ci]
        d_ratios[:, ci] = dr
        amp_ok &= np.all(np.isfinite(s[:, :, ci].reshape(n, -1)), axis=1)
        if ci == 0 and variable == "energy":
            k_col = np.where(prop[:, 0], k[:, 0].real, np.nan)
        if ci == 0 and variable in ("phi", "delta") and k_bind is None:
            k_col = np.where(prop[:, 0], k[:, 0].real, np.nan)

    out["absorption"] = 1.0 - out["I_aa"] - out["I_ba"]
    columns = {"k": k_col, "phi": phi_arr if variable == "phi" else np.full(n, node.phi)}
    if variable == "delta":
        columns["delta"] = values
    if variable == "energy":
        columns["energy"] = values
    columns.update(out)
    flags = _edge_flags(prop_in, values, variable, d_ratios, amp_ok)
    flow_names = ["I_aa", "I_ab", "I_ba", "I_bb"]
    csv_cols = ["k", "phi"] + (["delta"] if variable == "delta" else []) \
        + (["energy"] if variable == "energy" else []) + flow_names + ["absorption"]
    return columns, csv_cols, flags


def _three_port_columns(sys: ThreePortSystem, bindings, variable, values):
    n = values.shape[0]
    node = sys.node
    phi_arr = np.full(n, node.phi)
    chains = (("a", sys.crw_a), ("b", sys.crw_b), ("c", sys.crw_c))
    k_bind = bindings.get("k")
    kc_bind = bindings.get("k_c")
    e_bind = bindings.get("energy")

    if variable in ("k", "k_c"):
        energies = {lab: crw.omega - 2.0 * crw.xi * np.cos(values)
                    for lab, crw in chains}
        k_col = values
        kc_col = values
    elif variable == "energy":
        energies = {lab: values for lab, _ in chains}
    else:  # phi
        if e_bind is not None:
            energies = {lab: np.full(n, e_bind) for lab, _ in chains}
        elif k_bind is not None:
            kc = k_bind if kc_bind is None else kc_bind
            energies = {
                "a": np.full(n, sys.crw_a.omega - 2.0 * sys.crw_a.xi * math.cos(k_bind)),
                "b": np.full(n, sys.crw_b.omega - 2.0 * sys.crw_b.xi * math.cos(k_bind)),
                "c": np.full(n, sys.crw_c.omega - 2.0 * sys.crw_c.xi * math.cos(kc)),
            }
            k_col = np.full(n, k_bind)
            kc_col = np.full(n, kc)
        else:
            raise ConfigError(
                "sweeping 'phi' requires fixed 'k' (optionally 'k_c') or 'energy' in params")
        phi_arr = values

    xis = np.array([crw.xi for _, crw in chains])
    out = {}
    prop_in = np.empty((n, 3), dtype=bool)
    d_ratios = np.empty((n, 3))
    amp_ok = np.ones(n, dtype=bool)
    for ci, (lab, _) in enumerate(chains):
        e_in = energies[lab]
        s, k, dr = kernels.three_port_smatrix_batch(
            e_in, phi_arr, sys.crw_a.omega, sys.crw_a.xi, sys.crw_b.omega,
            sys.crw_b.xi, sys.crw_c.omega, sys.crw_c.xi, node.j_ab, node.j_bc,
            node.j_ca)
        prop = np.stack([kernels.propagating_mask(crw.omega, crw.xi, e_in)
                         for _, crw in chains], axis=1)
        flows = kernels.flows_from_amplitudes(s, k, prop, xis)
        for oi, (out_lab, _) in enumerate(chains):
            out[f"I_{out_lab}{lab}"] = flows[:, oi, ci]
            out[f"s2_{out_lab}{lab}"] = np.abs(s[:, oi, ci]) ** 2
        prop_in[:, ci] = prop[:, ci]
        d_ratios[:, ci] = dr
        amp_ok &= np.all(np.isfinite(s[:, :, ci].reshape(n, -1)), axis=1)
        if variable == "energy":
            if ci == 0:
                k_col = np.where(prop[:, 0], k[:, 0].real, np.nan)
            if ci == 2:
                kc_col = np.where(prop[:, 2], k[:, 2].real, np.nan)

    columns = {"k": k_col, "k_c": kc_col,
               "phi": phi_arr if variable == "phi" else np.full(n, node.phi)}
    if variable == "energy":
        columns["energy"] = values
    columns.update(out)
    flags = _edge_flags(prop_in, values, variable, d_ratios, amp_ok)
    flow_names = [f"I_{o}{i}" for o in "abc" for i in "abc"]
    csv_cols = ["k", "k_c", "phi"] + (["energy"] if variable == "energy" else []) \
        + flow_names
    return columns, csv_cols, flags


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Evaluate a sweep; one row per sample, in swept order."""
    values = np.linspace(spec.start, spec.stop, spec.samples)
    if spec.mode == "two_port":
        sys, bindings = build_two_port(spec.params)
        columns, csv_cols, flags = _two_port_columns(sys, bindings, spec.variable, values)
    else:
        sys, bindings = build_three_port(spec.params)
        columns, csv_cols, flags = _three_port_columns(sys, bindings, spec.variable, values)
    names = list(columns)
    data = np.column_stack([columns[name] for name in names])
    return SweepTable(mode=spec.mode, variable=spec.variable, columns=names,
                      csv_columns=csv_cols, data=data, flags=flags)


def merge_flags(*flag_lists: list[str]) -> list[str]:
    """Worst flag per row across several tables."""
    return [max(row, key=lambda f: _FLAG_RANK[f]) for row in zip(*flag_lists)]


__all__ = [
    "SweepSpec",
    "SweepTable",
    "run_sweep",
    "build_two_port",
    "build_three_port",
    "merge_flags",
]
