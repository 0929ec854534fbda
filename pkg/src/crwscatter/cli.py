"""Command-line interface: evaluate, sweep, regenerate panels, report, verify.

Exit codes: 0 on success, 1 for configuration problems, 2 for numerical
failure (a singular evaluation, every sweep row singular, or a failed
verification run).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys as _sys

from .errors import ConfigError, CrwError, DomainError
from .presets import FIGURE_NAMES, figure_preset
from .sweep import SweepSpec, build_three_port, build_two_port, run_sweep
from .threeport import circulator_conditions, smatrix_three_port
from .twoport import nonreciprocity_conditions, smatrix_two_port
from .verify import verify_against_oracle


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None


def _mode_params(doc: dict) -> tuple[str, dict]:
    if "mode" not in doc:
        raise ConfigError("config is missing the 'mode' field")
    if "params" not in doc:
        raise ConfigError("config is missing the 'params' section")
    mode = doc["mode"]
    if mode not in ("two_port", "three_port"):
        raise ConfigError(f"mode must be 'two_port' or 'three_port', got {mode!r}")
    return mode, doc["params"]


def _energy_from_bindings(mode, sys, bindings):
    given = [name for name in ("k", "k_c", "energy") if bindings.get(name) is not None]
    if len(given) != 1:
        raise ConfigError(
            "a single evaluation needs exactly one of 'k'"
            + (", 'k_c'" if mode == "three_port" else "")
            + " or 'energy' in params")
    name = given[0]
    if name == "energy":
        return bindings["energy"]
    crw = sys.crw_c if name == "k_c" else sys.crw_a
    k = bindings[name]
    if not (0.0 < k < math.pi):
        raise ConfigError(f"binding '{name}' must lie in (0, pi), got {k}")
    return crw.omega - 2.0 * crw.xi * math.cos(k)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _result_doc(mode, result):
    n = len(result.labels)
    doc = {
        "mode": mode,
        "energy": result.energy,
        "labels": list(result.labels),
        "channels": {
            lab: {"k_re": wave.k.real, "k_im": wave.k.imag,
                  "propagating": wave.propagating}
            for lab, wave in zip(result.labels, result.channels)},
        "amplitudes_re": result.amplitudes.real.tolist(),
        "amplitudes_im": result.amplitudes.imag.tolist(),
        "flows": [[None if not math.isfinite(v) else v for v in row]
                  for row in result.flows.tolist()],
        "d_ratio": result.d_ratio,
    }
    if mode == "two_port":
        doc["absorption"] = {
            lab: (None if not math.isfinite(result.flows[0, j]) else
                  result.absorption(lab))
            for j, lab in enumerate(result.labels)}
    return doc


def _cmd_smatrix(args) -> int:
    doc = _load_config(args.config)
    mode, params = _mode_params(doc)
    if mode == "two_port":
        sys, bindings = build_two_port(params)
        energy = _energy_from_bindings(mode, sys, bindings)
        result = smatrix_two_port(sys, energy)
    else:
        sys, bindings = build_three_port(params)
        energy = _energy_from_bindings(mode, sys, bindings)
        result = smatrix_three_port(sys, energy)

    print(f"{mode} scattering at energy {_fmt(energy)}")
    for lab, wave in zip(result.labels, result.channels):
        state = "propagating" if wave.propagating else "evanescent"
        print(f"  channel {lab}: k = {_fmt(wave.k.real)}"
              + (f" + {_fmt(wave.k.imag)}i" if wave.k.imag else "") + f" ({state})")
    print("  flows I[out, in]:")
    for i, out_lab in enumerate(result.labels):
        cells = " ".join(f"{out_lab}<-{in_lab}: " +
                         ("nan" if not math.isfinite(result.flows[i, j])
                          else _fmt(result.flows[i, j]))
                         for j, in_lab in enumerate(result.labels))
        print("   ", cells)
    if mode == "two_port":
        for lab in result.labels:
            if math.isfinite(result.flows[0, result.index(lab)]):
                print(f"  absorption (incident {lab}): {_fmt(result.absorption(lab))}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(_result_doc(mode, result), fh, sort_keys=True, indent=1)
            fh.write("\n")
        print(f"wrote {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    doc = _load_config(args.config)
    spec = SweepSpec.from_dict(doc)
    out_path = args.out or spec.out_path
    if out_path is None:
        raise ConfigError("no output path: set output.path in the config or pass --out")
    table = run_sweep(spec)
    table.write(out_path, spec.out_format)
    print(f"wrote {table.n_rows} rows to {out_path}")
    if table.all_singular():
        print("error: every sample was singular", file=_sys.stderr)
        return 2
    return 0


def _cmd_figure(args) -> int:
    table = figure_preset(args.name)
    out_path = args.out or f"{args.name}.csv"
    table.write(out_path, "csv")
    print(f"wrote {table.n_rows} rows to {out_path}")
    return 0


def _cmd_conditions(args) -> int:
    doc = _load_config(args.config)
    mode, params = _mode_params(doc)
    if mode == "two_port":
        sys, _ = build_two_port(params)
        if sys.crw_a.xi != sys.crw_b.xi or sys.crw_a.omega != sys.crw_b.omega:
            raise ConfigError("the one-way conditions assume identical chains a and b")
        if sys.node.j_bc != sys.node.j_ca:
            raise ConfigError("the one-way conditions assume j_bc == j_ca")
        report = nonreciprocity_conditions(sys.crw_a.xi, sys.node.j_bc,
                                           sys.node.gamma, delta=sys.delta)
        print("two-port junction: xi={} j_c={} gamma={} delta={}".format(
            _fmt(sys.crw_a.xi), _fmt(sys.node.j_bc), _fmt(sys.node.gamma),
            _fmt(sys.delta)))
        if report.balanced:
            print("  balanced couplings (j_c**2 == gamma*xi): perfect point at "
                  "phase pi/2 with zero detuning")
        else:
            print("  general case: phase from arcsin(gamma*xi/j_c**2), detuning "
                  "from the coupling relation")
        print(f"  forward (a->b) perfect at phi = {_fmt(report.phi_forward)}, "
              f"k = {_fmt(report.k_perfect)}")
        print(f"  backward (b->a) perfect at phi = {_fmt(report.phi_backward)}, "
              f"k = {_fmt(report.k_perfect)}")
        print(f"  requires j_ab = {_fmt(report.j_ab_required)} and "
              f"delta = {_fmt(report.delta_required)}")
        if report.delta_matches is not None:
            verdict = "matches" if report.delta_matches else "does NOT match"
            print(f"  system detuning {_fmt(sys.delta)} {verdict} the requirement")
    else:
        sys, _ = build_three_port(params)
        report = circulator_conditions(sys)
        print("three-port junction: xi={} xi_c={} j_c={} phi={}".format(
            _fmt(sys.crw_a.xi), _fmt(sys.crw_c.xi), _fmt(sys.node.j_bc),
            _fmt(sys.node.phi)))
        if report.achievable:
            cycle = "->".join(report.cycle + (report.cycle[0],))
            print(f"  perfect circulation: {report.direction} ({cycle}) at "
                  f"k = k_c = {_fmt(report.k_perfect)} [{report.regime}]")
        else:
            print("  no perfect circulation")
        print(f"  {report.reason}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(dataclasses.asdict(report), fh, sort_keys=True, indent=1)
            fh.write("\n")
        print(f"wrote {args.out}")
    return 0


def _cmd_verify(args) -> int:
    report = verify_against_oracle(seed=args.seed, n_two=args.count,
                                   n_three=args.count, tol=args.tol)
    print(f"verify: seed={report.seed} tol={report.tol:g}")
    print(f"  two-port : {report.n_two} systems, max |ds| = {report.max_dev_two:.3e}")
    print(f"  three-port: {report.n_three} systems, max |ds| = {report.max_dev_three:.3e}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(dataclasses.asdict(report) | {"passed": report.passed},
                      fh, sort_keys=True, indent=1)
            fh.write("\n")
    if not report.passed:
        print("verify FAILED", file=_sys.stderr)
        return 2
    print("verify passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crw-scatter",
        description="Single-photon scattering in coupled-resonator waveguide networks")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("smatrix", help="evaluate one scattering matrix")
    p.add_argument("--config", required=True, help="JSON config with mode/params")
    p.add_argument("--out", help="write the result as JSON")
    p.set_defaults(func=_cmd_smatrix)

    p = sub.add_parser("sweep", help="run a parameter sweep from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="override the config output path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figure", help="regenerate the data behind a flow panel")
    p.add_argument("name", help="panel name, e.g. fig2a (see --list via error)")
    p.add_argument("--out", help="output CSV path (default <name>.csv)")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("conditions", help="report the perfect-transport conditions")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="write the report as JSON")
    p.set_defaults(func=_cmd_conditions)

    p = sub.add_parser("verify", help="randomized cross-check against the lattice solver")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--count", type=int, default=500,
                   help="systems per junction type (default 500)")
    p.add_argument("--out", help="write the report as JSON")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=_sys.stderr)
        return 1
    except CrwError as exc:
        print(f"numerical failure: {exc}", file=_sys.stderr)
        return 2


def entry():  # console-script hook
    _sys.exit(main())


if __name__ == "__main__":
    entry()
