"""``qstirling`` command-line front end.

Subcommands: ``sweep``, ``cycle``, ``levels``, ``oracle``.  Every option may
also come from a flat ``key = value`` config file (``--config``) whose keys
are the long flag names without leading dashes; flags override the file.
Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import json
import logging
import sys

from .errors import QStirlingError
from .oracles import audit_well, z_ho_closed
from .params import PhysicalParams, UnitSystem, frequency_to_si, length_to_natural
from .spectra import Medium, OscillatorGeometry, SpectrumModel, WellGeometry, Corrections
from .statmech import TruncationPolicy
from .sweep import (PAPER_HALF_WIDTH_SI, SweepError, SweepSpec, emit_csv, emit_json,
                    evaluate_point, format_number, levels_table, run_sweep)

EXIT_OK, EXIT_CONFIG, EXIT_ALL_FAILED = 0, 2, 3

log = logging.getLogger("qstirling")


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# dest -> (flag, type, default, help)
COMMON = {
    "units": ("--units", str, "natural", "si or natural"),
    "preset": ("--preset", str, "ncgup-full", "textbook, relativistic or ncgup-full"),
    "mass": ("--mass", float, None, "particle mass (default electron)"),
    "zeta": ("--zeta", float, None, "override zeta = 1/(c M_pl)"),
    "weight_epsilon": ("--weight-epsilon", float, 1e-16, "Boltzmann tail cutoff"),
    "hard_cap": ("--hard-cap", int, 10**6, "largest quantum number summed"),
    "no_turnover": ("--no-turnover", _bool, False, "sum past the spectrum turnover"),
    "violation_threshold": ("--violation-threshold", float, 1e-6,
                            "turnover weight that counts as a regime violation"),
    "coordinate_length": ("--coordinate-length", _bool, False,
                          "use L0 instead of the NC-rescaled well width"),
    "output": ("--output", str, "csv", "csv or json"),
}
GEOMETRY = {
    "medium": ("--medium", str, "oscillator", "well or oscillator"),
    "l": ("--l", float, None, "half width L of the well (full width 2L)"),
    "omega": ("--omega", float, None, "A/D frequency"),
    "omega_prime": ("--omega-prime", float, None, "B/C frequency"),
    "t_hot": ("--t-hot", float, 2.0, "hot bath temperature"),
    "t_cold": ("--t-cold", float, 1.0, "cold bath temperature"),
}
SWEEP = {
    "alpha_min": ("--alpha-min", float, 1e30, "smallest alpha"),
    "alpha_max": ("--alpha-max", float, 1e41, "largest alpha"),
    "steps": ("--steps", int, 100, "number of alpha points"),
    "scale": ("--scale", str, "log", "linear or log"),
    "no_anchor": ("--no-anchor", _bool, False, "drop the alpha=0 row of log sweeps"),
    "jobs": ("--jobs", int, 1, "worker processes"),
}
SINGLE = {"alpha": ("--alpha", float, 0.0, "NC parameter")}
LEVELS = {
    "medium": ("--medium", str, "oscillator", "well, double-well or oscillator"),
    "l": ("--l", float, None, "well width handed to the spectrum (parent width for double-well)"),
    "omega": ("--omega", float, None, "oscillator frequency"),
    "n_max": ("--n-max", int, 10, "largest quantum number listed"),
    "t": ("--t", float, None, "temperature for cumulative Boltzmann weights"),
}
ORACLE = {
    "preset": ("--preset", str, "textbook",
               "textbook, relativistic or ncgup-full (well audit only)"),
    "medium": ("--medium", str, "well",
               "well or oscillator; the natural-unit well audit uses m=1 unless --mass is given"),
    "l": ("--l", float, 5.0, "well width"),
    "omega": ("--omega", float, 4.0, "oscillator frequency"),
    "temperatures": ("--temperatures", str, "1,2,5,10,20", "comma-separated temperatures"),
}

COMMANDS = {
    "sweep": {**COMMON, **GEOMETRY, **SWEEP},
    "cycle": {**COMMON, **GEOMETRY, **SINGLE},
    "levels": {**COMMON, **LEVELS, **SINGLE},
    "oracle": {**COMMON, **ORACLE, **SINGLE},
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qstirling", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, opts in COMMANDS.items():
        sp = sub.add_parser(name)
        sp.add_argument("--config", default=argparse.SUPPRESS, help="key = value file")
        for dest, (flag, typ, default, help_) in opts.items():
            if typ is _bool:
                sp.add_argument(flag, dest=dest, nargs="?", const=True, type=_bool,
                                default=argparse.SUPPRESS, help=help_)
            else:
                sp.add_argument(flag, dest=dest, type=typ, default=argparse.SUPPRESS,
                                help=f"{help_} (default: {default})")
    return parser


def read_config(path: str, opts: dict) -> dict:
    """Parse a flat ``key = value`` file into option values."""
    cp = configparser.ConfigParser(interpolation=None)
    with open(path, encoding="utf-8") as fh:
        cp.read_string("[qstirling]\n" + fh.read())
    by_key = {flag.lstrip("-"): dest for dest, (flag, *_ ) in opts.items()}
    out = {}
    for key, raw in cp["qstirling"].items():
        dest = by_key.get(key.replace("_", "-"))
        if dest is None:
            raise QStirlingConfigError(f"{path}: unknown key {key!r}")
        typ = opts[dest][1]
        try:
            out[dest] = typ(raw.strip())
        except ValueError as exc:
            raise QStirlingConfigError(f"{path}: bad value for {key!r}: {exc}") from None
    return out


class QStirlingConfigError(Exception):
    pass


def resolve(argv=None) -> argparse.Namespace:
    """Merge defaults, config file and flags (later wins)."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    opts = COMMANDS[ns.command]
    values = {dest: spec[2] for dest, spec in opts.items()}
    if getattr(ns, "config", None):
        values.update(read_config(ns.config, opts))
    values.update({k: v for k, v in vars(ns).items() if k in opts})
    return argparse.Namespace(command=ns.command, verbose=ns.verbose, **values)


def _policy(a) -> TruncationPolicy:
    return TruncationPolicy(weight_epsilon=a.weight_epsilon, hard_cap=a.hard_cap,
                            respect_turnover=not a.no_turnover,
                            violation_threshold=a.violation_threshold)


def _params(a, alpha=0.0):
    units = UnitSystem.parse(a.units)
    if units is UnitSystem.SI:
        kw = {} if a.mass is None else {"m": a.mass}
        return PhysicalParams.si(alpha=alpha, zeta=a.zeta, **kw)
    return PhysicalParams.natural(m=a.mass, alpha=alpha, zeta=a.zeta)


def _sweep_spec(a, **over) -> SweepSpec:
    kw = dict(
        medium=a.medium, preset=a.preset, T_hot=a.t_hot, T_cold=a.t_cold,
        L=a.l, omega=a.omega, omega_prime=a.omega_prime, units=a.units,
        output=a.output, policy=_policy(a), mass=a.mass, zeta=a.zeta,
        use_physical_length=not a.coordinate_length)
    if a.command == "sweep":
        kw.update(alpha_min=a.alpha_min, alpha_max=a.alpha_max, steps=a.steps,
                  scale=a.scale, anchor=not a.no_anchor, jobs=a.jobs)
    kw.update(over)
    return SweepSpec(**kw)


def _write_records(records: list[dict], fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(records, indent=1) + "\n")
        return
    if not records:
        return
    w = csv.writer(out, lineterminator="\n")
    cols = list(records[0])
    w.writerow(cols)
    for r in records:
        w.writerow([v if isinstance(v, str) else format_number(v) for v in (r[c] for c in cols)])


def cmd_sweep(a, out) -> int:
    spec = _sweep_spec(a)
    rows = []
    try:
        for row in run_sweep(spec):
            rows.append(row)
    except SweepError as exc:
        log.error("%s", exc)
        out.write(emit_csv(rows) if spec.output == "csv" else emit_json(rows))
        return EXIT_ALL_FAILED
    out.write(emit_csv(rows) if spec.output == "csv" else emit_json(rows))
    return EXIT_OK


def cmd_cycle(a, out) -> int:
    spec = _sweep_spec(a, scale="linear", alpha_min=a.alpha, alpha_max=a.alpha)
    row = evaluate_point(spec, a.alpha)
    out.write(emit_csv([row]) if spec.output == "csv" else emit_json([row]))
    return EXIT_ALL_FAILED if row.failed else EXIT_OK


def _level_model(a) -> SpectrumModel:
    units = UnitSystem.parse(a.units)
    p = _params(a, a.alpha)
    flags = Corrections.preset(a.preset)
    if a.medium == "oscillator":
        w = a.omega if a.omega is not None else (
            4.0 if units is UnitSystem.NATURAL else frequency_to_si(4.0))
        return SpectrumModel(Medium.OSCILLATOR, OscillatorGeometry(w), p, flags)
    L = a.l
    if L is None:
        L = 2 * PAPER_HALF_WIDTH_SI
        if units is UnitSystem.NATURAL:
            L = length_to_natural(L)
    medium = {"well": Medium.WELL, "double-well": Medium.DOUBLE_WELL}.get(a.medium)
    if medium is None:
        raise QStirlingConfigError(f"unknown medium {a.medium!r}")
    return SpectrumModel(medium, WellGeometry(L, not a.coordinate_length), p, flags)


def cmd_levels(a, out) -> int:
    model = _level_model(a)
    if a.n_max > a.hard_cap:
        raise QStirlingConfigError("n-max must not exceed hard-cap")
    _write_records(levels_table(model, a.n_max, a.t, _policy(a)), a.output, out)
    return EXIT_OK


def cmd_oracle(a, out) -> int:
    if (a.medium == "well" and a.mass is None
            and UnitSystem.parse(a.units) is UnitSystem.NATURAL):
        # electron levels are too dense for a direct sum at these widths
        a.mass = 1.0
    p = _params(a, a.alpha)
    temps = [float(t) for t in a.temperatures.split(",") if t.strip()]
    records = []
    for T in temps:
        if a.medium == "well":
            rep = audit_well(WellGeometry(a.l, not a.coordinate_length), p, T,
                             Corrections.preset(a.preset), _policy(a))
        elif a.medium == "oscillator":
            rep = z_ho_closed(OscillatorGeometry(a.omega), p, T)
        else:
            raise QStirlingConfigError(f"unknown medium {a.medium!r}")
        records.append({"T": T, **rep.to_dict()})
    _write_records(records, a.output, out)
    return EXIT_OK


HANDLERS = {"sweep": cmd_sweep, "cycle": cmd_cycle, "levels": cmd_levels,
            "oracle": cmd_oracle}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        a = resolve(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (QStirlingConfigError, OSError, configparser.Error) as exc:
        print(f"qstirling: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING,
                        format="qstirling: %(message)s", stream=sys.stderr)
    logging.captureWarnings(True)
    try:
        return HANDLERS[a.command](a, out)
    except (QStirlingConfigError, ValueError) as exc:
        print(f"qstirling: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QStirlingError as exc:
        print(f"qstirling: {exc}", file=sys.stderr)
        return EXIT_ALL_FAILED


if __name__ == "__main__":
    sys.exit(main())
