"""Command-line front end.

    rigidcavity <command> --config run.json [--out DIR] [--si | --natural]

Commands: spectrum, bogoliubov, resonance-scan, scenario, entangle,
timeseries, and run (every entry of the config's ``outputs`` list).
Exit codes: 0 success, 1 I/O failure, 2 config error, 3 validity error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import units
from .bogoliubov import ValidityError, bogoliubov_block_1d, bogoliubov_block_3d, pair_generators
from .cavity import CavitySpec1D, ModeIndex3D, mode_frequency_1d, mode_frequency_3d
from .config import OUTPUTS, ConfigError, RunConfig, load_config
from .entangle import (
    NotPassive,
    coherent,
    entanglement_after_mixing,
    gate_from_mixing,
    apply_gate,
    product,
    squeezed_vacuum,
    thermal,
    vacuum,
)
from .profiles import ProfileWindow, Sinusoidal, VectorProfile
from .quadrature import QuadratureError, QuadratureSpec
from .resonance import CSV_COLUMNS, csv_row, desktop_predictions, feasibility_report, resonance_scan

log = logging.getLogger("rigidcavity")

CSV_SCHEMA_VERSION = 1
EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_VALIDITY, EXIT_NUMERICAL = 0, 1, 2, 3, 4

FILENAMES = {
    "spectrum": "spectrum.csv",
    "bogoliubov": "bogoliubov.json",
    "resonance-scan": "resonances.csv",
    "scenario": "scenario.csv",
    "entangle": "entangle.json",
    "timeseries": "timeseries.csv",
}


class UsageError(ValueError):
    """The config is well-formed but lacks what the command needs."""


def _need(cfg: RunConfig, *names):
    missing = [n for n in names if not getattr(cfg, n)]
    if missing:
        raise UsageError(f"config is missing: {', '.join(missing)}")


def _mode_label(mode) -> str:
    return str(mode) if isinstance(mode, ModeIndex3D) else str(int(mode))


def _axis_profile(cfg: RunConfig):
    prof = cfg.profile
    if isinstance(cfg.cavity, CavitySpec1D) and isinstance(prof, VectorProfile):
        (prof,) = prof.components.values()
    return prof


def _basis(cfg: RunConfig):
    if isinstance(cfg.cavity, CavitySpec1D):
        return list(cfg.modes) if cfg.modes else list(range(1, cfg.truncation + 1))
    return list(cfg.modes or [])


def build_block(cfg: RunConfig):
    _need(cfg, "cavity", "profile")
    if isinstance(cfg.cavity, CavitySpec1D):
        return bogoliubov_block_1d(cfg.cavity, _axis_profile(cfg), cfg.truncation, cfg.quadrature)
    return bogoliubov_block_3d(cfg.cavity, cfg.profile, cfg.modes, cfg.quadrature)


def spectrum_rows(cfg: RunConfig, si: bool):
    _need(cfg, "cavity")
    header = ["mode", "omega_per_m"] + (["omega_per_s", "frequency_hz"] if si else [])
    rows = []
    for mode in _basis(cfg):
        if isinstance(cfg.cavity, CavitySpec1D):
            w = mode_frequency_1d(cfg.cavity, int(mode))
        else:
            w = mode_frequency_3d(cfg.cavity, mode)
        row = [_mode_label(mode), repr(w)]
        if si:
            ws = units.per_metre_to_per_second(w)
            row += [repr(ws), repr(units.angular_to_hz(ws))]
        rows.append(row)
    return header, rows


def bogoliubov_document(cfg: RunConfig, si: bool) -> dict:
    block = build_block(cfg)
    doc = block.to_dict()
    if si:
        doc["frequencies_per_s"] = [units.per_metre_to_per_second(w) for w in block.frequencies]
        doc["window_s"] = [units.metres_to_seconds(t) for t in doc["window"]]
    return doc


def scan_rows(cfg: RunConfig):
    _need(cfg, "cavity", "scan")
    modes = _basis(cfg)
    s = cfg.scan
    preds = resonance_scan(cfg.cavity, modes, s["omega_range"], s["kinds"], s["amplitude"], s["axes"])
    return list(CSV_COLUMNS), [[csv_row(p)[c] for c in CSV_COLUMNS] for p in preds]


def scenario_outputs(cfg: RunConfig):
    _need(cfg, "scenario")
    s = cfg.scenario
    preds = desktop_predictions(s["wavelength"], s["Lx"], s["Ly"], s["amplitude"], s["m"], s["m_prime"],
                                s["motion"], s["target"])
    rows = [[csv_row(p)[c] for c in CSV_COLUMNS] for p in preds]
    report = feasibility_report(preds[0], s["reference_rpm"]).to_dict()
    report["motion"] = s["motion"]
    report["time_to_target_s"] = [p.time_to_target for p in preds]
    return list(CSV_COLUMNS), rows, report


def _single_mode_state(spec: dict):
    kind = spec["kind"]
    if kind == "vacuum":
        return vacuum(1)
    if kind == "coherent":
        return coherent(complex(spec.get("re", 0.0), spec.get("im", 0.0)))
    if kind == "thermal":
        return thermal(float(spec.get("nu", 1.0)))
    return squeezed_vacuum(float(spec.get("r", 0.0)), float(spec.get("phi", 0.0)))


def entangle_document(cfg: RunConfig) -> dict:
    _need(cfg, "entangle")
    block = build_block(cfg)
    pair = [ModeIndex3D.coerce(m) if isinstance(m, list) else int(m) for m in cfg.entangle["pair"]]
    state = product(*(_single_mode_state(s) for s in cfg.entangle["input"]))
    before, after = entanglement_after_mixing(state, block, pair)
    out_state = apply_gate(state, gate_from_mixing(block, pair))
    i, j = (block.index(m) for m in pair)
    return {
        "pair": [_mode_label(m) for m in pair],
        "mixing_angle": float(abs(block.ahat[i, j])),
        "log_negativity_before": before,
        "log_negativity_after": after,
        "input_state": state.to_dict(),
        "output_state": out_state.to_dict(),
    }


def emit_timeseries(cavity, profile, durations, pairs, quad: QuadratureSpec = QuadratureSpec(), si=False):
    """|Ahat|, |Bhat| of each tracked pair for a sinusoidal drive run for each duration.

    Every component must be sinusoidal; the window is rebuilt as [tau0, tau0 + T].
    """
    comps = profile.components if isinstance(profile, VectorProfile) else {"x": profile}
    if not all(isinstance(p, Sinusoidal) for p in comps.values()):
        raise UsageError("timeseries needs sinusoidal profile components")
    tau0 = next(iter(comps.values())).window.tau0
    pairs = [tuple(ModeIndex3D.coerce(m) if isinstance(m, (list, tuple)) else int(m) for m in pr)
             for pr in pairs]
    header = ["duration"] + (["duration_s"] if si else [])
    for a, b in pairs:
        tag = f"{_mode_label(a)}_{_mode_label(b)}"
        header += [f"abs_ahat_{tag}", f"abs_bhat_{tag}"]
    rows = []
    for T in durations:
        w = ProfileWindow(tau0, tau0 + T)
        rebuilt = VectorProfile({k: Sinusoidal(p.amplitude, p.omega, w, p.phase) for k, p in comps.items()})
        if isinstance(cavity, CavitySpec1D):
            (rebuilt,) = rebuilt.components.values()
        row = [repr(float(T))] + ([repr(units.metres_to_seconds(T))] if si else [])
        for a, b in pairs:
            A, B = pair_generators(cavity, rebuilt, a, b, quad)
            row += [repr(abs(A)), repr(abs(B))]
        rows.append(row)
    return header, rows


def timeseries_rows(cfg: RunConfig, si: bool):
    _need(cfg, "cavity", "profile", "timeseries")
    t = cfg.timeseries
    return emit_timeseries(cfg.cavity, cfg.profile, t["durations"], t["pairs"], cfg.quadrature, si)


def _write_csv(path: Path, header, rows):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _write_json(path: Path, doc):
    path.write_text(json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not serialisable: {type(o).__name__}")


def produce(command: str, cfg: RunConfig, out_dir: Path, si: bool) -> Path:
    """Compute one output and write it into ``out_dir``; returns the file path."""
    path = out_dir / FILENAMES[command]
    if command == "spectrum":
        _write_csv(path, *spectrum_rows(cfg, si))
    elif command == "bogoliubov":
        _write_json(path, bogoliubov_document(cfg, si))
    elif command == "resonance-scan":
        _write_csv(path, *scan_rows(cfg))
    elif command == "scenario":
        header, rows, report = scenario_outputs(cfg)
        _write_csv(path, header, rows)
        _write_json(out_dir / "feasibility.json", report)
    elif command == "entangle":
        _write_json(path, entangle_document(cfg))
    elif command == "timeseries":
        _write_csv(path, *timeseries_rows(cfg, si))
    else:
        raise ValueError(f"unknown command {command!r}")
    return path


def run(cfg: RunConfig, commands=None, out_dir=".", si=None) -> int:
    """Execute ``commands`` (default: the config's ``outputs``); returns an exit status."""
    si = cfg.si if si is None else si
    commands = list(commands if commands is not None else cfg.outputs)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for cmd in commands:
            path = produce(cmd, cfg, out, si)
            log.info("wrote %s", path)
    except UsageError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except (ValidityError, NotPassive) as exc:
        log.error("validity error: %s", exc)
        return EXIT_VALIDITY
    except (QuadratureError, FloatingPointError, np.linalg.LinAlgError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except OSError as exc:
        log.error("I/O failure: %s", exc)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rigidcavity", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=list(OUTPUTS) + ["run"])
    p.add_argument("--config", required=True, help="JSON run configuration")
    p.add_argument("--out", default=".", help="output directory (default: current)")
    units_group = p.add_mutually_exclusive_group()
    units_group.add_argument("--si", dest="si", action="store_true", default=None,
                             help="add SI columns (s^-1, Hz, s) to the outputs")
    units_group.add_argument("--natural", dest="si", action="store_false",
                             help="natural units only (1/m, m)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"cannot read config {args.config}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    commands = None if args.command == "run" else [args.command]
    return run(cfg, commands, args.out, args.si)


if __name__ == "__main__":
    sys.exit(main())
