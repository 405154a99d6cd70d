"""Command-line front end: flag/config-file parsing, sweep orchestration,
CSV/JSON emission.

Config files are line-oriented ``key=value`` with the same keys as the
flags (``#`` starts a comment); flags take precedence over file values.
"""

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
import tempfile

import numpy as np

from .core import MOD_ORDERS, SystemConfig, validate_config
from .harness import CSV_COLUMNS, DETECTORS, SCHEMES, bits_per_tx, run_sweep

# config-file keys, normalized to the flag spellings
_KEYS = ("config", "scheme", "detector", "nr", "np", "n-reflectors", "mod",
         "alpha", "nc", "iters", "snr", "trials", "seed", "out", "format")


@dataclasses.dataclass
class RunSpec:
    """Fully resolved run request; cfg already passed validation."""

    cfg: SystemConfig
    scheme: str = "mas"
    detector: str = "ssd"
    out_path: str | None = None
    out_format: str = "csv"


def parse_alpha(text: str) -> tuple:
    return tuple(float(tok) for tok in text.split(","))


def parse_snr(text: str) -> tuple:
    """SNR grid in dB: either "start:step:stop" (stop inclusive) or a comma list."""
    if ":" in text:
        start, step, stop = (float(tok) for tok in text.split(":"))
        if step == 0:
            raise ValueError("snr: step must be nonzero")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        if n < 1:
            raise ValueError(f"snr: empty range {text!r}")
        return tuple(start + i * step for i in range(n))
    return tuple(float(tok) for tok in text.split(","))


def read_config_file(path: str) -> dict:
    """Parse a key=value config file; '#' comments and blank lines are skipped."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = line.split("=", 1)
            key = key.strip().replace("_", "-")
            if key not in _KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsmas",
        description="Monte Carlo BER/throughput/complexity sweeps for "
                    "reflector-aided antenna-selection modulation",
    )
    parser.add_argument("--config", metavar="PATH", help="key=value config file")
    parser.add_argument("--scheme", choices=["mas", "sas-sm", "sas-ssk"])
    parser.add_argument("--detector", choices=["ml", "ssd"])
    parser.add_argument("--nr", type=int, help="receive antennas")
    parser.add_argument("--np", type=int, help="selected antennas per transmission")
    parser.add_argument("--n-reflectors", type=int)
    parser.add_argument("--mod", choices=sorted(MOD_ORDERS, key=MOD_ORDERS.get))
    parser.add_argument("--alpha", metavar="a1,a2,...", help="power ratios, ascending")
    parser.add_argument("--nc", type=int, help="antennas kept by the candidate sorter")
    parser.add_argument("--iters", type=int, help="candidate rows the SSD decodes")
    parser.add_argument("--snr", metavar="start:step:stop", help="SNR grid in dB")
    parser.add_argument("--trials", type=int, help="transmissions per SNR point")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", metavar="PATH", help="output path (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"])
    return parser


def _merge_negative_values(argv):
    """Join flags with values that can start with '-' (e.g. --snr -20:2:-8)
    into single --flag=value tokens so argparse does not read them as options."""
    merged = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--snr", "--alpha") and i + 1 < len(argv):
            merged.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            merged.append(tok)
            i += 1
    return merged


def parse_run_spec(argv=None) -> RunSpec:
    """Resolve flags over config-file values into a validated RunSpec."""
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_negative_values(list(argv)))
    file_values = {}
    if args.config:
        try:
            file_values = read_config_file(args.config)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))

    def resolve(key, flag_value):
        return flag_value if flag_value is not None else file_values.get(key)

    try:
        scheme = resolve("scheme", args.scheme) or "mas"
        if scheme not in SCHEMES:
            raise ValueError(f"scheme: expected one of {SCHEMES}, got {scheme!r}")
        detector = resolve("detector", args.detector) or ("ssd" if scheme == "mas" else "ml")
        if detector not in DETECTORS:
            raise ValueError(f"detector: expected one of {DETECTORS}, got {detector!r}")
        defaults = SystemConfig()
        fields = {}
        raw = resolve("nr", args.nr)
        fields["n_rx"] = int(raw) if raw is not None else defaults.n_rx
        raw = resolve("np", args.np)
        fields["n_sel"] = int(raw) if raw is not None else defaults.n_sel
        raw = resolve("n-reflectors", args.n_reflectors)
        fields["n_refl"] = int(raw) if raw is not None else defaults.n_refl
        raw = resolve("mod", args.mod)
        if raw is not None:
            if raw not in MOD_ORDERS:
                raise ValueError(f"mod: unknown modulation {raw!r}")
            fields["mod_order"] = MOD_ORDERS[raw]
        raw = resolve("alpha", args.alpha)
        if raw is not None:
            fields["alpha"] = parse_alpha(raw) if isinstance(raw, str) else raw
        raw = resolve("nc", args.nc)
        if raw is not None:
            fields["n_cand_antennas"] = int(raw)
        raw = resolve("iters", args.iters)
        if raw is not None:
            fields["n_iters"] = int(raw)
        raw = resolve("snr", args.snr)
        if raw is not None:
            fields["snr_grid_db"] = parse_snr(raw) if isinstance(raw, str) else raw
        raw = resolve("trials", args.trials)
        if raw is not None:
            fields["n_trials"] = int(raw)
        raw = resolve("seed", args.seed)
        if raw is not None:
            fields["seed"] = int(raw)
        if scheme != "mas":
            # single-antenna baselines: one slot carrying the full symbol power
            fields["n_sel"] = 1
            fields["alpha"] = (1.0,)
        cfg = dataclasses.replace(defaults, **fields)
        if scheme == "mas":
            validate_config(cfg)
    except ValueError as exc:
        parser.error(str(exc))

    out_path = resolve("out", args.out)
    out_format = resolve("format", args.format) or "csv"
    if out_format not in ("csv", "json"):
        parser.error(f"format: expected csv or json, got {out_format!r}")
    return RunSpec(cfg=cfg, scheme=scheme, detector=detector,
                   out_path=out_path, out_format=out_format)


def _rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        record = row.as_dict() if hasattr(row, "as_dict") else dict(row)
        writer.writerow([repr(v) if isinstance(v, float) else v
                         for v in (record[c] for c in CSV_COLUMNS)])
    return buf.getvalue()


def _rows_to_json(rows, config=None) -> str:
    records = [row.as_dict() if hasattr(row, "as_dict") else dict(row) for row in rows]
    doc = {"rows": records}
    if config is not None:
        doc["config"] = dataclasses.asdict(config)
        doc["seed"] = config.seed
    return json.dumps(doc, indent=2) + "\n"


def emit_results(rows, out_format: str, path, config=None) -> None:
    """Write sweep rows as CSV or JSON, atomically when a path is given."""
    rows = list(rows)
    if not rows:
        raise ValueError("rows: nothing to emit")
    if out_format == "csv":
        text = _rows_to_csv(rows)
    elif out_format == "json":
        text = _rows_to_json(rows, config)
    else:
        raise ValueError(f"format: expected csv or json, got {out_format!r}")
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_main(spec: RunSpec) -> int:
    """Run the sweep described by spec, print per-point summaries, emit results."""
    try:
        block_len = bits_per_tx(spec.cfg, spec.scheme)
        rows = run_sweep(spec.cfg, spec.scheme, spec.detector)
        for row in rows:
            print(f"{row.scheme} {row.detector} L={block_len} "
                  f"snr_db={row.snr_db:g} trials={row.trials} "
                  f"ber={row.ber:.6g} bler={row.bler:.6g} "
                  f"asbt={row.asbt_perbit:.6g} mean_mac={row.mean_mac:.6g}")
        emit_results(rows, spec.out_format, spec.out_path, config=spec.cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    return run_main(parse_run_spec(argv))


if __name__ == "__main__":
    sys.exit(main())
