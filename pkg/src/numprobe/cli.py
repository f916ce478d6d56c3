"""Command-line entry point: recast, generate, validate, eval, stats."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .corpus import CorpusError, load_dataset, load_tables, recast_file
from .evalkit import EvalError, evaluate, load_predictions, report_csv, report_text, shift_report
from .numparse import NumParseError, load_catalog, set_default_catalog
from .probegen import (GenerationConfig, Mode, generate_all, read_probe_tables, read_probes, stats_csv,
                       validate, write_probes)
from .probegen.io import header_record, probe_stats
from .taxonomy import ReasoningType

log = logging.getLogger("numprobe")

FLIP_MODES = {"none": (Mode.PRESERVE,), "only": (Mode.FLIP,), "both": (Mode.PRESERVE, Mode.FLIP)}


class CommandFailed(Exception):
    """Expected failure with a machine-readable payload."""

    def __init__(self, kind: str, message: str, **detail):
        super().__init__(message)
        self.kind, self.detail = kind, detail


def read_config_file(path) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CommandFailed("ConfigError", f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def build_config(args) -> GenerationConfig:
    values: dict[str, str] = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    for item in getattr(args, "set", None) or []:
        if "=" not in item:
            raise CommandFailed("ConfigError", f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        values[k.strip()] = v.strip()
    if getattr(args, "seed", None) is not None:
        values["master_seed"] = str(args.seed)
    if getattr(args, "types", None):
        values["enabled_types"] = args.types
    try:
        return GenerationConfig.from_mapping(values)
    except ValueError as exc:
        raise CommandFailed("ConfigError", str(exc)) from None


def _emit(summary: dict) -> None:
    print(json.dumps(summary, ensure_ascii=False))


def _write_jsonl(path: Path, header: dict, records) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(header, ensure_ascii=False) + "\n")
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


# commands ----------------------------------------------------------------------

def cmd_recast(args) -> int:
    tables = load_tables(args.tables) if args.tables else None
    hyps, skipped = recast_file(args.inp, tables)
    out = Path(args.out)
    head = {"header": {"artifact": "numprobe", "version": __version__, "command": "recast",
                       "input": str(args.inp)}}
    _write_jsonl(out, head, [h.to_dict() for h in hyps])
    skip_path = out.with_name(out.name.split(".")[0] + ".skipped.jsonl")
    _write_jsonl(skip_path, head, skipped)
    _emit({"command": "recast", "hypotheses": len(hyps), "skipped": len(skipped), "out": str(out),
           "skip_report": str(skip_path)})
    return 0


def cmd_generate(args) -> int:
    config = build_config(args)
    corpus = load_dataset(args.inp, args.format, args.tables)
    ps = generate_all(corpus, config, FLIP_MODES[args.flip])
    out = Path(args.out)
    tpath = write_probes(ps.probes, out, config, ps.tables, {"command": "generate", "flip": args.flip})
    stem = out.name.split(".")[0]
    stats_path = out.with_name(stem + ".stats.csv")
    stats_path.write_text(stats_csv(ps.probes), encoding="utf-8")
    skips_path = out.with_name(stem + ".skips.jsonl")
    _write_jsonl(skips_path, header_record(config, {"command": "generate"}), [s.to_dict() for s in ps.skips])
    width = max(len(t) for t, _ in probe_stats(ps.probes)) if ps.probes else 5
    for name, count in probe_stats(ps.probes):
        print(f"{name:<{width}}  {count:>7}", file=sys.stderr)
    errors = [s for s in ps.skips if s.reason.startswith("error:")]
    _emit({"command": "generate", "probes": len(ps.probes), "tables": len(ps.tables),
           "skipped": len(ps.skips), "generator_errors": len(errors), "out": str(out),
           "tables_out": str(tpath) if tpath else None, "stats": str(stats_path)})
    return 0


def cmd_validate(args) -> int:
    _, probes = read_probes(args.inp)
    corpus = load_dataset(args.dataset, args.format, args.tables)
    tables = load_tables(args.probe_tables) if args.probe_tables else read_probe_tables(args.inp)
    config = build_config(args)
    violations = validate(probes, corpus, tables, config)
    if args.out:
        _write_jsonl(Path(args.out), header_record(config, {"command": "validate"}),
                     [v.to_dict() for v in violations])
    for v in violations:
        print(str(v), file=sys.stderr)
    _emit({"command": "validate", "probes": len(probes), "violations": len(violations)})
    return 1 if violations else 0


def _read_accuracies(path) -> tuple[dict, dict]:
    """CSV with columns type, flip, acc_base, acc_probe."""
    base, probe = {}, {}
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.DictReader(fh), 2):
            try:
                flip = (row.get("flip") or "0").strip().lower() in ("1", "true", "yes")
                key = (ReasoningType.parse(row["type"]), flip)
                base[key], probe[key] = float(row["acc_base"]), float(row["acc_probe"])
            except (KeyError, ValueError, AttributeError) as exc:
                raise CommandFailed("ParseError", f"{path}:{lineno}: {exc}") from None
    return base, probe


def cmd_eval(args) -> int:
    if args.accuracies:
        rows = shift_report(*_read_accuracies(args.accuracies))
    else:
        missing = [f for f in ("inp", "base_preds", "probe_preds") if not getattr(args, f)]
        if missing:
            raise CommandFailed("UsageError", "eval needs --in, --base-preds and --probe-preds (or --accuracies)")
        _, probes = read_probes(args.inp)
        rows = evaluate(probes, load_predictions(args.base_preds), load_predictions(args.probe_preds))
    text = report_csv(rows) if args.report == "csv" else report_text(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    summary = {"command": "eval", "rows": [
        {"type": r.reasoning_type.value, "flip": r.flip, "acc_base": round(r.acc_base, 4),
         "acc_probe": round(r.acc_probe, 4),
         "shift_pct": None if r.shift_pct is None else round(r.shift_pct, 4)} for r in rows]}
    if args.out:
        _emit(summary)
    else:
        print(json.dumps(summary), file=sys.stderr)
    return 0


def cmd_stats(args) -> int:
    _, probes = read_probes(args.inp)
    text = stats_csv(probes)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


# parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="numprobe", description=__doc__)
    p.add_argument("--version", action="version", version=f"numprobe {__version__}")
    p.add_argument("--catalog", help="unit/format catalog file replacing the bundled one")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inp_help):
        sp.add_argument("--in", dest="inp", help=inp_help)
        sp.add_argument("--tables", help="table file (default: <input stem>.tables.jsonl)")
        sp.add_argument("--out", help="output path")

    def config_flags(sp):
        sp.add_argument("--seed", type=int, help="master seed")
        sp.add_argument("--types", help="comma-separated reasoning types to enable")
        sp.add_argument("--config", help="key=value configuration file (flags take precedence)")
        sp.add_argument("--set", action="append", metavar="KEY=VALUE", help="single configuration override")

    sp = sub.add_parser("recast", help="turn QA pairs into entailed hypotheses")
    common(sp, "QA JSON Lines {id, table_id, question, answer}")
    sp.set_defaults(func=cmd_recast, required=("inp", "out"))

    sp = sub.add_parser("generate", help="generate probes")
    common(sp, "dataset JSON Lines")
    config_flags(sp)
    sp.add_argument("--flip", choices=sorted(FLIP_MODES), default="both")
    sp.add_argument("--format", choices=("tnli", "qa"), default="tnli")
    sp.set_defaults(func=cmd_generate, required=("inp", "out"))

    sp = sub.add_parser("validate", help="re-check a probe file against its dataset")
    common(sp, "probe JSON Lines")
    config_flags(sp)
    sp.add_argument("--dataset", help="the dataset the probes were generated from")
    sp.add_argument("--probe-tables", help="counterfactual tables (default: <probe stem>.tables.jsonl)")
    sp.add_argument("--format", choices=("tnli", "qa"), default="tnli")
    sp.set_defaults(func=cmd_validate, required=("inp", "dataset"))

    sp = sub.add_parser("eval", help="accuracy-shift report")
    common(sp, "probe JSON Lines")
    sp.add_argument("--base-preds", help="predictions on base hypotheses, JSON Lines {item_id, label}")
    sp.add_argument("--probe-preds", help="predictions on probes, JSON Lines {item_id, label}")
    sp.add_argument("--accuracies", help="CSV type,flip,acc_base,acc_probe instead of predictions")
    sp.add_argument("--report", choices=("text", "csv"), default="text")
    sp.set_defaults(func=cmd_eval, required=())

    sp = sub.add_parser("stats", help="probe counts per type as CSV")
    common(sp, "probe JSON Lines")
    sp.set_defaults(func=cmd_stats, required=("inp",))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    missing = [f"--{'in' if r == 'inp' else r.replace('_', '-')}" for r in args.required
               if not getattr(args, r, None)]
    if missing:
        parser.error(f"{args.command}: missing {', '.join(missing)}")
    try:
        if args.catalog:
            set_default_catalog(load_catalog(args.catalog))
        return args.func(args)
    except CommandFailed as exc:
        kind, message, detail = exc.kind, str(exc), exc.detail
    except (CorpusError, EvalError, NumParseError) as exc:
        kind, message, detail = type(exc).__name__, str(exc), {}
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        kind, message, detail = type(exc).__name__, str(exc), {}
    finally:
        set_default_catalog(None)
    print(json.dumps({"command": args.command, "error": kind, "message": message, **detail}), file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
