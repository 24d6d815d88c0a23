"""Command line front end: run checks, enumerate families, trace the
bijection, convert saved reports.

Exit codes: 0 all requested checks pass, 1 at least one fails, 2 usage
error (unknown id, bad family, malformed flags or config).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .bijection import identify, trace_pipeline, triple_map
from .partitions import (
    Partition,
    ResidueFamilyConfig,
    count_g,
    count_gg,
    count_p,
    count_q,
    count_residue_family,
    enumerate_members,
    weighted_count,
)
from .registry import (
    REGISTRY,
    Corruption,
    UnknownCheckError,
    VerificationReport,
    registry_ids,
    run_all,
    run_check,
)

CONFIG_ENV = "GGQ_CONFIG"
SCHEMA_VERSION = 1


@dataclass
class CliConfig:
    default_order2: Optional[int] = None
    parallelism: int = 1
    output_format: str = "text"
    out_path: Optional[str] = None

    def __post_init__(self):
        if self.default_order2 is not None and self.default_order2 <= 0:
            raise ValueError("default_order2 must be positive")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        if self.output_format not in ("text", "json", "csv"):
            raise ValueError("output_format must be text, json or csv")


def load_config(path: Optional[str]) -> CliConfig:
    """Config file from the explicit path or the environment; flags
    override whatever is loaded."""
    if path is None:
        path = os.environ.get(CONFIG_ENV)
    if path is None:
        return CliConfig()
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    known = {"default_order2", "parallelism", "output_format", "out_path"}
    bad = set(raw) - known
    if bad:
        raise ValueError(f"unknown config keys: {sorted(bad)}")
    return CliConfig(**raw)


# -- report serialization -----------------------------------------------


def report_to_dict(r: VerificationReport) -> dict:
    d = {
        "id": r.id,
        "params": r.parameters,
        "order2": r.order2,
        "status": r.status,
        "elapsed_ms": r.elapsed_ms,
    }
    if r.first_mismatch is not None:
        d["first_mismatch"] = r.first_mismatch
    return d


def report_from_dict(d: dict) -> VerificationReport:
    return VerificationReport(
        id=d["id"],
        parameters=d["params"],
        order2=d["order2"],
        status=d["status"],
        first_mismatch=d.get("first_mismatch"),
        elapsed_ms=d["elapsed_ms"],
    )


def emit_json(reports: Sequence[VerificationReport]) -> str:
    payload = {
        "version": SCHEMA_VERSION,
        "checks": [report_to_dict(r) for r in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse_json(text: str) -> list[VerificationReport]:
    payload = json.loads(text)
    if payload.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report version: {payload.get('version')}")
    return [report_from_dict(d) for d in payload["checks"]]


_CSV_COLUMNS = ["id", "params", "order2", "status", "first_mismatch", "elapsed_ms"]


def emit_csv(reports: Sequence[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_CSV_COLUMNS)
    for r in reports:
        w.writerow(
            [
                r.id,
                json.dumps(r.parameters, sort_keys=True, separators=(",", ":")),
                r.order2,
                r.status,
                r.first_mismatch or "",
                r.elapsed_ms,
            ]
        )
    return buf.getvalue()


def emit_text(reports: Sequence[VerificationReport]) -> str:
    lines = []
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in sorted(r.parameters.items()))
        line = f"{r.id:<8} {r.status:<4} order2={r.order2}"
        if params:
            line += " " + params
        line += f"  [{r.elapsed_ms} ms]"
        if r.first_mismatch is not None:
            line += f"  {r.first_mismatch}"
        lines.append(line)
    failed = sum(r.status != "pass" for r in reports)
    lines.append(f"{len(reports)} check(s), {failed} failed")
    return "\n".join(lines) + "\n"


_EMITTERS = {"json": emit_json, "csv": emit_csv, "text": emit_text}


def _write_out(text: str, out_path: Optional[str]):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- flag plumbing ------------------------------------------------------


def _parse_corruption(raw: str) -> Corruption:
    """KEY:DELTA with KEY either 'e2,dz,dw', a bare index, or empty for
    the default (smallest) key."""
    key_part, sep, delta_part = raw.rpartition(":")
    if not sep:
        raise ValueError("corruption must look like KEY:DELTA")
    delta = int(delta_part)
    if key_part == "":
        return Corruption(None, delta)
    if "," in key_part:
        key = tuple(int(x) for x in key_part.split(","))
        if len(key) != 3:
            raise ValueError("series corruption key needs three components")
        return Corruption(key, delta)
    return Corruption(int(key_part), delta)


def _grid_params(check_id: str, args) -> dict:
    """Map the generic -k/-l/-m/-n flags onto the check's parameter names."""
    entry = REGISTRY[check_id]
    known = set(entry.quick)
    out = {}
    for flag, value in (("k", args.k), ("l", args.l), ("m", args.m), ("n", args.n)):
        if value is None:
            continue
        if flag == "k" and "k_list" in known:
            out["k_list"] = [value]
        elif flag == "k" and "k_max" in known:
            out["k_max"] = value
        elif flag == "l" and "l_max" in known:
            out["l_max"] = value
        elif flag == "m" and "m_max" in known:
            out["m_max"] = value
        elif flag == "n" and "n_max" in known:
            out["n_max"] = value
        elif flag == "n" and "sigma_max" in known:
            out["sigma_max"] = value
        else:
            raise ValueError(f"check {check_id} takes no --{flag} parameter")
    if args.order is not None and "order2" not in known:
        raise ValueError(f"check {check_id} takes no --order parameter")
    return out


# -- partition families -------------------------------------------------


def _family_counter(family: str):
    fixed = {
        "Q0": lambda n: count_q(0, n),
        "Q1": lambda n: count_q(1, n),
        "Q2": lambda n: count_q(2, n),
        "Q3": lambda n: count_q(3, n),
        "GG": count_gg,
        "S-weighted": lambda n: weighted_count("S", n),
        "Sstar-weighted": lambda n: weighted_count("Sstar", n),
        "G": count_g,
        "P": count_p,
    }
    if family in fixed:
        return fixed[family]
    if family.startswith("residue:"):
        parts = family.split(":")
        if len(parts) not in (3, 5):
            raise ValueError(
                "residue family: residue:<mod>:<r,..> or "
                "residue:<mod>:<r,..>:<sub>:<r,..>"
            )
        modulus = int(parts[1])
        allowed = frozenset(int(x) for x in parts[2].split(","))
        if len(parts) == 3:
            cfg = ResidueFamilyConfig(modulus, allowed)
        else:
            sub = int(parts[3])
            distinct = frozenset(int(x) for x in parts[4].split(","))
            cfg = ResidueFamilyConfig(modulus, allowed, distinct, sub)
        return lambda n: count_residue_family(cfg, n)
    raise ValueError(
        f"unknown family {family!r}; valid: {', '.join(sorted(fixed))}, residue:<cfg>"
    )


def _fmt_partition(pi: Partition) -> str:
    return "+".join(str(p) for p in pi.parts) if pi.parts else "0"


# -- subcommands --------------------------------------------------------


def _cmd_verify(args, cfg: CliConfig) -> int:
    if args.id not in REGISTRY:
        raise UnknownCheckError(args.id, registry_ids())
    params = _grid_params(args.id, args)
    order2 = args.order
    if order2 is None and "order2" in REGISTRY[args.id].quick:
        order2 = cfg.default_order2  # may still be None: registry default
    corrupt = _parse_corruption(args.corrupt) if args.corrupt else None
    report = run_check(args.id, order2=order2, corrupt=corrupt, **params)
    fmt = args.emit or cfg.output_format
    _write_out(_EMITTERS[fmt]([report]), args.out or cfg.out_path)
    return 0 if report.status == "pass" else 1


def _cmd_verify_all(args, cfg: CliConfig) -> int:
    reports = run_all(
        level=args.level,
        parallelism=args.parallelism or cfg.parallelism,
        corrupt_id=args.corrupt,
    )
    fmt = args.emit or cfg.output_format
    _write_out(_EMITTERS[fmt](reports), args.out or cfg.out_path)
    return 0 if all(r.status == "pass" for r in reports) else 1


def _cmd_count(args, cfg: CliConfig) -> int:
    counter = _family_counter(args.family)
    counts = [counter(n) for n in range(args.max + 1)]
    fmt = args.emit or cfg.output_format
    if fmt == "json":
        text = (
            json.dumps(
                {"family": args.family, "max": args.max, "counts": counts},
                sort_keys=True,
            )
            + "\n"
        )
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count"])
        for n, c in enumerate(counts):
            w.writerow([n, c])
        text = buf.getvalue()
    else:
        text = ",".join(str(c) for c in counts) + "\n"
    _write_out(text, args.out or cfg.out_path)
    return 0


def _cmd_bijection(args, cfg: CliConfig) -> int:
    lines = []
    for pi in enumerate_members("S", args.n):
        m = identify(pi)
        k = len(m.marks)
        for bits in range(1 << k):
            choice = tuple(bool(bits >> j & 1) for j in range(k))
            if args.trace:
                for stage, value in trace_pipeline(pi, choice):
                    lines.append(f"{stage}: {value}")
                lines.append("")
            else:
                t = triple_map(m, choice)
                shown = "".join("2" if b else "1" for b in choice) or "-"
                lines.append(
                    f"pi={_fmt_partition(pi)} choice={shown} -> "
                    f"pi1={_fmt_partition(t.pi1)} "
                    f"pi3={_fmt_partition(t.pi3)} "
                    f"pi4={_fmt_partition(t.pi4)}"
                )
    _write_out("\n".join(lines) + "\n" if lines else "", args.out or cfg.out_path)
    return 0


def _cmd_report(args, cfg: CliConfig) -> int:
    with open(args.input, encoding="utf-8") as fh:
        reports = parse_json(fh.read())
    fmt = args.emit or cfg.output_format
    _write_out(_EMITTERS[fmt](reports), args.out or cfg.out_path)
    return 0 if all(r.status == "pass" for r in reports) else 1


# -- argument parsing ---------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ggq", description="identity and bijection verification harness"
    )
    p.add_argument("--config", help="path to a JSON config file")
    sub = p.add_subparsers(dest="command", required=True)

    def add_output_flags(sp):
        sp.add_argument("--emit", choices=("text", "json", "csv"))
        sp.add_argument("--out", help="write output to this path")

    v = sub.add_parser("verify", help="run one catalog check")
    v.add_argument("--id", required=True, help="catalog id, e.g. 1.1 or thm3")
    v.add_argument("--order", type=int, help="truncation in half-exponent units")
    v.add_argument("--k", type=int)
    v.add_argument("--l", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--corrupt", help=argparse.SUPPRESS)
    add_output_flags(v)
    v.set_defaults(func=_cmd_verify)

    va = sub.add_parser("verify-all", help="run the whole catalog")
    va.add_argument("--level", choices=("quick", "full"), default="quick")
    va.add_argument("--parallelism", type=int)
    va.add_argument("--corrupt", help=argparse.SUPPRESS)
    add_output_flags(va)
    va.set_defaults(func=_cmd_verify_all)

    c = sub.add_parser("count", help="tabulate a partition family")
    c.add_argument("--family", required=True)
    c.add_argument("--max", type=int, required=True)
    add_output_flags(c)
    c.set_defaults(func=_cmd_count)

    b = sub.add_parser("bijection", help="map weighted members through the pipeline")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--trace", action="store_true", help="print every stage")
    add_output_flags(b)
    b.set_defaults(func=_cmd_bijection)

    r = sub.add_parser("report", help="convert a saved JSON report")
    r.add_argument("input", help="path to a JSON report")
    add_output_flags(r)
    r.set_defaults(func=_cmd_report)

    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except UnknownCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
