"""Command-line front end: verification suites with CSV reports.

Usage:
    jacfrac verify <suite> [--config FILE] [--out report.csv]
                   [--seed N] [--key value ...]
    jacfrac list-suites
    jacfrac --version

Exit codes: 0 when every row passes, 1 on any failed row, 2 on
configuration errors.  Reports are byte-identical for identical
configuration and seed.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .suites import ConfigError, SweepReport, list_suites, run_suite

CSV_HEADER = "suite,params,measured,reference,ratio,pass"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def emit_csv(report: SweepReport, path: str):
    """Write the report rows; floats carry 17 significant digits, lines
    end with LF, and the byte stream is a pure function of the rows."""
    lines = [CSV_HEADER]
    for row in report.rows:
        params = ";".join(f"{k}={_fmt(v)}" for k, v in row.params.items())
        lines.append(",".join([
            row.suite, params, _fmt(float(row.measured)),
            _fmt(float(row.reference)), _fmt(float(row.ratio)),
            "true" if row.passed else "false",
        ]))
    data = ("\n".join(lines) + "\n").encode("utf-8")
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise ConfigError(f"cannot write report to {path}: {exc}") from exc


def parse_config_file(path: str) -> dict:
    """Flat key=value lines; lists are comma-separated; # comments."""
    out = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value")
                key, value = line.split("=", 1)
                out[key.strip()] = _parse_value(value.strip())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return out


def _parse_value(text: str):
    if "," in text:
        return [_parse_scalar(v) for v in text.split(",") if v.strip()]
    return _parse_scalar(text)


def _parse_scalar(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _collect_overrides(extra: list) -> dict:
    out = {}
    i = 0
    while i < len(extra):
        tok = extra[i]
        if not tok.startswith("--") or i + 1 >= len(extra):
            raise ConfigError(f"expected --key value pairs, got {' '.join(extra[i:])}")
        out[tok[2:].replace("-", "_")] = _parse_value(extra[i + 1])
        i += 2
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="jacfrac",
        description="verification suites for Jacobi-expansion fractional integrals")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command")
    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite")
    pv.add_argument("--config", default=None)
    pv.add_argument("--out", default=None)
    pv.add_argument("--seed", type=int, default=None)
    sub.add_parser("list-suites", help="print available suite names")

    args, extra = parser.parse_known_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    if args.command == "list-suites":
        if extra:
            print(f"unexpected arguments: {' '.join(extra)}", file=sys.stderr)
            return 2
        for name in list_suites():
            print(name)
        return 0

    try:
        overrides = {}
        if args.config:
            overrides.update(parse_config_file(args.config))
        overrides.update(_collect_overrides(extra))
        seed = overrides.pop("seed", None)
        if args.seed is not None:
            seed = args.seed
        kwargs = {"seed": int(seed)} if seed is not None else {}
        report = run_suite(args.suite, overrides, **kwargs)
        if args.out:
            emit_csv(report, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    print(f"suite {report.suite}: {len(report.rows)} rows, "
          f"{report.failures} failures, max ratio {report.max_ratio:.3g}, "
          f"{report.wall_time:.1f}s")
    for row in report.rows:
        if not row.passed:
            params = ";".join(f"{k}={_fmt(v)}" for k, v in row.params.items())
            print(f"  FAIL {params}: measured {_fmt(float(row.measured))} "
                  f"vs {_fmt(float(row.reference))}", file=sys.stderr)
    return 0 if report.failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
