"""Command-line front end: ``omegalab run | verify | clean-cache``.

Exit codes: 0 ok, 1 internal error, 2 config error, 3 predicate violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import traceback

from . import __version__
from .cache import Cache, resolve_dir
from .errors import ConfigError
from .runner import ANALYSES, RunConfig, run, verify, write_report

EXIT_OK, EXIT_INTERNAL, EXIT_CONFIG, EXIT_VIOLATION = 0, 1, 2, 3


def build_parser():
    # argparse exits with status 2 on usage errors, matching EXIT_CONFIG
    p = argparse.ArgumentParser(prog="omegalab", description="Quantum group combinatorics at roots of unity.")
    p.add_argument("--version", action="version", version=f"omegalab {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run analyses and write a JSON report")
    r.add_argument("--type", help="root system, e.g. A2, B3, G2 (or a family letter with --rank)")
    r.add_argument("--rank", type=str)
    r.add_argument("--order", help="order N of zeta, a positive integer or 'inf'")
    r.add_argument("--qz", help="'min' or comma-separated values of q_Z on the simple coroots")
    r.add_argument("--height", type=str, help="height bound for weights")
    r.add_argument("--analyses", help=f"comma-separated subset of {','.join(ANALYSES)} or 'all'")
    r.add_argument("--iota", help="comma-separated base order of Dynkin indices for the crystal")
    r.add_argument("--strategy", help="string strategy: min or max")
    r.add_argument("--out", help="output path (default: stdout)")
    r.add_argument("--config", help="JSON config file; flags override its values")
    r.add_argument("--cache", help="cache directory, or 'off' (OMEGALAB_CACHE takes precedence)")
    r.add_argument("--jobs", type=str, help="worker processes for per-weight analyses")

    v = sub.add_parser("verify", help="recompute a report and re-check its predicates")
    v.add_argument("report")

    c = sub.add_parser("clean-cache", help="delete cached records")
    c.add_argument("--cache", help="cache directory (OMEGALAB_CACHE takes precedence)")
    return p


def _load_config(args) -> RunConfig:
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}", "config") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}", "config") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object", "config")
    for key in ("type", "rank", "order", "qz", "height", "analyses", "iota", "strategy",
                "out", "cache", "jobs"):
        val = getattr(args, key)
        if val is not None:
            data[key] = val
    return RunConfig.from_mapping(data)


def cmd_run(args) -> int:
    config = _load_config(args)
    report = run(config)
    write_report(report, config.out)
    bad = [f for f in report["findings"] if f["asserted"]]
    for f in bad:
        print(f"violation: {f['analysis']}/{f['predicate']} at {f['weight']}: {f['message']}",
              file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.report) as fh:
            report = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read report: {exc}", "report") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"report is not valid JSON: {exc}", "report") from None
    code, msgs = verify(report)
    for m in msgs:
        print(m, file=sys.stderr)
    if code == 0:
        print("report verified")
    return code


def cmd_clean_cache(args) -> int:
    directory = resolve_dir(args.cache)
    n = Cache(directory).clean()
    print(f"removed {n} entries from {directory}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"run": cmd_run, "verify": cmd_verify, "clean-cache": cmd_clean_cache}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        key = f" [{exc.key}]" if exc.key else ""
        print(f"config error{key}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception:  # noqa: BLE001
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
