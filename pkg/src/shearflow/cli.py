"""Command line entry point.

    shearflow sweep  --config run.cfg [--grid.n1 128 ...]
    shearflow run    --config run.cfg --nu 1e-3
    shearflow verify [--config run.cfg]

Any config key may be overridden as ``--key value``. Exit codes: 0 success,
2 configuration error, 3 solver-integrity failure, 4 failed check.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .harness import (
    EXIT_CHECK,
    EXIT_CONFIG,
    EXIT_OK,
    ConfigError,
    parse_config,
    run_sweep,
    verify,
)


def _overrides(extra: list[str]) -> dict[str, str]:
    out = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise ConfigError(f"unexpected argument {tok!r}")
        key, eq, val = tok[2:].partition("=")
        if not eq:
            try:
                val = next(it)
            except StopIteration:
                raise ConfigError(f"missing value for --{key}") from None
        out[key] = val
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shearflow", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("sweep", "solve at every viscosity in the ladder and write results"),
        ("run", "solve at a single viscosity"),
        ("verify", "run the invariant suite"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", type=Path, help="flat key = value configuration file")
        if name == "run":
            p.add_argument("--nu", type=str, help="viscosity (default: first ladder entry)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        overrides = _overrides(extra)
        if getattr(args, "nu", None) is not None:
            overrides["viscosity.ladder"] = args.nu
        text = args.config.read_text() if args.config else ""
        if args.command == "verify" and not args.config:
            overrides = {"grid.n1": "32", "grid.n2": "32", **overrides}
        config = parse_config(text, overrides)
        if args.command == "run" and len(config.ladder) > 1:
            config.ladder = config.ladder[:1]
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "verify":
        results = verify(config)
        failed = [r.name for r in results if not r.passed]
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
        return EXIT_CHECK if failed else EXIT_OK

    result = run_sweep(config)
    for e in result.report.entries:
        print(
            f"nu={e.nu!r:<8} sup_l2_err_u3={e.sup_l2_err_u3:.4e} l2t_err_u1={e.l2t_err_u1:.4e} "
            f"weak_pair_max_abs={e.weak_pair_max_abs:.4e} admissible={e.admissible}"
        )
    for path in result.files:
        print(f"wrote {path}")
    if result.failure:
        print(f"failure: {result.failure}", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
