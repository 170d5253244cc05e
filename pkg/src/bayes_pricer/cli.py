"""Command-line interface: ``bayes-pricer {price,table,american,check}``.

Exit codes: 0 success, 1 failed check, 2 configuration error,
3 internal-consistency error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from .american import AmericanPricingError, price_american
from .checks import SUITES, run_suite
from .config import ConfigError, RunConfig, load_config
from .core import PricingConsistencyError, price_european
from .measures import DiscretePriceLaw, log_return_law_of, tilt
from .models.gbm import bsm_price
from .models.hyperbolic import hyperbolic_price
from .models.mixture import mixture_price
from .models.specs import GbmSpec, HyperbolicSpec, MixtureSpec
from .models.toy import toy_price
from .tables import GRID_NOTE, compute_table, format_table

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_CONSISTENCY = 3

DUAL_PATH_TOL = 1e-5


def to_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def price_record(config: RunConfig) -> dict:
    """All quantities printed by ``price``: engine paths plus the model's own formula."""
    model, market, quad = config.model, config.market, config.quadrature
    law = log_return_law_of(model, market.tau)
    mean = model.mean_price if isinstance(model, DiscretePriceLaw) else None
    result = price_european(law, tilt(law), market, mean, quad)
    record = {"model": config.model_name}
    record.update(result.as_dict())
    if isinstance(model, GbmSpec):
        record["closed_form"] = bsm_price(model, market)
    elif isinstance(model, MixtureSpec):
        record["closed_form"] = mixture_price(model, market)
    elif isinstance(model, HyperbolicSpec):
        direct = hyperbolic_price(model, market, quad)
        if abs(direct - result.price) > DUAL_PATH_TOL:
            raise PricingConsistencyError(
                f"hyperbolic engine price {result.price!r} and direct quadrature "
                f"{direct!r} differ by more than {DUAL_PATH_TOL}")
        record["closed_form"] = direct
    else:
        best, (lo, hi) = toy_price(model, market)
        record["closed_form"] = best
        record["barrier_interval_lo"] = lo
        record["barrier_interval_hi"] = hi
    return record


def _emit_record(record: dict, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(list(record), [list(record.values())])
    # JSON has no infinity; an unbounded interval end becomes null
    clean = {k: (None if isinstance(v, float) and math.isinf(v) else v) for k, v in record.items()}
    return json.dumps(clean, indent=2) + "\n"


def cmd_price(args) -> int:
    config = load_config(args.config)
    fmt = args.format or config.output_format
    sys.stdout.write(_emit_record(price_record(config), fmt))
    return EXIT_OK


def cmd_american(args) -> int:
    config = load_config(args.config)
    if isinstance(config.model, DiscretePriceLaw):
        raise ConfigError(args.config, 0, "american pricing needs a time-indexed model, "
                                          "not a discrete terminal law")
    result = price_american(config.model, config.market, config.grid_size)
    law = log_return_law_of(config.model, config.market.tau)
    european = price_european(law, tilt(law), config.market, None, config.quadrature).price
    record = {"model": config.model_name, "european_price": european}
    record.update(result.as_dict())
    sys.stdout.write(json.dumps(record, indent=2) + "\n")
    return EXIT_OK


def cmd_table(args) -> int:
    cells = compute_table(args.which)
    if args.format == "text":
        sys.stdout.write(format_table(args.which, cells))
    elif args.format == "csv":
        sys.stdout.write(to_csv(["interest", "T", "a2", "count", "fraction"],
                                [[c.interest, c.T, c.a2, c.count, c.fraction] for c in cells]))
    else:
        payload = {"table": args.which, "note": GRID_NOTE,
                   "cells": [{"interest": c.interest, "T": c.T, "a2": c.a2,
                              "count": c.count, "fraction": c.fraction} for c in cells]}
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_check(args) -> int:
    results = run_suite(args.suite)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bayes-pricer",
        description="Call option prices from the minimum Bayes risk of a hypothesis test.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("price", help="price a European call from a config file")
    p.add_argument("--config", required=True, help="flat key = value file")
    p.add_argument("--format", choices=("json", "csv"), default=None,
                   help="output format (default: the config's 'format' key, else json)")
    p.set_defaults(func=cmd_price)

    t = sub.add_parser("table", help="mixture vs BSM comparison table")
    t.add_argument("--which", type=int, choices=(1, 2), required=True,
                   help="1: i = .04, 2: i = .08")
    t.add_argument("--format", choices=("text", "json", "csv"), default="text")
    t.set_defaults(func=cmd_table)

    a = sub.add_parser("american", help="American call price from a config file")
    a.add_argument("--config", required=True)
    a.set_defaults(func=cmd_american)

    c = sub.add_parser("check", help="run an invariant suite")
    c.add_argument("--suite", choices=SUITES + ("all",), default="all")
    c.set_defaults(func=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PricingConsistencyError, AmericanPricingError) as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except ValueError as exc:
        # model/market constraints that only surface at pricing time (e.g. t0 for mixtures)
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
