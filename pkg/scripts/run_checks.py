"""Run every validation suite and time the main pricing paths.

Usage::

    python3 scripts/run_checks.py [--suite NAME]
"""

import argparse
import sys
import time

from bayes_pricer.american import price_american
from bayes_pricer.checks import GBM_BENCH, HYPERBOLIC_BENCH, MIXTURE_BENCH, SUITES, run_suite
from bayes_pricer.core import price_european
from bayes_pricer.measures import log_return_law_of, tilt
from bayes_pricer.models.hyperbolic import hyperbolic_price


def european(model, market):
    law = log_return_law_of(model, market.tau)
    return price_european(law, tilt(law), market).price


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--suite", choices=SUITES + ("all",), default="all")
    args = parser.parse_args()

    start = time.perf_counter()
    results = run_suite(args.suite)
    for res in results:
        print(res.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed "
          f"in {time.perf_counter() - start:.2f} s\n")

    for name, (model, market) in (("gbm", GBM_BENCH), ("mixture", MIXTURE_BENCH),
                                  ("hyperbolic", HYPERBOLIC_BENCH)):
        t0 = time.perf_counter()
        price = european(model, market)
        print(f"{name:<11} european {price:.10f}  ({(time.perf_counter() - t0) * 1e3:.1f} ms)")
    model, market = HYPERBOLIC_BENCH
    print(f"{'hyperbolic':<11} direct   {hyperbolic_price(model, market):.10f}")
    model, market = GBM_BENCH
    t0 = time.perf_counter()
    am = price_american(model, market)
    print(f"{'gbm':<11} american {am.price:.10f} at t={am.argmin_t:.6f}  "
          f"({(time.perf_counter() - t0) * 1e3:.1f} ms)")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
