"""Run verification suites with their default parameters and write one report per suite.

    python3 scripts/run_suites.py --out results jackson stechkin
    python3 scripts/run_suites.py --out results            # every suite
"""

import argparse
import sys
import time

from approxlab import experiments as ex
from approxlab.moduli import HolderSpec
from approxlab.testfns import lacunary, triangle_wave

RUNNERS = {
    "jackson": lambda: ex.verify_jackson(),
    "stechkin": lambda: ex.verify_stechkin_nikolskii(),
    "direct-inverse": lambda: ex.verify_direct_inverse_holder(lacunary(0.5, 8), HolderSpec(p=float("inf"), r=1, alpha=0.25)),
    "sandwich": lambda: ex.verify_sandwich_all(),
    "counterexample": lambda: ex.counterexample_h11(),
    "strong-converse": lambda: ex.verify_strong_converse(),
    "pr2": lambda: ex.verify_pr2_lower_bound(triangle_wave(), HolderSpec(p=0.5, r=1, alpha=0.5)),
    "integral-condition": lambda: ex.verify_integral_condition(lacunary(0.5, 8), HolderSpec(p=2.0, r=1, alpha=0.25)),
    "modulus-properties": lambda: ex.verify_modulus_properties(),
    "rates": lambda: ex.rates(),
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("suites", nargs="*", choices=sorted(RUNNERS), metavar="suite",
                    help=f"suites to run (default: all of {', '.join(sorted(RUNNERS))})")
    ap.add_argument("--out", default="results")
    ap.add_argument("--format", choices=("csv", "json"), default="json")
    args = ap.parse_args(argv)
    ok = True
    for name in args.suites or sorted(RUNNERS):
        t0 = time.perf_counter()
        rep = RUNNERS[name]()
        path = rep.write(args.out, args.format)
        ok &= rep.passed
        print(f"{name:20s} {'PASS' if rep.passed else 'FAIL'}  {time.perf_counter() - t0:7.1f}s  {path}")
        for key in rep.failed():
            print(f"    failed: {key}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
