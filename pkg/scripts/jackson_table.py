"""Print the Jackson ratio table E_n(f)_p / omega_k(f, 1/n)_p with its trend statistics.

    python3 scripts/jackson_table.py --p inf --k 1
"""

import argparse
import math

from approxlab import experiments as ex


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--p", type=float, action="append", help="repeatable; default 0.5, 1, 2, inf")
    ap.add_argument("--k", type=int, action="append", help="repeatable; default 1, 2")
    args = ap.parse_args(argv)
    ps = tuple(args.p) if args.p else (0.5, 1.0, 2.0, math.inf)
    ks = tuple(args.k) if args.k else (1, 2)
    rep = ex.verify_jackson(ps=ps, ks=ks)
    ns = rep.parameters["ns"]
    print(f"{'cell':34s}" + "".join(f"{'n=' + str(n):>9s}" for n in ns) + f"{'rho':>7s}{'max/med':>9s}  verdict")
    for key, st in rep.ratio_stats.items():
        name, p, k = key.split("|")
        ratios = rep.values("ratio", name, p=float(p[2:]), k=int(k[2:]))
        ok = rep.verdicts.get(f"bounded:{key}", rep.verdicts.get(f"trivial:{key}"))
        print(f"{key:34s}" + "".join(f"{r:9.4f}" for r in ratios)
              + f"{st.spearman:7.2f}{st.max_over_median:9.2f}  {'pass' if ok else 'FAIL'}")


if __name__ == "__main__":
    main()
