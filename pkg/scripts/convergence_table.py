"""Truncated series against the recognized closed form as the order grows.

For each corpus example the series is evaluated at a fixed spatial point and
a few times t, and the absolute gap to the closed form is tabulated.

    python scripts/convergence_table.py --t 0.5 1 2 --orders 4 8 12 16 24
"""

import argparse

from hpmtaylor.closedform import recognize
from hpmtaylor.corpus import IDS, get_entry
from hpmtaylor.series import series_eval, solve


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--orders", type=int, nargs="+", default=[4, 8, 12, 16, 24])
    ap.add_argument("--point", type=float, default=0.7, help="value given to every spatial variable")
    args = ap.parse_args()

    header = f"{'example':<10}{'t':>6}" + "".join(f"{'N=' + str(n):>12}" for n in args.orders)
    print(header)
    print("-" * len(header))
    for name in IDS:
        problem = get_entry(name).spec.build()
        cf = recognize(solve(problem, 12))
        point = {v: args.point for v in problem.variables}
        for t in args.t:
            exact = cf.eval(point, t)
            gaps = [abs(series_eval(solve(problem, n), point, t) - exact) for n in args.orders]
            print(f"{name:<10}{t:>6g}" + "".join(f"{g:>12.2e}" for g in gaps))


if __name__ == "__main__":
    main()
