"""Run the six-example corpus and write the report as JSON.

    python scripts/run_corpus.py --order 12 --out corpus.json
"""

import argparse
import sys

from hpmtaylor.report import run_corpus, to_json, to_text


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=None, help="series order for every entry")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", help="write JSON here instead of printing text")
    args = ap.parse_args()

    report = run_corpus(args.order, workers=args.workers)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(to_json(report) + "\n")
        print(f"{report['verdict']}: wrote {args.out}")
    else:
        print(to_text(report))
    return 0 if report["verdict"] == "PASS" else 1


if __name__ == "__main__":
    sys.exit(main())
