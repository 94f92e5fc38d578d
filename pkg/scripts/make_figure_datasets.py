#!/usr/bin/env python3
"""Regenerate every bundled figure dataset into one directory."""

import argparse
from pathlib import Path

from oesnn.figures import FIGURES, build_figure


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/figures", help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for fig_id in sorted(FIGURES):
        ds = build_figure(fig_id)
        path = out / f"{fig_id}.{args.format}"
        if args.format == "csv":
            ds.write_csv(path)
        else:
            ds.write_json(path)
        print(f"{path}  ({len(ds.rows)} rows)")


if __name__ == "__main__":
    main()
