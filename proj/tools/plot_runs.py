#!/usr/bin/env python3
"""Plot one or more smcsim CSV logs side by side.

    python3 tools/plot_runs.py out/nominal_ncsmc_*_log.csv -o runs.png
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

# (column prefix, y label) per row of panels; each row has one panel per joint
PANELS = [
    ("q", "position [rad]"),
    ("e", "error [rad]"),
    ("tau", "torque [N m]"),
    ("f", "surface"),
]


def label_for(path: Path) -> str:
    stem = path.stem.removesuffix("_log")
    return stem.rsplit("_", 1)[-1] if "_" in stem else stem


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("logs", nargs="+", type=Path)
    ap.add_argument("-o", "--output", type=Path, default=Path("runs.png"))
    ap.add_argument("--window", nargs=2, type=float, metavar=("T0", "T1"), help="time range to show, s")
    args = ap.parse_args()

    fig, axes = plt.subplots(len(PANELS), 2, figsize=(12, 2.6 * len(PANELS)), sharex=True)
    for path in args.logs:
        df = pd.read_csv(path)
        if args.window:
            df = df[(df.t >= args.window[0]) & (df.t <= args.window[1])]
        name = label_for(path)
        for row, (prefix, ylabel) in enumerate(PANELS):
            for joint in (1, 2):
                ax = axes[row, joint - 1]
                ax.plot(df.t, df[f"{prefix}{joint}"], lw=0.8, label=name)
                if prefix == "q":
                    ax.plot(df.t, df[f"ref_q{joint}"], "k--", lw=0.6)
                ax.set_ylabel(ylabel)
                ax.grid(alpha=0.3)
    for joint in (1, 2):
        axes[0, joint - 1].set_title(f"joint {joint}")
        axes[-1, joint - 1].set_xlabel("t [s]")
    axes[0, 0].legend(loc="upper right", fontsize="small")
    fig.tight_layout()
    fig.savefig(args.output, dpi=120)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
