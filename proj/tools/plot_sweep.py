#!/usr/bin/env python3
"""Render an exponent-sweep CSV to a static PNG."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv")
    parser.add_argument("png")
    parser.add_argument("--logx", action="store_true")
    args = parser.parse_args()

    df = pd.read_csv(args.csv, comment="#")
    first_exp = df.columns.get_loc("E_edge_nats")
    axis = df.columns[first_exp - 1]
    groups = df.groupby("C") if "C" in df.columns and axis != "C" else [(None, df)]

    fig, ax = plt.subplots(figsize=(6, 4))
    edge_done = False
    for capacity, part in groups:
        suffix = "" if capacity is None else f" (C={capacity:g})"
        if not edge_done:
            ax.plot(part[axis], part["E_edge_nats"], "k-o", label="edge")
            edge_done = capacity is not None
        ax.plot(part[axis], part["E_cloud_nats"], "--s", label="cloud" + suffix)
    if args.logx:
        ax.set_xscale("symlog", linthresh=0.5)
    ax.set_xlabel(axis)
    ax.set_ylabel("error exponent [nats]")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.png, dpi=150)


if __name__ == "__main__":
    main()
